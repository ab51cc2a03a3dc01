// Parallel-corpus construction: session pairing from query logs, attachment
// aggregation, the universe/top-k/Jaccard filter cascade, stratified
// false-positive sampling, and corpus statistics.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "namevar/core.hpp"

namespace namevar {

struct QueryLogEvent {
  std::string user;
  std::uint64_t timestamp = 0;  // seconds since epoch
  std::string raw_name;
};

struct AttachmentRow {
  std::string tree_name;
  std::string record_name;
  std::string user;
};

struct FilterReport {
  std::size_t input_pairs = 0;
  std::size_t after_universe = 0;
  std::size_t after_cooccurrence_topk = 0;
  std::size_t after_jaccard = 0;
  std::optional<double> sampled_false_positive_rate;
};

// Per user, chronologically consecutive distinct normalized queries closer
// than the window emit one earlier->later pair. Malformed names drop out of
// the stream (neighbours become consecutive) and are tallied if asked.
// all_pairs switches to every in-window ordered pair within a user's stream.
std::vector<NamePairRecord> pair_sessions(std::vector<QueryLogEvent> events,
                                          std::uint64_t window_seconds = 1800,
                                          bool all_pairs = false,
                                          std::size_t* dropped_malformed = nullptr);

// Directed tree->record pairs, aggregated; identical names drop. User sets
// are per side: everyone whose tree carried the source name, everyone who
// attached a record with the target name.
std::vector<NamePairRecord> aggregate_attachments(const std::vector<AttachmentRow>& rows,
                                                  std::size_t* dropped_malformed = nullptr);

// Universe membership, then top-k by co-occurrence, then the user-overlap
// (Jaccard) filter. Output ordered by co-occurrence descending, then names.
std::pair<std::vector<NamePairRecord>, FilterReport> filter_cascade(
    const std::vector<NamePairRecord>& pairs, const FrequencyUniverse& universe,
    std::size_t topk, double jaccard_min);

struct SampleEntry {
  Name source;
  Name target;
  int edit_distance = 0;
  bool operator==(const SampleEntry&) const = default;
};

struct SamplingManifest {
  std::vector<SampleEntry> samples;
  std::vector<int> empty_strata;  // requested strata with no pairs
  std::uint64_t seed = 0;
};

// Deterministic per_stratum-sized samples for manual labeling, stratified by
// edit distance. Empty strata are reported, not fatal.
SamplingManifest false_positive_sample(const std::vector<NamePairRecord>& pairs,
                                       const std::vector<int>& strata, std::size_t per_stratum,
                                       std::uint64_t seed);

struct CorpusStatistics {
  std::map<int, std::size_t> edit_distance_histogram;
  // Over edit-distance-1 pairs only; all zero when there are none.
  double pct_deletes = 0.0;
  double pct_inserts = 0.0;
  double pct_replaces = 0.0;
  std::size_t ed1_pairs = 0;
};

CorpusStatistics corpus_statistics(const std::vector<NamePairRecord>& pairs);

// user \t unix_timestamp \t raw_name
std::vector<QueryLogEvent> parse_query_log(const std::vector<std::string>& lines);
// tree_name \t record_name \t user
std::vector<AttachmentRow> parse_attachments(const std::vector<std::string>& lines);

}  // namespace namevar
