#include "namevar/dataprep.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "namevar/similarity.hpp"
#include "namevar/util.hpp"

namespace namevar {

namespace {

struct PairKey {
  Name source;
  Name target;
  bool operator<(const PairKey& o) const {
    return source != o.source ? source < o.source : target < o.target;
  }
};

struct PairAgg {
  std::uint64_t cooccurrence = 0;
};

std::vector<std::string> sorted_unique(const std::set<std::string>& s) {
  return {s.begin(), s.end()};
}

// Assemble aggregated pairs into records, attaching per-name marginal counts
// and per-name user sets.
std::vector<NamePairRecord> build_records(
    const std::map<PairKey, PairAgg>& agg,
    const std::map<Name, std::uint64_t>& source_counts,
    const std::map<Name, std::uint64_t>& target_counts,
    const std::map<Name, std::set<std::string>>& source_users,
    const std::map<Name, std::set<std::string>>& target_users) {
  std::vector<NamePairRecord> out;
  out.reserve(agg.size());
  for (const auto& [key, a] : agg) {
    NamePairRecord rec;
    rec.source = key.source;
    rec.target = key.target;
    rec.cooccurrence = a.cooccurrence;
    rec.source_count = source_counts.at(key.source);
    rec.target_count = target_counts.at(key.target);
    rec.source_users = sorted_unique(source_users.at(key.source));
    rec.target_users = sorted_unique(target_users.at(key.target));
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace

std::vector<NamePairRecord> pair_sessions(std::vector<QueryLogEvent> events,
                                          std::uint64_t window_seconds, bool all_pairs,
                                          std::size_t* dropped_malformed) {
  if (dropped_malformed) *dropped_malformed = 0;

  // Normalized per-user streams in chronological order (stable on ties).
  std::map<std::string, std::vector<std::pair<std::uint64_t, Name>>> streams;
  std::map<Name, std::uint64_t> occurrences;
  std::map<Name, std::set<std::string>> users_of;
  std::stable_sort(events.begin(), events.end(),
                   [](const QueryLogEvent& a, const QueryLogEvent& b) {
                     return a.user != b.user ? a.user < b.user : a.timestamp < b.timestamp;
                   });
  for (const auto& ev : events) {
    const auto name = normalize(ev.raw_name);
    if (!name) {
      if (dropped_malformed) ++*dropped_malformed;
      continue;
    }
    streams[ev.user].push_back({ev.timestamp, *name});
    ++occurrences[*name];
    users_of[*name].insert(ev.user);
  }

  std::map<PairKey, PairAgg> agg;
  for (const auto& [user, stream] : streams) {
    (void)user;
    for (std::size_t i = 0; i < stream.size(); ++i) {
      const std::size_t last = all_pairs ? stream.size() : std::min(stream.size(), i + 2);
      for (std::size_t j = i + 1; j < last; ++j) {
        if (stream[j].first - stream[i].first >= window_seconds) break;  // sorted by time
        if (stream[i].second == stream[j].second) continue;
        agg[{stream[i].second, stream[j].second}].cooccurrence += 1;
      }
    }
  }
  return build_records(agg, occurrences, occurrences, users_of, users_of);
}

std::vector<NamePairRecord> aggregate_attachments(const std::vector<AttachmentRow>& rows,
                                                  std::size_t* dropped_malformed) {
  if (dropped_malformed) *dropped_malformed = 0;
  std::map<PairKey, PairAgg> agg;
  std::map<Name, std::uint64_t> tree_counts, record_counts;
  std::map<Name, std::set<std::string>> tree_users, record_users;
  for (const auto& row : rows) {
    const auto tree = normalize(row.tree_name);
    const auto record = normalize(row.record_name);
    if (!tree || !record) {
      if (dropped_malformed) ++*dropped_malformed;
      continue;
    }
    ++tree_counts[*tree];
    ++record_counts[*record];
    tree_users[*tree].insert(row.user);
    record_users[*record].insert(row.user);
    if (*tree == *record) continue;  // no spelling signal
    agg[{*tree, *record}].cooccurrence += 1;
  }
  return build_records(agg, tree_counts, record_counts, tree_users, record_users);
}

std::pair<std::vector<NamePairRecord>, FilterReport> filter_cascade(
    const std::vector<NamePairRecord>& pairs, const FrequencyUniverse& universe, std::size_t topk,
    double jaccard_min) {
  if (topk < 1) fail_config("E_TOPK", "top-k must be at least 1");
  if (!(jaccard_min >= 0.0 && jaccard_min <= 1.0))
    fail_config("E_JACCARD", "jaccard threshold must be in [0,1]");

  FilterReport report;
  report.input_pairs = pairs.size();

  std::vector<NamePairRecord> kept;
  for (const auto& rec : pairs)
    if (universe.contains(rec.source) && universe.contains(rec.target)) kept.push_back(rec);
  report.after_universe = kept.size();

  std::sort(kept.begin(), kept.end(), [](const NamePairRecord& a, const NamePairRecord& b) {
    if (a.cooccurrence != b.cooccurrence) return a.cooccurrence > b.cooccurrence;
    if (a.source != b.source) return a.source < b.source;
    return a.target < b.target;
  });
  if (kept.size() > topk) kept.resize(topk);
  report.after_cooccurrence_topk = kept.size();

  std::vector<NamePairRecord> final_pairs;
  for (auto& rec : kept)
    if (jaccard_index(rec.source_users, rec.target_users) >= jaccard_min)
      final_pairs.push_back(std::move(rec));
  report.after_jaccard = final_pairs.size();

  return {std::move(final_pairs), report};
}

SamplingManifest false_positive_sample(const std::vector<NamePairRecord>& pairs,
                                       const std::vector<int>& strata, std::size_t per_stratum,
                                       std::uint64_t seed) {
  if (pairs.empty()) fail_input("E_EMPTY_INPUT", "nothing to sample from");

  // Canonical order before shuffling: the sample depends only on the pair
  // set, the strata, and the seed.
  std::map<int, std::vector<SampleEntry>> by_distance;
  for (const auto& rec : pairs) {
    const int d = levenshtein_distance(rec.source, rec.target);
    by_distance[d].push_back({rec.source, rec.target, d});
  }
  for (auto& [d, entries] : by_distance) {
    (void)d;
    std::sort(entries.begin(), entries.end(), [](const SampleEntry& a, const SampleEntry& b) {
      return a.source != b.source ? a.source < b.source : a.target < b.target;
    });
  }

  SamplingManifest manifest;
  manifest.seed = seed;
  std::mt19937_64 rng(seed);
  for (int stratum : strata) {
    auto it = by_distance.find(stratum);
    if (it == by_distance.end() || it->second.empty()) {
      manifest.empty_strata.push_back(stratum);
      continue;
    }
    std::vector<SampleEntry> pool = it->second;
    deterministic_shuffle(pool, rng);
    const std::size_t take = std::min(per_stratum, pool.size());
    manifest.samples.insert(manifest.samples.end(), pool.begin(), pool.begin() + take);
  }
  return manifest;
}

CorpusStatistics corpus_statistics(const std::vector<NamePairRecord>& pairs) {
  CorpusStatistics stats;
  std::size_t deletes = 0, inserts = 0, replaces = 0;
  for (const auto& rec : pairs) {
    const int d = levenshtein_distance(rec.source, rec.target);
    ++stats.edit_distance_histogram[d];
    if (d == 1) {
      const EditOpsBreakdown ops = edit_ops_breakdown(rec.source, rec.target);
      deletes += ops.deletes;
      inserts += ops.inserts;
      replaces += ops.replaces;
      ++stats.ed1_pairs;
    }
  }
  if (stats.ed1_pairs > 0) {
    const double total = static_cast<double>(deletes + inserts + replaces);
    stats.pct_deletes = 100.0 * deletes / total;
    stats.pct_inserts = 100.0 * inserts / total;
    stats.pct_replaces = 100.0 * replaces / total;
  }
  return stats;
}

std::vector<QueryLogEvent> parse_query_log(const std::vector<std::string>& lines) {
  std::vector<QueryLogEvent> out;
  out.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto fields = split(lines[i], '\t');
    if (fields.size() != 3)
      fail_input("E_PARSE", "query log line " + std::to_string(i + 1) + ": expected 3 fields");
    out.push_back({std::string(fields[0]), parse_u64(fields[1]), std::string(fields[2])});
  }
  return out;
}

std::vector<AttachmentRow> parse_attachments(const std::vector<std::string>& lines) {
  std::vector<AttachmentRow> out;
  out.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto fields = split(lines[i], '\t');
    if (fields.size() != 3)
      fail_input("E_PARSE", "attachment line " + std::to_string(i + 1) + ": expected 3 fields");
    out.push_back({std::string(fields[0]), std::string(fields[1]), std::string(fields[2])});
  }
  return out;
}

}  // namespace namevar
