// Domain types shared by the whole pipeline: normalized names, corpus records,
// the frequency universe, cross-validation folds, and their text formats.
#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "namevar/util.hpp"

namespace namevar {

// Invariant: nonempty, characters a-z only. Produced by normalize().
using Name = std::string;

bool is_valid_name(std::string_view s);

// Lowercases and strips everything outside a-z. Empty result -> nullopt
// (EmptyAfterCleaning).
std::optional<Name> normalize(std::string_view raw);

struct RankedCandidate {
  Name candidate;
  double score = 0.0;
  int rank = 0;  // 1-based
  bool operator==(const RankedCandidate&) const = default;
};

struct NamePairRecord {
  Name source;
  Name target;
  std::uint64_t cooccurrence = 1;
  std::uint64_t source_count = 1;
  std::uint64_t target_count = 1;
  std::vector<std::string> source_users;  // sorted, unique
  std::vector<std::string> target_users;
  bool operator==(const NamePairRecord&) const = default;
};

class FrequencyUniverse {
 public:
  std::uint64_t freq(const Name& n) const {
    auto it = counts_.find(n);
    return it == counts_.end() ? 0 : it->second;
  }
  bool contains(const Name& n) const { return counts_.count(n) != 0; }
  std::size_t size() const { return by_rank_.size(); }
  bool empty() const { return by_rank_.empty(); }
  // count descending, name ascending
  const std::vector<std::pair<Name, std::uint64_t>>& by_rank() const { return by_rank_; }

  friend FrequencyUniverse build_universe(
      std::vector<std::pair<Name, std::uint64_t>> name_counts, std::size_t capacity);

 private:
  std::unordered_map<Name, std::uint64_t> counts_;
  std::vector<std::pair<Name, std::uint64_t>> by_rank_;
};

// Aggregates duplicate names, keeps the `capacity` highest counts; ties break
// lexicographically ascending.
FrequencyUniverse build_universe(std::vector<std::pair<Name, std::uint64_t>> name_counts,
                                 std::size_t capacity);

struct Fold {
  int index = 0;
  std::vector<NamePairRecord> train_pairs;
  std::vector<NamePairRecord> test_pairs;
};

// Groups pairs by source name and deals the shuffled groups round-robin, so a
// source never appears in both halves of one fold. Throws E_TOO_FEW_GROUPS
// when there are fewer distinct sources than folds.
std::vector<Fold> split_folds(const std::vector<NamePairRecord>& corpus, int k,
                              std::uint64_t seed);

// In-place Fisher-Yates on indices drawn from mt19937_64, which the standard
// pins bit-for-bit (std::shuffle's draw order is implementation-defined).
template <typename T>
void deterministic_shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(v[i - 1], v[j]);
  }
}

// Corpus rows: source \t target \t cooccurrence \t source_count \t target_count
// with optional \t source_users_csv \t target_users_csv.
std::vector<NamePairRecord> parse_corpus(const std::vector<std::string>& lines);
std::vector<NamePairRecord> read_corpus(const std::string& path);
std::string format_corpus(const std::vector<NamePairRecord>& records);
void write_corpus(const std::string& path, const std::vector<NamePairRecord>& records);

// Universe rows: name \t count.
FrequencyUniverse parse_universe(const std::vector<std::string>& lines, std::size_t capacity);
FrequencyUniverse read_universe(const std::string& path,
                                std::size_t capacity = static_cast<std::size_t>(-1));
std::string format_universe(const FrequencyUniverse& u);
void write_universe(const std::string& path, const FrequencyUniverse& u);

}  // namespace namevar
