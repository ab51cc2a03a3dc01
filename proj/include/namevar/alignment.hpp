// Character-level EM alignment and segment extraction: learns the channel
// model from name pairs. train_model1 -> viterbi_align (both directions) ->
// symmetrize (grow-diag-final-and) -> extract_segments.
#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "namevar/core.hpp"

namespace namevar {

struct WeightedNamePair {
  Name source;
  Name target;
  double weight = 1.0;
};

// t(target_char | source_char), with kNullRow as the extra conditioning
// symbol for characters the source does not explain. Rows sum to 1.
class TranslationTable {
 public:
  static constexpr char kNullRow = '\0';

  double prob(char source_or_null, char target) const {
    auto row = rows_.find(source_or_null);
    if (row == rows_.end()) return 0.0;
    auto cell = row->second.find(target);
    return cell == row->second.end() ? 0.0 : cell->second;
  }
  void set(char source_or_null, char target, double p) { rows_[source_or_null][target] = p; }
  const std::map<char, std::map<char, double>>& rows() const { return rows_; }

 private:
  std::map<char, std::map<char, double>> rows_;
};

// (source_position, target_position) links for one name pair.
using AlignmentLink = std::pair<std::size_t, std::size_t>;
using AlignmentMatrix = std::set<AlignmentLink>;

struct SegmentStats {
  double p_forward = 0.0;   // p(target_segment | source_segment)
  double p_backward = 0.0;  // p(source_segment | target_segment)
  bool operator==(const SegmentStats&) const = default;
};

class SegmentTable {
 public:
  using Key = std::pair<std::string, std::string>;  // (source_segment, target_segment)

  void set(const std::string& source_seg, const std::string& target_seg, SegmentStats stats) {
    entries_[{source_seg, target_seg}] = stats;
  }
  const SegmentStats* find(const std::string& source_seg, const std::string& target_seg) const {
    auto it = entries_.find({source_seg, target_seg});
    return it == entries_.end() ? nullptr : &it->second;
  }
  const std::map<Key, SegmentStats>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool operator==(const SegmentTable&) const = default;

  // source \t target \t p_forward \t p_backward per line, sorted by key.
  std::string to_text() const;
  static SegmentTable from_text(std::string_view text);

 private:
  std::map<Key, SegmentStats> entries_;
};

struct Model1Config {
  int iterations = 10;
  double null_prior = 0.05;          // fixed prior mass on the NULL row
  double diagonal_sharpness = 4.0;   // lambda in exp(-lambda * |j/m - i/n|)
  double min_gain_per_weight = 1e-6; // early stop when mean LL gain drops below
  bool parallel = true;              // blocked E-step (bit-identical to serial)
};

// IBM-Model-1-style EM over characters with a diagonal position prior.
// Weights scale each pair's sufficient statistics. If log_likelihoods is
// given it receives one corpus log-likelihood per completed iteration.
TranslationTable train_model1(const std::vector<WeightedNamePair>& pairs,
                              const Model1Config& config = {},
                              std::vector<double>* log_likelihoods = nullptr);
TranslationTable train_model1(const std::vector<WeightedNamePair>& pairs, int iterations);

// Links every source position to its argmax target position (prior included,
// so repeated characters spread out), or to nothing when no target has mass.
// Ties break toward the smallest target position.
AlignmentMatrix viterbi_align(const TranslationTable& table, const Name& source,
                              const Name& target, double diagonal_sharpness = 4.0);

// Grow-diag-final-and: intersection, grown into the union along the eight
// neighbouring offsets while either endpoint is uncovered, then a final pass
// adding union links whose endpoints are both uncovered.
AlignmentMatrix symmetrize(const AlignmentMatrix& forward, const AlignmentMatrix& backward);

// All alignment-consistent contiguous blocks with side lengths in [1, max_len],
// scored by relative frequency in both directions.
SegmentTable extract_segments(const std::vector<WeightedNamePair>& pairs,
                              const std::vector<AlignmentMatrix>& alignments,
                              std::size_t max_len = 3);

// Whole channel-model build: EM in both directions, per-pair Viterbi,
// symmetrization, extraction.
SegmentTable learn_segments(const std::vector<WeightedNamePair>& pairs,
                            const Model1Config& config = {}, std::size_t max_len = 3);

namespace detail {

// Dense working form of the translation table: rows a-z plus NULL at 26.
using DenseTable = std::array<std::array<double, 26>, 27>;
inline constexpr std::size_t kNullIndex = 26;

struct EStepPartial {
  DenseTable counts{};
  double log_likelihood = 0.0;
};

// Expected counts and log-likelihood over pairs[begin, end).
void estep_block(const std::vector<WeightedNamePair>& pairs, std::size_t begin, std::size_t end,
                 const DenseTable& table, const Model1Config& config, EStepPartial& out);

// Fixed-size blocks reduced in block order, so the parallel result is
// bit-identical to the serial one regardless of thread count.
EStepPartial run_estep(const std::vector<WeightedNamePair>& pairs, const DenseTable& table,
                       const Model1Config& config, bool parallel);

}  // namespace detail

}  // namespace namevar
