// Monotone beam-search n-best decoder: segments the source left to right,
// scoring candidates by channel probability, language model, and length.
#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "namevar/alignment.hpp"
#include "namevar/core.hpp"
#include "namevar/langmodel.hpp"

namespace namevar {

struct DecoderConfig {
  int beam_width = 100;        // hypotheses kept per source-prefix length
  int nbest = 1000;            // distinct candidates returned
  double lm_weight = 1.0;      // on the natural-log language model score
  double tm_weight = 1.0;      // on the summed natural-log segment probs
  double length_penalty = 0.0; // per emitted character
};

// SegmentTable regrouped by source side for the per-position expansion loop.
// Build once, decode many.
class SegmentIndex {
 public:
  explicit SegmentIndex(const SegmentTable& table);
  struct Option {
    std::string target;
    double log_prob;  // ln p(source_segment | target_segment)
  };
  const std::vector<Option>* options(const std::string& source_seg) const {
    auto it = by_source_.find(source_seg);
    return it == by_source_.end() ? nullptr : &it->second;
  }
  std::size_t max_source_len() const { return max_source_len_; }

 private:
  std::unordered_map<std::string, std::vector<Option>> by_source_;
  std::size_t max_source_len_ = 0;
};

// Top-nbest distinct target strings by
//   tm_weight * sum(ln p_seg) + lm_weight * ln P(target) + length_penalty * len,
// over all monotone segmentations of the source. Every character carries an
// implicit identity segment with probability 1e-6, so any source decodes.
// Duplicate derivations of one string keep the max score; ties in the final
// order break lexicographically.
std::vector<RankedCandidate> decode(const Name& source, const SegmentIndex& index,
                                    const CharLanguageModel& lm, const DecoderConfig& config = {});
std::vector<RankedCandidate> decode(const Name& source, const SegmentTable& segments,
                                    const CharLanguageModel& lm, const DecoderConfig& config = {});

}  // namespace namevar
