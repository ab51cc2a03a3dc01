// The three candidate-ranking rules compared by the experiments: decoder
// pass-through, same-phonetic-code by frequency, and similarity * freq^gamma.
// Ties everywhere: score descending, frequency descending, name ascending.
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "namevar/core.hpp"
#include "namevar/phonetic.hpp"

namespace namevar {

enum class SimilarityMeasure { levenshtein, jaro, jaro_winkler };

inline constexpr std::array<SimilarityMeasure, 3> kAllSimilarityMeasures = {
    SimilarityMeasure::levenshtein, SimilarityMeasure::jaro, SimilarityMeasure::jaro_winkler};

std::string_view measure_name(SimilarityMeasure m);
std::optional<SimilarityMeasure> measure_from_name(std::string_view name);
double similarity(SimilarityMeasure m, std::string_view a, std::string_view b);

// Decoder output is already the ranking; ranks are renumbered 1..n.
std::vector<RankedCandidate> rank_mt(std::vector<RankedCandidate> decoded);

// Universe names sharing the source's code, scored by their frequency.
std::vector<RankedCandidate> rank_phonetic(const Name& source, PhoneticMethod method,
                                           const FrequencyUniverse& universe);

// Every universe name scored similarity(source, name) * freq(name)^gamma,
// top `cutoff` kept.
std::vector<RankedCandidate> rank_similarity(const Name& source, SimilarityMeasure measure,
                                             double gamma, const FrequencyUniverse& universe,
                                             std::size_t cutoff = 1000);

// Batch form of rank_phonetic: encodes the universe once up front instead of
// once per source. rank() agrees with rank_phonetic exactly.
class PhoneticRanker {
 public:
  PhoneticRanker(PhoneticMethod method, const FrequencyUniverse& universe);
  std::vector<RankedCandidate> rank(const Name& source) const;

 private:
  PhoneticMethod method_;
  const FrequencyUniverse* universe_;
  // code -> indices into universe->by_rank(), ascending
  std::unordered_map<std::string, std::vector<std::size_t>> by_code_;
};

}  // namespace namevar
