#include "namevar/ranking.hpp"

#include <algorithm>
#include <cmath>

#include "namevar/similarity.hpp"
#include "namevar/util.hpp"

namespace namevar {

std::string_view measure_name(SimilarityMeasure m) {
  switch (m) {
    case SimilarityMeasure::levenshtein: return "levenshtein";
    case SimilarityMeasure::jaro: return "jaro";
    case SimilarityMeasure::jaro_winkler: return "jaro-winkler";
  }
  fail_internal("unknown similarity measure");
}

std::optional<SimilarityMeasure> measure_from_name(std::string_view name) {
  std::string key(name);
  std::replace(key.begin(), key.end(), '_', '-');
  for (SimilarityMeasure m : kAllSimilarityMeasures)
    if (key == measure_name(m)) return m;
  return std::nullopt;
}

double similarity(SimilarityMeasure m, std::string_view a, std::string_view b) {
  switch (m) {
    case SimilarityMeasure::levenshtein: return levenshtein_similarity(a, b);
    case SimilarityMeasure::jaro: return jaro(a, b);
    case SimilarityMeasure::jaro_winkler: return jaro_winkler(a, b);
  }
  fail_internal("unknown similarity measure");
}

std::vector<RankedCandidate> rank_mt(std::vector<RankedCandidate> decoded) {
  for (std::size_t i = 0; i < decoded.size(); ++i) decoded[i].rank = static_cast<int>(i + 1);
  return decoded;
}

std::vector<RankedCandidate> rank_phonetic(const Name& source, PhoneticMethod method,
                                           const FrequencyUniverse& universe) {
  if (universe.empty()) fail_input("E_EMPTY_INPUT", "phonetic ranking needs a universe");
  if (!is_valid_name(source)) fail_input("E_PARSE", "invalid source name '" + source + "'");
  const PhoneticCode source_code = encode(method, source);
  std::vector<RankedCandidate> out;
  // by_rank is count descending, name ascending: exactly the required order.
  for (const auto& [name, count] : universe.by_rank())
    if (codes_match(method, source_code, encode(method, name)))
      out.push_back({name, static_cast<double>(count), static_cast<int>(out.size()) + 1});
  return out;
}

std::vector<RankedCandidate> rank_similarity(const Name& source, SimilarityMeasure measure,
                                             double gamma, const FrequencyUniverse& universe,
                                             std::size_t cutoff) {
  if (universe.empty()) fail_input("E_EMPTY_INPUT", "similarity ranking needs a universe");
  if (!is_valid_name(source)) fail_input("E_PARSE", "invalid source name '" + source + "'");
  if (!(gamma > 0.0)) fail_config("E_GAMMA", "frequency exponent must be positive");
  if (cutoff < 1) fail_config("E_CUTOFF", "cutoff must be at least 1");

  std::vector<RankedCandidate> out;
  out.reserve(universe.size());
  for (const auto& [name, count] : universe.by_rank())
    out.push_back({name, similarity(measure, source, name) * std::pow((double)count, gamma), 0});
  // Stable on the frequency-descending name-ascending input: equal scores
  // keep that order, which is the documented tie-break.
  std::stable_sort(out.begin(), out.end(), [](const RankedCandidate& a, const RankedCandidate& b) {
    return a.score > b.score;
  });
  if (out.size() > cutoff) out.resize(cutoff);
  for (std::size_t i = 0; i < out.size(); ++i) out[i].rank = static_cast<int>(i + 1);
  return out;
}

PhoneticRanker::PhoneticRanker(PhoneticMethod method, const FrequencyUniverse& universe)
    : method_(method), universe_(&universe) {
  if (universe.empty()) fail_input("E_EMPTY_INPUT", "phonetic ranking needs a universe");
  const auto& ranked = universe.by_rank();
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    const PhoneticCode code = encode(method_, ranked[i].first);
    by_code_[code.primary].push_back(i);
    if (method_ == PhoneticMethod::double_metaphone && code.alternate != code.primary)
      by_code_[code.alternate].push_back(i);
  }
}

std::vector<RankedCandidate> PhoneticRanker::rank(const Name& source) const {
  if (!is_valid_name(source)) fail_input("E_PARSE", "invalid source name '" + source + "'");
  const PhoneticCode code = encode(method_, source);
  std::vector<std::size_t> hits;
  if (auto it = by_code_.find(code.primary); it != by_code_.end())
    hits.insert(hits.end(), it->second.begin(), it->second.end());
  if (method_ == PhoneticMethod::double_metaphone && code.alternate != code.primary)
    if (auto it = by_code_.find(code.alternate); it != by_code_.end())
      hits.insert(hits.end(), it->second.begin(), it->second.end());
  std::sort(hits.begin(), hits.end());
  hits.erase(std::unique(hits.begin(), hits.end()), hits.end());

  const auto& ranked = universe_->by_rank();
  std::vector<RankedCandidate> out;
  out.reserve(hits.size());
  for (std::size_t i : hits)
    out.push_back(
        {ranked[i].first, static_cast<double>(ranked[i].second), static_cast<int>(out.size()) + 1});
  return out;
}

}  // namespace namevar
