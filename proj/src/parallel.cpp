#include "namevar/parallel.hpp"

#include <atomic>
#include <cstddef>
#include <exception>

namespace namevar {

namespace {

// runs fn(0..n-1) in any order; the first exception wins and is rethrown
// after the loop drains (OpenMP regions must not leak exceptions)
template <typename Fn>
void for_each_index(std::size_t n, bool parallel, Fn&& fn) {
  if (!parallel) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<bool> failed{false};
  std::exception_ptr err = nullptr;
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
    if (failed.load(std::memory_order_relaxed)) continue;
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(namevar_parallel_error)
      {
        if (!err) err = std::current_exception();
      }
      failed.store(true, std::memory_order_relaxed);
    }
  }
  if (err) std::rethrow_exception(err);
}

}  // namespace

std::vector<std::vector<RankedCandidate>> decode_batch(const std::vector<Name>& sources,
                                                       const SegmentIndex& index,
                                                       const CharLanguageModel& lm,
                                                       const DecoderConfig& config,
                                                       bool parallel) {
  std::vector<std::vector<RankedCandidate>> out(sources.size());
  for_each_index(sources.size(), parallel,
                 [&](std::size_t i) { out[i] = decode(sources[i], index, lm, config); });
  return out;
}

std::vector<std::vector<RankedCandidate>> rank_similarity_batch(
    const std::vector<Name>& sources, SimilarityMeasure measure, double gamma,
    const FrequencyUniverse& universe, std::size_t cutoff, bool parallel) {
  std::vector<std::vector<RankedCandidate>> out(sources.size());
  for_each_index(sources.size(), parallel, [&](std::size_t i) {
    out[i] = rank_similarity(sources[i], measure, gamma, universe, cutoff);
  });
  return out;
}

std::vector<std::vector<RankedCandidate>> rank_phonetic_batch(const std::vector<Name>& sources,
                                                              PhoneticMethod method,
                                                              const FrequencyUniverse& universe,
                                                              bool parallel) {
  const PhoneticRanker ranker(method, universe);
  std::vector<std::vector<RankedCandidate>> out(sources.size());
  for_each_index(sources.size(), parallel,
                 [&](std::size_t i) { out[i] = ranker.rank(sources[i]); });
  return out;
}

}  // namespace namevar
