#pragma once

#include <vector>

#include "namevar/core.hpp"
#include "namevar/decoder.hpp"
#include "namevar/langmodel.hpp"
#include "namevar/ranking.hpp"

namespace namevar {

// Batch kernels over independent sources. Output slot i depends only on
// sources[i], so the OpenMP path is bitwise identical to the plain loop;
// parallel = false selects the serial reference path used as the test oracle.
// An exception thrown for any source aborts the batch and is rethrown.

std::vector<std::vector<RankedCandidate>> decode_batch(const std::vector<Name>& sources,
                                                       const SegmentIndex& index,
                                                       const CharLanguageModel& lm,
                                                       const DecoderConfig& config = {},
                                                       bool parallel = true);

std::vector<std::vector<RankedCandidate>> rank_similarity_batch(
    const std::vector<Name>& sources, SimilarityMeasure measure, double gamma,
    const FrequencyUniverse& universe, std::size_t cutoff = 1000, bool parallel = true);

// Encodes the universe once, then ranks each source against the shared index.
std::vector<std::vector<RankedCandidate>> rank_phonetic_batch(const std::vector<Name>& sources,
                                                              PhoneticMethod method,
                                                              const FrequencyUniverse& universe,
                                                              bool parallel = true);

}  // namespace namevar
