#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "namevar/core.hpp"

namespace namevar {

// One stochastic rewrite: when the scan reaches an occurrence of `from`, the
// rule fires with `probability` and emits `to` in its place.
struct NoiseRule {
  std::string from;  // nonempty, a-z
  std::string to;    // a-z, may be empty (deletion)
  double probability = 1.0;  // in (0,1]
  bool operator==(const NoiseRule&) const = default;
};

struct NoiseChannel {
  std::vector<NoiseRule> rules;
  int max_applications = 2;  // per name
};

// Built-in bundles: "ocr" (letter-shape confusions), "phonetic-drift"
// (sound-preserving spelling drift), "suffix" (surname suffix swaps).
NoiseChannel named_channel(const std::string& name);
extern const char* const kChannelNames[3];

// Single left-to-right pass: at each position the rules are tried in order;
// the first whose source matches and whose coin flip succeeds consumes its
// source and emits its target, until max_applications have fired. Uniform
// draws come from the bit-pinned mt19937_64 stream, one per matching rule try.
Name apply_channel(const Name& name, const NoiseChannel& channel, std::mt19937_64& rng);

struct SynthConfig {
  std::size_t pair_count = 10000;
  double zipf_exponent = 1.0;  // 0 = uniform
  std::uint64_t seed = 7;
  int num_users = 100;  // synthetic user pool size
};

struct SynthCorpus {
  // aggregated directed pairs, sorted by (source, target); identity and
  // empty variants are dropped
  std::vector<NamePairRecord> pairs;
  // per-name occurrence totals (every draw counts the source, every kept
  // pair counts the variant), sorted by name; feed to build_universe
  std::vector<std::pair<Name, std::uint64_t>> name_counts;
};

// Draws `pair_count` sources from the Zipf law over base_names (rank = input
// order), corrupts each through the channel with a per-name sub-seeded rng,
// and aggregates the survivors into corpus records with synthetic user sets.
SynthCorpus generate_corpus(const std::vector<Name>& base_names, const NoiseChannel& channel,
                            const SynthConfig& config);

}  // namespace namevar
