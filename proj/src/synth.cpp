#include "namevar/synth.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "namevar/util.hpp"

namespace namevar {

namespace {

bool segment_ok(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return c >= 'a' && c <= 'z'; });
}

void check_channel(const NoiseChannel& channel) {
  if (channel.max_applications < 0)
    fail_config("E_CHANNEL", "max_applications must be non-negative");
  for (const auto& r : channel.rules) {
    if (r.from.empty() || !segment_ok(r.from) || !segment_ok(r.to))
      fail_config("E_CHANNEL", "rule segments must be a-z with a nonempty source: '" +
                                   r.from + "' -> '" + r.to + "'");
    if (!(r.probability > 0.0) || r.probability > 1.0)
      fail_config("E_CHANNEL", "rule probability must be in (0,1]");
  }
}

// uniform double in [0,1) from the top 53 bits, identical on every platform
// (the distribution templates in <random> are implementation-defined)
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

const char* const kChannelNames[3] = {"ocr", "phonetic-drift", "suffix"};

NoiseChannel named_channel(const std::string& name) {
  if (name == "ocr") {
    return {{
                {"rn", "m", 0.45},
                {"m", "rn", 0.2},
                {"cl", "d", 0.3},
                {"l", "i", 0.3},
                {"i", "l", 0.2},
                {"u", "v", 0.3},
                {"v", "u", 0.3},
                {"e", "c", 0.15},
                {"h", "b", 0.2},
                {"b", "h", 0.2},
            },
            2};
  }
  if (name == "phonetic-drift") {
    return {{
                {"ph", "f", 0.55},
                {"f", "ph", 0.2},
                {"ck", "k", 0.45},
                {"th", "t", 0.35},
                {"sch", "sh", 0.5},
                {"ie", "y", 0.4},
                {"y", "ie", 0.2},
                {"ee", "ea", 0.35},
                {"ou", "o", 0.3},
                {"ll", "l", 0.4},
                {"nn", "n", 0.4},
                {"ss", "s", 0.4},
                {"tt", "t", 0.4},
                {"a", "e", 0.12},
                {"o", "a", 0.1},
            },
            3};
  }
  if (name == "suffix") {
    return {{
                {"son", "sen", 0.6},
                {"sen", "son", 0.3},
                {"mann", "man", 0.5},
                {"man", "mann", 0.2},
                {"ez", "es", 0.4},
                {"es", "ez", 0.2},
                {"ski", "sky", 0.5},
                {"sky", "ski", 0.3},
            },
            1};
  }
  fail_config("E_CHANNEL", "unknown channel '" + name + "' (ocr, phonetic-drift, suffix)");
}

Name apply_channel(const Name& name, const NoiseChannel& channel, std::mt19937_64& rng) {
  check_channel(channel);
  std::string out;
  out.reserve(name.size() + 4);
  std::size_t i = 0;
  int fired = 0;
  while (i < name.size()) {
    const NoiseRule* hit = nullptr;
    if (fired < channel.max_applications) {
      for (const auto& r : channel.rules) {
        if (name.compare(i, r.from.size(), r.from) != 0) continue;
        if (uniform01(rng) < r.probability) {
          hit = &r;
          break;
        }
      }
    }
    if (hit) {
      out += hit->to;
      i += hit->from.size();
      ++fired;
    } else {
      out += name[i];
      ++i;
    }
  }
  return out;
}

SynthCorpus generate_corpus(const std::vector<Name>& base_names, const NoiseChannel& channel,
                            const SynthConfig& config) {
  if (base_names.empty()) fail_input("E_EMPTY_INPUT", "no base names to generate from");
  for (const auto& n : base_names)
    if (!is_valid_name(n)) fail_input("E_PARSE", "invalid base name '" + n + "'");
  check_channel(channel);
  if (!(config.zipf_exponent >= 0.0) || !std::isfinite(config.zipf_exponent))
    fail_config("E_SYNTH_CONFIG", "zipf exponent must be finite and non-negative");
  if (config.pair_count == 0) fail_config("E_SYNTH_CONFIG", "pair count must be positive");
  if (config.num_users < 1) fail_config("E_SYNTH_CONFIG", "need at least one synthetic user");

  // inverse-CDF sampling over the Zipf weights, rank = position in input order
  std::vector<double> cumulative(base_names.size());
  double total = 0.0;
  for (std::size_t k = 0; k < base_names.size(); ++k) {
    total += std::pow(static_cast<double>(k + 1), -config.zipf_exponent);
    cumulative[k] = total;
  }
  std::mt19937_64 master(config.seed);
  std::vector<std::size_t> draws(base_names.size(), 0);
  for (std::size_t d = 0; d < config.pair_count; ++d) {
    const double u = uniform01(master) * total;
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    const auto k = static_cast<std::size_t>(
        std::min<std::ptrdiff_t>(it - cumulative.begin(),
                                 static_cast<std::ptrdiff_t>(base_names.size()) - 1));
    ++draws[k];
  }

  // corrupt each name's draws with a sub-seeded stream so the per-name work
  // is order-independent and could run in parallel without changing output
  std::map<Name, std::uint64_t> occurrences;
  std::map<Name, std::set<std::string>> users;
  std::map<std::pair<Name, Name>, std::uint64_t> pair_counts;
  for (std::size_t k = 0; k < base_names.size(); ++k) {
    if (draws[k] == 0) continue;
    const Name& source = base_names[k];
    occurrences[source] += draws[k];
    std::mt19937_64 rng(config.seed ^ (fnv1a64(source) * 0x9e3779b97f4a7c15ULL));
    for (std::size_t d = 0; d < draws[k]; ++d) {
      const Name variant = apply_channel(source, channel, rng);
      if (variant.empty() || variant == source) continue;
      const std::string uid = "u" + std::to_string(rng() % static_cast<std::uint64_t>(
                                                               config.num_users));
      occurrences[variant] += 1;
      pair_counts[{source, variant}] += 1;
      users[source].insert(uid);
      users[variant].insert(uid);
    }
  }

  SynthCorpus corpus;
  corpus.pairs.reserve(pair_counts.size());
  for (const auto& [key, count] : pair_counts) {
    NamePairRecord rec;
    rec.source = key.first;
    rec.target = key.second;
    rec.cooccurrence = count;
    rec.source_count = occurrences[key.first];
    rec.target_count = occurrences[key.second];
    const auto& su = users[key.first];
    const auto& tu = users[key.second];
    rec.source_users.assign(su.begin(), su.end());
    rec.target_users.assign(tu.begin(), tu.end());
    corpus.pairs.push_back(std::move(rec));
  }
  corpus.name_counts.assign(occurrences.begin(), occurrences.end());
  return corpus;
}

}  // namespace namevar
