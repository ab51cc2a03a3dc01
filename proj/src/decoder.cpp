#include "namevar/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "namevar/util.hpp"

namespace namevar {

namespace {

constexpr double kIdentityBackoff = 1e-6;

struct Hypothesis {
  std::string emitted;
  std::string lm_context;
  double tm = 0.0;    // sum of ln p_seg
  double lm10 = 0.0;  // sum of per-character log10 LM steps
};

double partial_score(const Hypothesis& h, const DecoderConfig& cfg) {
  return cfg.tm_weight * h.tm + cfg.lm_weight * std::numbers::ln10 * h.lm10 +
         cfg.length_penalty * static_cast<double>(h.emitted.size());
}

// Recombine same-string hypotheses keeping the max score, order the rest by
// score descending with a lexicographic tie-break, and cap at beam_width.
void prune(std::vector<Hypothesis>& bucket, const DecoderConfig& cfg) {
  std::sort(bucket.begin(), bucket.end(), [&](const Hypothesis& a, const Hypothesis& b) {
    if (a.emitted != b.emitted) return a.emitted < b.emitted;
    return partial_score(a, cfg) > partial_score(b, cfg);
  });
  bucket.erase(std::unique(bucket.begin(), bucket.end(),
                           [](const Hypothesis& a, const Hypothesis& b) {
                             return a.emitted == b.emitted;
                           }),
               bucket.end());
  std::stable_sort(bucket.begin(), bucket.end(), [&](const Hypothesis& a, const Hypothesis& b) {
    const double sa = partial_score(a, cfg);
    const double sb = partial_score(b, cfg);
    if (sa != sb) return sa > sb;
    return a.emitted < b.emitted;
  });
  if (bucket.size() > static_cast<std::size_t>(cfg.beam_width))
    bucket.resize(static_cast<std::size_t>(cfg.beam_width));
}

void check_config(const DecoderConfig& cfg) {
  if (cfg.beam_width < 1) fail_config("E_DECODER_CONFIG", "beam width must be at least 1");
  if (cfg.nbest < 1) fail_config("E_DECODER_CONFIG", "nbest must be at least 1");
  for (double w : {cfg.lm_weight, cfg.tm_weight, cfg.length_penalty})
    if (!std::isfinite(w)) fail_config("E_DECODER_CONFIG", "decoder weights must be finite");
}

}  // namespace

SegmentIndex::SegmentIndex(const SegmentTable& table) {
  for (const auto& [key, stats] : table.entries()) {
    if (key.first.empty()) continue;  // decoding consumes source characters
    by_source_[key.first].push_back({key.second, std::log(stats.p_backward)});
    max_source_len_ = std::max(max_source_len_, key.first.size());
  }
}

std::vector<RankedCandidate> decode(const Name& source, const SegmentIndex& index,
                                    const CharLanguageModel& lm, const DecoderConfig& config) {
  check_config(config);
  if (!is_valid_name(source)) fail_input("E_PARSE", "invalid source name '" + source + "'");

  const std::size_t n = source.size();
  const std::size_t max_len = std::max<std::size_t>(index.max_source_len(), 1);
  std::vector<std::vector<Hypothesis>> buckets(n + 1);
  buckets[0].push_back({"", lm.initial_context(), 0.0, 0.0});

  auto extend = [&](const Hypothesis& h, std::size_t pos, std::size_t len,
                    const std::string& target, double log_prob) {
    Hypothesis next = h;
    next.tm += log_prob;
    for (char c : target) next.lm10 += lm.step_log10(next.lm_context, c);
    next.emitted += target;
    buckets[pos + len].push_back(std::move(next));
  };

  for (std::size_t pos = 0; pos < n; ++pos) {
    prune(buckets[pos], config);
    for (const Hypothesis& h : buckets[pos]) {
      for (std::size_t len = 1; len <= std::min(max_len, n - pos); ++len) {
        const std::string seg = source.substr(pos, len);
        if (const auto* opts = index.options(seg))
          for (const auto& opt : *opts) extend(h, pos, len, opt.target, opt.log_prob);
        if (len == 1) extend(h, pos, len, seg, std::log(kIdentityBackoff));
      }
    }
    buckets[pos].clear();
  }

  // Close hypotheses and keep the best derivation per distinct string.
  std::unordered_map<std::string, double> best;
  for (const Hypothesis& h : buckets[n]) {
    if (h.emitted.empty()) continue;
    const double lm10 = h.lm10 + lm.end_log10(h.lm_context);
    const double score = config.tm_weight * h.tm +
                         config.lm_weight * std::numbers::ln10 * lm10 +
                         config.length_penalty * static_cast<double>(h.emitted.size());
    auto [it, inserted] = best.emplace(h.emitted, score);
    if (!inserted && score > it->second) it->second = score;
  }
  if (best.empty()) throw Error("E_NO_DERIVATION", 4, "no derivation for '" + source + "'");

  std::vector<RankedCandidate> out;
  out.reserve(best.size());
  for (auto& [cand, score] : best) out.push_back({cand, score, 0});
  std::sort(out.begin(), out.end(), [](const RankedCandidate& a, const RankedCandidate& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.candidate < b.candidate;
  });
  if (out.size() > static_cast<std::size_t>(config.nbest))
    out.resize(static_cast<std::size_t>(config.nbest));
  for (std::size_t i = 0; i < out.size(); ++i) out[i].rank = static_cast<int>(i + 1);
  return out;
}

std::vector<RankedCandidate> decode(const Name& source, const SegmentTable& segments,
                                    const CharLanguageModel& lm, const DecoderConfig& config) {
  return decode(source, SegmentIndex(segments), lm, config);
}

}  // namespace namevar
