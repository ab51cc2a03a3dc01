#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "namevar/core.hpp"

namespace namevar {

// Character n-gram name model with boundary symbols.
//
// Smoothing is interpolated modified Kneser-Ney with discounts estimated from
// count-of-counts; when those are degenerate (common for character corpora:
// few distinct grams occur exactly 3 or 4 times) the whole model falls back
// to Witten-Bell. Unknown characters get a fixed 1e-7 floor spliced into the
// unigram distribution before the higher orders are estimated, which keeps
// every stored context normalized to 1 within a few ulps.
//
// Internally grams are byte strings: 'a'..'z' plus reserved bytes for the
// begin/end/unknown symbols. All stored values are log10 probabilities, so a
// model loaded from its ARPA text scores identically to the freshly trained
// one, and save -> load -> save reproduces the text byte for byte.

enum class LmWeighting { forms, frequency };
enum class LmSmoothing { kneser_ney, witten_bell };

std::string_view smoothing_name(LmSmoothing s);

class CharLanguageModel {
 public:
  static constexpr char kBos = '\x01';
  static constexpr char kEos = '\x02';
  static constexpr char kUnk = '\x03';

  int order() const { return order_; }
  LmSmoothing smoothing() const { return smoothing_; }
  const std::string& vocabulary() const { return vocab_; }  // sorted symbol bytes, EOS included

  // Natural-log probability of the boundary-wrapped name.
  double score(const Name& name) const;

  // log10 P(last symbol | preceding symbols) for a full window of `order`
  // symbol bytes (BOS-padded). Backoff applied as needed.
  double window_log10(std::string_view window) const;

  // Incremental interface for decoding: start from initial_context(), feed
  // one character at a time, close with end_log10.
  std::string initial_context() const { return std::string(static_cast<std::size_t>(order_ - 1), kBos); }
  double step_log10(std::string& context, char next) const;
  double end_log10(const std::string& context) const;

  std::string to_arpa() const;
  static CharLanguageModel from_arpa(const std::string& text);

  // Exposed for tests: stored log10 prob / backoff weight of a byte gram.
  const std::unordered_map<std::string, double>& stored_logp(int k) const { return logp_[static_cast<std::size_t>(k)]; }
  const std::unordered_map<std::string, double>& stored_bow(int k) const { return bow_[static_cast<std::size_t>(k)]; }

 private:
  friend CharLanguageModel train_lm(const std::vector<std::pair<Name, std::uint64_t>>&, int,
                                    LmWeighting);
  int order_ = 0;
  LmSmoothing smoothing_ = LmSmoothing::kneser_ney;
  std::string vocab_;
  // logp_[k]: gram (k bytes) -> log10 prob; bow_[k]: context (k bytes) -> log10 backoff
  std::vector<std::unordered_map<std::string, double>> logp_;
  std::vector<std::unordered_map<std::string, double>> bow_;
};

// Each distinct name counts once under `forms`; multiplicity in the input (or
// the explicit weights) counts under `frequency`.
CharLanguageModel train_lm(const std::vector<Name>& names, int order,
                           LmWeighting weighting = LmWeighting::forms);
CharLanguageModel train_lm(const std::vector<std::pair<Name, std::uint64_t>>& weighted_names,
                           int order, LmWeighting weighting = LmWeighting::frequency);

}  // namespace namevar
