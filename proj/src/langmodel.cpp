#include "namevar/langmodel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>

#include "namevar/util.hpp"

namespace namevar {

namespace {

constexpr double kUnkFloor = 1e-7;

using CountMap = std::unordered_map<std::string, std::uint64_t>;
using ProbMap = std::unordered_map<std::string, double>;

// Prediction events for one boundary-wrapped name: at every predicted
// position (each character and the single end symbol) the k-suffix of the
// window is counted for every k up to the model order.
void count_events(const Name& name, int order, std::uint64_t w, std::vector<CountMap>& raw) {
  std::string seq(static_cast<std::size_t>(order - 1), CharLanguageModel::kBos);
  seq += name;
  seq += CharLanguageModel::kEos;
  for (std::size_t pos = static_cast<std::size_t>(order - 1); pos < seq.size(); ++pos) {
    for (int k = 1; k <= order; ++k) {
      raw[static_cast<std::size_t>(k)][seq.substr(pos - static_cast<std::size_t>(k) + 1,
                                                  static_cast<std::size_t>(k))] += w;
    }
  }
}

// Kneser-Ney adjusted counts: raw at the top order and for begin-anchored
// grams, continuation counts (distinct left extensions) elsewhere.
std::vector<CountMap> adjusted_counts(const std::vector<CountMap>& raw, int order) {
  std::vector<CountMap> adj(static_cast<std::size_t>(order) + 1);
  adj[static_cast<std::size_t>(order)] = raw[static_cast<std::size_t>(order)];
  for (int k = order - 1; k >= 1; --k) {
    CountMap a;
    // distinct left extensions: each higher-order gram key is one extender
    for (const auto& [gram, c] : adj[static_cast<std::size_t>(k + 1)]) {
      (void)c;
      ++a[gram.substr(1)];
    }
    for (const auto& [gram, c] : raw[static_cast<std::size_t>(k)]) {
      if (gram.front() == CharLanguageModel::kBos) a[gram] = c;
    }
    adj[static_cast<std::size_t>(k)] = std::move(a);
  }
  return adj;
}

struct Discounts {
  std::array<double, 4> d;  // d[1..3] for counts 1, 2, >=3
};

// Count-of-counts discount estimation; nullopt marks the degenerate case
// that sends the whole model to Witten-Bell.
std::optional<std::vector<Discounts>> kn_discounts(const std::vector<CountMap>& adj, int order) {
  std::vector<Discounts> out(static_cast<std::size_t>(order) + 1);
  for (int k = 1; k <= order; ++k) {
    std::array<std::uint64_t, 5> t{};
    for (const auto& [gram, c] : adj[static_cast<std::size_t>(k)]) {
      if (c >= 1 && c <= 4) ++t[c];
    }
    if (t[1] == 0 || t[2] == 0 || t[3] == 0 || t[4] == 0) return std::nullopt;
    double y = static_cast<double>(t[1]) / (static_cast<double>(t[1]) + 2.0 * static_cast<double>(t[2]));
    Discounts d;
    d.d[0] = 0.0;
    d.d[1] = 1.0 - 2.0 * y * static_cast<double>(t[2]) / static_cast<double>(t[1]);
    d.d[2] = 2.0 - 3.0 * y * static_cast<double>(t[3]) / static_cast<double>(t[2]);
    d.d[3] = 3.0 - 4.0 * y * static_cast<double>(t[4]) / static_cast<double>(t[3]);
    if (!(d.d[1] >= 0.0 && d.d[1] <= 1.0)) return std::nullopt;
    if (!(d.d[2] >= 0.0 && d.d[2] <= 2.0)) return std::nullopt;
    if (!(d.d[3] >= 0.0 && d.d[3] <= 3.0)) return std::nullopt;
    out[static_cast<std::size_t>(k)] = d;
  }
  return out;
}

std::size_t discount_bucket(std::uint64_t c) { return c >= 3 ? 3 : static_cast<std::size_t>(c); }

// Linear-probability lookup with backoff over partially built tables.
double prob_linear(const std::vector<ProbMap>& p, const std::vector<ProbMap>& gamma,
                   int k, std::string_view gram) {
  if (k == 1) {
    auto it = p[1].find(std::string(gram));
    if (it != p[1].end()) return it->second;
    return p[1].at(std::string(1, CharLanguageModel::kUnk));
  }
  auto it = p[static_cast<std::size_t>(k)].find(std::string(gram));
  if (it != p[static_cast<std::size_t>(k)].end()) return it->second;
  double bow = 1.0;
  auto git = gamma[static_cast<std::size_t>(k - 1)].find(std::string(gram.substr(0, gram.size() - 1)));
  if (git != gamma[static_cast<std::size_t>(k - 1)].end()) bow = git->second;
  return bow * prob_linear(p, gamma, k - 1, gram.substr(1));
}

std::string render_gram(std::string_view gram) {
  std::string out;
  for (std::size_t i = 0; i < gram.size(); ++i) {
    if (i) out.push_back(' ');
    switch (gram[i]) {
      case CharLanguageModel::kBos: out += "<s>"; break;
      case CharLanguageModel::kEos: out += "</s>"; break;
      case CharLanguageModel::kUnk: out += "<unk>"; break;
      default: out.push_back(gram[i]);
    }
  }
  return out;
}

std::string parse_gram(std::string_view text) {
  std::string gram;
  for (std::string_view tok : split(text, ' ')) {
    if (tok == "<s>") gram.push_back(CharLanguageModel::kBos);
    else if (tok == "</s>") gram.push_back(CharLanguageModel::kEos);
    else if (tok == "<unk>") gram.push_back(CharLanguageModel::kUnk);
    else if (tok.size() == 1) gram.push_back(tok[0]);
    else fail_input("E_PARSE", "bad n-gram token '" + std::string(tok) + "' in model file");
  }
  return gram;
}

bool pure_bos(std::string_view gram) {
  return std::all_of(gram.begin(), gram.end(),
                     [](char c) { return c == CharLanguageModel::kBos; });
}

}  // namespace

std::string_view smoothing_name(LmSmoothing s) {
  return s == LmSmoothing::kneser_ney ? "kneser-ney" : "witten-bell";
}

CharLanguageModel train_lm(const std::vector<Name>& names, int order, LmWeighting weighting) {
  std::vector<std::pair<Name, std::uint64_t>> weighted;
  weighted.reserve(names.size());
  for (const Name& n : names) weighted.emplace_back(n, 1);
  return train_lm(weighted, order, weighting);
}

CharLanguageModel train_lm(const std::vector<std::pair<Name, std::uint64_t>>& weighted_names,
                           int order, LmWeighting weighting) {
  if (order < 2 || order > 6)
    fail_config("E_ORDER_RANGE", "language model order must be in [2,6], got " + std::to_string(order));
  if (weighted_names.empty()) fail_input("E_EMPTY_INPUT", "no names to train on");

  // aggregate multiplicity; forms weighting collapses every name to weight 1
  std::map<Name, std::uint64_t> agg;
  for (const auto& [name, w] : weighted_names) {
    if (!is_valid_name(name)) fail_input("E_PARSE", "invalid name in training data: '" + name + "'");
    if (w == 0) fail_input("E_PARSE", "zero weight for name '" + name + "'");
    agg[name] += w;
  }
  std::size_t max_len = 0;
  for (const auto& [name, w] : agg) max_len = std::max(max_len, name.size());
  if (max_len + 2 < static_cast<std::size_t>(order))
    fail_input("E_ORDER_TOO_LARGE",
               "OrderTooLargeForData: longest name has " + std::to_string(max_len) +
                   " characters, too short to observe any " + std::to_string(order) + "-gram");

  std::vector<CountMap> raw(static_cast<std::size_t>(order) + 1);
  for (const auto& [name, w] : agg)
    count_events(name, order, weighting == LmWeighting::forms ? 1 : w, raw);

  // vocabulary: seen characters plus the end symbol
  std::string vocab;
  {
    std::array<bool, 256> seen{};
    for (const auto& [name, w] : agg)
      for (char c : name) seen[static_cast<unsigned char>(c)] = true;
    for (int c = 0; c < 256; ++c)
      if (seen[static_cast<std::size_t>(c)]) vocab.push_back(static_cast<char>(c));
    vocab.insert(vocab.begin(), CharLanguageModel::kEos);  // sorts before 'a'
  }
  const double v_size = static_cast<double>(vocab.size());

  std::vector<ProbMap> p(static_cast<std::size_t>(order) + 1);
  std::vector<ProbMap> gamma(static_cast<std::size_t>(order) + 1);  // indexed by context length

  auto adj = adjusted_counts(raw, order);
  auto discounts = kn_discounts(adj, order);
  LmSmoothing smoothing = discounts ? LmSmoothing::kneser_ney : LmSmoothing::witten_bell;

  const std::vector<CountMap>& counts = discounts ? adj : raw;

  // unigram distribution over the vocabulary
  if (discounts) {
    const auto& d = (*discounts)[1].d;
    std::uint64_t a1 = 0;
    std::array<std::uint64_t, 4> n{};
    for (const auto& [gram, c] : counts[1]) {
      a1 += c;
      ++n[discount_bucket(c)];
    }
    double gamma_eps = (d[1] * static_cast<double>(n[1]) + d[2] * static_cast<double>(n[2]) +
                        d[3] * static_cast<double>(n[3])) /
                       static_cast<double>(a1);
    for (char w : vocab) {
      std::string g(1, w);
      auto it = counts[1].find(g);
      std::uint64_t c = it == counts[1].end() ? 0 : it->second;
      double disc = c > 0 ? d[discount_bucket(c)] : 0.0;
      p[1][g] = std::max(static_cast<double>(c) - disc, 0.0) / static_cast<double>(a1) +
                gamma_eps / v_size;
    }
    gamma[0][""] = gamma_eps;
  } else {
    std::uint64_t c_total = 0;
    for (const auto& [gram, c] : counts[1]) c_total += c;
    double t_types = static_cast<double>(counts[1].size());
    double lambda = static_cast<double>(c_total) / (static_cast<double>(c_total) + t_types);
    for (char w : vocab) {
      std::string g(1, w);
      auto it = counts[1].find(g);
      std::uint64_t c = it == counts[1].end() ? 0 : it->second;
      p[1][g] = lambda * static_cast<double>(c) / static_cast<double>(c_total) +
                (1.0 - lambda) / v_size;
    }
    gamma[0][""] = 1.0 - lambda;
  }

  // splice the unknown-symbol floor in before any higher order is estimated,
  // so interpolation closes to exactly 1 at every level
  {
    double s = 0.0;
    for (const auto& [g, pr] : p[1]) s += pr;
    double scale = (1.0 - kUnkFloor) / s;
    for (auto& [g, pr] : p[1]) pr *= scale;
    p[1][std::string(1, CharLanguageModel::kUnk)] = kUnkFloor;
  }

  for (int k = 2; k <= order; ++k) {
    const CountMap& level = counts[static_cast<std::size_t>(k)];
    CountMap ctx_sum;
    std::unordered_map<std::string, std::array<std::uint64_t, 4>> ctx_n;
    CountMap ctx_types;
    for (const auto& [gram, c] : level) {
      std::string h = gram.substr(0, gram.size() - 1);
      ctx_sum[h] += c;
      ++ctx_n[h][discount_bucket(c)];
      ++ctx_types[h];
    }
    ProbMap& gk = gamma[static_cast<std::size_t>(k - 1)];
    if (discounts) {
      const auto& d = (*discounts)[static_cast<std::size_t>(k)].d;
      for (const auto& [h, cs] : ctx_sum) {
        const auto& n = ctx_n[h];
        gk[h] = (d[1] * static_cast<double>(n[1]) + d[2] * static_cast<double>(n[2]) +
                 d[3] * static_cast<double>(n[3])) /
                static_cast<double>(cs);
      }
      for (const auto& [gram, c] : level) {
        std::string h = gram.substr(0, gram.size() - 1);
        p[static_cast<std::size_t>(k)][gram] =
            std::max(static_cast<double>(c) - d[discount_bucket(c)], 0.0) /
                static_cast<double>(ctx_sum[h]) +
            gk[h] * prob_linear(p, gamma, k - 1, std::string_view(gram).substr(1));
      }
    } else {
      for (const auto& [h, cs] : ctx_sum) {
        double ty = static_cast<double>(ctx_types[h]);
        gk[h] = ty / (static_cast<double>(cs) + ty);
      }
      for (const auto& [gram, c] : level) {
        std::string h = gram.substr(0, gram.size() - 1);
        double denom = static_cast<double>(ctx_sum[h]) + static_cast<double>(ctx_types[h]);
        p[static_cast<std::size_t>(k)][gram] =
            static_cast<double>(c) / denom +
            gk[h] * prob_linear(p, gamma, k - 1, std::string_view(gram).substr(1));
      }
    }
  }

  CharLanguageModel model;
  model.order_ = order;
  model.smoothing_ = smoothing;
  model.vocab_ = vocab;
  model.logp_.resize(static_cast<std::size_t>(order) + 1);
  model.bow_.resize(static_cast<std::size_t>(order) + 1);  // indexed by context length, [order] unused
  for (int k = 1; k <= order; ++k)
    for (const auto& [gram, pr] : p[static_cast<std::size_t>(k)])
      model.logp_[static_cast<std::size_t>(k)][gram] = std::log10(pr);
  for (int j = 1; j < order; ++j)
    for (const auto& [h, g] : gamma[static_cast<std::size_t>(j)])
      model.bow_[static_cast<std::size_t>(j)][h] = std::log10(g);
  return model;
}

double CharLanguageModel::window_log10(std::string_view window) const {
  std::size_t k = window.size();
  if (k == 1) {
    auto it = logp_[1].find(std::string(window));
    if (it != logp_[1].end()) return it->second;
    return logp_[1].at(std::string(1, kUnk));
  }
  auto it = logp_[k].find(std::string(window));
  if (it != logp_[k].end()) return it->second;
  double bow = 0.0;
  auto bit = bow_[k - 1].find(std::string(window.substr(0, k - 1)));
  if (bit != bow_[k - 1].end()) bow = bit->second;
  return bow + window_log10(window.substr(1));
}

double CharLanguageModel::score(const Name& name) const {
  std::string seq = initial_context();
  seq += name;
  seq += kEos;
  double total10 = 0.0;
  std::string_view sv(seq);
  for (std::size_t pos = static_cast<std::size_t>(order_ - 1); pos < seq.size(); ++pos)
    total10 += window_log10(sv.substr(pos - static_cast<std::size_t>(order_) + 1,
                                      static_cast<std::size_t>(order_)));
  return total10 * std::numbers::ln10;
}

double CharLanguageModel::step_log10(std::string& context, char next) const {
  context.push_back(next);
  double v = window_log10(context);
  context.erase(context.begin());
  return v;
}

double CharLanguageModel::end_log10(const std::string& context) const {
  std::string window = context;
  window.push_back(kEos);
  return window_log10(window);
}

std::string CharLanguageModel::to_arpa() const {
  std::string out = "# character n-gram name model, smoothing=";
  out += smoothing_name(smoothing_);
  out += "\n\n\\data\\\n";

  std::vector<std::vector<std::string>> grams(static_cast<std::size_t>(order_) + 1);
  for (int k = 1; k <= order_; ++k) {
    auto& v = grams[static_cast<std::size_t>(k)];
    for (const auto& [g, lp] : logp_[static_cast<std::size_t>(k)]) v.push_back(g);
    if (k < order_)
      for (const auto& [h, b] : bow_[static_cast<std::size_t>(k)])
        if (!logp_[static_cast<std::size_t>(k)].count(h)) v.push_back(h);
    std::sort(v.begin(), v.end());
    out += "ngram " + std::to_string(k) + "=" + std::to_string(v.size()) + "\n";
  }
  for (int k = 1; k <= order_; ++k) {
    out += "\n\\" + std::to_string(k) + "-grams:\n";
    for (const std::string& g : grams[static_cast<std::size_t>(k)]) {
      auto it = logp_[static_cast<std::size_t>(k)].find(g);
      out += it != logp_[static_cast<std::size_t>(k)].end() ? fmt_double(it->second) : "-99";
      out += '\t';
      out += render_gram(g);
      if (k < order_) {
        auto bit = bow_[static_cast<std::size_t>(k)].find(g);
        if (bit != bow_[static_cast<std::size_t>(k)].end()) {
          out += '\t';
          out += fmt_double(bit->second);
        }
      }
      out += '\n';
    }
  }
  out += "\n\\end\\\n";
  return out;
}

CharLanguageModel CharLanguageModel::from_arpa(const std::string& text) {
  CharLanguageModel model;
  std::istringstream in(text);
  std::string line;

  if (!std::getline(in, line) || line.rfind("# character n-gram name model, smoothing=", 0) != 0)
    fail_input("E_PARSE", "model file missing header line");
  std::string smoothing = line.substr(line.find('=') + 1);
  if (smoothing == "kneser-ney") model.smoothing_ = LmSmoothing::kneser_ney;
  else if (smoothing == "witten-bell") model.smoothing_ = LmSmoothing::witten_bell;
  else fail_input("E_PARSE", "unknown smoothing '" + smoothing + "' in model file");

  while (std::getline(in, line) && line != "\\data\\") {
    if (!line.empty()) fail_input("E_PARSE", "unexpected text before \\data\\ section");
  }
  std::vector<std::size_t> declared{0};  // index by order
  while (std::getline(in, line) && !line.empty()) {
    auto fields = split(line, '=');
    if (fields.size() != 2 || fields[0].rfind("ngram ", 0) != 0)
      fail_input("E_PARSE", "bad count line in model file: " + line);
    std::size_t k = parse_u64(fields[0].substr(6));
    if (k != declared.size()) fail_input("E_PARSE", "non-sequential ngram counts in model file");
    declared.push_back(parse_u64(fields[1]));
  }
  int order = static_cast<int>(declared.size()) - 1;
  if (order < 2 || order > 6) fail_input("E_PARSE", "model order out of range");
  model.order_ = order;
  model.logp_.resize(static_cast<std::size_t>(order) + 1);
  model.bow_.resize(static_cast<std::size_t>(order) + 1);

  int current = 0;
  std::vector<std::size_t> seen_count(static_cast<std::size_t>(order) + 1, 0);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line == "\\end\\") break;
    if (line.front() == '\\') {
      auto dash = line.find("-grams:");
      if (dash == std::string::npos) fail_input("E_PARSE", "bad section header: " + line);
      current = static_cast<int>(parse_u64(line.substr(1, dash - 1)));
      if (current < 1 || current > order) fail_input("E_PARSE", "section order out of range");
      continue;
    }
    if (current == 0) fail_input("E_PARSE", "n-gram line outside any section");
    auto fields = split(line, '\t');
    if (fields.size() < 2 || fields.size() > 3)
      fail_input("E_PARSE", "bad n-gram line: " + line);
    std::string gram = parse_gram(fields[1]);
    if (gram.size() != static_cast<std::size_t>(current))
      fail_input("E_PARSE", "n-gram length mismatch in line: " + line);
    ++seen_count[static_cast<std::size_t>(current)];
    if (fields[0] == "-99") {
      if (!pure_bos(gram)) fail_input("E_PARSE", "dummy probability on non-boundary gram: " + line);
    } else {
      model.logp_[static_cast<std::size_t>(current)][gram] =
          parse_double(fields[0]);
    }
    if (fields.size() == 3) {
      if (current >= order) fail_input("E_PARSE", "backoff weight at the top order: " + line);
      model.bow_[static_cast<std::size_t>(current)][gram] =
          parse_double(fields[2]);
    }
  }
  for (int k = 1; k <= order; ++k) {
    if (seen_count[static_cast<std::size_t>(k)] != declared[static_cast<std::size_t>(k)])
      fail_input("E_PARSE", "ngram " + std::to_string(k) + " count mismatch in model file");
  }
  for (const auto& [g, lp] : model.logp_[1]) {
    if (g[0] != kBos && g[0] != kUnk) model.vocab_.push_back(g[0]);
  }
  std::sort(model.vocab_.begin(), model.vocab_.end());
  if (model.vocab_.empty() || model.vocab_[0] != kEos)
    fail_input("E_PARSE", "model file lacks an end-symbol unigram");
  if (!model.logp_[1].count(std::string(1, kUnk)))
    fail_input("E_PARSE", "model file lacks an unknown-symbol unigram");
  return model;
}

}  // namespace namevar
