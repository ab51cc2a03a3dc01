#include "doctest.h"

#include "namevar/langmodel.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "namevar/util.hpp"

using namespace namevar;

namespace {

std::vector<Name> kn_corpus() {
  std::ifstream in(std::string(TESTS_DATA_DIR) + "/lm_kn_corpus.txt");
  REQUIRE(in.good());
  std::vector<Name> names;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) names.push_back(line);
  REQUIRE(names.size() == 1510);
  return names;
}

double window_prob(const CharLanguageModel& m, const std::string& window) {
  return std::pow(10.0, m.window_log10(window));
}

// Exhaustive per-context normalization: sum P(next|context) over the
// vocabulary plus the unknown symbol, through the full backoff walk.
void check_normalization(const CharLanguageModel& m, double tol) {
  std::string symbols = m.vocabulary();
  symbols.push_back(CharLanguageModel::kUnk);
  for (int k = 1; k <= m.order(); ++k) {
    std::set<std::string> contexts;
    if (k == 1) {
      contexts.insert("");
    } else {
      for (const auto& [gram, lp] : m.stored_logp(k))
        contexts.insert(gram.substr(0, gram.size() - 1));
    }
    for (const std::string& h : contexts) {
      double sum = 0.0;
      for (char w : symbols) sum += window_prob(m, h + w);
      CAPTURE(k);
      CHECK(std::abs(sum - 1.0) <= tol);
    }
  }
}

}  // namespace

TEST_SUITE("langmodel") {

TEST_CASE("order and input preconditions") {
  std::vector<Name> names{"abc", "abcd"};
  CHECK_THROWS_WITH_AS(train_lm(names, 1), doctest::Contains("order"), Error);
  CHECK_THROWS_WITH_AS(train_lm(names, 7), doctest::Contains("order"), Error);
  try {
    train_lm(names, 7);
  } catch (const Error& e) {
    CHECK(e.code == "E_ORDER_RANGE");
    CHECK(e.exit_code == 3);
  }
  CHECK_THROWS_AS(train_lm(std::vector<Name>{}, 3), Error);
}

TEST_CASE("order too large for the data") {
  // a name of length L observes an order-(L+2) gram at most (both boundaries)
  std::vector<Name> shorties{"abc", "abc", "dba"};
  try {
    train_lm(shorties, 6);
    FAIL("expected OrderTooLargeForData");
  } catch (const Error& e) {
    CHECK(e.code == "E_ORDER_TOO_LARGE");
    CHECK(e.exit_code == 2);
  }
  std::vector<Name> fits{"abcd"};  // 4 + 2 boundaries = 6-gram observable
  CHECK_NOTHROW(train_lm(fits, 6));
}

TEST_CASE("tiny corpus hand-computed witten-bell values") {
  CharLanguageModel m = train_lm(std::vector<Name>{"ab"}, 2);
  CHECK(m.smoothing() == LmSmoothing::witten_bell);
  // events: a, b, end. C=3 tokens, T=3 types, lambda=1/2, V=3.
  double p1 = (0.5 * (1.0 / 3.0) + 0.5 * (1.0 / 3.0)) * (1.0 - 1e-7);
  CHECK(window_prob(m, "a") == doctest::Approx(p1).epsilon(1e-12));
  // context <s>: count 1, one continuation type, gamma=1/2
  double pa = 1.0 / 2.0 + 0.5 * p1;
  std::string bos(1, CharLanguageModel::kBos);
  CHECK(window_prob(m, bos + "a") == doctest::Approx(pa).epsilon(1e-12));
  // unknown symbol floor
  CHECK(window_prob(m, std::string(1, CharLanguageModel::kUnk)) == doctest::Approx(1e-7).epsilon(1e-12));
  CHECK(window_prob(m, "z") == doctest::Approx(1e-7).epsilon(1e-12));
}

TEST_CASE("symmetric training data scores symmetrically") {
  CharLanguageModel m = train_lm(std::vector<Name>{"ab", "ac"}, 2);
  CHECK(m.score("ab") == m.score("ac"));
  CHECK(window_prob(m, "ab") == window_prob(m, "ac"));
  CHECK(m.score("ab") < 0.0);
}

TEST_CASE("kneser-ney engages on the frozen corpus at order 2 and only there") {
  auto names = kn_corpus();
  CHECK(train_lm(names, 2).smoothing() == LmSmoothing::kneser_ney);
  for (int order : {3, 4, 5, 6}) {
    CAPTURE(order);
    CHECK(train_lm(names, order).smoothing() == LmSmoothing::witten_bell);
  }
}

TEST_CASE("normalization holds at every stored context for all orders") {
  auto names = kn_corpus();
  for (int order = 2; order <= 6; ++order) {
    CAPTURE(order);
    CharLanguageModel m = train_lm(names, order);
    check_normalization(m, 1e-9);
  }
}

TEST_CASE("normalization holds for an unseen backoff-only context") {
  auto names = kn_corpus();
  CharLanguageModel m = train_lm(names, 3);
  std::string symbols = m.vocabulary();
  symbols.push_back(CharLanguageModel::kUnk);
  std::string h = "qq";  // q never follows q in the corpus
  CHECK(m.stored_logp(3).count(h + "a") == 0);
  double sum = 0.0;
  for (char w : symbols) sum += window_prob(m, h + w);
  CHECK(std::abs(sum - 1.0) <= 1e-9);
}

TEST_CASE("matches an independent reference implementation") {
  // values computed by a separate python implementation of the same recipe
  auto names = kn_corpus();
  CharLanguageModel kn2 = train_lm(names, 2);
  CHECK(kn2.score("banana") == doctest::Approx(-16.25049068684393).epsilon(1e-9));
  CHECK(kn2.score("abcde") == doctest::Approx(-13.502937760228418).epsilon(1e-9));
  CHECK(kn2.score("xq") == doctest::Approx(-9.121163790239406).epsilon(1e-9));
  CHECK(window_prob(kn2, "a") == doctest::Approx(0.06104736076787292).epsilon(1e-9));
  CHECK(window_prob(kn2, std::string(1, CharLanguageModel::kEos)) ==
        doctest::Approx(0.05457486950573699).epsilon(1e-9));
  CharLanguageModel wb4 = train_lm(names, 4);
  CHECK(wb4.score("banana") == doctest::Approx(-18.644419063160086).epsilon(1e-9));
  CHECK(wb4.score("abcde") == doctest::Approx(-13.749901322588684).epsilon(1e-9));
  CHECK(wb4.score("xq") == doctest::Approx(-7.528517093952845).epsilon(1e-9));
}

TEST_CASE("more copies of a name never decrease its score under frequency weighting") {
  auto names = kn_corpus();
  std::vector<std::pair<Name, std::uint64_t>> base;
  for (const auto& n : names) base.emplace_back(n, 1);
  base.emplace_back("abcde", 1);
  auto more = base;
  more.back().second = 50;
  for (int order : {2, 3}) {
    CAPTURE(order);
    CharLanguageModel m1 = train_lm(base, order, LmWeighting::frequency);
    CharLanguageModel m2 = train_lm(more, order, LmWeighting::frequency);
    CHECK(m2.score("abcde") >= m1.score("abcde"));
  }
  // forms weighting ignores the multiplicity entirely
  CharLanguageModel f1 = train_lm(base, 3, LmWeighting::forms);
  CharLanguageModel f2 = train_lm(more, 3, LmWeighting::forms);
  CHECK(f1.score("abcde") == f2.score("abcde"));
  CHECK(f1.to_arpa() == f2.to_arpa());
}

TEST_CASE("seen events beat their unseen counterfactual") {
  auto names = kn_corpus();
  for (int order : {2, 4}) {
    CAPTURE(order);
    CharLanguageModel m = train_lm(names, order);
    int checked = 0;
    for (const auto& [gram, lp] : m.stored_logp(order)) {
      std::string h = gram.substr(0, gram.size() - 1);
      auto bow = m.stored_bow(static_cast<int>(h.size())).find(h);
      REQUIRE(bow != m.stored_bow(static_cast<int>(h.size())).end());
      double unseen = bow->second + m.window_log10(gram.substr(1));
      CHECK(lp > unseen);
      if (++checked >= 200) break;
    }
  }
}

TEST_CASE("incremental scoring equals scoring from scratch") {
  auto names = kn_corpus();
  for (int order : {2, 5}) {
    CharLanguageModel m = train_lm(names, order);
    for (const Name& name : {Name("banana"), Name("abcde"), Name("xq"), Name("ponm")}) {
      std::string ctx = m.initial_context();
      double total10 = 0.0;
      for (char c : name) total10 += m.step_log10(ctx, c);
      total10 += m.end_log10(ctx);
      CHECK(total10 * std::log(10.0) == doctest::Approx(m.score(name)).epsilon(1e-13));
    }
  }
}

TEST_CASE("scores are negative and unknown characters are survivable") {
  auto names = kn_corpus();
  CharLanguageModel m = train_lm(names, 4);
  for (const Name& name : {Name("banana"), Name("yyy"), Name("aystu"), Name("q")}) {
    double s = m.score(name);
    CHECK(s < 0.0);
    CHECK(std::isfinite(s));
  }
}

TEST_CASE("arpa round trip is bit-exact and preserves scoring") {
  auto names = kn_corpus();
  for (int order : {2, 4}) {
    CAPTURE(order);
    CharLanguageModel m = train_lm(names, order);
    std::string text = m.to_arpa();
    CharLanguageModel loaded = CharLanguageModel::from_arpa(text);
    CHECK(loaded.to_arpa() == text);
    CHECK(loaded.order() == m.order());
    CHECK(loaded.smoothing() == m.smoothing());
    CHECK(loaded.vocabulary() == m.vocabulary());
    CHECK(loaded.score("banana") == m.score("banana"));
    CHECK(loaded.score("xq") == m.score("xq"));
    check_normalization(loaded, 1e-9);
  }
}

TEST_CASE("arpa parser rejects malformed input") {
  auto names = kn_corpus();
  std::string good = train_lm(names, 2).to_arpa();
  CHECK_THROWS_AS(CharLanguageModel::from_arpa("not a model"), Error);
  // flip one declared count
  std::string bad = good;
  auto pos = bad.find("ngram 1=");
  bad.replace(pos, 9, "ngram 1=9");
  CHECK_THROWS_AS(CharLanguageModel::from_arpa(bad), Error);
  // drop the unknown symbol line
  std::string no_unk = good;
  auto unk_pos = no_unk.find("\t<unk>");
  auto line_start = no_unk.rfind('\n', unk_pos);
  auto line_end = no_unk.find('\n', unk_pos);
  no_unk.erase(line_start, line_end - line_start);
  CHECK_THROWS_AS(CharLanguageModel::from_arpa(no_unk), Error);
}

TEST_CASE("vocabulary lists the end symbol and every seen character") {
  CharLanguageModel m = train_lm(std::vector<Name>{"cab", "bad"}, 2);
  std::string expect(1, CharLanguageModel::kEos);
  expect += "abcd";
  CHECK(m.vocabulary() == expect);
}

}  // TEST_SUITE
