#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "namevar/decoder.hpp"
#include "namevar/langmodel.hpp"
#include "namevar/util.hpp"

using namespace namevar;

namespace {

// Exhaustive reference decoder: walks every monotone segmentation recursively
// (table options plus the 1e-6 identity segment per character), recombines
// duplicate strings keeping the max, sorts like the production comparator.
// Shares the incremental LM arithmetic so order comparisons are exact.
struct BruteForce {
  const SegmentTable& table;
  const CharLanguageModel& lm;
  DecoderConfig cfg;
  std::map<std::string, double> best;

  void walk(const Name& source, std::size_t pos, const std::string& emitted,
            const std::string& ctx, double tm, double lm10) {
    if (pos == source.size()) {
      if (emitted.empty()) return;
      const double score = cfg.tm_weight * tm +
                           cfg.lm_weight * std::numbers::ln10 * (lm10 + lm.end_log10(ctx)) +
                           cfg.length_penalty * static_cast<double>(emitted.size());
      auto [it, inserted] = best.emplace(emitted, score);
      if (!inserted && score > it->second) it->second = score;
      return;
    }
    std::size_t max_len = 1;
    for (const auto& [key, stats] : table.entries()) max_len = std::max(max_len, key.first.size());
    for (std::size_t len = 1; len <= std::min(max_len, source.size() - pos); ++len) {
      const std::string seg = source.substr(pos, len);
      for (const auto& [key, stats] : table.entries()) {
        if (key.first != seg) continue;
        std::string c = ctx;
        double l = lm10;
        for (char ch : key.second) l += lm.step_log10(c, ch);
        walk(source, pos + len, emitted + key.second, c, tm + std::log(stats.p_backward), l);
      }
      if (len == 1) {
        std::string c = ctx;
        double l = lm10;
        l += lm.step_log10(c, seg[0]);
        walk(source, pos + len, emitted + seg, c, tm + std::log(1e-6), l);
      }
    }
  }

  std::vector<RankedCandidate> run(const Name& source) {
    best.clear();
    walk(source, 0, "", lm.initial_context(), 0.0, 0.0);
    std::vector<RankedCandidate> out;
    for (const auto& [cand, score] : best) out.push_back({cand, score, 0});
    std::sort(out.begin(), out.end(), [](const RankedCandidate& a, const RankedCandidate& b) {
      if (a.score != b.score) return a.score > b.score;
      return a.candidate < b.candidate;
    });
    for (std::size_t i = 0; i < out.size(); ++i) out[i].rank = static_cast<int>(i + 1);
    return out;
  }
};

DecoderConfig exhaustive() {
  DecoderConfig cfg;
  cfg.beam_width = std::numeric_limits<int>::max();
  cfg.nbest = std::numeric_limits<int>::max();
  return cfg;
}

}  // namespace

TEST_SUITE("decoder") {

TEST_CASE("identity channel keeps the name on top") {
  const std::vector<WeightedNamePair> pairs(3, {"clark", "clark", 1.0});
  const SegmentTable segs = learn_segments(pairs);
  const CharLanguageModel lm = train_lm(std::vector<Name>{"clark"}, 2);
  DecoderConfig cfg;
  cfg.nbest = 1;
  const auto out = decode("clark", segs, lm, cfg);
  REQUIRE(out.size() == 1);
  CHECK(out[0].candidate == "clark");
  CHECK(out[0].rank == 1);
}

TEST_CASE("beam equals brute force when nothing is pruned") {
  SegmentTable table;
  table.set("a", "a", {1.0, 0.9});
  table.set("a", "e", {1.0, 0.1});
  table.set("b", "b", {1.0, 0.8});
  table.set("ab", "ab", {1.0, 0.5});
  table.set("bb", "b", {1.0, 0.3});
  table.set("b", "bb", {1.0, 0.2});
  const CharLanguageModel lm =
      train_lm(std::vector<Name>{"ab", "abb", "bab", "ba", "aab"}, 2);

  for (const Name source : {"ab", "abb", "babb", "a", "bb"}) {
    for (double lm_w : {1.0, 0.0, 0.3}) {
      DecoderConfig cfg = exhaustive();
      cfg.lm_weight = lm_w;
      BruteForce oracle{table, lm, cfg, {}};
      const auto expected = oracle.run(source);
      const auto got = decode(source, table, lm, cfg);
      REQUIRE(got.size() == expected.size());
      for (std::size_t i = 0; i < got.size(); ++i) {
        CHECK(got[i].candidate == expected[i].candidate);
        CHECK(got[i].score == expected[i].score);
        CHECK(got[i].rank == expected[i].rank);
      }
    }
  }
}

TEST_CASE("learned ph->f channel beats the unseen spelling") {
  std::vector<WeightedNamePair> pairs;
  for (int k = 0; k < 5; ++k) {
    pairs.push_back({"philip", "filip", 1.0});
    pairs.push_back({"phoebe", "febe", 1.0});
  }
  for (int k = 0; k < 3; ++k) {
    pairs.push_back({"peter", "peter", 1.0});
    pairs.push_back({"lip", "lip", 1.0});
  }
  const SegmentTable segs = learn_segments(pairs);
  const CharLanguageModel lm =
      train_lm(std::vector<Name>{"filip", "febe", "peter", "lip"}, 3);
  DecoderConfig cfg;
  cfg.nbest = 50;
  const auto out = decode("philip", segs, lm, cfg);

  int rank_filip = 0;
  int rank_philip = 0;
  for (const auto& rc : out) {
    if (rc.candidate == "filip") rank_filip = rc.rank;
    if (rc.candidate == "philip") rank_philip = rc.rank;
    CHECK(rc.candidate.find('q') == std::string::npos);
  }
  REQUIRE(rank_filip > 0);
  if (rank_philip > 0) CHECK(rank_filip < rank_philip);
  CHECK(rank_filip <= 3);
}

TEST_CASE("nbest beyond the derivable set returns all of it") {
  SegmentTable table;
  table.set("a", "a", {1.0, 0.6});
  table.set("a", "b", {1.0, 0.4});
  const CharLanguageModel lm = train_lm(std::vector<Name>{"a", "b"}, 2);
  const auto out = decode("a", table, lm);
  REQUIRE(out.size() == 2);
  CHECK(out[0].candidate == "a");  // 0.6 vs 0.4, same LM mass by symmetry
  CHECK(out[1].candidate == "b");
  CHECK(out[0].score >= out[1].score);
}

TEST_CASE("scores non-increasing, candidates distinct") {
  SegmentTable table;
  table.set("a", "a", {1.0, 0.5});
  table.set("a", "e", {1.0, 0.3});
  table.set("n", "n", {1.0, 0.7});
  table.set("an", "on", {1.0, 0.2});
  const CharLanguageModel lm = train_lm(std::vector<Name>{"an", "on", "en"}, 2);
  const auto out = decode("anna", table, lm);
  std::set<std::string> seen;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i) CHECK(out[i].score <= out[i - 1].score);
    CHECK(seen.insert(out[i].candidate).second);
    CHECK(out[i].rank == static_cast<int>(i) + 1);
  }
}

TEST_CASE("duplicate derivations recombine to the max and decompose") {
  // "xy" from "ab" two ways: a->x then b->y (0.5 * 0.5) or ab->xy (0.2).
  SegmentTable table;
  table.set("a", "x", {1.0, 0.5});
  table.set("b", "y", {1.0, 0.5});
  table.set("ab", "xy", {1.0, 0.2});
  const CharLanguageModel lm = train_lm(std::vector<Name>{"xy", "yx"}, 2);
  const auto out = decode("ab", table, lm);
  const auto it = std::find_if(out.begin(), out.end(),
                               [](const RankedCandidate& rc) { return rc.candidate == "xy"; });
  REQUIRE(it != out.end());
  CHECK(it->score ==
        doctest::Approx(std::log(0.25) + lm.score("xy")).epsilon(1e-9));
}

TEST_CASE("lm weight zero reduces to channel order") {
  SegmentTable table;
  table.set("a", "z", {1.0, 0.9});
  table.set("a", "a", {1.0, 0.1});
  const CharLanguageModel lm = train_lm(std::vector<Name>{"aa", "ab"}, 2);

  DecoderConfig channel_only = exhaustive();
  channel_only.lm_weight = 0.0;
  const auto chan = decode("a", table, lm, channel_only);
  REQUIRE(chan.size() == 2);
  CHECK(chan[0].candidate == "z");

  const auto both = decode("a", table, lm, exhaustive());
  REQUIRE(both.size() == 2);
  CHECK(both[0].candidate == "a");  // LM has never seen 'z'
}

TEST_CASE("length penalty pushes toward longer or shorter strings") {
  SegmentTable table;
  table.set("b", "bb", {1.0, 0.5});
  const CharLanguageModel lm = train_lm(std::vector<Name>{"bb", "b"}, 2);

  DecoderConfig shorter;
  shorter.length_penalty = -100.0;
  const auto s = decode("b", table, lm, shorter);
  CHECK(s[0].candidate == "b");

  DecoderConfig longer;
  longer.length_penalty = 100.0;
  const auto l = decode("b", table, lm, longer);
  CHECK(l[0].candidate == "bb");
}

TEST_CASE("decoding is deterministic") {
  SegmentTable table;
  table.set("a", "a", {1.0, 0.4});
  table.set("a", "e", {1.0, 0.4});
  table.set("r", "r", {1.0, 0.9});
  const CharLanguageModel lm = train_lm(std::vector<Name>{"ara", "ere"}, 2);
  const auto a = decode("arra", table, lm);
  const auto b = decode("arra", table, lm);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].candidate == b[i].candidate);
    CHECK(a[i].score == b[i].score);
  }
}

TEST_CASE("config and input validation") {
  SegmentTable table;
  table.set("a", "a", {1.0, 1.0});
  const CharLanguageModel lm = train_lm(std::vector<Name>{"a"}, 2);
  DecoderConfig cfg;
  cfg.beam_width = 0;
  CHECK_THROWS_AS(decode("a", table, lm, cfg), Error);
  cfg = {};
  cfg.nbest = 0;
  CHECK_THROWS_AS(decode("a", table, lm, cfg), Error);
  cfg = {};
  cfg.lm_weight = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(decode("a", table, lm, cfg), Error);
  CHECK_THROWS_AS(decode("Bad!", table, lm), Error);

  // Defaults per the build contract.
  const DecoderConfig defaults;
  CHECK(defaults.beam_width == 100);
  CHECK(defaults.nbest == 1000);
  CHECK(defaults.lm_weight == 1.0);
  CHECK(defaults.tm_weight == 1.0);
  CHECK(defaults.length_penalty == 0.0);
}

}  // TEST_SUITE
