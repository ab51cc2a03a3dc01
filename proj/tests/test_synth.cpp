#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "namevar/dataprep.hpp"
#include "namevar/synth.hpp"
#include "namevar/util.hpp"

using namespace namevar;

namespace {

// every string reachable with at most `budget` left-to-right rule applications
void reachable(const Name& name, const NoiseChannel& ch, std::size_t i, int budget,
               std::string cur, std::set<std::string>& out) {
  if (i == name.size()) {
    out.insert(std::move(cur));
    return;
  }
  reachable(name, ch, i + 1, budget, cur + name[i], out);
  if (budget > 0)
    for (const auto& r : ch.rules)
      if (name.compare(i, r.from.size(), r.from) == 0)
        reachable(name, ch, i + r.from.size(), budget - 1, cur + r.to, out);
}

}  // namespace

TEST_SUITE("synth") {

TEST_CASE("always-firing rule rewrites every drawn pair") {
  NoiseChannel ch{{{"ph", "f", 1.0}}, 1};
  SynthConfig cfg;
  cfg.pair_count = 50;
  cfg.num_users = 5;
  const auto corpus = generate_corpus({"philip"}, ch, cfg);
  REQUIRE(corpus.pairs.size() == 1);
  const auto& rec = corpus.pairs[0];
  CHECK(rec.source == "philip");
  CHECK(rec.target == "filip");
  CHECK(rec.cooccurrence == 50);
  CHECK(rec.source_count == 50);
  CHECK(rec.target_count == 50);
  CHECK(!rec.source_users.empty());
  CHECK(rec.source_users.size() <= 5);
  CHECK(std::is_sorted(rec.source_users.begin(), rec.source_users.end()));
  CHECK(rec.source_users == rec.target_users);  // same draws touch both names
  REQUIRE(corpus.name_counts.size() == 2);
  CHECK(corpus.name_counts[0] == std::pair<Name, std::uint64_t>{"filip", 50});
  CHECK(corpus.name_counts[1] == std::pair<Name, std::uint64_t>{"philip", 50});
}

TEST_CASE("empty rule set yields identity pairs which are dropped") {
  SynthConfig cfg;
  cfg.pair_count = 200;
  const auto corpus = generate_corpus({"smith", "jones"}, NoiseChannel{{}, 2}, cfg);
  CHECK(corpus.pairs.empty());
  // the universe side still sees the drawn names
  std::uint64_t total = 0;
  for (const auto& [name, count] : corpus.name_counts) total += count;
  CHECK(total == 200);
}

TEST_CASE("scan is left-to-right with in-order rule precedence") {
  SUBCASE("position advances past a fired rule's source") {
    NoiseChannel ch{{{"ab", "x", 1.0}, {"a", "z", 1.0}}, 2};
    std::mt19937_64 rng(3);
    // i=0: "ab" does not match "aa", "a" fires; i=1: "ab" fires
    CHECK(apply_channel("aab", ch, rng) == "zx");
  }
  SUBCASE("application budget stops further rewrites") {
    NoiseChannel ch{{{"ab", "x", 1.0}, {"a", "z", 1.0}}, 1};
    std::mt19937_64 rng(3);
    CHECK(apply_channel("aab", ch, rng) == "zab");
  }
  SUBCASE("earlier rule shadows a longer later one") {
    NoiseChannel ch{{{"a", "z", 1.0}, {"ab", "x", 1.0}}, 2};
    std::mt19937_64 rng(3);
    CHECK(apply_channel("ab", ch, rng) == "zb");
  }
  SUBCASE("zero applications is the identity") {
    NoiseChannel ch{{{"a", "z", 1.0}}, 0};
    std::mt19937_64 rng(3);
    CHECK(apply_channel("aaa", ch, rng) == "aaa");
  }
}

TEST_CASE("generated targets are derivable within the application budget") {
  NoiseChannel ch{{
                      {"ph", "f", 0.6},
                      {"ie", "y", 0.5},
                      {"ll", "l", 0.5},
                      {"a", "e", 0.2},
                  },
                  2};
  SynthConfig cfg;
  cfg.pair_count = 2000;
  cfg.zipf_exponent = 0.5;
  const std::vector<Name> bases{"phillip", "sophie", "allan", "pallie", "phiela"};
  const auto corpus = generate_corpus(bases, ch, cfg);
  REQUIRE(!corpus.pairs.empty());
  for (const auto& rec : corpus.pairs) {
    std::set<std::string> targets;
    reachable(rec.source, ch, 0, ch.max_applications, "", targets);
    CHECK(targets.count(rec.target));
    CHECK(rec.target != rec.source);
  }
}

TEST_CASE("drawn frequencies follow the configured zipf law") {
  std::vector<Name> bases;
  for (int i = 0; i < 20; ++i)
    bases.push_back(std::string("base") + static_cast<char>('a' + i));
  SynthConfig cfg;
  cfg.pair_count = 20000;
  cfg.zipf_exponent = 1.0;
  const auto corpus = generate_corpus(bases, NoiseChannel{{}, 1}, cfg);
  std::map<Name, std::uint64_t> occ(corpus.name_counts.begin(), corpus.name_counts.end());
  auto count = [&](int rank) { return static_cast<double>(occ[bases[rank]]); };
  // successive rank doublings should halve the counts under exponent 1
  CHECK(count(0) / count(1) == doctest::Approx(2.0).epsilon(0.15));
  CHECK(count(1) / count(3) == doctest::Approx(2.0).epsilon(0.15));
  CHECK(count(3) / count(7) == doctest::Approx(2.0).epsilon(0.15));
  CHECK(count(7) / count(15) == doctest::Approx(2.0).epsilon(0.15));

  SynthConfig uni = cfg;
  uni.pair_count = 10000;
  uni.zipf_exponent = 0.0;
  const auto flat = generate_corpus(bases, NoiseChannel{{}, 1}, uni);
  std::uint64_t lo = UINT64_MAX;
  std::uint64_t hi = 0;
  for (const auto& [name, c] : flat.name_counts) {
    lo = std::min(lo, c);
    hi = std::max(hi, c);
  }
  CHECK(static_cast<double>(hi) / static_cast<double>(lo) < 1.3);
}

TEST_CASE("single-edit channel splits the operation mix in thirds") {
  // one delete, one insert, one replace rule at equal probability; every base
  // name carries exactly one trigger, rotating through the three ops
  NoiseChannel ch{{{"q", "", 0.5}, {"j", "jj", 0.5}, {"v", "w", 0.5}}, 1};
  const char* triggers = "qjv";
  std::vector<Name> bases;
  for (int i = 0; i < 498; ++i) {
    std::string b;
    b += static_cast<char>('a' + (i / 64) % 8);
    b += static_cast<char>('a' + (i / 8) % 8);
    b += static_cast<char>('a' + i % 8);
    b += triggers[i % 3];
    bases.push_back(b);
  }
  SynthConfig cfg;
  cfg.pair_count = 12000;
  cfg.zipf_exponent = 0.0;
  const auto corpus = generate_corpus(bases, ch, cfg);
  const auto stats = corpus_statistics(corpus.pairs);
  REQUIRE(stats.ed1_pairs > 400);
  CHECK(stats.edit_distance_histogram.size() == 1);  // all pairs at distance 1
  CHECK(stats.pct_deletes == doctest::Approx(100.0 / 3.0).epsilon(0.09));
  CHECK(stats.pct_inserts == doctest::Approx(100.0 / 3.0).epsilon(0.09));
  CHECK(stats.pct_replaces == doctest::Approx(100.0 / 3.0).epsilon(0.09));
}

TEST_CASE("named channel bundles are well formed") {
  for (const char* name : kChannelNames) {
    const auto ch = named_channel(name);
    CHECK(!ch.rules.empty());
    CHECK(ch.max_applications >= 1);
    for (const auto& r : ch.rules) {
      CHECK(!r.from.empty());
      CHECK(r.probability > 0.0);
      CHECK(r.probability <= 1.0);
      CHECK(r.from != r.to);
    }
  }
  CHECK(named_channel("phonetic-drift").rules.size() >= 10);
  CHECK_THROWS_AS(named_channel("typo"), Error);
}

TEST_CASE("generation is deterministic in the seed") {
  const std::vector<Name> bases{"anderson", "jensen", "hoffmann", "ramirez"};
  const auto ch = named_channel("suffix");
  SynthConfig cfg;
  cfg.pair_count = 3000;
  const auto a = generate_corpus(bases, ch, cfg);
  const auto b = generate_corpus(bases, ch, cfg);
  CHECK(a.pairs == b.pairs);
  CHECK(a.name_counts == b.name_counts);
  SynthConfig other = cfg;
  other.seed = 8;
  const auto c = generate_corpus(bases, ch, other);
  CHECK(a.pairs != c.pairs);
}

TEST_CASE("variants erased to nothing are dropped") {
  NoiseChannel ch{{{"q", "", 1.0}}, 1};
  SynthConfig cfg;
  cfg.pair_count = 10;
  const auto corpus = generate_corpus({"q"}, ch, cfg);
  CHECK(corpus.pairs.empty());
  REQUIRE(corpus.name_counts.size() == 1);
  CHECK(corpus.name_counts[0].second == 10);
}

TEST_CASE("inputs are validated") {
  SynthConfig cfg;
  CHECK_THROWS_AS(generate_corpus({}, NoiseChannel{}, cfg), Error);
  CHECK_THROWS_AS(generate_corpus({"Bad Name"}, NoiseChannel{}, cfg), Error);
  CHECK_THROWS_AS(generate_corpus({"ok"}, NoiseChannel{{{"", "x", 0.5}}, 1}, cfg), Error);
  CHECK_THROWS_AS(generate_corpus({"ok"}, NoiseChannel{{{"a", "x", 0.0}}, 1}, cfg), Error);
  CHECK_THROWS_AS(generate_corpus({"ok"}, NoiseChannel{{{"a", "x", 1.5}}, 1}, cfg), Error);
  CHECK_THROWS_AS(generate_corpus({"ok"}, NoiseChannel{{{"a", "X", 0.5}}, 1}, cfg), Error);
  CHECK_THROWS_AS(generate_corpus({"ok"}, NoiseChannel{{{"a", "x", 0.5}}, -1}, cfg), Error);
  SynthConfig bad = cfg;
  bad.zipf_exponent = -1.0;
  CHECK_THROWS_AS(generate_corpus({"ok"}, NoiseChannel{}, bad), Error);
  bad = cfg;
  bad.pair_count = 0;
  CHECK_THROWS_AS(generate_corpus({"ok"}, NoiseChannel{}, bad), Error);
  bad = cfg;
  bad.num_users = 0;
  CHECK_THROWS_AS(generate_corpus({"ok"}, NoiseChannel{}, bad), Error);
  try {
    named_channel("nope");
  } catch (const Error& e) {
    CHECK(e.code == "E_CHANNEL");
    CHECK(e.exit_code == 3);
  }
}

}  // TEST_SUITE
