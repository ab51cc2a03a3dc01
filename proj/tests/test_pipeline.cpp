#include <unistd.h>

#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "namevar/pipeline.hpp"
#include "namevar/synth.hpp"
#include "namevar/util.hpp"

using namespace namevar;
namespace fs = std::filesystem;

namespace {

fs::path make_temp_dir() {
  static int counter = 0;
  const auto dir = fs::temp_directory_path() /
                   ("namevar_pipeline_" + std::to_string(::getpid()) + "_" +
                    std::to_string(++counter));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

NamePairRecord make_pair(Name s, Name t, std::uint64_t count) {
  NamePairRecord rec;
  rec.source = std::move(s);
  rec.target = std::move(t);
  rec.cooccurrence = count;
  return rec;
}

struct SmallWorld {
  std::vector<NamePairRecord> corpus;
  FrequencyUniverse universe;

  SmallWorld() {
    const std::vector<std::pair<Name, Name>> families{
        {"philip", "filip"},     {"phoebe", "febe"},     {"stephen", "stefen"},
        {"shephard", "shepard"}, {"christie", "kristy"}, {"smith", "smyth"},
        {"johnson", "jonson"},   {"murphy", "murfy"},
    };
    std::vector<std::pair<Name, std::uint64_t>> counts;
    std::uint64_t freq = 100;
    for (const auto& [s, t] : families) {
      corpus.push_back(make_pair(s, t, 4));
      counts.push_back({s, freq});
      counts.push_back({t, freq / 10});
      freq -= 7;
    }
    universe = build_universe(counts, counts.size());
  }
};

}  // namespace

TEST_SUITE("pipeline") {

TEST_CASE("manifest json round trips and loads fresh when missing") {
  RunManifest m;
  m.stages["train"] = {"abcd1234", {{"corpus.tsv", "0011"}, {"universe.tsv", "2233"}}, 7, 1.5};
  m.stages["prepare"] = {"ffee", {}, 42, 0.25};
  const std::string text = m.to_json();
  CHECK(m.to_json() == text);  // deterministic serialization
  const auto back = RunManifest::from_json(text);
  CHECK(back.tool_version == kToolVersion);
  REQUIRE(back.stages.size() == 2);
  CHECK(back.stages.at("train").config_digest == "abcd1234");
  CHECK(back.stages.at("train").input_digests.at("universe.tsv") == "2233");
  CHECK(back.stages.at("train").seed == 7);
  CHECK(back.stages.at("train").seconds == 1.5);
  CHECK(back.stages.at("prepare").seed == 42);

  const auto dir = make_temp_dir();
  save_manifest(dir.string(), m);
  const auto loaded = load_manifest(dir.string());
  CHECK(loaded.to_json() == text);
  CHECK(load_manifest((dir / "nowhere").string()).stages.empty());
  CHECK_THROWS_AS(RunManifest::from_json("not json"), Error);
  CHECK_THROWS_AS(RunManifest::from_json("{\"stages\": 5}"), Error);
  fs::remove_all(dir);
}

TEST_CASE("digests are stable and differ across content") {
  const auto dir = make_temp_dir();
  const auto file = (dir / "a.txt").string();
  atomic_write_text(file, "hello\n");
  CHECK(file_digest(file) == text_digest("hello\n"));
  CHECK(text_digest("hello\n") != text_digest("hello"));
  CHECK(text_digest("") == text_digest(""));
  fs::remove_all(dir);
}

TEST_CASE("training produces one lm per order plus the segment table") {
  const SmallWorld w;
  TrainOptions opts;
  opts.orders = {3, 2, 3};  // duplicates collapse
  const auto models = train_models(w.corpus, w.universe, opts);
  REQUIRE(models.lms.size() == 2);
  CHECK(models.lms.count(2) == 1);
  CHECK(models.lms.count(3) == 1);
  CHECK(models.lms.at(3).order() == 3);
  CHECK(models.segments.size() > 0);
  CHECK(models.segments.find("ph", "f") != nullptr);

  TrainOptions bad = opts;
  bad.orders = {7};
  CHECK_THROWS_AS(train_models(w.corpus, w.universe, bad), Error);
  bad.orders = {1};
  CHECK_THROWS_AS(train_models(w.corpus, w.universe, bad), Error);
  bad.orders = {};
  try {
    train_models(w.corpus, w.universe, bad);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code == "E_ORDER_RANGE");
    CHECK(e.exit_code == 3);
  }
}

TEST_CASE("model persistence round trips bit-exactly") {
  const SmallWorld w;
  TrainOptions opts;
  opts.orders = {2, 4};
  const auto models = train_models(w.corpus, w.universe, opts);
  const auto dir = make_temp_dir();
  write_models(dir.string(), models);
  CHECK(fs::exists(dir / "segments.tsv"));
  CHECK(fs::exists(dir / "lm2.arpa"));
  CHECK(fs::exists(dir / "lm4.arpa"));
  CHECK(!fs::exists(dir / "lm3.arpa"));
  const auto back = read_models(dir.string());
  CHECK(back.segments.to_text() == models.segments.to_text());
  REQUIRE(back.lms.size() == 2);
  CHECK(back.lms.at(2).to_arpa() == models.lms.at(2).to_arpa());
  CHECK(back.lms.at(4).to_arpa() == models.lms.at(4).to_arpa());

  const auto empty_dir = make_temp_dir();
  try {
    read_models(empty_dir.string());
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code == "E_NO_MODEL");
    CHECK(e.exit_code == 2);
  }
  fs::remove_all(dir);
  fs::remove_all(empty_dir);
}

TEST_CASE("method expansion covers the full grid in a fixed order") {
  const auto all = expand_methods({"all"}, {5, 2});
  REQUIRE(all.size() == 12);
  CHECK(all[0] == "soundex");
  CHECK(all[6] == "modified-soundex");
  CHECK(all[7] == "levenshtein");
  CHECK(all[9] == "jaro-winkler");
  CHECK(all[10] == "mt-2gram");
  CHECK(all[11] == "mt-5gram");

  const auto some = expand_methods({"nysiis", "jaro", "mt-5gram"}, {5});
  CHECK(some == std::vector<std::string>{"nysiis", "jaro", "mt-5gram"});
  CHECK(expand_methods({"all", "soundex"}, {}).size() == 10);

  CHECK_THROWS_AS(expand_methods({"bogus"}, {2}), Error);
  CHECK_THROWS_AS(expand_methods({}, {2}), Error);
  try {
    expand_methods({"mt-4gram"}, {2, 5});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code == "E_NO_MODEL");
  }
  CHECK_THROWS_AS(expand_methods({"mt-7gram"}, {2}), Error);  // malformed id
}

TEST_CASE("evaluation runs the grid per fold and excludes identity candidates") {
  // two soundex families; dropping the identity candidate makes the true
  // variant the precision@1 hit in both folds
  std::vector<NamePairRecord> corpus{make_pair("smith", "smyth", 5),
                                     make_pair("johnson", "jonson", 5)};
  const auto universe = build_universe(
      {{"smith", 100}, {"smyth", 5}, {"johnson", 80}, {"jonson", 4}}, 4);
  EvaluateOptions opts;
  opts.methods = {"soundex"};
  opts.folds = 2;
  opts.nbest = 3;
  const auto evals = run_evaluation(corpus, universe, nullptr, opts);
  REQUIRE(evals.size() == 1);
  REQUIRE(evals[0].curves.size() == 2);
  for (const auto& curve : evals[0].curves) {
    REQUIRE(curve.points.size() == 3);
    CHECK(curve.points[0].precision == 1.0);
    CHECK(curve.points[0].recall == 1.0);
  }
  CHECK(evals[0].centroid_max_f1 == 1.0);
}

TEST_CASE("evaluation over a synthetic corpus ties the whole grid together") {
  std::vector<Name> bases;
  const char* stems[] = {"phil", "steph", "christ", "shep", "murph", "smith",
                         "john",  "ander", "carr",  "thor", "gall",  "kenn"};
  for (int i = 0; i < 36; ++i)
    bases.push_back(std::string(stems[i % 12]) + static_cast<char>('a' + i % 26) +
                    (i % 2 ? "son" : "ie"));
  SynthConfig scfg;
  scfg.pair_count = 900;
  scfg.zipf_exponent = 0.6;
  const auto synth = generate_corpus(bases, named_channel("phonetic-drift"), scfg);
  const auto universe = build_universe(synth.name_counts, synth.name_counts.size());

  TrainOptions topts;
  topts.orders = {3};
  const auto models = train_models(synth.pairs, universe, topts);

  EvaluateOptions opts;
  opts.methods = {"soundex", "levenshtein", "mt-3gram"};
  opts.folds = 3;
  opts.nbest = 30;
  opts.decoder.beam_width = 30;
  const auto evals = run_evaluation(synth.pairs, universe, &models, opts);
  REQUIRE(evals.size() == 3);
  std::set<int> fold_ids;
  for (const auto& ev : evals) {
    REQUIRE(ev.curves.size() == 3);
    CHECK(ev.band.centroid.size() == 30);
    CHECK(ev.centroid_max_f1 >= 0.0);
    CHECK(ev.centroid_max_f1 <= 1.0);
    for (const auto& curve : ev.curves) {
      CHECK(curve.method_id == ev.method_id);
      fold_ids.insert(curve.fold_index);
      REQUIRE(curve.points.size() == 30);
      for (std::size_t j = 1; j < curve.points.size(); ++j)
        CHECK(curve.points[j].recall >= curve.points[j - 1].recall);
    }
  }
  CHECK(fold_ids.size() == 3);

  // the decoder should do something useful on drift pairs
  const auto& mt = evals[2];
  CHECK(mt.method_id == "mt-3gram");
  CHECK(mt.centroid_max_f1 > 0.0);

  // byte-identical reruns, through the report files
  const auto dir_a = make_temp_dir();
  const auto dir_b = make_temp_dir();
  write_evaluation_report(dir_a.string(), evals);
  const auto evals_again = run_evaluation(synth.pairs, universe, &models, opts);
  write_evaluation_report(dir_b.string(), evals_again);
  for (const char* file : {"pr_curves.csv", "bands.csv", "max_f1.tsv", "pr_plot.svg"}) {
    CAPTURE(file);
    CHECK(read_text((dir_a / file).string()) == read_text((dir_b / file).string()));
  }
  const auto csv = read_text((dir_a / "pr_curves.csv").string());
  CHECK(csv.rfind("method,fold,position,precision,recall\n", 0) == 0);
  const auto summary = read_text((dir_a / "max_f1.tsv").string());
  CHECK(summary.find("mt-3gram\t") != std::string::npos);
  fs::remove_all(dir_a);
  fs::remove_all(dir_b);
}

TEST_CASE("evaluation preconditions") {
  const SmallWorld w;
  EvaluateOptions opts;
  opts.methods = {"mt-3gram"};
  opts.folds = 2;
  try {
    run_evaluation(w.corpus, w.universe, nullptr, opts);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code == "E_NO_MODEL");
  }
  opts.methods = {"soundex"};
  opts.folds = 1;
  try {
    run_evaluation(w.corpus, w.universe, nullptr, opts);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code == "E_FOLDS");
    CHECK(e.exit_code == 3);
  }
  opts.folds = 2;
  opts.nbest = 0;
  CHECK_THROWS_AS(run_evaluation(w.corpus, w.universe, nullptr, opts), Error);
}

}  // TEST_SUITE
