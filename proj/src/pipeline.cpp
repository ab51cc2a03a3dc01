#include "namevar/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <optional>
#include <set>

#include "json.hpp"
#include "namevar/parallel.hpp"
#include "namevar/phonetic.hpp"
#include "namevar/ranking.hpp"
#include "namevar/util.hpp"

namespace namevar {

namespace fs = std::filesystem;
using nlohmann::json;

std::string RunManifest::to_json() const {
  json j;
  j["tool_version"] = tool_version;
  j["stages"] = json::object();
  for (const auto& [name, stage] : stages) {
    json s;
    s["config_digest"] = stage.config_digest;
    s["input_digests"] = stage.input_digests;
    s["seed"] = stage.seed;
    s["seconds"] = stage.seconds;
    j["stages"][name] = s;
  }
  return j.dump(2) + "\n";
}

RunManifest RunManifest::from_json(const std::string& text) {
  RunManifest m;
  try {
    const json j = json::parse(text);
    m.tool_version = j.at("tool_version").get<std::string>();
    for (const auto& [name, s] : j.at("stages").items()) {
      StageRecord stage;
      stage.config_digest = s.at("config_digest").get<std::string>();
      stage.input_digests =
          s.at("input_digests").get<std::map<std::string, std::string>>();
      stage.seed = s.at("seed").get<std::uint64_t>();
      stage.seconds = s.at("seconds").get<double>();
      m.stages[name] = std::move(stage);
    }
  } catch (const json::exception& e) {
    fail_input("E_PARSE", std::string("bad manifest: ") + e.what());
  }
  return m;
}

RunManifest load_manifest(const std::string& model_dir) {
  const fs::path path = fs::path(model_dir) / "manifest.json";
  if (!fs::exists(path)) return RunManifest{};
  return RunManifest::from_json(read_text(path.string()));
}

void save_manifest(const std::string& model_dir, const RunManifest& manifest) {
  fs::create_directories(model_dir);
  atomic_write_text((fs::path(model_dir) / "manifest.json").string(), manifest.to_json());
}

std::string text_digest(std::string_view text) { return hex64(fnv1a64(text)); }

std::string file_digest(const std::string& path) { return text_digest(read_text(path)); }

namespace {

void check_orders(const std::vector<int>& orders) {
  if (orders.empty()) fail_config("E_ORDER_RANGE", "no language model orders requested");
  for (int k : orders)
    if (k < 2 || k > 6)
      fail_config("E_ORDER_RANGE",
                  "order " + std::to_string(k) + " outside the supported range [2,6]");
}

std::vector<WeightedNamePair> weighted_pairs(const std::vector<NamePairRecord>& corpus) {
  std::vector<WeightedNamePair> pairs;
  pairs.reserve(corpus.size());
  for (const auto& rec : corpus)
    pairs.push_back({rec.source, rec.target, static_cast<double>(rec.cooccurrence)});
  return pairs;
}

}  // namespace

TrainedModels train_models(const std::vector<NamePairRecord>& corpus,
                           const FrequencyUniverse& universe, const TrainOptions& options) {
  check_orders(options.orders);
  if (universe.empty()) fail_input("E_EMPTY_INPUT", "universe is empty");
  TrainedModels models;
  models.segments = learn_segments(weighted_pairs(corpus), options.em, options.max_segment_len);
  std::set<int> orders(options.orders.begin(), options.orders.end());
  for (int k : orders)
    models.lms.emplace(k, train_lm(universe.by_rank(), k, options.weighting));
  return models;
}

void write_models(const std::string& model_dir, const TrainedModels& models) {
  fs::create_directories(model_dir);
  const fs::path dir(model_dir);
  atomic_write_text((dir / "segments.tsv").string(), models.segments.to_text());
  for (const auto& [order, lm] : models.lms)
    atomic_write_text((dir / ("lm" + std::to_string(order) + ".arpa")).string(), lm.to_arpa());
}

TrainedModels read_models(const std::string& model_dir) {
  const fs::path dir(model_dir);
  const fs::path segments_path = dir / "segments.tsv";
  TrainedModels models;
  bool any_lm = false;
  for (int k = 2; k <= 6; ++k) {
    const fs::path lm_path = dir / ("lm" + std::to_string(k) + ".arpa");
    if (!fs::exists(lm_path)) continue;
    models.lms.emplace(k, CharLanguageModel::from_arpa(read_text(lm_path.string())));
    any_lm = true;
  }
  if (!fs::exists(segments_path) || !any_lm)
    fail_input("E_NO_MODEL", "no trained models in '" + model_dir +
                                 "' (need segments.tsv and at least one lm<order>.arpa)");
  models.segments = SegmentTable::from_text(read_text(segments_path.string()));
  return models;
}

namespace {

// "mt-5gram" -> 5, anything else -> 0
int parse_mt_order(const std::string& id) {
  if (id.size() != 8 || id.compare(0, 3, "mt-") != 0 || id.compare(4, 4, "gram") != 0)
    return 0;
  const char digit = id[3];
  return digit >= '2' && digit <= '6' ? digit - '0' : 0;
}

}  // namespace

std::vector<std::string> expand_methods(const std::vector<std::string>& requested,
                                        const std::vector<int>& trained_orders) {
  if (requested.empty()) fail_config("E_METHOD", "no evaluation methods requested");
  std::vector<std::string> out;
  auto push = [&out](const std::string& id) {
    if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
  };
  for (const auto& token : requested) {
    if (token == "all") {
      for (auto m : kAllPhoneticMethods) push(std::string(method_name(m)));
      for (auto m : kAllSimilarityMeasures) push(std::string(measure_name(m)));
      std::vector<int> orders = trained_orders;
      std::sort(orders.begin(), orders.end());
      for (int k : orders) push("mt-" + std::to_string(k) + "gram");
      continue;
    }
    if (method_from_name(token) || measure_from_name(token)) {
      push(token);
      continue;
    }
    if (const int order = parse_mt_order(token); order != 0) {
      if (std::find(trained_orders.begin(), trained_orders.end(), order) ==
          trained_orders.end())
        fail_input("E_NO_MODEL",
                   token + " requested but no trained language model of order " +
                       std::to_string(order));
      push(token);
      continue;
    }
    fail_config("E_METHOD", "unknown method '" + token + "'");
  }
  return out;
}

namespace {

// ranked candidates -> plain names, without the source itself (a name is
// never its own alternative spelling), capped at nbest
std::vector<Name> to_candidates(const std::vector<RankedCandidate>& ranked, const Name& source,
                                std::size_t nbest) {
  std::vector<Name> out;
  out.reserve(std::min(ranked.size(), nbest));
  for (const auto& rc : ranked) {
    if (rc.candidate == source) continue;
    out.push_back(rc.candidate);
    if (out.size() == nbest) break;
  }
  return out;
}

void finish_evaluation(MethodEvaluation& ev, double confidence) {
  ev.band = confidence_band(ev.curves, confidence);
  PRCurve centroid;
  for (std::size_t j = 0; j < ev.band.centroid.size(); ++j)
    centroid.points.push_back({static_cast<int>(j + 1), ev.band.centroid[j].precision,
                               ev.band.centroid[j].recall});
  ev.centroid_max_f1 = max_f1(centroid);
}

}  // namespace

std::vector<MethodEvaluation> run_evaluation(const std::vector<NamePairRecord>& corpus,
                                             const FrequencyUniverse& universe,
                                             const TrainedModels* models,
                                             const EvaluateOptions& options) {
  std::vector<int> trained_orders;
  if (models)
    for (const auto& [order, lm] : models->lms) trained_orders.push_back(order);
  const auto method_ids = expand_methods(options.methods, trained_orders);
  if (options.nbest < 1) fail_config("E_EVAL_CONFIG", "nbest must be at least 1");
  if (universe.empty()) fail_input("E_EMPTY_INPUT", "universe is empty");
  const auto nbest = static_cast<std::size_t>(options.nbest);

  bool any_mt = false;
  for (const auto& id : method_ids) any_mt |= parse_mt_order(id) != 0;

  const auto folds = split_folds(corpus, options.folds, options.seed);

  // universe-side rankers are fold-independent; build them once
  std::map<std::string, PhoneticRanker> phonetic_rankers;
  for (const auto& id : method_ids)
    if (auto m = method_from_name(id)) phonetic_rankers.emplace(id, PhoneticRanker(*m, universe));

  std::vector<MethodEvaluation> evaluations(method_ids.size());
  for (std::size_t i = 0; i < method_ids.size(); ++i) evaluations[i].method_id = method_ids[i];

  DecoderConfig decoder_cfg = options.decoder;
  decoder_cfg.nbest = options.nbest + 1;  // room to drop the identity candidate

  for (const auto& fold : folds) {
    TruthMap truth;
    for (const auto& rec : fold.test_pairs) truth[rec.source].insert(rec.target);
    std::vector<Name> sources;
    sources.reserve(truth.size());
    for (const auto& [source, targets] : truth) sources.push_back(source);

    // the channel model must not see the held-out pairs
    std::optional<SegmentIndex> fold_index;
    if (any_mt)
      fold_index.emplace(
          learn_segments(weighted_pairs(fold.train_pairs), options.em, options.max_segment_len));

    for (std::size_t i = 0; i < method_ids.size(); ++i) {
      const std::string& id = method_ids[i];
      std::vector<std::vector<RankedCandidate>> ranked;
      if (auto it = phonetic_rankers.find(id); it != phonetic_rankers.end()) {
        ranked.resize(sources.size());
        for (std::size_t s = 0; s < sources.size(); ++s) ranked[s] = it->second.rank(sources[s]);
      } else if (auto measure = measure_from_name(id)) {
        ranked = rank_similarity_batch(sources, *measure, options.gamma, universe, nbest + 1);
      } else {
        const int order = parse_mt_order(id);
        ranked = decode_batch(sources, *fold_index, models->lms.at(order), decoder_cfg);
      }
      PredictionMap predictions;
      for (std::size_t s = 0; s < sources.size(); ++s)
        predictions[sources[s]] = to_candidates(ranked[s], sources[s], nbest);
      PRCurve curve = compute_pr_curve(predictions, truth, options.nbest);
      curve.method_id = id;
      curve.fold_index = fold.index;
      evaluations[i].curves.push_back(std::move(curve));
    }
  }

  for (auto& ev : evaluations) finish_evaluation(ev, 0.95);
  return evaluations;
}

std::vector<PRCurve> parse_pr_curves_csv(const std::string& text) {
  const auto lines = split(text, '\n');
  if (lines.empty() || lines[0] != "method,fold,position,precision,recall")
    fail_input("E_PARSE", "pr_curves.csv: missing header");
  std::vector<PRCurve> curves;
  std::map<std::pair<std::string, int>, std::size_t> slot;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto cells = split(lines[i], ',');
    if (cells.size() != 5)
      fail_input("E_PARSE", "pr_curves.csv line " + std::to_string(i + 1) + ": want 5 fields");
    const std::string method(cells[0]);
    const int fold = static_cast<int>(parse_i64(cells[1]));
    const auto key = std::make_pair(method, fold);
    auto it = slot.find(key);
    if (it == slot.end()) {
      it = slot.emplace(key, curves.size()).first;
      curves.push_back({method, fold, {}});
    }
    curves[it->second].points.push_back({static_cast<int>(parse_i64(cells[2])),
                                         parse_double(cells[3]), parse_double(cells[4])});
  }
  if (curves.empty()) fail_input("E_PARSE", "pr_curves.csv: no data rows");
  return curves;
}

std::vector<MethodEvaluation> summarize_curves(const std::vector<PRCurve>& curves,
                                               double confidence) {
  std::vector<MethodEvaluation> evaluations;
  std::map<std::string, std::size_t> slot;
  for (const auto& curve : curves) {
    auto it = slot.find(curve.method_id);
    if (it == slot.end()) {
      it = slot.emplace(curve.method_id, evaluations.size()).first;
      evaluations.push_back({curve.method_id, {}, {}, 0.0});
    }
    evaluations[it->second].curves.push_back(curve);
  }
  for (auto& ev : evaluations) finish_evaluation(ev, confidence);
  return evaluations;
}

void write_evaluation_report(const std::string& report_dir,
                             const std::vector<MethodEvaluation>& evaluations) {
  fs::create_directories(report_dir);
  const fs::path dir(report_dir);
  std::vector<PRCurve> all_curves;
  std::vector<std::pair<std::string, ConfidenceBand>> bands;
  std::string summary = "method\tcentroid_max_f1\n";
  for (const auto& ev : evaluations) {
    all_curves.insert(all_curves.end(), ev.curves.begin(), ev.curves.end());
    bands.push_back({ev.method_id, ev.band});
    summary += ev.method_id + "\t" + fmt_double(ev.centroid_max_f1) + "\n";
  }
  atomic_write_text((dir / "pr_curves.csv").string(), pr_curves_csv(all_curves));
  atomic_write_text((dir / "bands.csv").string(), bands_csv(bands));
  atomic_write_text((dir / "max_f1.tsv").string(), summary);
  atomic_write_text((dir / "pr_plot.svg").string(), render_pr_svg(bands));
}

}  // namespace namevar
