#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "namevar/alignment.hpp"
#include "namevar/core.hpp"
#include "namevar/decoder.hpp"
#include "namevar/eval.hpp"
#include "namevar/langmodel.hpp"

namespace namevar {

inline constexpr const char* kToolVersion = "1.0.0";

// Per-stage bookkeeping persisted as <model_dir>/manifest.json. Outputs of a
// stage are a pure function of (inputs, config, seed); timings are advisory.
struct StageRecord {
  std::string config_digest;  // hex64 over the canonical flag text
  std::map<std::string, std::string> input_digests;  // label -> hex64 of bytes
  std::uint64_t seed = 0;
  double seconds = 0.0;
};

struct RunManifest {
  std::string tool_version = kToolVersion;
  std::map<std::string, StageRecord> stages;

  std::string to_json() const;
  static RunManifest from_json(const std::string& text);
};

// Missing file -> fresh manifest for this tool version.
RunManifest load_manifest(const std::string& model_dir);
void save_manifest(const std::string& model_dir, const RunManifest& manifest);

std::string file_digest(const std::string& path);
std::string text_digest(std::string_view text);

// Channel model + name models of the requested orders.
struct TrainedModels {
  SegmentTable segments;
  std::map<int, CharLanguageModel> lms;  // order -> model
};

struct TrainOptions {
  std::vector<int> orders{2, 3, 4, 5, 6};  // each in [2,6]
  Model1Config em{};
  int max_segment_len = 3;
  LmWeighting weighting = LmWeighting::forms;
};

// Learns the segment table from the weighted corpus pairs and one LM per
// order from the universe names.
TrainedModels train_models(const std::vector<NamePairRecord>& corpus,
                           const FrequencyUniverse& universe, const TrainOptions& options);

// Layout: <dir>/segments.tsv plus <dir>/lm<order>.arpa; text round-trips are
// bit-exact. read_models fails with E_NO_MODEL when the directory holds none.
void write_models(const std::string& model_dir, const TrainedModels& models);
TrainedModels read_models(const std::string& model_dir);

struct EvaluateOptions {
  std::vector<std::string> methods{"all"};
  int folds = 10;
  int nbest = 1000;
  double gamma = 0.001;  // similarity frequency exponent
  std::uint64_t seed = 7;
  DecoderConfig decoder{};   // nbest field is overridden by `nbest`
  Model1Config em{};         // per-fold channel retraining
  int max_segment_len = 3;
};

struct MethodEvaluation {
  std::string method_id;
  std::vector<PRCurve> curves;  // one per fold
  ConfidenceBand band;
  double centroid_max_f1 = 0.0;
};

// Expands "all" (or validates explicit ids) against the trained LM orders:
// 7 phonetic methods, then 3 similarity measures, then mt-<k>gram per order.
std::vector<std::string> expand_methods(const std::vector<std::string>& requested,
                                        const std::vector<int>& trained_orders);

// k-fold cross validation over the corpus: per fold, the channel model is
// retrained on the training split while LMs and the candidate universe stay
// fixed; truth is the test split grouped by source. A method's predictions
// never include the source itself. `models` may be null when no mt method is
// requested (E_NO_MODEL otherwise).
std::vector<MethodEvaluation> run_evaluation(const std::vector<NamePairRecord>& corpus,
                                             const FrequencyUniverse& universe,
                                             const TrainedModels* models,
                                             const EvaluateOptions& options);

// Inverse of pr_curves_csv: fold curves in first-appearance order.
std::vector<PRCurve> parse_pr_curves_csv(const std::string& text);

// Groups fold curves by method (first-appearance order) and rebuilds each
// method's band and centroid max-F1. run_evaluation ends with this; exposing
// it lets a report be regenerated from a curves file alone.
std::vector<MethodEvaluation> summarize_curves(const std::vector<PRCurve>& curves,
                                               double confidence = 0.95);

// Writes pr_curves.csv, bands.csv, max_f1.tsv, and pr_plot.svg into the
// report directory (created if needed).
void write_evaluation_report(const std::string& report_dir,
                             const std::vector<MethodEvaluation>& evaluations);

}  // namespace namevar
