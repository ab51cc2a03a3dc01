// namevar: batch pipeline for learning and scoring alternative name spellings.
// Subcommands cover the whole flow (prepare -> train -> generate -> evaluate
// -> report) plus the small query tools (encode, sim) and the synthetic
// corpus generator (synth). Exit codes: 0 ok, 2 input error, 3 config error,
// 4 internal. Errors print one line: CODE: message.
#include <chrono>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "namevar/core.hpp"
#include "namevar/dataprep.hpp"
#include "namevar/decoder.hpp"
#include "namevar/parallel.hpp"
#include "namevar/phonetic.hpp"
#include "namevar/pipeline.hpp"
#include "namevar/ranking.hpp"
#include "namevar/synth.hpp"
#include "namevar/util.hpp"

namespace fs = std::filesystem;
using namespace namevar;

namespace {

struct StageTimer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

void apply_threads(int threads) {
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
}

void require_file(const std::string& path) {
  if (!fs::exists(path) || fs::is_directory(path))
    fail_input("E_INPUT_MISSING", "input file not found: " + path);
}

std::string trim(std::string s) {
  const auto* ws = " \t\r";
  s.erase(0, s.find_first_not_of(ws));
  s.erase(s.find_last_not_of(ws) + 1);
  return s;
}

// key=value lines fill in options the command line left unset, so flags win.
void apply_config(CLI::App* cmd, const std::string& path) {
  if (path.empty()) return;
  require_file(path);
  for (const auto& line : read_lines(path)) {
    const auto text = trim(line);
    if (text.empty() || text[0] == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos)
      fail_config("E_CONFIG", "config line needs key=value: '" + line + "'");
    const auto key = trim(text.substr(0, eq));
    auto* opt = cmd->get_option_no_throw("--" + key);
    if (!opt) fail_config("E_CONFIG", "unknown config key '" + key + "'");
    if (opt->count() == 0) {
      opt->add_result(trim(text.substr(eq + 1)));
      opt->run_callback();
    }
  }
}

Name normalize_or_fail(const std::string& raw) {
  auto name = normalize(raw);
  if (!name) fail_input("E_PARSE", "name empty after cleaning: '" + raw + "'");
  return *name;
}

std::vector<Name> read_name_list(const std::string& path) {
  require_file(path);
  std::vector<Name> names;
  for (const auto& line : read_lines(path))
    if (!line.empty()) names.push_back(normalize_or_fail(line));
  if (names.empty()) fail_input("E_EMPTY_INPUT", "no names in " + path);
  return names;
}

// Stage records chain provenance: the digest of the effective flags plus the
// digests of every input file, written before the command reports success.
void record_stage(const std::string& dir, const std::string& stage,
                  const std::string& config_text,
                  const std::map<std::string, std::string>& input_files, std::uint64_t seed,
                  double seconds) {
  auto manifest = load_manifest(dir);
  StageRecord rec;
  rec.config_digest = text_digest(config_text);
  for (const auto& [label, path] : input_files) rec.input_digests[label] = file_digest(path);
  rec.seed = seed;
  rec.seconds = seconds;
  manifest.stages[stage] = rec;
  save_manifest(dir, manifest);
}

std::vector<int> parse_orders(const std::string& spec) {
  std::vector<int> orders;
  try {
    for (const auto part : split(spec, ',')) {
      if (const auto dash = part.find('-'); dash != std::string_view::npos) {
        const int lo = static_cast<int>(parse_i64(part.substr(0, dash)));
        const int hi = static_cast<int>(parse_i64(part.substr(dash + 1)));
        for (int k = lo; k <= hi; ++k) orders.push_back(k);
      } else {
        orders.push_back(static_cast<int>(parse_i64(part)));
      }
    }
  } catch (const Error&) {
    fail_config("E_ORDER_RANGE", "bad order spec '" + spec + "' (want e.g. 2-6 or 3,5)");
  }
  if (orders.empty()) fail_config("E_ORDER_RANGE", "empty order spec");
  return orders;
}

std::vector<std::string> parse_method_list(const std::string& spec) {
  std::vector<std::string> methods;
  for (const auto part : split(spec, ','))
    if (!part.empty()) methods.emplace_back(part);
  return methods;
}

// ---------------------------------------------------------------- prepare --

struct PrepareArgs {
  std::string mode;
  std::string input;
  std::string out;
  int window_min = 30;
  bool all_pairs = false;
  std::size_t universe_size = 250000;
  std::size_t topk = 1000;
  double jaccard_min = 0.0;
  std::size_t sample_per_stratum = 0;
  std::string sample_strata = "1,2,3";
  std::uint64_t seed = 7;
  std::string config;
};

void run_prepare(const PrepareArgs& a) {
  StageTimer timer;
  require_file(a.input);
  const auto lines = read_lines(a.input);

  std::size_t dropped = 0;
  std::vector<NamePairRecord> pairs;
  std::vector<std::pair<Name, std::uint64_t>> counts;
  if (a.mode == "search") {
    const auto events = parse_query_log(lines);
    for (const auto& ev : events)
      if (auto n = normalize(ev.raw_name)) counts.push_back({*n, 1});
    pairs = pair_sessions(events, static_cast<std::uint64_t>(a.window_min) * 60, a.all_pairs,
                          &dropped);
  } else {
    const auto rows = parse_attachments(lines);
    for (const auto& row : rows) {
      if (auto n = normalize(row.tree_name)) counts.push_back({*n, 1});
      if (auto n = normalize(row.record_name)) counts.push_back({*n, 1});
    }
    pairs = aggregate_attachments(rows, &dropped);
  }

  const auto universe = build_universe(std::move(counts), a.universe_size);
  auto [kept, report] = filter_cascade(pairs, universe, a.topk, a.jaccard_min);
  const auto stats = corpus_statistics(kept);

  fs::create_directories(a.out);
  const fs::path dir(a.out);
  write_corpus((dir / "corpus.tsv").string(), kept);
  write_universe((dir / "universe.tsv").string(), universe);

  std::ostringstream filter_text;
  filter_text << "stage\tpairs\n"
              << "input\t" << report.input_pairs << "\n"
              << "universe\t" << report.after_universe << "\n"
              << "cooccurrence_topk\t" << report.after_cooccurrence_topk << "\n"
              << "jaccard\t" << report.after_jaccard << "\n"
              << "dropped_malformed\t" << dropped << "\n";
  atomic_write_text((dir / "filter_report.tsv").string(), filter_text.str());

  std::ostringstream stats_text;
  stats_text << "section\tkey\tvalue\n";
  for (const auto& [ed, count] : stats.edit_distance_histogram)
    stats_text << "histogram\t" << ed << "\t" << count << "\n";
  stats_text << "ops\ted1_pairs\t" << stats.ed1_pairs << "\n"
             << "ops\tpct_deletes\t" << fmt_double(stats.pct_deletes) << "\n"
             << "ops\tpct_inserts\t" << fmt_double(stats.pct_inserts) << "\n"
             << "ops\tpct_replaces\t" << fmt_double(stats.pct_replaces) << "\n";
  atomic_write_text((dir / "statistics.tsv").string(), stats_text.str());

  if (a.sample_per_stratum > 0) {
    std::vector<int> strata;
    for (const auto part : split(a.sample_strata, ','))
      strata.push_back(static_cast<int>(parse_i64(part)));
    const auto sampling = false_positive_sample(kept, strata, a.sample_per_stratum, a.seed);
    std::string text = "source\ttarget\tedit_distance\n";
    for (const auto& s : sampling.samples)
      text += s.source + "\t" + s.target + "\t" + std::to_string(s.edit_distance) + "\n";
    atomic_write_text((dir / "samples.tsv").string(), text);
    for (int ed : sampling.empty_strata)
      std::cout << "prepare: stratum ed=" << ed << " has no pairs to sample\n";
  }

  std::ostringstream cfg;
  cfg << "mode=" << a.mode << "\nwindow_min=" << a.window_min << "\nall_pairs=" << a.all_pairs
      << "\nuniverse_size=" << a.universe_size << "\ntopk=" << a.topk
      << "\njaccard_min=" << fmt_double(a.jaccard_min)
      << "\nsample_per_stratum=" << a.sample_per_stratum << "\nsample_strata=" << a.sample_strata
      << "\nseed=" << a.seed << "\n";
  record_stage(a.out, "prepare", cfg.str(), {{"input", a.input}}, a.seed, timer.seconds());

  std::cout << "prepare: " << report.input_pairs << " pairs in, " << kept.size()
            << " kept (universe " << universe.size() << " names) -> " << a.out << "\n";
}

// ------------------------------------------------------------------ train --

struct TrainArgs {
  std::string corpus;
  std::string universe;
  std::string model_dir;
  std::string orders = "2-6";
  int em_iterations = 10;
  int max_segment_len = 3;
  std::string lm_weighting = "forms";
  int threads = 0;
  std::string config;
};

void run_train(const TrainArgs& a) {
  StageTimer timer;
  apply_threads(a.threads);
  require_file(a.corpus);
  require_file(a.universe);
  const auto corpus = read_corpus(a.corpus);
  const auto universe = read_universe(a.universe);

  TrainOptions options;
  options.orders = parse_orders(a.orders);
  options.em.iterations = a.em_iterations;
  options.max_segment_len = a.max_segment_len;
  options.weighting =
      a.lm_weighting == "frequency" ? LmWeighting::frequency : LmWeighting::forms;

  const auto models = train_models(corpus, universe, options);
  write_models(a.model_dir, models);

  std::ostringstream cfg;
  cfg << "orders=" << a.orders << "\nem_iterations=" << a.em_iterations
      << "\nmax_segment_len=" << a.max_segment_len << "\nlm_weighting=" << a.lm_weighting << "\n";
  record_stage(a.model_dir, "train", cfg.str(),
               {{"corpus", a.corpus}, {"universe", a.universe}}, 0, timer.seconds());

  std::cout << "train: " << models.segments.size() << " segment pairs, lm orders";
  for (const auto& [order, lm] : models.lms)
    std::cout << " " << order << "(" << smoothing_name(lm.smoothing()) << ")";
  std::cout << " -> " << a.model_dir << "\n";
}

// --------------------------------------------------------------- generate --

struct GenerateArgs {
  std::string model_dir;
  std::string input;
  std::string out;
  int nbest = 1000;
  int order = 0;  // 0 = highest trained
  int beam = 100;
  double lm_weight = 1.0;
  double tm_weight = 1.0;
  double length_penalty = 0.0;
  int threads = 0;
  std::string config;
};

void run_generate(const GenerateArgs& a) {
  StageTimer timer;
  apply_threads(a.threads);
  if (a.nbest < 1) fail_config("E_NBEST", "nbest must be at least 1");
  const auto names = read_name_list(a.input);
  const auto models = read_models(a.model_dir);

  int order = a.order;
  if (order == 0)
    order = models.lms.rbegin()->first;
  else if (models.lms.count(order) == 0)
    fail_input("E_NO_MODEL", "no lm of order " + std::to_string(order) + " in " + a.model_dir);

  DecoderConfig cfg;
  cfg.beam_width = a.beam;
  cfg.nbest = a.nbest + 1;  // room to drop the identity candidate
  cfg.lm_weight = a.lm_weight;
  cfg.tm_weight = a.tm_weight;
  cfg.length_penalty = a.length_penalty;

  const SegmentIndex index(models.segments);
  const auto ranked = decode_batch(names, index, models.lms.at(order), cfg);

  std::string out_text;
  for (std::size_t i = 0; i < names.size(); ++i) {
    int rank = 0;
    for (const auto& rc : ranked[i]) {
      if (rc.candidate == names[i]) continue;
      out_text += names[i] + "\t" + std::to_string(++rank) + "\t" + rc.candidate + "\t" +
                  fmt_double(rc.score) + "\n";
      if (rank == a.nbest) break;
    }
  }
  if (a.out.empty())
    std::cout << out_text;
  else
    atomic_write_text(a.out, out_text);

  std::ostringstream cfg_text;
  cfg_text << "nbest=" << a.nbest << "\norder=" << order << "\nbeam=" << a.beam
           << "\nlm_weight=" << fmt_double(a.lm_weight)
           << "\ntm_weight=" << fmt_double(a.tm_weight)
           << "\nlength_penalty=" << fmt_double(a.length_penalty) << "\n";
  record_stage(a.model_dir, "generate", cfg_text.str(), {{"input", a.input}}, 0,
               timer.seconds());
  if (!a.out.empty())
    std::cout << "generate: " << names.size() << " sources, order " << order << " -> " << a.out
              << "\n";
}

// --------------------------------------------------------------- evaluate --

struct EvaluateArgs {
  std::string corpus;
  std::string universe;
  std::string model_dir;
  std::string out;
  std::string methods = "all";
  int folds = 10;
  int nbest = 1000;
  double gamma = 0.001;
  std::uint64_t seed = 7;
  int beam = 100;
  int em_iterations = 10;
  int max_segment_len = 3;
  int threads = 0;
  std::string config;
};

void run_evaluate(const EvaluateArgs& a) {
  StageTimer timer;
  apply_threads(a.threads);
  require_file(a.corpus);
  require_file(a.universe);
  const auto corpus = read_corpus(a.corpus);
  const auto universe = read_universe(a.universe);

  std::optional<TrainedModels> models;
  if (!a.model_dir.empty()) models = read_models(a.model_dir);

  EvaluateOptions options;
  options.methods = parse_method_list(a.methods);
  options.folds = a.folds;
  options.nbest = a.nbest;
  options.gamma = a.gamma;
  options.seed = a.seed;
  options.decoder.beam_width = a.beam;
  options.em.iterations = a.em_iterations;
  options.max_segment_len = a.max_segment_len;

  const auto evaluations =
      run_evaluation(corpus, universe, models ? &*models : nullptr, options);
  write_evaluation_report(a.out, evaluations);

  std::map<std::string, std::string> inputs{{"corpus", a.corpus}, {"universe", a.universe}};
  if (!a.model_dir.empty()) inputs["segments"] = (fs::path(a.model_dir) / "segments.tsv").string();
  std::ostringstream cfg;
  cfg << "methods=" << a.methods << "\nfolds=" << a.folds << "\nnbest=" << a.nbest
      << "\ngamma=" << fmt_double(a.gamma) << "\nbeam=" << a.beam
      << "\nem_iterations=" << a.em_iterations << "\nmax_segment_len=" << a.max_segment_len
      << "\nseed=" << a.seed << "\n";
  record_stage(a.out, "evaluate", cfg.str(), inputs, a.seed, timer.seconds());

  std::cout << "evaluate: " << evaluations.size() << " methods x " << a.folds << " folds -> "
            << a.out << "\n";
  for (const auto& ev : evaluations)
    std::cout << "  " << ev.method_id << "\tmax_f1=" << fmt_double(ev.centroid_max_f1) << "\n";
}

// ----------------------------------------------------------------- report --

struct ReportArgs {
  std::string in;
  std::string out;
  double confidence = 0.95;
  std::string config;
};

void run_report(const ReportArgs& a) {
  StageTimer timer;
  const auto curves_path = (fs::path(a.in) / "pr_curves.csv").string();
  require_file(curves_path);
  const auto curves = parse_pr_curves_csv(read_text(curves_path));
  const auto evaluations = summarize_curves(curves, a.confidence);
  const std::string out = a.out.empty() ? a.in : a.out;
  write_evaluation_report(out, evaluations);

  record_stage(out, "report", "confidence=" + fmt_double(a.confidence) + "\n",
               {{"pr_curves", curves_path}}, 0, timer.seconds());
  std::cout << "report: " << evaluations.size() << " methods -> " << out << "\n";
  for (const auto& ev : evaluations)
    std::cout << "  " << ev.method_id << "\tmax_f1=" << fmt_double(ev.centroid_max_f1) << "\n";
}

// ------------------------------------------------------------ encode, sim --

void run_encode(const std::string& method, const std::string& raw) {
  const auto m = method_from_name(method);
  if (!m) fail_config("E_METHOD", "unknown phonetic method '" + method + "'");
  const auto code = encode(*m, normalize_or_fail(raw));
  std::cout << code.primary;
  if (!code.alternate.empty()) std::cout << "\t" << code.alternate;
  std::cout << "\n";
}

void run_sim(const std::string& measure, const std::string& raw_a, const std::string& raw_b) {
  const auto m = measure_from_name(measure);
  if (!m) fail_config("E_MEASURE", "unknown similarity measure '" + measure + "'");
  std::cout << fmt_double(similarity(*m, normalize_or_fail(raw_a), normalize_or_fail(raw_b)))
            << "\n";
}

// ------------------------------------------------------------------ synth --

struct SynthArgs {
  std::string base;
  std::string channel = "phonetic-drift";
  std::string rules;
  std::string out;
  std::size_t pairs = 10000;
  double zipf_exponent = 1.0;
  std::uint64_t seed = 7;
  int num_users = 100;
  int max_applications = -1;  // -1 = channel default
  std::size_t universe_size = 0;  // 0 = keep every name
  std::string config;
};

NoiseChannel load_channel(const SynthArgs& a) {
  NoiseChannel channel;
  if (!a.rules.empty()) {
    require_file(a.rules);
    for (const auto& line : read_lines(a.rules)) {
      if (line.empty()) continue;
      const auto cells = split(line, '\t');
      if (cells.size() != 3)
        fail_input("E_PARSE", "rule line needs from\\tto\\tprobability: '" + line + "'");
      channel.rules.push_back(
          {std::string(cells[0]), std::string(cells[1]), parse_double(cells[2])});
    }
    channel.max_applications = 2;
  } else {
    channel = named_channel(a.channel);
  }
  if (a.max_applications >= 0) channel.max_applications = a.max_applications;
  return channel;
}

void run_synth(const SynthArgs& a) {
  StageTimer timer;
  const auto bases = read_name_list(a.base);
  const auto channel = load_channel(a);

  SynthConfig config;
  config.pair_count = a.pairs;
  config.zipf_exponent = a.zipf_exponent;
  config.seed = a.seed;
  config.num_users = a.num_users;

  const auto corpus = generate_corpus(bases, channel, config);
  const auto universe = build_universe(
      corpus.name_counts, a.universe_size == 0 ? corpus.name_counts.size() : a.universe_size);

  fs::create_directories(a.out);
  const fs::path dir(a.out);
  write_corpus((dir / "corpus.tsv").string(), corpus.pairs);
  write_universe((dir / "universe.tsv").string(), universe);

  std::ostringstream cfg;
  cfg << "channel=" << (a.rules.empty() ? a.channel : "file:" + a.rules)
      << "\npairs=" << a.pairs << "\nzipf_exponent=" << fmt_double(a.zipf_exponent)
      << "\nnum_users=" << a.num_users << "\nmax_applications=" << channel.max_applications
      << "\nuniverse_size=" << a.universe_size << "\nseed=" << a.seed << "\n";
  std::map<std::string, std::string> inputs{{"base", a.base}};
  if (!a.rules.empty()) inputs["rules"] = a.rules;
  record_stage(a.out, "synth", cfg.str(), inputs, a.seed, timer.seconds());

  std::cout << "synth: " << corpus.pairs.size() << " pair records, universe " << universe.size()
            << " names -> " << a.out << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"alternative name spelling toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  PrepareArgs prep;
  auto* prepare = app.add_subcommand("prepare", "build a pair corpus from raw logs");
  prepare->add_option("--mode", prep.mode, "input kind")
      ->required()
      ->check(CLI::IsMember({"search", "records"}));
  prepare->add_option("--input", prep.input, "query log or attachment tsv")->required();
  prepare->add_option("--out", prep.out, "output directory")->required();
  prepare->add_option("--window-min", prep.window_min, "session window, minutes");
  prepare->add_flag("--all-pairs", prep.all_pairs, "pair all in-window queries, not consecutive");
  prepare->add_option("--universe-size", prep.universe_size, "names kept in the universe");
  prepare->add_option("--topk", prep.topk, "pairs kept per source by co-occurrence");
  prepare->add_option("--jaccard-min", prep.jaccard_min, "minimum user-set overlap");
  prepare->add_option("--sample-per-stratum", prep.sample_per_stratum,
                      "labeling sample size per edit-distance stratum");
  prepare->add_option("--sample-strata", prep.sample_strata, "edit distances to sample");
  prepare->add_option("--seed", prep.seed, "sampling seed")->envname("NAMEVAR_SEED");
  prepare->add_option("--config", prep.config, "key=value defaults, flags win");
  prepare->callback([&] {
    apply_config(prepare, prep.config);
    run_prepare(prep);
  });

  TrainArgs train;
  auto* train_cmd = app.add_subcommand("train", "learn segment table + language models");
  train_cmd->add_option("--corpus", train.corpus, "pair corpus tsv")->required();
  train_cmd->add_option("--universe", train.universe, "name frequency tsv")->required();
  train_cmd->add_option("--model-dir", train.model_dir, "output model directory")->required();
  train_cmd->add_option("--orders", train.orders, "lm orders, e.g. 2-6 or 3,5");
  train_cmd->add_option("--em-iterations", train.em_iterations, "alignment EM iterations");
  train_cmd->add_option("--max-segment-len", train.max_segment_len, "segment extraction bound");
  train_cmd->add_option("--lm-weighting", train.lm_weighting, "count each form once or by frequency")
      ->check(CLI::IsMember({"forms", "frequency"}));
  train_cmd->add_option("--threads", train.threads, "worker threads (0 = default)");
  train_cmd->add_option("--config", train.config, "key=value defaults, flags win");
  train_cmd->callback([&] {
    apply_config(train_cmd, train.config);
    run_train(train);
  });

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "decode alternative spellings");
  generate->add_option("--model-dir", gen.model_dir, "trained model directory")->required();
  generate->add_option("--input", gen.input, "names, one per line")->required();
  generate->add_option("--out", gen.out, "output file (default stdout)");
  generate->add_option("--nbest", gen.nbest, "candidates per name");
  generate->add_option("--order", gen.order, "lm order (default highest trained)");
  generate->add_option("--beam", gen.beam, "beam width");
  generate->add_option("--lm-weight", gen.lm_weight, "language model weight");
  generate->add_option("--tm-weight", gen.tm_weight, "channel model weight");
  generate->add_option("--length-penalty", gen.length_penalty, "per-character score");
  generate->add_option("--threads", gen.threads, "worker threads (0 = default)");
  generate->add_option("--config", gen.config, "key=value defaults, flags win");
  generate->callback([&] {
    apply_config(generate, gen.config);
    run_generate(gen);
  });

  EvaluateArgs eval;
  auto* evaluate = app.add_subcommand("evaluate", "k-fold method comparison");
  evaluate->add_option("--corpus", eval.corpus, "pair corpus tsv")->required();
  evaluate->add_option("--universe", eval.universe, "name frequency tsv")->required();
  evaluate->add_option("--out", eval.out, "report directory")->required();
  evaluate->add_option("--model-dir", eval.model_dir, "trained models (needed for mt-* methods)");
  evaluate->add_option("--methods", eval.methods, "all or comma list");
  evaluate->add_option("--folds", eval.folds, "cross-validation folds");
  evaluate->add_option("--nbest", eval.nbest, "positions per curve");
  evaluate->add_option("--gamma", eval.gamma, "similarity frequency exponent");
  evaluate->add_option("--seed", eval.seed, "fold shuffle seed")->envname("NAMEVAR_SEED");
  evaluate->add_option("--beam", eval.beam, "decoder beam width");
  evaluate->add_option("--em-iterations", eval.em_iterations, "per-fold channel EM iterations");
  evaluate->add_option("--max-segment-len", eval.max_segment_len, "segment extraction bound");
  evaluate->add_option("--threads", eval.threads, "worker threads (0 = default)");
  evaluate->add_option("--config", eval.config, "key=value defaults, flags win");
  evaluate->callback([&] {
    apply_config(evaluate, eval.config);
    run_evaluate(eval);
  });

  ReportArgs rep;
  auto* report = app.add_subcommand("report", "rebuild bands, summary, and plot from curves");
  report->add_option("--in", rep.in, "directory holding pr_curves.csv")->required();
  report->add_option("--out", rep.out, "output directory (default --in)");
  report->add_option("--confidence", rep.confidence, "band confidence level");
  report->add_option("--config", rep.config, "key=value defaults, flags win");
  report->callback([&] {
    apply_config(report, rep.config);
    run_report(rep);
  });

  std::string enc_method, enc_name;
  auto* encode_cmd = app.add_subcommand("encode", "phonetic code of one name");
  encode_cmd->add_option("--method", enc_method, "phonetic method id")->required();
  encode_cmd->add_option("--name", enc_name, "name to encode")->required();
  encode_cmd->callback([&] { run_encode(enc_method, enc_name); });

  std::string sim_measure, sim_a, sim_b;
  auto* sim_cmd = app.add_subcommand("sim", "similarity of two names");
  sim_cmd->add_option("--measure", sim_measure, "levenshtein, jaro, jaro-winkler")->required();
  sim_cmd->add_option("--a", sim_a, "first name")->required();
  sim_cmd->add_option("--b", sim_b, "second name")->required();
  sim_cmd->callback([&] { run_sim(sim_measure, sim_a, sim_b); });

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "generate a synthetic pair corpus");
  synth_cmd->add_option("--base", synth.base, "base names, one per line")->required();
  synth_cmd->add_option("--out", synth.out, "output directory")->required();
  synth_cmd->add_option("--channel", synth.channel, "ocr, phonetic-drift, or suffix");
  synth_cmd->add_option("--rules", synth.rules, "custom rule file: from\\tto\\tprobability");
  synth_cmd->add_option("--pairs", synth.pairs, "draws from the Zipf law");
  synth_cmd->add_option("--zipf-exponent", synth.zipf_exponent, "frequency skew (0 = uniform)");
  synth_cmd->add_option("--num-users", synth.num_users, "synthetic user pool");
  synth_cmd->add_option("--max-applications", synth.max_applications,
                        "rule budget per name (-1 = channel default)");
  synth_cmd->add_option("--universe-size", synth.universe_size, "names kept (0 = all)");
  synth_cmd->add_option("--seed", synth.seed, "generator seed")->envname("NAMEVAR_SEED");
  synth_cmd->add_option("--config", synth.config, "key=value defaults, flags win");
  synth_cmd->callback([&] {
    apply_config(synth_cmd, synth.config);
    run_synth(synth);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "E_USAGE: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << e.code << ": " << e.what() << "\n";
    return e.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "E_INTERNAL: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
