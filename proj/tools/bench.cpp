// Serial vs OpenMP timings for the three batch kernels (EM training,
// n-best decoding, similarity ranking), with an output-equality check so the
// numbers can be trusted.
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "namevar/alignment.hpp"
#include "namevar/parallel.hpp"
#include "namevar/synth.hpp"
#include "namevar/util.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<namevar::Name> make_base_names(std::size_t n) {
  std::vector<namevar::Name> names;
  names.reserve(n);
  const char* stems[] = {"ander", "john", "peter", "wil", "thom", "rich",
                         "carl", "ed",   "har",   "rob", "walt", "hend"};
  const char* tails[] = {"son", "sen", "mann", "man", "son", "ers",
                         "rick", "ard", "fels", "berg", "quist", "field"};
  for (std::size_t i = 0; i < n; ++i) {
    std::string name = stems[i % 12];
    name += static_cast<char>('a' + (i / 12) % 26);
    name += tails[(i / 312) % 12];
    names.push_back(name);
  }
  return names;
}

void report(const char* kernel, double serial_s, double parallel_s, bool identical) {
  std::printf("%-22s serial %8.3fs   parallel %8.3fs   speedup %5.2fx   outputs %s\n",
              kernel, serial_s, parallel_s, parallel_s > 0 ? serial_s / parallel_s : 0.0,
              identical ? "identical" : "DIFFER");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"serial vs parallel kernel benchmark"};
  std::size_t num_names = 400;
  std::size_t num_pairs = 6000;
  std::size_t num_sources = 150;
  int iterations = 5;
  int threads = 0;
  app.add_option("--names", num_names, "base name count");
  app.add_option("--pairs", num_pairs, "synthetic pair draws");
  app.add_option("--sources", num_sources, "decode/rank batch size");
  app.add_option("--iterations", iterations, "EM iterations");
  app.add_option("--threads", threads, "OpenMP thread cap (0 = default)");
  CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
  std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP not available: parallel paths run serially\n");
#endif

  try {
    const auto bases = make_base_names(num_names);
    namevar::SynthConfig synth_cfg;
    synth_cfg.pair_count = num_pairs;
    const auto corpus =
        namevar::generate_corpus(bases, namevar::named_channel("phonetic-drift"), synth_cfg);
    std::vector<namevar::WeightedNamePair> pairs;
    for (const auto& rec : corpus.pairs)
      pairs.push_back({rec.source, rec.target, static_cast<double>(rec.cooccurrence)});
    std::printf("workload: %zu aggregated pairs from %zu draws over %zu names\n\n",
                pairs.size(), num_pairs, num_names);

    namevar::Model1Config em_cfg;
    em_cfg.iterations = iterations;
    em_cfg.min_gain_per_weight = 0.0;  // fixed work on both sides
    em_cfg.parallel = false;
    auto t0 = Clock::now();
    const auto table_serial = namevar::train_model1(pairs, em_cfg);
    const double em_serial = seconds_since(t0);
    em_cfg.parallel = true;
    t0 = Clock::now();
    const auto table_parallel = namevar::train_model1(pairs, em_cfg);
    const double em_parallel = seconds_since(t0);
    report("EM E-step (train)", em_serial, em_parallel,
           table_serial.rows() == table_parallel.rows());

    const auto segments = namevar::learn_segments(pairs);
    std::vector<namevar::Name> targets;
    for (const auto& rec : corpus.pairs) targets.push_back(rec.target);
    const auto lm = namevar::train_lm(targets, 4);
    const namevar::SegmentIndex index(segments);
    std::vector<namevar::Name> sources;
    for (std::size_t i = 0; i < num_sources; ++i) sources.push_back(bases[i % bases.size()]);

    namevar::DecoderConfig dec_cfg;
    t0 = Clock::now();
    const auto dec_serial = namevar::decode_batch(sources, index, lm, dec_cfg, false);
    const double dec_serial_s = seconds_since(t0);
    t0 = Clock::now();
    const auto dec_parallel = namevar::decode_batch(sources, index, lm, dec_cfg, true);
    const double dec_parallel_s = seconds_since(t0);
    report("n-best decode batch", dec_serial_s, dec_parallel_s, dec_serial == dec_parallel);

    const auto universe = namevar::build_universe(corpus.name_counts, corpus.name_counts.size());
    t0 = Clock::now();
    const auto sim_serial = namevar::rank_similarity_batch(
        sources, namevar::SimilarityMeasure::jaro_winkler, 0.001, universe, 1000, false);
    const double sim_serial_s = seconds_since(t0);
    t0 = Clock::now();
    const auto sim_parallel = namevar::rank_similarity_batch(
        sources, namevar::SimilarityMeasure::jaro_winkler, 0.001, universe, 1000, true);
    const double sim_parallel_s = seconds_since(t0);
    report("similarity rank batch", sim_serial_s, sim_parallel_s, sim_serial == sim_parallel);
  } catch (const namevar::Error& e) {
    std::fprintf(stderr, "%s: %s\n", e.code.c_str(), e.what());
    return e.exit_code;
  }
  return 0;
}
