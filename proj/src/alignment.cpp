#include "namevar/alignment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iterator>

#include "namevar/util.hpp"

namespace namevar {

namespace {

constexpr std::size_t kBlockSize = 256;

std::size_t row_index(char c) { return static_cast<std::size_t>(c - 'a'); }

void check_pairs(const std::vector<WeightedNamePair>& pairs) {
  if (pairs.empty()) fail_input("E_EMPTY_INPUT", "no name pairs to align");
  for (const auto& p : pairs) {
    if (!is_valid_name(p.source) || !is_valid_name(p.target))
      fail_input("E_PARSE", "invalid name pair '" + p.source + "' / '" + p.target + "'");
    if (!(p.weight > 0.0) || !std::isfinite(p.weight))
      fail_input("E_PARSE", "pair weight must be positive and finite");
  }
}

void check_config(const Model1Config& cfg) {
  if (cfg.iterations < 1) fail_config("E_EM_CONFIG", "EM needs at least one iteration");
  if (!(cfg.null_prior >= 0.0 && cfg.null_prior < 1.0))
    fail_config("E_EM_CONFIG", "null prior must be in [0,1)");
  if (!(cfg.diagonal_sharpness >= 0.0) || !std::isfinite(cfg.diagonal_sharpness))
    fail_config("E_EM_CONFIG", "diagonal sharpness must be finite and non-negative");
  if (!(cfg.min_gain_per_weight >= 0.0))
    fail_config("E_EM_CONFIG", "early-stop gain must be non-negative");
}

}  // namespace

namespace detail {

void estep_block(const std::vector<WeightedNamePair>& pairs, std::size_t begin, std::size_t end,
                 const DenseTable& table, const Model1Config& config, EStepPartial& out) {
  const double p0 = config.null_prior;
  const double lam = config.diagonal_sharpness;
  std::vector<double> prior;  // diagonal weight per source position
  std::vector<double> joint;  // prior * t, per source position
  for (std::size_t k = begin; k < end; ++k) {
    const auto& pr = pairs[k];
    const std::size_t n = pr.source.size();
    const std::size_t m = pr.target.size();
    prior.resize(n);
    joint.resize(n);
    for (std::size_t j = 0; j < m; ++j) {
      const std::size_t tc = row_index(pr.target[j]);
      double zp = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double d = (double)(j + 1) / (double)m - (double)(i + 1) / (double)n;
        prior[i] = std::exp(-lam * std::fabs(d));
        zp += prior[i];
      }
      // NULL candidate first, then source positions in order; keeping this
      // order makes the accumulation reproducible.
      const double null_term = p0 * table[kNullIndex][tc];
      double z = null_term;
      for (std::size_t i = 0; i < n; ++i) {
        joint[i] = (1.0 - p0) * prior[i] / zp * table[row_index(pr.source[i])][tc];
        z += joint[i];
      }
      out.log_likelihood += pr.weight * std::log(z);
      out.counts[kNullIndex][tc] += pr.weight * null_term / z;
      for (std::size_t i = 0; i < n; ++i)
        out.counts[row_index(pr.source[i])][tc] += pr.weight * joint[i] / z;
    }
  }
}

EStepPartial run_estep(const std::vector<WeightedNamePair>& pairs, const DenseTable& table,
                       const Model1Config& config, bool parallel) {
  const std::size_t nblocks = (pairs.size() + kBlockSize - 1) / kBlockSize;
  std::vector<EStepPartial> parts(nblocks);
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t b = 0; b < static_cast<std::int64_t>(nblocks); ++b) {
      const std::size_t begin = static_cast<std::size_t>(b) * kBlockSize;
      estep_block(pairs, begin, std::min(begin + kBlockSize, pairs.size()), table, config,
                  parts[static_cast<std::size_t>(b)]);
    }
  } else {
    for (std::size_t b = 0; b < nblocks; ++b) {
      const std::size_t begin = b * kBlockSize;
      estep_block(pairs, begin, std::min(begin + kBlockSize, pairs.size()), table, config,
                  parts[b]);
    }
  }
  // Reduce in block order: the result does not depend on thread scheduling.
  EStepPartial total{};
  for (const auto& part : parts) {
    total.log_likelihood += part.log_likelihood;
    for (std::size_t r = 0; r < total.counts.size(); ++r)
      for (std::size_t c = 0; c < total.counts[r].size(); ++c)
        total.counts[r][c] += part.counts[r][c];
  }
  return total;
}

}  // namespace detail

TranslationTable train_model1(const std::vector<WeightedNamePair>& pairs,
                              const Model1Config& config, std::vector<double>* log_likelihoods) {
  check_pairs(pairs);
  check_config(config);

  bool seen_row[27] = {};
  bool seen_col[26] = {};
  double total_weight = 0.0;
  for (const auto& p : pairs) {
    for (char c : p.source) seen_row[row_index(c)] = true;
    for (char c : p.target) seen_col[row_index(c)] = true;
    total_weight += p.weight;
  }
  seen_row[detail::kNullIndex] = true;
  std::size_t ncols = 0;
  for (bool b : seen_col) ncols += b ? 1 : 0;

  detail::DenseTable t{};
  for (auto& row : t)
    for (std::size_t c = 0; c < 26; ++c) row[c] = seen_col[c] ? 1.0 / (double)ncols : 0.0;

  double prev_ll = 0.0;
  bool have_prev = false;
  for (int it = 0; it < config.iterations; ++it) {
    detail::EStepPartial e = detail::run_estep(pairs, t, config, config.parallel);
    if (have_prev && e.log_likelihood < prev_ll - 1e-9)
      fail_internal("EM log-likelihood decreased: " + fmt_double(prev_ll) + " -> " +
                    fmt_double(e.log_likelihood));
    for (std::size_t r = 0; r < 27; ++r) {
      double row_sum = 0.0;
      for (double c : e.counts[r]) row_sum += c;
      if (row_sum > 0.0)
        for (std::size_t c = 0; c < 26; ++c) t[r][c] = e.counts[r][c] / row_sum;
    }
    if (log_likelihoods) log_likelihoods->push_back(e.log_likelihood);
    if (have_prev && e.log_likelihood - prev_ll < config.min_gain_per_weight * total_weight) break;
    prev_ll = e.log_likelihood;
    have_prev = true;
  }

  TranslationTable out;
  for (std::size_t r = 0; r < 27; ++r) {
    if (!seen_row[r]) continue;
    const char row_char = r == detail::kNullIndex ? TranslationTable::kNullRow
                                                  : static_cast<char>('a' + r);
    for (std::size_t c = 0; c < 26; ++c)
      if (t[r][c] > 0.0) out.set(row_char, static_cast<char>('a' + c), t[r][c]);
  }
  return out;
}

TranslationTable train_model1(const std::vector<WeightedNamePair>& pairs, int iterations) {
  Model1Config cfg;
  cfg.iterations = iterations;
  return train_model1(pairs, cfg);
}

AlignmentMatrix viterbi_align(const TranslationTable& table, const Name& source,
                              const Name& target, double diagonal_sharpness) {
  if (!is_valid_name(source) || !is_valid_name(target))
    fail_input("E_PARSE", "invalid name pair '" + source + "' / '" + target + "'");
  const std::size_t n = source.size();
  const std::size_t m = target.size();
  AlignmentMatrix links;
  for (std::size_t i = 0; i < n; ++i) {
    double best = 0.0;
    std::size_t best_j = m;  // m means unaligned (NULL)
    for (std::size_t j = 0; j < m; ++j) {
      const double d = (double)(j + 1) / (double)m - (double)(i + 1) / (double)n;
      // The unnormalized diagonal weight; it separates repeated characters
      // and the strict > keeps the smallest target position on ties.
      const double sc = std::exp(-diagonal_sharpness * std::fabs(d)) * table.prob(source[i], target[j]);
      if (sc > best) {
        best = sc;
        best_j = j;
      }
    }
    if (best_j < m) links.insert({i, best_j});
  }
  return links;
}

AlignmentMatrix symmetrize(const AlignmentMatrix& forward, const AlignmentMatrix& backward) {
  AlignmentMatrix merged, all;
  std::set_intersection(forward.begin(), forward.end(), backward.begin(), backward.end(),
                        std::inserter(merged, merged.end()));
  std::set_union(forward.begin(), forward.end(), backward.begin(), backward.end(),
                 std::inserter(all, all.end()));

  std::set<std::size_t> covered_s, covered_t;
  for (const auto& [i, j] : merged) {
    covered_s.insert(i);
    covered_t.insert(j);
  }

  // Grow: sweep the current links in order, pulling in union links from the
  // eight neighbouring offsets while they still attach an uncovered position.
  bool changed = true;
  while (changed) {
    changed = false;
    const std::vector<AlignmentLink> snapshot(merged.begin(), merged.end());
    for (const auto& [i, j] : snapshot) {
      for (int di = -1; di <= 1; ++di) {
        for (int dj = -1; dj <= 1; ++dj) {
          if (di == 0 && dj == 0) continue;
          const std::int64_t ci = static_cast<std::int64_t>(i) + di;
          const std::int64_t cj = static_cast<std::int64_t>(j) + dj;
          if (ci < 0 || cj < 0) continue;
          const AlignmentLink cand{static_cast<std::size_t>(ci), static_cast<std::size_t>(cj)};
          if (!all.count(cand) || merged.count(cand)) continue;
          if (!covered_s.count(cand.first) || !covered_t.count(cand.second)) {
            merged.insert(cand);
            covered_s.insert(cand.first);
            covered_t.insert(cand.second);
            changed = true;
          }
        }
      }
    }
  }

  // Final-and: union links whose endpoints are both still uncovered.
  for (const auto& link : all) {
    if (!covered_s.count(link.first) && !covered_t.count(link.second)) {
      merged.insert(link);
      covered_s.insert(link.first);
      covered_t.insert(link.second);
    }
  }
  return merged;
}

SegmentTable extract_segments(const std::vector<WeightedNamePair>& pairs,
                              const std::vector<AlignmentMatrix>& alignments,
                              std::size_t max_len) {
  check_pairs(pairs);
  if (max_len < 1) fail_config("E_SEGMENT_LEN", "segment length cap must be at least 1");
  if (alignments.size() != pairs.size())
    fail_input("E_ALIGN_MISMATCH", "need one alignment per pair, got " +
                                       std::to_string(alignments.size()) + " for " +
                                       std::to_string(pairs.size()));

  std::map<SegmentTable::Key, double> joint;
  std::map<std::string, double> source_total, target_total;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const Name& s = pairs[k].source;
    const Name& t = pairs[k].target;
    const double w = pairs[k].weight;
    const AlignmentMatrix& links = alignments[k];
    for (const auto& [li, lj] : links)
      if (li >= s.size() || lj >= t.size())
        fail_input("E_ALIGN_BOUNDS", "alignment link outside '" + s + "' / '" + t + "'");

    for (std::size_t i1 = 0; i1 < s.size(); ++i1) {
      for (std::size_t i2 = i1; i2 < std::min(s.size(), i1 + max_len); ++i2) {
        for (std::size_t j1 = 0; j1 < t.size(); ++j1) {
          for (std::size_t j2 = j1; j2 < std::min(t.size(), j1 + max_len); ++j2) {
            // Consistent block: every link is either fully inside or fully
            // outside, and at least one sits inside.
            bool any_inside = false;
            bool consistent = true;
            for (const auto& [li, lj] : links) {
              const bool in_s = li >= i1 && li <= i2;
              const bool in_t = lj >= j1 && lj <= j2;
              if (in_s != in_t) {
                consistent = false;
                break;
              }
              any_inside = any_inside || in_s;
            }
            if (!consistent || !any_inside) continue;
            std::string src = s.substr(i1, i2 - i1 + 1);
            std::string tgt = t.substr(j1, j2 - j1 + 1);
            source_total[src] += w;
            target_total[tgt] += w;
            joint[{std::move(src), std::move(tgt)}] += w;
          }
        }
      }
    }
  }

  SegmentTable out;
  for (const auto& [key, count] : joint)
    out.set(key.first, key.second,
            {count / source_total.at(key.first), count / target_total.at(key.second)});
  return out;
}

SegmentTable learn_segments(const std::vector<WeightedNamePair>& pairs,
                            const Model1Config& config, std::size_t max_len) {
  const TranslationTable forward_table = train_model1(pairs, config);
  std::vector<WeightedNamePair> swapped;
  swapped.reserve(pairs.size());
  for (const auto& p : pairs) swapped.push_back({p.target, p.source, p.weight});
  const TranslationTable backward_table = train_model1(swapped, config);

  std::vector<AlignmentMatrix> alignments;
  alignments.reserve(pairs.size());
  for (const auto& p : pairs) {
    const AlignmentMatrix fwd =
        viterbi_align(forward_table, p.source, p.target, config.diagonal_sharpness);
    AlignmentMatrix bwd;
    for (const auto& [j, i] :
         viterbi_align(backward_table, p.target, p.source, config.diagonal_sharpness))
      bwd.insert({i, j});
    alignments.push_back(symmetrize(fwd, bwd));
  }
  return extract_segments(pairs, alignments, max_len);
}

std::string SegmentTable::to_text() const {
  std::string out;
  for (const auto& [key, stats] : entries_) {
    out += key.first;
    out += '\t';
    out += key.second;
    out += '\t';
    out += fmt_double(stats.p_forward);
    out += '\t';
    out += fmt_double(stats.p_backward);
    out += '\n';
  }
  return out;
}

SegmentTable SegmentTable::from_text(std::string_view text) {
  SegmentTable out;
  std::size_t lineno = 0;
  for (std::string_view line : split(text, '\n')) {
    ++lineno;
    if (line.empty()) continue;
    const auto fields = split(line, '\t');
    if (fields.size() != 4)
      fail_input("E_PARSE", "segment line " + std::to_string(lineno) + ": expected 4 fields");
    const std::string src(fields[0]);
    const std::string tgt(fields[1]);
    const auto clean = [](const std::string& seg) {
      return std::all_of(seg.begin(), seg.end(), [](char c) { return c >= 'a' && c <= 'z'; });
    };
    if (!clean(src) || !clean(tgt) || (src.empty() && tgt.empty()))
      fail_input("E_PARSE", "segment line " + std::to_string(lineno) + ": bad segment text");
    SegmentStats stats{parse_double(fields[2]), parse_double(fields[3])};
    for (double p : {stats.p_forward, stats.p_backward})
      if (!(p > 0.0 && p <= 1.0))
        fail_input("E_PARSE",
                   "segment line " + std::to_string(lineno) + ": probability outside (0,1]");
    if (out.find(src, tgt))
      fail_input("E_PARSE", "segment line " + std::to_string(lineno) + ": duplicate entry");
    out.set(src, tgt, stats);
  }
  return out;
}

}  // namespace namevar
