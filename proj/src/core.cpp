#include "namevar/core.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace namevar {

bool is_valid_name(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < 'a' || c > 'z') return false;
  return true;
}

std::optional<Name> normalize(std::string_view raw) {
  Name out;
  out.reserve(raw.size());
  for (char c : raw) {
    if (c >= 'a' && c <= 'z') out.push_back(c);
    else if (c >= 'A' && c <= 'Z') out.push_back(static_cast<char>(c - 'A' + 'a'));
  }
  if (out.empty()) return std::nullopt;
  return out;
}

FrequencyUniverse build_universe(std::vector<std::pair<Name, std::uint64_t>> name_counts,
                                 std::size_t capacity) {
  std::map<Name, std::uint64_t> agg;
  for (auto& [name, count] : name_counts) agg[name] += count;
  std::vector<std::pair<Name, std::uint64_t>> ranked(agg.begin(), agg.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (ranked.size() > capacity) ranked.resize(capacity);
  FrequencyUniverse u;
  u.by_rank_ = std::move(ranked);
  for (const auto& [name, count] : u.by_rank_) u.counts_.emplace(name, count);
  return u;
}

std::vector<Fold> split_folds(const std::vector<NamePairRecord>& corpus, int k,
                              std::uint64_t seed) {
  if (k < 2) fail_config("E_FOLDS", "fold count must be at least 2");
  if (corpus.empty()) fail_input("E_EMPTY_CORPUS", "cannot split an empty corpus");

  std::map<Name, int> group_of;  // source name -> fold, filled below
  std::vector<Name> sources;
  for (const auto& r : corpus)
    if (group_of.emplace(r.source, -1).second) sources.push_back(r.source);
  if (sources.size() < static_cast<std::size_t>(k))
    fail_input("E_TOO_FEW_GROUPS", "fewer distinct source names than folds");

  std::sort(sources.begin(), sources.end());
  std::mt19937_64 rng(seed);
  deterministic_shuffle(sources, rng);
  for (std::size_t i = 0; i < sources.size(); ++i)
    group_of[sources[i]] = static_cast<int>(i % static_cast<std::size_t>(k));

  std::vector<Fold> folds(static_cast<std::size_t>(k));
  for (int f = 0; f < k; ++f) folds[static_cast<std::size_t>(f)].index = f;
  for (const auto& r : corpus) {
    int f = group_of[r.source];
    for (int g = 0; g < k; ++g) {
      auto& fold = folds[static_cast<std::size_t>(g)];
      if (g == f) fold.test_pairs.push_back(r);
      else fold.train_pairs.push_back(r);
    }
  }
  return folds;
}

namespace {

std::vector<std::string> parse_users(std::string_view csv) {
  std::vector<std::string> users;
  if (csv.empty()) return users;
  for (auto piece : split(csv, ',')) {
    if (!piece.empty()) users.emplace_back(piece);
  }
  std::sort(users.begin(), users.end());
  users.erase(std::unique(users.begin(), users.end()), users.end());
  return users;
}

std::string join_users(const std::vector<std::string>& users) {
  std::string out;
  for (std::size_t i = 0; i < users.size(); ++i) {
    if (i) out.push_back(',');
    out += users[i];
  }
  return out;
}

Name parse_name_field(std::string_view field, std::size_t lineno) {
  if (!is_valid_name(field))
    fail_input("E_PARSE", "line " + std::to_string(lineno) + ": invalid name '" +
                              std::string(field) + "'");
  return Name(field);
}

}  // namespace

std::vector<NamePairRecord> parse_corpus(const std::vector<std::string>& lines) {
  std::vector<NamePairRecord> records;
  records.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    auto fields = split(lines[i], '\t');
    if (fields.size() != 5 && fields.size() != 7)
      fail_input("E_PARSE", "line " + std::to_string(i + 1) + ": expected 5 or 7 fields, got " +
                                std::to_string(fields.size()));
    NamePairRecord r;
    r.source = parse_name_field(fields[0], i + 1);
    r.target = parse_name_field(fields[1], i + 1);
    r.cooccurrence = parse_u64(fields[2]);
    r.source_count = parse_u64(fields[3]);
    r.target_count = parse_u64(fields[4]);
    if (r.cooccurrence < 1)
      fail_input("E_PARSE", "line " + std::to_string(i + 1) + ": cooccurrence must be >= 1");
    if (r.cooccurrence > std::min(r.source_count, r.target_count))
      fail_input("E_PARSE", "line " + std::to_string(i + 1) +
                                ": cooccurrence exceeds a marginal count");
    if (fields.size() == 7) {
      r.source_users = parse_users(fields[5]);
      r.target_users = parse_users(fields[6]);
    }
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<NamePairRecord> read_corpus(const std::string& path) {
  return parse_corpus(read_lines(path));
}

std::string format_corpus(const std::vector<NamePairRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    out += r.source;
    out.push_back('\t');
    out += r.target;
    out.push_back('\t');
    out += std::to_string(r.cooccurrence);
    out.push_back('\t');
    out += std::to_string(r.source_count);
    out.push_back('\t');
    out += std::to_string(r.target_count);
    if (!r.source_users.empty() || !r.target_users.empty()) {
      out.push_back('\t');
      out += join_users(r.source_users);
      out.push_back('\t');
      out += join_users(r.target_users);
    }
    out.push_back('\n');
  }
  return out;
}

void write_corpus(const std::string& path, const std::vector<NamePairRecord>& records) {
  atomic_write_text(path, format_corpus(records));
}

FrequencyUniverse parse_universe(const std::vector<std::string>& lines, std::size_t capacity) {
  std::vector<std::pair<Name, std::uint64_t>> counts;
  counts.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    auto fields = split(lines[i], '\t');
    if (fields.size() != 2)
      fail_input("E_PARSE", "line " + std::to_string(i + 1) + ": expected 2 fields");
    counts.emplace_back(parse_name_field(fields[0], i + 1), parse_u64(fields[1]));
  }
  return build_universe(std::move(counts), capacity);
}

FrequencyUniverse read_universe(const std::string& path, std::size_t capacity) {
  return parse_universe(read_lines(path), capacity);
}

std::string format_universe(const FrequencyUniverse& u) {
  std::string out;
  for (const auto& [name, count] : u.by_rank()) {
    out += name;
    out.push_back('\t');
    out += std::to_string(count);
    out.push_back('\n');
  }
  return out;
}

void write_universe(const std::string& path, const FrequencyUniverse& u) {
  atomic_write_text(path, format_universe(u));
}

}  // namespace namevar
