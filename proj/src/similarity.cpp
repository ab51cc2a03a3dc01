#include "namevar/similarity.hpp"

#include <algorithm>
#include <string>

namespace namevar {

int levenshtein_distance(std::string_view s, std::string_view t) {
  const std::size_t n = s.size(), m = t.size();
  if (n == 0) return static_cast<int>(m);
  if (m == 0) return static_cast<int>(n);
  std::vector<int> prev(m + 1), cur(m + 1);
  for (std::size_t j = 0; j <= m; ++j) prev[j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = static_cast<int>(i);
    for (std::size_t j = 1; j <= m; ++j) {
      int sub = prev[j - 1] + (s[i - 1] == t[j - 1] ? 0 : 1);
      cur[j] = std::min({sub, prev[j] + 1, cur[j - 1] + 1});
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

double levenshtein_similarity(std::string_view s, std::string_view t) {
  std::size_t longest = std::max(s.size(), t.size());
  if (longest == 0) return 1.0;
  return 1.0 - static_cast<double>(levenshtein_distance(s, t)) / static_cast<double>(longest);
}

double jaro(std::string_view s, std::string_view t) {
  const std::size_t n = s.size(), m = t.size();
  if (n == 0 && m == 0) return 1.0;
  if (n == 0 || m == 0) return 0.0;
  const std::size_t window =
      std::max(std::max(n, m) / 2, static_cast<std::size_t>(1)) - 1;
  std::vector<bool> s_used(n, false), t_used(m, false);
  std::size_t matches = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t lo = i > window ? i - window : 0;
    std::size_t hi = std::min(m, i + window + 1);
    for (std::size_t j = lo; j < hi; ++j) {
      if (!t_used[j] && s[i] == t[j]) {
        s_used[i] = t_used[j] = true;
        ++matches;
        break;
      }
    }
  }
  if (matches == 0) return 0.0;
  std::size_t half_transpositions = 0;
  std::size_t j = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!s_used[i]) continue;
    while (!t_used[j]) ++j;
    if (s[i] != t[j]) ++half_transpositions;
    ++j;
  }
  double mm = static_cast<double>(matches);
  double tau = static_cast<double>(half_transpositions) / 2.0;
  return (mm / static_cast<double>(n) + mm / static_cast<double>(m) + (mm - tau) / mm) / 3.0;
}

double jaro_winkler(std::string_view s, std::string_view t) {
  double j = jaro(s, t);
  std::size_t prefix = 0;
  std::size_t bound = std::min({s.size(), t.size(), static_cast<std::size_t>(4)});
  while (prefix < bound && s[prefix] == t[prefix]) ++prefix;
  return j + static_cast<double>(prefix) * 0.1 * (1.0 - j);
}

double jaccard_index(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  if (a.empty() && b.empty()) return 0.0;
  std::size_t inter = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) {
      ++inter;
      ++i;
      ++j;
    } else if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  std::size_t uni = a.size() + b.size() - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

EditOpsBreakdown edit_ops_breakdown(std::string_view s, std::string_view t) {
  const std::size_t n = s.size(), m = t.size();
  std::vector<std::vector<int>> dp(n + 1, std::vector<int>(m + 1));
  for (std::size_t i = 0; i <= n; ++i) dp[i][0] = static_cast<int>(i);
  for (std::size_t j = 0; j <= m; ++j) dp[0][j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= m; ++j) {
      int sub = dp[i - 1][j - 1] + (s[i - 1] == t[j - 1] ? 0 : 1);
      dp[i][j] = std::min({sub, dp[i - 1][j] + 1, dp[i][j - 1] + 1});
    }
  EditOpsBreakdown ops;
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 && s[i - 1] == t[j - 1] && dp[i][j] == dp[i - 1][j - 1]) {
      --i;
      --j;
    } else if (i > 0 && j > 0 && dp[i][j] == dp[i - 1][j - 1] + 1) {
      ++ops.replaces;
      --i;
      --j;
    } else if (i > 0 && dp[i][j] == dp[i - 1][j] + 1) {
      ++ops.deletes;
      --i;
    } else {
      ++ops.inserts;
      --j;
    }
  }
  return ops;
}

}  // namespace namevar
