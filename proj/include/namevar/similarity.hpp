// String similarity measures and edit-operation accounting.
#pragma once

#include <string_view>
#include <vector>

namespace namevar {

struct EditOpsBreakdown {
  int deletes = 0;
  int inserts = 0;
  int replaces = 0;
  int total() const { return deletes + inserts + replaces; }
  bool operator==(const EditOpsBreakdown&) const = default;
};

int levenshtein_distance(std::string_view s, std::string_view t);

// 1 - dist / max(|s|, |t|); 1.0 when both empty.
double levenshtein_similarity(std::string_view s, std::string_view t);

// Match window floor(max/2) - 1, transpositions halved; 0 when no matches.
double jaro(std::string_view s, std::string_view t);

// jaro + l * 0.1 * (1 - jaro), common prefix l capped at 4.
double jaro_winkler(std::string_view s, std::string_view t);

// Inputs are sorted unique id lists. 0 when both empty.
double jaccard_index(const std::vector<std::string>& a, const std::vector<std::string>& b);

// Operation counts along one optimal unit-cost path; ties prefer replace,
// then delete, then insert, so corpus statistics are deterministic.
EditOpsBreakdown edit_ops_breakdown(std::string_view s, std::string_view t);

}  // namespace namevar
