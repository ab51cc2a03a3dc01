#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "namevar/core.hpp"

namespace namevar {

// Precision/recall at one rank cutoff, pooled over all evaluated sources.
struct PRPoint {
  int position = 0;  // 1-based cutoff
  double precision = 0.0;
  double recall = 0.0;
  bool operator==(const PRPoint&) const = default;
};

struct PRCurve {
  std::string method_id;
  int fold_index = 0;
  std::vector<PRPoint> points;  // positions 1..N
};

using PredictionMap = std::map<Name, std::vector<Name>>;
using TruthMap = std::map<Name, std::set<Name>>;

// Pooled per-position curve over the truth sources. True positives are counted
// at the (source, candidate) pair level:
//   TP_k        = sum_s |truth(s) intersect top-k(s)|
//   predicted_k = sum_s min(k, |list(s)|)
//   actual      = sum_s |truth(s)|
// precision_k = TP_k / predicted_k (0 when nothing predicted),
// recall_k = TP_k / actual. Sources without predictions contribute nothing
// predicted; a repeated candidate can match at most once.
PRCurve compute_pr_curve(const PredictionMap& predictions, const TruthMap& truth,
                         int max_position);

// Best harmonic mean of precision and recall over the curve (0 where P+R = 0).
double max_f1(const PRCurve& curve);

struct BandPoint {
  double precision = 0.0;
  double recall = 0.0;
  bool operator==(const BandPoint&) const = default;
};

// Covariance ellipse of the k fold points at one rank position. Entry naming
// treats precision as x and recall as y.
struct PositionEllipse {
  BandPoint center;
  double sxx = 0.0;  // var(precision)
  double sxy = 0.0;  // cov(precision, recall)
  double syy = 0.0;  // var(recall)
  double eigenvalue_major = 0.0;  // >= eigenvalue_minor >= 0
  double eigenvalue_minor = 0.0;
  BandPoint axis_major;      // unit eigenvector of eigenvalue_major,
                             // oriented toward non-negative precision
  BandPoint endpoint_plus;   // center + multiplier*sqrt(eigenvalue_major)*axis_major
  BandPoint endpoint_minus;  // mirror image
};

// Confidence band of one method across folds: centroid curve plus the
// polylines through the endpoints of each ellipse's longest principal axis.
struct ConfidenceBand {
  double sigma_multiplier = 0.0;
  std::vector<BandPoint> centroid;
  std::vector<PositionEllipse> ellipses;
  std::vector<BandPoint> upper;  // endpoint_plus per position
  std::vector<BandPoint> lower;  // endpoint_minus per position
};

// sqrt of the chi-square quantile with 2 degrees of freedom: the factor that
// scales a bivariate normal's principal axes to the given coverage
// (2.4477 at 0.95).
double sigma_multiplier(double confidence);

ConfidenceBand confidence_band(const std::vector<PRCurve>& curves,
                               double confidence = 0.95);

// CSV emission, header line included, shortest round-trip number formatting.
std::string pr_curves_csv(const std::vector<PRCurve>& curves);
std::string bands_csv(const std::vector<std::pair<std::string, ConfidenceBand>>& bands);

// Standalone SVG plot: recall on x, precision on y, both axes [0,1]; one
// centroid polyline plus translucent band polygon per method, with a legend.
// Coordinates are clamped to the unit square for display.
std::string render_pr_svg(const std::vector<std::pair<std::string, ConfidenceBand>>& bands);

}  // namespace namevar
