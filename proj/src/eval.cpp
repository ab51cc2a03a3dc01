#include "namevar/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "namevar/util.hpp"

namespace namevar {

PRCurve compute_pr_curve(const PredictionMap& predictions, const TruthMap& truth,
                         int max_position) {
  if (max_position < 1) fail_config("E_EVAL_CONFIG", "max_position must be >= 1");
  if (truth.empty()) fail_input("E_EMPTY_TRUTH", "no truth pairs to evaluate against");
  std::size_t actual = 0;
  for (const auto& [source, targets] : truth) {
    if (targets.empty())
      fail_input("E_EMPTY_TRUTH", "truth set for '" + source + "' is empty");
    actual += targets.size();
  }

  const auto n = static_cast<std::size_t>(max_position);
  std::vector<std::size_t> tp(n + 1, 0);
  std::vector<std::size_t> predicted(n + 1, 0);
  std::vector<std::size_t> hits;  // distinct matches within the first i slots
  for (const auto& [source, targets] : truth) {
    std::size_t len = 0;
    hits.assign(1, 0);
    if (auto it = predictions.find(source); it != predictions.end()) {
      const auto& list = it->second;
      len = std::min(list.size(), n);
      hits.resize(len + 1, 0);
      std::set<Name> seen;
      for (std::size_t i = 0; i < len; ++i) {
        std::size_t h = hits[i];
        if (seen.insert(list[i]).second && targets.count(list[i])) ++h;
        hits[i + 1] = h;
      }
    }
    for (std::size_t k = 1; k <= n; ++k) {
      const std::size_t cut = std::min(k, len);
      tp[k] += hits[cut];
      predicted[k] += cut;
    }
  }

  PRCurve curve;
  curve.points.reserve(n);
  for (std::size_t k = 1; k <= n; ++k) {
    PRPoint p;
    p.position = static_cast<int>(k);
    p.precision = predicted[k] == 0
                      ? 0.0
                      : static_cast<double>(tp[k]) / static_cast<double>(predicted[k]);
    p.recall = static_cast<double>(tp[k]) / static_cast<double>(actual);
    curve.points.push_back(p);
  }
  return curve;
}

double max_f1(const PRCurve& curve) {
  if (curve.points.empty()) fail_input("E_EMPTY_INPUT", "max_f1 needs a nonempty curve");
  double best = 0.0;
  for (const auto& p : curve.points) {
    const double denom = p.precision + p.recall;
    if (denom > 0.0) best = std::max(best, 2.0 * p.precision * p.recall / denom);
  }
  return best;
}

double sigma_multiplier(double confidence) {
  if (!(confidence > 0.0 && confidence < 1.0))
    fail_config("E_CONFIDENCE", "confidence must lie strictly between 0 and 1");
  // chi-square with 2 dof has CDF 1 - exp(-x/2), so the quantile is closed form
  return std::sqrt(-2.0 * std::log1p(-confidence));
}

ConfidenceBand confidence_band(const std::vector<PRCurve>& curves, double confidence) {
  if (curves.size() < 2)
    fail_input("E_DEGENERATE_INPUT", "confidence band needs at least 2 fold curves, got " +
                                         std::to_string(curves.size()));
  const std::size_t positions = curves.front().points.size();
  for (const auto& c : curves)
    if (c.points.size() != positions)
      fail_input("E_CURVE_MISMATCH", "fold curves disagree on position count");
  if (positions == 0) fail_input("E_EMPTY_INPUT", "fold curves have no points");

  const double mult = sigma_multiplier(confidence);
  const auto k = static_cast<double>(curves.size());

  ConfidenceBand band;
  band.sigma_multiplier = mult;
  band.centroid.reserve(positions);
  band.ellipses.reserve(positions);
  band.upper.reserve(positions);
  band.lower.reserve(positions);

  for (std::size_t j = 0; j < positions; ++j) {
    // shifted mean: exact when all folds coincide, stable otherwise
    const double p0 = curves.front().points[j].precision;
    const double r0 = curves.front().points[j].recall;
    double sp = 0.0;
    double sr = 0.0;
    for (const auto& c : curves) {
      sp += c.points[j].precision - p0;
      sr += c.points[j].recall - r0;
    }
    const double mp = p0 + sp / k;
    const double mr = r0 + sr / k;

    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (const auto& c : curves) {
      const double dp = c.points[j].precision - mp;
      const double dr = c.points[j].recall - mr;
      sxx += dp * dp;
      sxy += dp * dr;
      syy += dr * dr;
    }
    sxx /= k - 1.0;
    sxy /= k - 1.0;
    syy /= k - 1.0;

    PositionEllipse e;
    e.center = {mp, mr};
    e.sxx = sxx;
    e.sxy = sxy;
    e.syy = syy;

    // closed-form eigensystem of the symmetric 2x2 matrix [[sxx,sxy],[sxy,syy]]
    const double mid = 0.5 * (sxx + syy);
    const double disc = std::hypot(0.5 * (sxx - syy), sxy);
    e.eigenvalue_major = std::max(mid + disc, 0.0);
    e.eigenvalue_minor = std::max(mid - disc, 0.0);
    double vp;
    double vr;
    if (sxy != 0.0) {
      vp = sxy;
      vr = e.eigenvalue_major - sxx;
      const double norm = std::hypot(vp, vr);
      vp /= norm;
      vr /= norm;
    } else if (sxx >= syy) {
      vp = 1.0;
      vr = 0.0;
    } else {
      vp = 0.0;
      vr = 1.0;
    }
    if (vp < 0.0 || (vp == 0.0 && vr < 0.0)) {
      vp = -vp;
      vr = -vr;
    }
    e.axis_major = {vp, vr};

    const double semi = mult * std::sqrt(e.eigenvalue_major);
    e.endpoint_plus = {mp + semi * vp, mr + semi * vr};
    e.endpoint_minus = {mp - semi * vp, mr - semi * vr};

    band.centroid.push_back(e.center);
    band.upper.push_back(e.endpoint_plus);
    band.lower.push_back(e.endpoint_minus);
    band.ellipses.push_back(e);
  }
  return band;
}

std::string pr_curves_csv(const std::vector<PRCurve>& curves) {
  std::string out = "method,fold,position,precision,recall\n";
  for (const auto& c : curves) {
    for (const auto& p : c.points) {
      out += c.method_id;
      out += ',';
      out += std::to_string(c.fold_index);
      out += ',';
      out += std::to_string(p.position);
      out += ',';
      out += fmt_double(p.precision);
      out += ',';
      out += fmt_double(p.recall);
      out += '\n';
    }
  }
  return out;
}

std::string bands_csv(const std::vector<std::pair<std::string, ConfidenceBand>>& bands) {
  std::string out = "method,position,mu_p,mu_r,sxx,sxy,syy\n";
  for (const auto& [method, band] : bands) {
    for (std::size_t j = 0; j < band.ellipses.size(); ++j) {
      const auto& e = band.ellipses[j];
      out += method;
      out += ',';
      out += std::to_string(j + 1);
      out += ',';
      out += fmt_double(e.center.precision);
      out += ',';
      out += fmt_double(e.center.recall);
      out += ',';
      out += fmt_double(e.sxx);
      out += ',';
      out += fmt_double(e.sxy);
      out += ',';
      out += fmt_double(e.syy);
      out += '\n';
    }
  }
  return out;
}

namespace {

// plot geometry: fixed-size canvas, recall on x, precision on y
constexpr double kPlotLeft = 70.0;
constexpr double kPlotTop = 40.0;
constexpr double kPlotWidth = 720.0;
constexpr double kPlotHeight = 540.0;

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

std::string svg_x(double recall) {
  return fmt_fixed(kPlotLeft + clamp01(recall) * kPlotWidth, 2);
}

std::string svg_y(double precision) {
  return fmt_fixed(kPlotTop + (1.0 - clamp01(precision)) * kPlotHeight, 2);
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

const char* kPalette[] = {
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
    "#e377c2", "#17becf", "#bcbd22", "#7f7f7f", "#aec7e8", "#98df8a",
};
constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

}  // namespace

std::string render_pr_svg(const std::vector<std::pair<std::string, ConfidenceBand>>& bands) {
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out +=
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"860\" height=\"640\" "
      "viewBox=\"0 0 860 640\">\n";
  out += "<rect width=\"860\" height=\"640\" fill=\"white\"/>\n";
  out += "<rect x=\"" + fmt_fixed(kPlotLeft, 2) + "\" y=\"" + fmt_fixed(kPlotTop, 2) +
         "\" width=\"" + fmt_fixed(kPlotWidth, 2) + "\" height=\"" +
         fmt_fixed(kPlotHeight, 2) + "\" fill=\"none\" stroke=\"#333\"/>\n";

  // axis ticks and grid at 0.0, 0.2, ..., 1.0
  for (int i = 0; i <= 5; ++i) {
    const double v = i / 5.0;
    const std::string label = fmt_fixed(v, 1);
    const std::string x = svg_x(v);
    const std::string y = svg_y(v);
    const std::string bottom = fmt_fixed(kPlotTop + kPlotHeight, 2);
    out += "<line x1=\"" + x + "\" y1=\"" + bottom + "\" x2=\"" + x + "\" y2=\"" +
           fmt_fixed(kPlotTop + kPlotHeight + 6.0, 2) + "\" stroke=\"#333\"/>\n";
    out += "<text x=\"" + x + "\" y=\"" + fmt_fixed(kPlotTop + kPlotHeight + 22.0, 2) +
           "\" font-size=\"12\" text-anchor=\"middle\">" + label + "</text>\n";
    out += "<line x1=\"" + fmt_fixed(kPlotLeft - 6.0, 2) + "\" y1=\"" + y + "\" x2=\"" +
           fmt_fixed(kPlotLeft, 2) + "\" y2=\"" + y + "\" stroke=\"#333\"/>\n";
    out += "<text x=\"" + fmt_fixed(kPlotLeft - 10.0, 2) + "\" y=\"" + y +
           "\" font-size=\"12\" text-anchor=\"end\" dominant-baseline=\"middle\">" +
           label + "</text>\n";
  }
  out += "<text x=\"" + fmt_fixed(kPlotLeft + kPlotWidth / 2.0, 2) +
         "\" y=\"632\" font-size=\"14\" text-anchor=\"middle\">recall</text>\n";
  out += "<text x=\"16\" y=\"" + fmt_fixed(kPlotTop + kPlotHeight / 2.0, 2) +
         "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
         fmt_fixed(kPlotTop + kPlotHeight / 2.0, 2) + ")\">precision</text>\n";

  for (std::size_t m = 0; m < bands.size(); ++m) {
    const auto& [method, band] = bands[m];
    const char* color = kPalette[m % kPaletteSize];
    if (!band.upper.empty()) {
      std::string pts;
      for (const auto& p : band.upper) pts += svg_x(p.recall) + "," + svg_y(p.precision) + " ";
      for (auto it = band.lower.rbegin(); it != band.lower.rend(); ++it)
        pts += svg_x(it->recall) + "," + svg_y(it->precision) + " ";
      pts.pop_back();
      out += "<polygon points=\"" + pts + "\" fill=\"" + color +
             "\" fill-opacity=\"0.18\" stroke=\"none\"/>\n";
    }
    if (!band.centroid.empty()) {
      std::string pts;
      for (const auto& p : band.centroid)
        pts += svg_x(p.recall) + "," + svg_y(p.precision) + " ";
      pts.pop_back();
      out += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + color +
             "\" stroke-width=\"1.5\"/>\n";
    }
  }

  for (std::size_t m = 0; m < bands.size(); ++m) {
    const char* color = kPalette[m % kPaletteSize];
    const std::string y = fmt_fixed(kPlotTop + 18.0 + 18.0 * static_cast<double>(m), 2);
    out += "<line x1=\"" + fmt_fixed(kPlotLeft + 14.0, 2) + "\" y1=\"" + y + "\" x2=\"" +
           fmt_fixed(kPlotLeft + 44.0, 2) + "\" y2=\"" + y + "\" stroke=\"" + color +
           "\" stroke-width=\"3\"/>\n";
    out += "<text x=\"" + fmt_fixed(kPlotLeft + 50.0, 2) + "\" y=\"" + y +
           "\" font-size=\"12\" dominant-baseline=\"middle\">" +
           xml_escape(bands[m].first) + "</text>\n";
  }

  out += "</svg>\n";
  return out;
}

}  // namespace namevar
