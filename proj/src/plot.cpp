#include "ddopt/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>

namespace ddopt {

namespace {

std::string num(double x) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.2f", x);
  return buf;
}

std::string tick_label(double x) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%g", x);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '&') out += "&amp;";
    else if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else out += c;
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (!(hi > lo)) {
      lo -= 1.0;
      hi += 1.0;
    } else {
      const double margin = 0.05 * (hi - lo);
      lo -= margin;
      hi += margin;
    }
  }
};

// round tick spacing to a 1/2/5 x 10^k ladder
double nice_step(double span, int target_ticks) {
  const double raw = span / std::max(1, target_ticks);
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double frac = raw / mag;
  double nice = 10.0;
  if (frac <= 1.0) nice = 1.0;
  else if (frac <= 2.0) nice = 2.0;
  else if (frac <= 5.0) nice = 5.0;
  return nice * mag;
}

std::vector<double> ticks(const Range& r, int target) {
  std::vector<double> out;
  const double step = nice_step(r.hi - r.lo, target);
  double t = std::ceil(r.lo / step) * step;
  for (; t <= r.hi + 1e-12 * step; t += step) {
    out.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
  }
  return out;
}

}  // namespace

std::string render_svg(const PlotSpec& spec) {
  const double ml = 64, mr = 16, mt = spec.title.empty() ? 16 : 36, mb = 46;
  const double pw = spec.width - ml - mr;
  const double ph = spec.height - mt - mb;

  Range rx, ry;
  for (const auto& s : spec.series) {
    for (double v : s.x) rx.add(v);
    for (double v : s.y) ry.add(v);
    for (double v : s.band_lo) ry.add(v);
    for (double v : s.band_hi) ry.add(v);
  }
  if (!std::isfinite(rx.lo)) {
    rx.add(0.0);
    ry.add(0.0);
  }
  rx.pad();
  ry.pad();

  auto px = [&](double x) { return ml + (x - rx.lo) / (rx.hi - rx.lo) * pw; };
  auto py = [&](double y) { return mt + ph - (y - ry.lo) / (ry.hi - ry.lo) * ph; };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(spec.width) + "\" height=\"" + std::to_string(spec.height) +
         "\" viewBox=\"0 0 " + std::to_string(spec.width) + " " +
         std::to_string(spec.height) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"#202020\">\n";

  if (!spec.title.empty()) {
    svg += "<text x=\"" + num(ml + pw / 2) + "\" y=\"20\" text-anchor=\"middle\" "
           "font-size=\"14\">" + escape(spec.title) + "</text>\n";
  }

  // grid and tick labels
  for (double t : ticks(rx, 6)) {
    const double x = px(t);
    svg += "<line x1=\"" + num(x) + "\" y1=\"" + num(mt) + "\" x2=\"" + num(x) +
           "\" y2=\"" + num(mt + ph) + "\" stroke=\"#e0e0e0\"/>\n";
    svg += "<text x=\"" + num(x) + "\" y=\"" + num(mt + ph + 16) +
           "\" text-anchor=\"middle\">" + tick_label(t) + "</text>\n";
  }
  for (double t : ticks(ry, 6)) {
    const double y = py(t);
    svg += "<line x1=\"" + num(ml) + "\" y1=\"" + num(y) + "\" x2=\"" + num(ml + pw) +
           "\" y2=\"" + num(y) + "\" stroke=\"#e0e0e0\"/>\n";
    svg += "<text x=\"" + num(ml - 6) + "\" y=\"" + num(y + 4) +
           "\" text-anchor=\"end\">" + tick_label(t) + "</text>\n";
  }
  svg += "<rect x=\"" + num(ml) + "\" y=\"" + num(mt) + "\" width=\"" + num(pw) +
         "\" height=\"" + num(ph) + "\" fill=\"none\" stroke=\"#404040\"/>\n";
  if (!spec.x_label.empty()) {
    svg += "<text x=\"" + num(ml + pw / 2) + "\" y=\"" + num(mt + ph + 36) +
           "\" text-anchor=\"middle\">" + escape(spec.x_label) + "</text>\n";
  }
  if (!spec.y_label.empty()) {
    svg += "<text x=\"16\" y=\"" + num(mt + ph / 2) +
           "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " + num(mt + ph / 2) +
           ")\">" + escape(spec.y_label) + "</text>\n";
  }

  // bands first, lines and legend on top
  for (const auto& s : spec.series) {
    if (s.band_lo.size() == s.x.size() && s.band_hi.size() == s.x.size() &&
        !s.x.empty()) {
      std::string pts;
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        pts += num(px(s.x[i])) + "," + num(py(s.band_hi[i])) + " ";
      }
      for (std::size_t i = s.x.size(); i-- > 0;) {
        pts += num(px(s.x[i])) + "," + num(py(s.band_lo[i])) + " ";
      }
      svg += "<polygon points=\"" + pts + "\" fill=\"" + s.color +
             "\" fill-opacity=\"0.15\" stroke=\"none\"/>\n";
    }
  }
  int legend_row = 0;
  for (const auto& s : spec.series) {
    if (!s.x.empty()) {
      std::string pts;
      if (s.steps) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
          if (i > 0) pts += num(px(s.x[i])) + "," + num(py(s.y[i - 1])) + " ";
          pts += num(px(s.x[i])) + "," + num(py(s.y[i])) + " ";
        }
      } else {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
          pts += num(px(s.x[i])) + "," + num(py(s.y[i])) + " ";
        }
      }
      svg += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + s.color +
             "\" stroke-width=\"1.6\"/>\n";
    }
    if (!s.label.empty()) {
      const double lx = ml + pw - 150, ly = mt + 14 + 18 * legend_row++;
      svg += "<line x1=\"" + num(lx) + "\" y1=\"" + num(ly - 4) + "\" x2=\"" +
             num(lx + 22) + "\" y2=\"" + num(ly - 4) + "\" stroke=\"" + s.color +
             "\" stroke-width=\"2\"/>\n";
      svg += "<text x=\"" + num(lx + 28) + "\" y=\"" + num(ly) + "\">" +
             escape(s.label) + "</text>\n";
    }
  }
  svg += "</g>\n</svg>\n";
  return svg;
}

std::string ensemble_summary_svg(const EnsembleResult& result) {
  static const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                   "#9467bd"};
  PlotSpec spec;
  spec.title = "sensitivity ratio vs sensing time";
  spec.x_label = "T [us]";
  spec.y_label = "eta_SM / eta";

  std::vector<std::string> order;
  std::map<std::string, PlotSeries> by_method;
  for (const auto& s : result.summary) {
    if (!by_method.count(s.method)) {
      order.push_back(s.method);
      by_method[s.method].label = s.method;
      by_method[s.method].color =
          kPalette[(order.size() - 1) % (sizeof(kPalette) / sizeof(kPalette[0]))];
    }
    auto& series = by_method[s.method];
    series.x.push_back(s.T_us);
    series.y.push_back(s.mean_ratio);
    series.band_lo.push_back(s.p20_ratio);
    series.band_hi.push_back(s.p80_ratio);
  }
  for (const auto& m : order) spec.series.push_back(by_method[m]);
  return render_svg(spec);
}

std::string solution_profile_svg(const SphericalSolution& sol, const Grid& grid) {
  PlotSpec spec;
  spec.title = "spherical profile and its sign projection";
  spec.x_label = "t [us]";
  spec.y_label = "y";

  PlotSeries y;
  y.label = "spherical y(t)";
  PlotSeries sign;
  sign.label = "sign(y)";
  sign.color = "#ff7f0e";
  sign.steps = true;
  for (std::size_t i = 0; i < sol.y.size(); ++i) {
    const double t = grid.cell_mid(static_cast<int>(i));
    y.x.push_back(t);
    y.y.push_back(sol.y[i]);
    sign.x.push_back(t);
    sign.y.push_back(sol.y[i] < 0.0 ? -1.0 : 1.0);
  }
  spec.series = {sign, y};
  return render_svg(spec);
}

std::string trace_svg(const std::vector<TracePoint>& trace) {
  PlotSpec spec;
  spec.title = "annealing energy trace";
  spec.x_label = "step";
  spec.y_label = "epsilon";

  PlotSeries cur;
  cur.label = "current";
  cur.color = "#9467bd";
  PlotSeries best;
  best.label = "best";
  best.color = "#d62728";
  for (const auto& p : trace) {
    if (std::isfinite(p.epsilon)) {
      cur.x.push_back(static_cast<double>(p.step));
      cur.y.push_back(p.epsilon);
    }
    if (std::isfinite(p.best_epsilon)) {
      best.x.push_back(static_cast<double>(p.step));
      best.y.push_back(p.best_epsilon);
    }
  }
  spec.series = {cur, best};
  return render_svg(spec);
}

}  // namespace ddopt
