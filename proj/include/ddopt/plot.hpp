#ifndef DDOPT_PLOT_HPP
#define DDOPT_PLOT_HPP

#include <string>
#include <vector>

#include "ddopt/anneal.hpp"
#include "ddopt/ensemble.hpp"
#include "ddopt/spherical.hpp"

namespace ddopt {

// Minimal self-contained SVG charting, enough for the standard diagnostic
// plots; no external tooling needed to look at a run.
struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "#1f77b4";
  // optional shaded band (e.g. percentiles); same length as x when used
  std::vector<double> band_lo;
  std::vector<double> band_hi;
  bool steps = false;  // draw as a staircase instead of line segments
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  int width = 760;
  int height = 480;
  std::vector<PlotSeries> series;
};

std::string render_svg(const PlotSpec& spec);

// mean eta_SM/eta vs T per method, with the p20-p80 band
std::string ensemble_summary_svg(const EnsembleResult& result);

// continuous spherical profile y(t) next to its sign projection
std::string solution_profile_svg(const SphericalSolution& sol, const Grid& grid);

// annealing energy trace: current and best epsilon vs step
std::string trace_svg(const std::vector<TracePoint>& trace);

}  // namespace ddopt

#endif
