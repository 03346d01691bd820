#ifndef DDOPT_QUADRATURE_HPP
#define DDOPT_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <vector>

namespace ddopt {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  int panels = 0;
  bool converged = false;
};

namespace detail {

// 15-point Kronrod / 7-point Gauss pair (QUADPACK qk15 constants).
inline constexpr double kGK15Nodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double kGK15WeightsK[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

inline constexpr double kGK15WeightsG[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <class F>
inline void gk15(const F& f, double a, double b, double& result, double& abserr) {
  const double center = 0.5 * (a + b);
  const double hlgth = 0.5 * (b - a);

  double fv[15];
  for (int j = 0; j < 7; ++j) {
    const double dx = hlgth * kGK15Nodes[j];
    fv[j] = f(center - dx);
    fv[14 - j] = f(center + dx);
  }
  fv[7] = f(center);

  double resk = kGK15WeightsK[7] * fv[7];
  double resg = kGK15WeightsG[3] * fv[7];
  double resabs = std::abs(resk);
  for (int j = 0; j < 7; ++j) {
    resk += kGK15WeightsK[j] * (fv[j] + fv[14 - j]);
    resabs += kGK15WeightsK[j] * (std::abs(fv[j]) + std::abs(fv[14 - j]));
  }
  for (int j = 0; j < 3; ++j) {
    resg += kGK15WeightsG[j] * (fv[2 * j + 1] + fv[13 - 2 * j]);
  }

  const double reskh = resk * 0.5;
  double resasc = kGK15WeightsK[7] * std::abs(fv[7] - reskh);
  for (int j = 0; j < 7; ++j) {
    resasc += kGK15WeightsK[j] *
              (std::abs(fv[j] - reskh) + std::abs(fv[14 - j] - reskh));
  }

  result = resk * hlgth;
  resabs *= std::abs(hlgth);
  resasc *= std::abs(hlgth);
  abserr = std::abs((resk - resg) * hlgth);
  if (resasc != 0.0 && abserr != 0.0) {
    abserr = resasc * std::min(1.0, std::pow(200.0 * abserr / resasc, 1.5));
  }
  const double eps50 = 50.0 * 2.220446049250313e-16;
  if (resabs > 1e-300) abserr = std::max(abserr, eps50 * resabs);
}

struct Panel {
  double a, b, value, error;
  std::uint64_t id;
  bool operator<(const Panel& o) const {
    if (error != o.error) return error < o.error;
    return id > o.id;  // FIFO tie-break keeps refinement deterministic
  }
};

}  // namespace detail

// Globally adaptive Gauss-Kronrod integration over [breakpoints[0], breakpoints.back()],
// seeded with one panel per breakpoint interval; the worst panel is bisected until
// the summed error estimate meets max(abs_tol, rel_tol*|integral|).
template <class F>
QuadResult integrate_adaptive(const F& f, const std::vector<double>& breakpoints,
                              double rel_tol, double abs_tol = 0.0,
                              int max_panels = 20000) {
  QuadResult out;
  if (breakpoints.size() < 2) {
    out.converged = true;
    return out;
  }

  std::priority_queue<detail::Panel> heap;
  std::uint64_t next_id = 0;
  double total = 0.0, total_err = 0.0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    double a = breakpoints[i], b = breakpoints[i + 1];
    if (!(b > a)) continue;
    double v, e;
    detail::gk15(f, a, b, v, e);
    total += v;
    total_err += e;
    heap.push({a, b, v, e, next_id++});
    ++out.panels;
  }

  auto tolerance = [&]() { return std::max(abs_tol, rel_tol * std::abs(total)); };

  while (total_err > tolerance() && !heap.empty() && out.panels < max_panels) {
    detail::Panel p = heap.top();
    heap.pop();
    const double mid = 0.5 * (p.a + p.b);
    if (!(mid > p.a && mid < p.b)) {  // interval exhausted at double precision
      total_err -= p.error;
      continue;
    }
    double v1, e1, v2, e2;
    detail::gk15(f, p.a, mid, v1, e1);
    detail::gk15(f, mid, p.b, v2, e2);
    total += (v1 + v2) - p.value;
    total_err += (e1 + e2) - p.error;
    heap.push({p.a, mid, v1, e1, next_id++});
    heap.push({mid, p.b, v2, e2, next_id++});
    ++out.panels;
  }

  out.value = total;
  out.error = total_err;
  out.converged = total_err <= tolerance();
  return out;
}

// Uniformly spaced breakpoints, inclusive of both ends.
inline std::vector<double> uniform_breakpoints(double a, double b, int n_panels) {
  std::vector<double> pts;
  n_panels = std::max(1, n_panels);
  pts.reserve(static_cast<std::size_t>(n_panels) + 1);
  for (int i = 0; i <= n_panels; ++i) {
    pts.push_back(a + (b - a) * static_cast<double>(i) / n_panels);
  }
  pts.back() = b;
  return pts;
}

}  // namespace ddopt

#endif
