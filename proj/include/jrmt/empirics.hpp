#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "jrmt/cdkernel.hpp"
#include "jrmt/error.hpp"
#include "jrmt/limits.hpp"
#include "jrmt/params.hpp"
#include "jrmt/special_functions.hpp"

namespace jrmt {

struct SampleMeta {
  EnsembleParams params;
  std::string route;
  std::uint64_t seed = 0;
  int trials = 0;
};

/// Pooled sample, sorted ascending.
struct EmpiricalSample {
  std::vector<double> values;
  SampleMeta meta;

  EmpiricalSample() = default;
  explicit EmpiricalSample(std::vector<double> v, SampleMeta m = {})
      : values(std::move(v)), meta(std::move(m)) {
    std::sort(values.begin(), values.end());
  }
  std::size_t size() const { return values.size(); }
};

/// sup |F1 - F2| over the merged support of two empirical CDFs.
inline double ks_distance(const EmpiricalSample& s1, const EmpiricalSample& s2) {
  if (s1.values.empty() || s2.values.empty()) throw ParameterError("ks_distance: empty sample");
  const auto& a = s1.values;
  const auto& b = s2.values;
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double t = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= t) ++i;
    while (j < b.size() && b[j] <= t) ++j;
    d = std::max(d, std::abs(i / na - j / nb));
  }
  return d;
}

/// One-sample Kolmogorov–Smirnov statistic against a CDF.
inline double ks_against_cdf(const EmpiricalSample& s, const std::function<double(double)>& cdf) {
  if (s.values.empty()) throw ParameterError("ks_against_cdf: empty sample");
  const double n = static_cast<double>(s.values.size());
  double d = 0.0;
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    const double f = cdf(s.values[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return d;
}

inline double ks_against_density(const EmpiricalSample& s, const std::function<double(double)>& cdf) {
  return ks_against_cdf(s, cdf);
}

/// Number of points in [lo, hi]; an empty interval (lo > hi) holds none.
inline std::size_t interval_count(const EmpiricalSample& s, double lo, double hi) {
  if (!(lo <= hi)) return 0;
  const auto first = std::lower_bound(s.values.begin(), s.values.end(), lo);
  const auto last = std::upper_bound(s.values.begin(), s.values.end(), hi);
  return static_cast<std::size_t>(last - first);
}

enum class Regime { onepoint, bulk, soft, hard };

inline const char* to_string(Regime r) {
  switch (r) {
    case Regime::onepoint: return "onepoint";
    case Regime::bulk: return "bulk";
    case Regime::soft: return "soft";
    case Regime::hard: return "hard";
  }
  return "?";
}

inline Regime parse_regime(const std::string& s) {
  if (s == "onepoint") return Regime::onepoint;
  if (s == "bulk") return Regime::bulk;
  if (s == "soft") return Regime::soft;
  if (s == "hard") return Regime::hard;
  throw ParameterError("unknown regime '" + s + "'");
}

/// Sup-norm convergence study. For onepoint the grid is [r + lo_offset,
/// s - hi_offset] with `points` nodes; for kernels it is a points x points
/// grid on [grid_lo, grid_hi]^2. In the hard regime b = hard_b is held fixed.
struct ExperimentDescriptor {
  Regime regime = Regime::onepoint;
  std::vector<int> n_grid{50, 100, 200};
  double alpha = 0.5;
  double beta = 0.25;
  int hard_b = 2;
  double grid_lo = 0.1;
  double grid_hi = 0.1;
  int points = 41;
  std::uint64_t seed = 0;

  static ExperimentDescriptor defaults(Regime r) {
    ExperimentDescriptor d;
    d.regime = r;
    switch (r) {
      case Regime::onepoint: break;
      case Regime::bulk:
        d.n_grid = {100, 200, 400};
        d.grid_lo = -2.0;
        d.grid_hi = 2.0;
        d.points = 9;
        break;
      case Regime::soft:
        d.n_grid = {100, 200, 400};
        d.grid_lo = -3.0;
        d.grid_hi = 1.5;
        d.points = 7;
        break;
      case Regime::hard:
        d.n_grid = {100, 200, 400};
        d.grid_lo = 0.5;
        d.grid_hi = 16.0;
        d.points = 7;
        break;
    }
    return d;
  }
};

struct ConvergenceReport {
  std::vector<int> n_grid;
  std::vector<double> errors;
  double slope = 0.0;
};

/// Least-squares slope of log(error) against log(n).
inline double fit_loglog_slope(const std::vector<int>& ns, const std::vector<double>& errors) {
  if (ns.size() != errors.size() || ns.size() < 2)
    throw ParameterError("fit_loglog_slope: need at least two matching points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(ns.size());
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (!(errors[i] > 0.0)) throw NumericError("fit_loglog_slope: errors must be positive");
    const double x = std::log(static_cast<double>(ns[i])), y = std::log(errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

inline std::vector<double> linspace(double lo, double hi, int count) {
  if (count < 1) throw ParameterError("linspace: count must be >= 1");
  std::vector<double> g(count);
  for (int i = 0; i < count; ++i)
    g[i] = count == 1 ? lo : lo + (hi - lo) * i / (count - 1.0);
  return g;
}

/// Sup-norm error at a single n.
inline double experiment_error(const ExperimentDescriptor& d, int n) {
  const LimitProfile prof = edge_profile(d.alpha, d.beta);
  const double a = d.alpha * n;
  if (d.regime == Regime::onepoint) {
    const KernelSpec spec{{n, a, d.beta * n}};
    const KernelEvaluator ev(spec);
    double err = 0.0;
    for (double x : linspace(prof.r + d.grid_lo, prof.s - d.grid_hi, d.points))
      err = std::max(err, std::abs(ev.diagonal(x) / n - limit_density(prof, x)));
    return err;
  }
  const std::vector<double> g = linspace(d.grid_lo, d.grid_hi, d.points);
  double err = 0.0;
  if (d.regime == Regime::bulk) {
    const KernelSpec spec{{n, a, d.beta * n}};
    const KernelEvaluator ev(spec);
    const double x = 0.5 * (prof.r + prof.s);
    const double sc = n * finite_density(n, a, d.beta * n, x);
    for (double u : g)
      for (double v : g)
        err = std::max(err, std::abs(ev(x + u / sc, x + v / sc) / sc - sine_kernel(u, v)));
  } else if (d.regime == Regime::soft) {
    const KernelSpec spec{{n, a, d.beta * n}};
    const KernelEvaluator ev(spec);
    const SoftEdge e = soft_edge(spec.params);
    for (double u : g)
      for (double v : g)
        err = std::max(err, std::abs(ev(e.s_n + u / e.h_n, e.s_n + v / e.h_n) / e.h_n -
                                     airy_kernel(u, v)));
  } else {
    const KernelSpec spec{{n, a, static_cast<double>(d.hard_b)}};
    const KernelEvaluator ev(spec);
    const double c = hard_edge_scale(spec.params);
    for (double u : g)
      for (double v : g)
        err = std::max(err, std::abs(ev(-1.0 + u / c, -1.0 + v / c) / c -
                                     bessel_kernel(d.hard_b, u, v)));
  }
  return err;
}

inline ConvergenceReport run_experiment(const ExperimentDescriptor& d) {
  if (d.n_grid.empty()) throw ParameterError("run_experiment: empty n grid");
  if (d.points < 1) throw ParameterError("run_experiment: need at least one grid point");
  ConvergenceReport rep;
  rep.n_grid = d.n_grid;
  for (int n : d.n_grid) rep.errors.push_back(experiment_error(d, n));
  rep.slope = d.n_grid.size() >= 2 ? fit_loglog_slope(rep.n_grid, rep.errors) : 0.0;
  return rep;
}

}  // namespace jrmt
