#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "jrmt/jrmt.hpp"

namespace jrmt::cli {

using json = nlohmann::json;

enum ExitCode : int { kOk = 0, kUsage = 2, kNumeric = 3 };

inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Grid {
  double lo = 0.0;
  double hi = 0.0;
  int count = 0;

  std::vector<double> points() const { return linspace(lo, hi, count); }
  json to_json() const { return {{"lo", lo}, {"hi", hi}, {"count", count}}; }
};

/// "lo:hi:count" with lo <= hi and count >= 1 (count == 1 requires lo == hi).
inline Grid parse_grid(const std::string& text, const char* flag) {
  Grid g;
  std::istringstream in(text);
  std::string a, b, c, extra;
  const std::string bad = std::string(flag) + ": expected lo:hi:count, got '" + text + "'";
  if (!std::getline(in, a, ':') || !std::getline(in, b, ':') || !std::getline(in, c, ':') ||
      std::getline(in, extra))
    throw ParameterError(bad);
  try {
    std::size_t pa = 0, pb = 0, pc = 0;
    g.lo = std::stod(a, &pa);
    g.hi = std::stod(b, &pb);
    const long cnt = std::stol(c, &pc);
    if (pa != a.size() || pb != b.size() || pc != c.size()) throw ParameterError(bad);
    if (cnt < 1 || cnt > 1000000) throw ParameterError(bad);
    g.count = static_cast<int>(cnt);
  } catch (const std::logic_error&) {
    throw ParameterError(bad);
  }
  if (!std::isfinite(g.lo) || !std::isfinite(g.hi) || g.lo > g.hi || (g.count == 1 && g.lo != g.hi))
    throw ParameterError(bad);
  return g;
}

/// Writes to `path` via a sibling temporary file and rename; "-" or empty
/// means the provided stream.
inline void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    out.flush();
    return;
  }
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(static_cast<long>(::getpid()));
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw ParameterError("cannot open output file '" + tmp.string() + "'");
    f << content;
    f.flush();
    if (!f) throw ParameterError("failed writing output file '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw ParameterError("cannot move output into place at '" + path + "'");
  }
}

/// CSV rows followed by a trailing "# config=" line holding the resolved
/// configuration as JSON.
class CsvWriter {
 public:
  explicit CsvWriter(const std::vector<std::string>& header) {
    for (std::size_t i = 0; i < header.size(); ++i) buf_ << (i ? "," : "") << header[i];
    buf_ << '\n';
  }
  void row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) buf_ << (i ? "," : "") << fmt17(values[i]);
    buf_ << '\n';
  }
  std::string finish(const json& config) {
    buf_ << "# config=" << config.dump() << '\n';
    return buf_.str();
  }

 private:
  std::ostringstream buf_;
};

struct Options {
  // shared
  std::string out;
  std::uint64_t seed = 0;
  int n = 0;
  double a = 0.0;
  double b = 0.0;
  // sample / angles
  int q = 0;
  int q_tilde = 0;
  int q_prime = 0;
  int trials = 1;
  std::string route = "wishart";
  // density / kernel
  std::string grid;
  std::string regime;
  std::optional<double> x;
  std::string ugrid;
  std::string vgrid;
  // gap / tw
  int quad = 64;
  double t = 0.0;
  double tail_length = 12.0;
};

inline json reduction_json(const ReductionPlan& p) {
  return {{"case", p.reduction_case},
          {"canonical", {{"n", p.canonical.n}, {"q", p.canonical.q}, {"qtilde", p.canonical.q_tilde}}},
          {"eigen_map", to_string(p.eigen_map)},
          {"kept_count", p.kept_count}};
}

inline Route parse_route(const std::string& s) {
  if (s == "projector") return Route::projector;
  if (s == "wishart") return Route::wishart;
  throw ParameterError("--route must be projector or wishart");
}

inline std::string cmd_sample(const Options& o) {
  const Route route = parse_route(o.route);
  if (o.trials < 1) throw ParameterError("--trials must be >= 1");
  const ReductionPlan plan = reduce_ranks(o.n, o.q, o.q_tilde);
  const ProjectorPair pair{o.n, o.q, o.q_tilde};
  const auto rows = parallel_trials(o.trials, o.seed, [&](const SeededStream& s, int) {
    Rng rng = s.rng();
    return sample_nontrivial(rng, pair, route);
  });
  std::vector<std::string> header;
  for (int i = 1; i <= plan.kept_count; ++i) header.push_back("lambda_" + std::to_string(i));
  CsvWriter csv(header);
  for (const auto& r : rows) csv.row(r);
  return csv.finish({{"command", "sample"},
                     {"n", o.n},
                     {"q", o.q},
                     {"qtilde", o.q_tilde},
                     {"route", o.route},
                     {"trials", o.trials},
                     {"seed", o.seed},
                     {"reduction", reduction_json(plan)}});
}

inline std::string cmd_density(const Options& o) {
  const EnsembleParams p{o.n, o.a, o.b};
  p.validate();
  const Grid g = parse_grid(o.grid, "--grid");
  if (!(g.lo > -1.0 && g.hi < 1.0)) throw ParameterError("--grid must lie inside (-1, 1)");
  const KernelSpec spec{p};
  const LimitProfile prof = finite_profile(p.n, p.a, p.b);
  CsvWriter csv({"x", "finite_n_density", "limit_f"});
  for (double x : g.points()) csv.row({x, one_point_density(spec, x), limit_density(prof, x)});
  return csv.finish({{"command", "density"},
                     {"n", o.n},
                     {"a", o.a},
                     {"b", o.b},
                     {"grid", g.to_json()},
                     {"profile", {{"r", prof.r}, {"s", prof.s}}}});
}

inline std::string cmd_kernel(const Options& o) {
  const Regime regime = parse_regime(o.regime);
  const EnsembleParams p{o.n, o.a, o.b};
  p.validate();
  const char* default_grid = regime == Regime::bulk   ? "-2:2:9"
                             : regime == Regime::soft ? "-3:1.5:7"
                             : regime == Regime::hard ? "0.5:16:7"
                                                      : nullptr;
  if (!default_grid) throw ParameterError("--regime must be bulk, soft or hard");
  const Grid ug = parse_grid(o.ugrid.empty() ? default_grid : o.ugrid, "--ugrid");
  const Grid vg = parse_grid(o.vgrid.empty() ? default_grid : o.vgrid, "--vgrid");
  const KernelSpec spec{p};
  const KernelEvaluator ev(spec);
  json config = {{"command", "kernel"}, {"regime", o.regime}, {"n", o.n}, {"a", o.a},
                 {"b", o.b},           {"ugrid", ug.to_json()}, {"vgrid", vg.to_json()}};
  CsvWriter csv({"u", "v", "rescaled", "limit"});
  if (regime == Regime::bulk) {
    const LimitProfile prof = finite_profile(p.n, p.a, p.b);
    const double x = o.x.value_or(0.5 * (prof.r + prof.s));
    if (!(x > prof.r && x < prof.s)) throw ParameterError("--x must lie inside the bulk (r, s)");
    const double sc = p.n * limit_density(prof, x);
    config["x"] = x;
    for (double u : ug.points())
      for (double v : vg.points()) {
        const double xu = x + u / sc, xv = x + v / sc;
        if (!(xu > -1.0 && xu < 1.0 && xv > -1.0 && xv < 1.0))
          throw ParameterError("rescaled points leave (-1, 1); shrink the grid");
        csv.row({u, v, ev(xu, xv) / sc, sine_kernel(u, v)});
      }
  } else if (regime == Regime::soft) {
    const SoftEdge e = soft_edge(p);
    config["s_n"] = e.s_n;
    config["h_n"] = e.h_n;
    for (double u : ug.points())
      for (double v : vg.points()) {
        const double xu = e.s_n + u / e.h_n, xv = e.s_n + v / e.h_n;
        if (!(xu > -1.0 && xu < 1.0 && xv > -1.0 && xv < 1.0))
          throw ParameterError("rescaled points leave (-1, 1); shrink the grid");
        csv.row({u, v, ev(xu, xv) / e.h_n, airy_kernel(u, v)});
      }
  } else {
    if (std::abs(p.b - std::round(p.b)) > 1e-12)
      throw ParameterError("hard regime requires an integer --b");
    if (!(ug.lo > 0.0 && vg.lo > 0.0)) throw ParameterError("hard regime requires u, v > 0");
    const int bi = static_cast<int>(std::round(p.b));
    const double c = hard_edge_scale(p);
    config["c_n"] = c;
    for (double u : ug.points())
      for (double v : vg.points()) {
        const double xu = -1.0 + u / c, xv = -1.0 + v / c;
        if (!(xu < 1.0 && xv < 1.0)) throw ParameterError("rescaled points leave (-1, 1); shrink the grid");
        csv.row({u, v, ev(xu, xv) / c, bessel_kernel(bi, u, v)});
      }
  }
  return csv.finish(config);
}

inline std::string cmd_gap(const Options& o) {
  const EnsembleParams p{o.n, o.a, o.b};
  p.validate();
  if (!o.x) throw ParameterError("--x is required");
  const double g = largest_eval_cdf(p, *o.x, o.quad);
  const json j = {{"gap", g},
                  {"config", {{"command", "gap"}, {"n", o.n}, {"a", o.a}, {"b", o.b}, {"x", *o.x}, {"quad", o.quad}}}};
  return j.dump(2) + "\n";
}

inline std::string cmd_tw(const Options& o) {
  const double c = tracy_widom_cdf(o.t, o.quad, o.tail_length);
  const json j = {{"cdf", c},
                  {"config", {{"command", "tw"}, {"t", o.t}, {"quad", o.quad}, {"L", o.tail_length}}}};
  return j.dump(2) + "\n";
}

inline std::string cmd_angles(const Options& o) {
  if (o.n < 1 || o.q < 1 || o.q_prime < 1 || o.q > o.n || o.q_prime > o.n)
    throw ParameterError("angles: need 1 <= q, qprime <= n");
  if (o.trials < 1) throw ParameterError("--trials must be >= 1");
  const ComplexMatrix b1 = ComplexMatrix::Identity(o.n, o.q);
  const auto cos2 = parallel_trials(o.trials, o.seed, [&](const SeededStream& s, int) {
    Rng rng = s.rng();
    const ComplexMatrix u = haar_unitary(rng, o.n);
    const double c = principal_cosines(b1, u.leftCols(o.q_prime)).front();
    return c * c;
  });
  double mean = 0.0, lo = cos2.front(), hi = cos2.front();
  for (double c : cos2) {
    mean += c;
    lo = std::min(lo, c);
    hi = std::max(hi, c);
  }
  mean /= cos2.size();
  double var = 0.0;
  for (double c : cos2) var += (c - mean) * (c - mean);
  const double sd = cos2.size() > 1 ? std::sqrt(var / (cos2.size() - 1)) : 0.0;
  json j = {{"max_cos2", {{"mean", mean}, {"std", sd}, {"min", lo}, {"max", hi}}},
            {"config",
             {{"command", "angles"}, {"n", o.n}, {"q", o.q}, {"qprime", o.q_prime}, {"trials", o.trials}, {"seed", o.seed}}}};
  const double al = static_cast<double>(o.q) / o.n, be = static_cast<double>(o.q_prime) / o.n;
  if (al + be < 1.0) {
    j["predicted_s"] = banach_cos2(al, be);
    j["predicted_theta"] = banach_angle(al, be);
  } else {
    j["predicted_s"] = nullptr;
    j["predicted_theta"] = nullptr;
  }
  return j.dump(2) + "\n";
}

/// Entry point shared by the executable and the tests.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Jacobi unitary ensemble toolkit: sampling, kernels, limits and gap probabilities"};
  app.require_subcommand(1);
  Options o;

  auto add_out = [&](CLI::App* c) { c->add_option("--out", o.out, "Output path (default: stdout)"); };
  auto add_nab = [&](CLI::App* c) {
    c->add_option("--n", o.n, "Matrix size")->required();
    c->add_option("--a", o.a, "Exponent of (1-x)")->required();
    c->add_option("--b", o.b, "Exponent of (1+x)")->required();
  };

  auto* sample = app.add_subcommand("sample", "Sample non-trivial eigenvalues of pi pi~ pi");
  sample->add_option("--n", o.n, "Ambient dimension")->required();
  sample->add_option("--q", o.q, "Rank of the fixed projector")->required();
  sample->add_option("--qtilde", o.q_tilde, "Rank of the rotated projector")->required();
  sample->add_option("--route", o.route, "projector or wishart");
  sample->add_option("--trials", o.trials, "Number of draws");
  sample->add_option("--seed", o.seed, "Base seed");
  add_out(sample);

  auto* density = app.add_subcommand("density", "Finite-n one-point density and its limit");
  add_nab(density);
  density->add_option("--grid", o.grid, "lo:hi:count")->required();
  add_out(density);

  auto* kern = app.add_subcommand("kernel", "Rescaled kernel against its universal limit");
  kern->add_option("--regime", o.regime, "bulk, soft or hard")->required();
  add_nab(kern);
  kern->add_option("--x", o.x, "Bulk centre (default: middle of the support)");
  kern->add_option("--ugrid", o.ugrid, "lo:hi:count");
  kern->add_option("--vgrid", o.vgrid, "lo:hi:count");
  add_out(kern);

  auto* gap = app.add_subcommand("gap", "P(largest eigenvalue <= x) by Fredholm determinant");
  add_nab(gap);
  gap->add_option("--x", o.x, "Threshold in (-1, 1)")->required();
  gap->add_option("--quad", o.quad, "Quadrature nodes");
  add_out(gap);

  auto* tw = app.add_subcommand("tw", "Tracy-Widom (beta = 2) distribution function");
  tw->add_option("--t", o.t, "Argument")->required();
  tw->add_option("--quad", o.quad, "Quadrature nodes");
  tw->add_option("--L", o.tail_length, "Truncation length of [t, infinity)");
  add_out(tw);

  auto* angles = app.add_subcommand("angles", "Largest principal cosine between random subspaces");
  angles->add_option("--n", o.n, "Ambient dimension")->required();
  angles->add_option("--q", o.q, "First dimension")->required();
  angles->add_option("--qprime", o.q_prime, "Second dimension")->required();
  angles->add_option("--trials", o.trials, "Number of draws");
  angles->add_option("--seed", o.seed, "Base seed");
  add_out(angles);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    std::string text;
    if (*sample)
      text = cmd_sample(o);
    else if (*density)
      text = cmd_density(o);
    else if (*kern)
      text = cmd_kernel(o);
    else if (*gap)
      text = cmd_gap(o);
    else if (*tw)
      text = cmd_tw(o);
    else
      text = cmd_angles(o);
    emit(o.out, text, out);
    return kOk;
  } catch (const NumericError& e) {
    err << "error: " << e.what() << '\n';
    return kNumeric;
  } catch (const SingularityError& e) {
    err << "error: " << e.what() << '\n';
    return kNumeric;
  } catch (const ConsistencyError& e) {
    err << "error: " << e.what() << '\n';
    return kNumeric;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumeric;
  }
}

}  // namespace jrmt::cli
