// SPDX-License-Identifier: Apache-2.0
#include "ddesim/harness/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <sstream>
#include <thread>
#include <vector>

#include "ddesim/collocate.hpp"
#include "ddesim/harness/builtins.hpp"

namespace ddesim::harness {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void write_config_echo(std::ostream& csv, const nlohmann::ordered_json& echo) {
  std::istringstream lines(echo.dump(2));
  std::string line;
  while (std::getline(lines, line)) csv << "# " << line << '\n';
}

// Runs body(i) for i in [0, count) on up to hardware_concurrency threads.
// Results must be written to per-index slots by the caller.
template <class Body>
void parallel_for(std::size_t count, Body body) {
  const std::size_t workers =
      std::min<std::size_t>(count, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) body(i);
    });
  }
}

void write_spectrum_rows(std::ostream& csv, const SpectrumResult& result) {
  std::vector<int> owner(result.multipliers.size(), -1);
  for (std::size_t c = 0; c < result.clusters.size(); ++c) {
    for (int member : result.clusters[c].members) owner[member] = static_cast<int>(c);
  }
  csv << "re,im,modulus,cluster_id,cluster_mean_re,cluster_mean_im,cluster_count\n";
  for (std::size_t k = 0; k < result.multipliers.size(); ++k) {
    const Complex mu = result.multipliers[k];
    const Cluster& cl = result.clusters[owner[k]];
    csv << format_double(mu.real()) << ',' << format_double(mu.imag()) << ','
        << format_double(std::abs(mu)) << ',' << owner[k] << ',' << format_double(cl.mean.real())
        << ',' << format_double(cl.mean.imag()) << ',' << cl.count << '\n';
  }
}

void report_verdict(std::ostream& log, const SpectrumResult& result) {
  if (result.verdict) {
    log << "verdict: " << to_string(*result.verdict)
        << " (dominant modulus " << format_double(dominant_modulus(result)) << ")\n";
  } else {
    log << "verdict: none (no nonzero multiplier resolved)\n";
  }
}

Complex pick_conjugate(Complex mu, Complex target) {
  return std::abs(mu - target) <= std::abs(mu - std::conj(target)) ? target : std::conj(target);
}

std::vector<CoefficientExpr> parse_initial(const std::string& text, int dim) {
  std::vector<CoefficientExpr> out;
  std::size_t start = 0;
  for (;;) {
    const auto at = text.find(';', start);
    out.push_back(CoefficientExpr::parse(
        std::string_view(text).substr(start, at == std::string::npos ? at : at - start), true));
    if (at == std::string::npos) break;
    start = at + 1;
  }
  if (static_cast<int>(out.size()) != dim) {
    throw InvalidArgument("initial function must have one expression per component");
  }
  return out;
}

}  // namespace

SpectrumRun run_spectrum(const RunConfig& cfg) {
  const DdeProblem problem = make_problem(cfg);
  SpectrumRun run;
  run.mats = evolution_matrix(problem, cfg.n, cfg.effective_m(), cfg.rule());
  run.spectrum = multipliers(run.mats, {cfg.zero_rel_tol, cfg.cluster_tol, cfg.margin});
  run.compact = cfg.rs() >= problem.tau;
  return run;
}

double dominant_modulus(const SpectrumResult& result) {
  return result.multipliers.empty() ? std::numeric_limits<double>::quiet_NaN()
                                    : std::abs(result.multipliers.front());
}

CommandResult cmd_spectrum(const RunConfig& cfg, std::ostream& csv, std::ostream& log) {
  const SpectrumRun run = run_spectrum(cfg);
  auto echo = cfg.to_json();
  echo["command"] = "spectrum";
  write_config_echo(csv, echo);
  csv << "# cond_estimate = " << format_double(run.mats.cond_estimate) << '\n';
  if (!run.compact) {
    csv << "# warning: r - s < tau, T(r,s) is not compact\n";
    log << "warning: r - s < tau; the evolution operator is not compact in this regime\n";
  }
  write_spectrum_rows(csv, run.spectrum);
  report_verdict(log, run.spectrum);
  return {run.spectrum.verdict};
}

namespace {

struct ConvergeRow {
  Complex mu;
  double error;
};

ConvergeRow converge_double(const RunConfig& c, const Target& target) {
  const SpectrumRun run = run_spectrum(c);
  if (run.spectrum.multipliers.empty()) throw ConvergenceError("no multiplier retained");
  const Complex mu = run.spectrum.multipliers.front();
  return {mu, std::abs(mu - pick_conjugate(mu, target.multiplier))};
}

ConvergeRow converge_quad(const RunConfig& c, const QuadTarget& target) {
  const auto mus = multipliers_quad(make_problem(c), c.n, c.effective_m(), c.rule(), c.zero_rel_tol);
  if (mus.empty()) throw ConvergenceError("no multiplier retained");
  const QuadComplex mu = mus.front();
  const Quad error = std::min(abs(mu - target.multiplier), abs(mu - std::conj(target.multiplier)));
  return {Complex(static_cast<double>(mu.real()), static_cast<double>(mu.imag())),
          static_cast<double>(error)};
}

}  // namespace

CommandResult cmd_converge(const RunConfig& cfg, std::ostream& csv, std::ostream& log) {
  const auto target = dominant_target(cfg);
  const auto target_quad = cfg.quad_precision ? dominant_target_quad(cfg) : std::nullopt;
  if (!target) {
    throw InvalidArgument(
        "no registered oracle for this problem; supply [converge] target_re/target_im");
  }
  if (cfg.n_list.empty()) throw InvalidArgument("[converge] N_list is empty");

  std::vector<ConvergeRow> rows(cfg.n_list.size());
  std::vector<std::exception_ptr> errors(cfg.n_list.size());
  parallel_for(cfg.n_list.size(), [&](std::size_t i) {
    try {
      RunConfig c = cfg;
      c.n = cfg.n_list[i];
      c.m = 0;
      rows[i] = target_quad ? converge_quad(c, *target_quad) : converge_double(c, *target);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  });
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  auto echo = cfg.to_json();
  echo["command"] = "converge";
  echo["converge"] = {{"N_list", cfg.n_list}, {"precision", cfg.quad_precision ? "quad" : "double"}};
  write_config_echo(csv, echo);
  csv << "# target = " << format_double(target->multiplier.real()) << ','
      << format_double(target->multiplier.imag()) << '\n';
  csv << "# target_source = " << target->provenance << '\n';
  csv << "N,mu_re,mu_im,abs_error,ratio\n";
  bool monotone = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double ratio = i == 0 ? std::numeric_limits<double>::quiet_NaN()
                                : rows[i].error / rows[i - 1].error;
    if (i > 0 && !(rows[i].error < rows[i - 1].error)) monotone = false;
    csv << cfg.n_list[i] << ',' << format_double(rows[i].mu.real()) << ','
        << format_double(rows[i].mu.imag()) << ',' << format_double(rows[i].error) << ','
        << format_double(ratio) << '\n';
  }
  csv << "# decay: " << (monotone ? "strictly decreasing" : "not monotone") << ", error(first) = "
      << format_double(rows.front().error) << ", error(last) = " << format_double(rows.back().error)
      << '\n';
  log << "target " << target->provenance << '\n';
  log << "final error " << format_double(rows.back().error) << " at N = " << cfg.n_list.back()
      << (cfg.quad_precision ? " (quad precision)" : "") << '\n';
  return {};
}

CommandResult cmd_chart(const RunConfig& cfg, std::ostream& csv, std::ostream& log) {
  if (cfg.p1.empty() || cfg.p2.empty() || cfg.p1_values.empty() || cfg.p2_values.empty()) {
    throw InvalidArgument("[chart] needs p1, p2, p1_values and p2_values");
  }
  {
    // Reject unknown names up front rather than producing a grid of NaNs.
    RunConfig probe = cfg;
    set_parameter(probe, cfg.p1, cfg.p1_values.front());
    set_parameter(probe, cfg.p2, cfg.p2_values.front());
  }
  const std::size_t n1 = cfg.p1_values.size(), n2 = cfg.p2_values.size();
  struct Point {
    double modulus = std::numeric_limits<double>::quiet_NaN();
    std::string verdict = "error";
  };
  std::vector<Point> points(n1 * n2);
  parallel_for(points.size(), [&](std::size_t idx) {
    RunConfig c = cfg;
    set_parameter(c, cfg.p1, cfg.p1_values[idx / n2]);
    set_parameter(c, cfg.p2, cfg.p2_values[idx % n2]);
    try {
      const SpectrumRun run = run_spectrum(c);
      points[idx].modulus = dominant_modulus(run.spectrum);
      if (run.spectrum.verdict) points[idx].verdict = to_string(*run.spectrum.verdict);
    } catch (const std::exception&) {
      // recorded as a NaN row
    }
  });

  auto echo = cfg.to_json();
  echo["command"] = "chart";
  echo["chart"] = {{"p1", cfg.p1}, {"p1_values", cfg.p1_values},
                   {"p2", cfg.p2}, {"p2_values", cfg.p2_values}};
  write_config_echo(csv, echo);
  csv << "p1,p2,dominant_modulus,verdict\n";
  std::size_t failures = 0;
  for (std::size_t idx = 0; idx < points.size(); ++idx) {
    if (points[idx].verdict == "error") ++failures;
    csv << format_double(cfg.p1_values[idx / n2]) << ',' << format_double(cfg.p2_values[idx % n2])
        << ',' << format_double(points[idx].modulus) << ',' << points[idx].verdict << '\n';
  }
  log << "chart: " << points.size() << " points, " << failures << " failed\n";
  return {};
}

CommandResult cmd_floquet(const RunConfig& cfg, std::ostream& csv, std::ostream& log) {
  if (!(cfg.omega > 0.0)) throw InvalidArgument("[floquet] omega must be positive");
  const DdeProblem problem = make_problem(cfg);

  double drift = 0.0;
  for (int j = 0; j < 5; ++j) {
    const double t = cfg.s + cfg.omega * j / 5.0;
    drift = std::max(drift, (problem.eval_a(t + cfg.omega) - problem.eval_a(t)).cwiseAbs().maxCoeff());
    drift = std::max(drift, (problem.eval_b(t + cfg.omega) - problem.eval_b(t)).cwiseAbs().maxCoeff());
    for (double theta : {-problem.tau, -0.5 * problem.tau, 0.0}) {
      drift = std::max(drift, (problem.eval_c(t + cfg.omega, theta) - problem.eval_c(t, theta))
                                  .cwiseAbs()
                                  .maxCoeff());
    }
  }
  if (drift >= 1e-10) {
    log << "warning: coefficients do not look " << format_double(cfg.omega)
        << "-periodic (max drift " << format_double(drift) << ")\n";
  }

  const MonodromyResult mono =
      monodromy(problem, cfg.omega, cfg.k, cfg.n, cfg.effective_m(), cfg.rule());
  const SpectrumResult spec = multipliers(mono.mats, {cfg.zero_rel_tol, cfg.cluster_tol, cfg.margin});

  auto echo = cfg.to_json();
  echo["command"] = "floquet";
  echo["floquet"] = {{"omega", cfg.omega}, {"k", mono.k}, {"window", mono.window}};
  echo["window"] = {{"s", cfg.s}, {"r", cfg.s + mono.window}};
  write_config_echo(csv, echo);
  csv << "# k = " << mono.k << '\n';
  csv << "# window = " << format_double(mono.window) << '\n';
  if (mono.k > 1) csv << "# multipliers are those of U(k*omega), not of U(omega)\n";
  write_spectrum_rows(csv, spec);
  log << "monodromy over k = " << mono.k << " period(s), window " << format_double(mono.window) << '\n';
  report_verdict(log, spec);
  return {spec.verdict};
}

CommandResult cmd_solve(const RunConfig& cfg, std::ostream& csv, std::ostream& log) {
  const DdeProblem problem = make_problem(cfg);
  const ShiftedProblem shifted = shift_problem(problem);
  if (!(shifted.rs > 0.0)) throw InvalidArgument("window length r - s must be positive");
  const int d = problem.dim;
  const auto phi_exprs = parse_initial(cfg.phi_expr, d);
  const InitialFunction phi = [phi_exprs](double theta) {
    CVector v(static_cast<Eigen::Index>(phi_exprs.size()));
    for (std::size_t i = 0; i < phi_exprs.size(); ++i) v[i] = phi_exprs[i].eval(0.0, theta);
    return v;
  };
  const GridPair grids = make_grids(cfg.n, cfg.effective_m(), shifted.tau, shifted.rs);
  const CollocationSolution sol = collocation_solve(shifted, phi, grids, cfg.rule());
  std::optional<ReferenceSolution> ref;
  if (cfg.reference_h > 0.0) ref.emplace(shifted, phi, cfg.reference_h);

  auto echo = cfg.to_json();
  echo["command"] = "solve";
  echo["initial"] = {{"phi", cfg.phi_expr}, {"samples", cfg.samples}, {"reference_h", cfg.reference_h}};
  write_config_echo(csv, echo);
  csv << "t,component,re,im" << (ref ? ",ref_re,ref_im" : "") << '\n';
  double deviation = 0.0;
  for (int k = 0; k < cfg.samples; ++k) {
    const double t = shifted.rs * k / (cfg.samples - 1);
    const CVector y = sol(t);
    CVector yr;
    if (ref) {
      yr = (*ref)(t);
      deviation = std::max(deviation, (y - yr).cwiseAbs().maxCoeff());
    }
    for (int i = 0; i < d; ++i) {
      csv << format_double(cfg.s + t) << ',' << i << ',' << format_double(y[i].real()) << ','
          << format_double(y[i].imag());
      if (ref) csv << ',' << format_double(yr[i].real()) << ',' << format_double(yr[i].imag());
      csv << '\n';
    }
  }
  if (ref) log << "max deviation from reference: " << format_double(deviation) << '\n';
  return {};
}

}  // namespace ddesim::harness
