// SPDX-License-Identifier: Apache-2.0
#include "ddesim/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ddesim {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::stable: return "stable";
    case Verdict::unstable: return "unstable";
    case Verdict::marginal: return "marginal";
  }
  return "unknown";
}

namespace {

struct EigenPairs {
  CVector values;
  CMatrix vectors;
};

EigenPairs decompose(const EvolutionMatrices& mats) {
  if (mats.t_matrix.rows() != mats.t_matrix.cols()) {
    throw InvalidArgument("evolution matrix must be square");
  }
  if (mats.real_valued) {
    const Eigen::MatrixXd real = mats.t_matrix.real();
    Eigen::EigenSolver<Eigen::MatrixXd> es(real, true);
    if (es.info() != Eigen::Success) throw ConvergenceError("eigensolver did not converge");
    return {es.eigenvalues(), es.eigenvectors()};
  }
  Eigen::ComplexEigenSolver<CMatrix> es(mats.t_matrix, true);
  if (es.info() != Eigen::Success) throw ConvergenceError("eigensolver did not converge");
  return {es.eigenvalues(), es.eigenvectors()};
}

}  // namespace

SpectrumResult multipliers(const EvolutionMatrices& mats, const SpectrumOptions& opts) {
  const EigenPairs pairs = decompose(mats);
  SpectrumResult out;
  const Eigen::Index n = pairs.values.size();
  for (Eigen::Index k = 0; k < n; ++k) {
    out.spectral_radius = std::max(out.spectral_radius, std::abs(pairs.values[k]));
  }
  out.zero_threshold = opts.zero_rel_tol * out.spectral_radius;

  std::vector<Eigen::Index> keep;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (std::abs(pairs.values[k]) > out.zero_threshold) keep.push_back(k);
  }
  std::stable_sort(keep.begin(), keep.end(), [&](Eigen::Index x, Eigen::Index y) {
    const Complex a = pairs.values[x], b = pairs.values[y];
    const double ma = std::abs(a), mb = std::abs(b);
    if (ma != mb) return ma > mb;
    if (a.imag() != b.imag()) return a.imag() > b.imag();
    return a.real() > b.real();
  });

  out.eigenvectors.resize(n, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) {
    out.multipliers.push_back(pairs.values[keep[c]]);
    out.eigenvectors.col(static_cast<Eigen::Index>(c)) = pairs.vectors.col(keep[c]);
  }
  out.clusters = cluster(out.multipliers, opts.cluster_tol);
  if (!out.multipliers.empty()) out.verdict = stability_verdict(out.multipliers, opts.margin);
  return out;
}

std::vector<Cluster> cluster(const std::vector<Complex>& mults, double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("cluster tolerance must be positive");
  std::vector<Cluster> out;
  std::vector<bool> taken(mults.size(), false);
  for (std::size_t i = 0; i < mults.size(); ++i) {
    if (taken[i]) continue;
    Cluster c;
    const Complex seed = mults[i];
    Complex sum = 0.0;
    for (std::size_t j = i; j < mults.size(); ++j) {
      if (taken[j]) continue;
      if (std::abs(std::abs(mults[j]) - std::abs(seed)) >= tol) continue;
      if (std::abs(mults[j] - seed) >= tol) continue;
      taken[j] = true;
      c.members.push_back(static_cast<int>(j));
      sum += mults[j];
    }
    c.count = static_cast<int>(c.members.size());
    c.mean = sum / static_cast<double>(c.count);
    out.push_back(std::move(c));
  }
  return out;
}

Verdict stability_verdict(const std::vector<Complex>& mults, double margin) {
  if (mults.empty()) throw InvalidArgument("no nonzero multiplier resolved");
  if (margin < 0.0) throw InvalidArgument("verdict margin must be nonnegative");
  double top = 0.0;
  for (const auto& mu : mults) top = std::max(top, std::abs(mu));
  if (top < 1.0 - margin) return Verdict::stable;
  if (top > 1.0 + margin) return Verdict::unstable;
  return Verdict::marginal;
}

Verdict stability_verdict(const SpectrumResult& result, double margin) {
  return stability_verdict(result.multipliers, margin);
}

CVector Eigenfunction::operator()(double theta) const {
  return interp_eval(grid, nodal_values, dim, theta);
}

Eigenfunction eigenfunction(const EvolutionMatrices& mats, const CVector& eigvec,
                            const GridPair& grids) {
  const int d = mats.dim;
  if (eigvec.size() != static_cast<Eigen::Index>(d) * (grids.m() + 1)) {
    throw InvalidArgument("eigenvector length does not match the history grid");
  }
  Eigen::Index top = 0;
  const double vmax = eigvec.cwiseAbs().maxCoeff(&top);
  if (!(vmax > 0.0)) throw InvalidArgument("eigenvector is zero");

  Eigen::Index top0 = 0;
  const double at_zero = eigvec.head(d).cwiseAbs().maxCoeff(&top0);
  const Complex scale = at_zero > 1e-12 * vmax ? eigvec[top0] : eigvec[top];
  return Eigenfunction{grids.minus, eigvec / scale, d};
}

int monodromy_power(double omega, double tau) {
  if (!(omega > 0.0)) throw InvalidArgument("period omega must be positive");
  int k = std::max(1, static_cast<int>(std::ceil(tau / omega)));
  while (k * omega < tau) ++k;
  while (k > 1 && (k - 1) * omega >= tau) --k;
  return k;
}

MonodromyResult monodromy(const DdeProblem& problem, double omega, int k, int n, int m,
                          const QuadratureRule& rule) {
  if (!(omega > 0.0)) throw InvalidArgument("period omega must be positive");
  if (k < 0) throw InvalidArgument("monodromy power must be positive");
  MonodromyResult out;
  out.k = k == 0 ? monodromy_power(omega, problem.tau) : k;
  out.window = out.k * omega;
  DdeProblem p = problem;
  p.r = p.s + out.window;
  out.mats = evolution_matrix(p, n, m, rule);
  return out;
}

}  // namespace ddesim
