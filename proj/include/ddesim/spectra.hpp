// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ddesim/evolution.hpp"
#include "ddesim/interp.hpp"
#include "ddesim/types.hpp"

namespace ddesim {

enum class Verdict { stable, unstable, marginal };

std::string to_string(Verdict v);

/// Multipliers that agree to within the cluster tolerance. `mean` is the
/// arithmetic mean of the members, the best available approximation of a
/// multiple eigenvalue.
struct Cluster {
  Complex mean;
  int count = 0;
  std::vector<int> members;
};

struct SpectrumOptions {
  double zero_rel_tol = 1e-10;  ///< relative to the spectral radius
  double cluster_tol = 1e-6;
  double margin = 1e-9;
};

struct SpectrumResult {
  std::vector<Complex> multipliers;  ///< descending modulus, then descending imaginary part
  std::vector<Cluster> clusters;
  CMatrix eigenvectors;              ///< column k pairs with multipliers[k]
  double spectral_radius = 0.0;
  double zero_threshold = 0.0;
  std::optional<Verdict> verdict;    ///< empty when no multiplier survived the threshold
};

/// Dense eigendecomposition of mats.t_matrix; eigenvalues with
/// |mu| <= zero_rel_tol * spectral radius are discarded.
SpectrumResult multipliers(const EvolutionMatrices& mats, const SpectrumOptions& opts = {});

/// Greedy clustering of `mults` (taken in the given order): each unassigned
/// value seeds a cluster that absorbs every later unassigned value whose
/// modulus and position both lie within `tol` of the seed.
std::vector<Cluster> cluster(const std::vector<Complex>& mults, double tol);

/// Throws InvalidArgument on an empty multiplier list.
Verdict stability_verdict(const SpectrumResult& result, double margin);
Verdict stability_verdict(const std::vector<Complex>& mults, double margin);

/// Nodal representation of an eigenfunction on the history grid.
struct Eigenfunction {
  NodeGrid grid;
  CVector nodal_values;  ///< dim-blocks in grid order
  int dim = 1;

  CVector operator()(double theta) const;
};

/// Eigenfunction from an eigenvector of t_matrix. Normalized so the largest
/// component of psi(0) equals 1, or to unit max modulus when psi(0) vanishes.
Eigenfunction eigenfunction(const EvolutionMatrices& mats, const CVector& eigvec,
                            const GridPair& grids);

/// Monodromy operator over k periods, k * omega >= tau for compactness.
struct MonodromyResult {
  EvolutionMatrices mats;
  int k = 1;
  double window = 0.0;  ///< k * omega
};

/// Smallest k >= 1 with k * omega >= tau.
int monodromy_power(double omega, double tau);

/// Evolution matrix over [s, s + k omega]. `k` = 0 selects monodromy_power.
MonodromyResult monodromy(const DdeProblem& problem, double omega, int k, int n, int m,
                          const QuadratureRule& rule);

}  // namespace ddesim
