#pragma once

#include <limits>
#include <vector>

#include "wavebasis/profile.hpp"

namespace wavebasis {

/// Uniform sampling grid. n_points samples span [x_min, x_max].
struct Grid {
  double x_min = -10.0;
  double x_max = 10.0;
  int n_points = 2000;

  double h() const { return (x_max - x_min) / (n_points - 1); }
  void validate() const;
};

enum class Parity { even, odd };

struct OracleEigenresult {
  int n = 0;
  double E = 0.0;
  std::vector<double> x;  // full-line sample positions (staggered, never 0)
  std::vector<double> u;  // L2-normalized wavefunction samples
  int node_count = 0;
  Parity parity = Parity::even;
};

struct ShootingOptions {
  double root_rtol = 1e-10;       // eigenvalue refinement tolerance
  double decay_threshold = 1e-6;  // |u(end)| / max|u| bound enforced by widening
  int max_domain_doublings = 8;
  double guess = std::numeric_limits<double>::quiet_NaN();  // optional energy guess
};

/// Bound state n (node count) of an even potential by two-sided Numerov
/// shooting on a parity-reduced staggered half grid, matched at the
/// outermost classical turning point. The domain is doubled (keeping h)
/// until the forbidden-tail decay reaches decay_threshold; the eigenvalue is
/// located by a node-count staircase and refined on the matching Wronskian.
OracleEigenresult numerov_eigensolve(const PotentialSpec& potential,
                                     const PhysicalScales& scales, Grid grid, int n,
                                     const ShootingOptions& opts = {});

/// Reasonable starting grid for numerov_eigensolve: x_max = 3 xi at the
/// estimated energy of state n (the wall position for hard walls).
Grid default_oracle_grid(const PotentialSpec& potential, const PhysicalScales& scales, int n);

/// Grid-refinement driver: halves h until successive eigenvalues agree to
/// grid_rtol, then Richardson-extrapolates with the measured convergence
/// order (the singular well converges at O(sqrt(h)), smooth wells at
/// O(h^4); the measured order handles both).
double numerov_energy_converged(const PotentialSpec& potential, const PhysicalScales& scales,
                                int n, double grid_rtol = 1e-8, int max_refinements = 5,
                                const ShootingOptions& opts = {});

/// Fixed-step RK4 integration of u'' = -k^2(x) u from (u0, up0) at
/// grid.x_min; returns u at the grid nodes. A companion solution tracks the
/// Wronskian, and drift beyond 1e-6 throws AccuracyError. The grid must not
/// contain the singular point of a singular potential.
std::vector<double> integrate_ivp(const KsqProfile& ksq, double E, double u0, double up0,
                                  const Grid& grid);

}  // namespace wavebasis
