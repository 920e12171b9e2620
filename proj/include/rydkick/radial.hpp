#pragma once

#include <Eigen/Dense>
#include <vector>

#include "rydkick/basis.hpp"

namespace rydkick {

// Uniform grid in x = sqrt(r). The square-root substitution makes the node
// spacing of high Rydberg states nearly uniform, so a fixed points-per-
// wavelength budget covers the whole n-window with one grid.
struct RadialGrid {
  double dx = 0.0;
  std::vector<double> x;  // x[i] = dx * (i + 1); x = 0 is excluded
  std::vector<double> r;  // r = x^2
  std::vector<double> wr; // trapezoid quadrature weights in r

  size_t size() const { return x.size(); }
};

// Build the shared grid for a basis whose largest effective quantum number
// is nu_max. The step is dx = 2*pi / (2*sqrt(2) * points_per_wavelength)
// (the deep-region wavenumber in x is 2*sqrt(2)); the extent is
// x_max = sqrt(outer_factor) * nu_max, i.e. r_max = outer_factor * nu_max^2.
// outer_factor must exceed 2 so the grid passes the outer turning point.
RadialGrid make_radial_grid(double nu_max, double points_per_wavelength,
                            double outer_factor);

struct RadialSolution {
  std::vector<double> u; // normalized reduced wavefunction on the grid
  int nodes = 0;
};

// Inward Numerov integration of the reduced radial equation on the master
// grid, transformed to w(x) = u / sqrt(x) so the step stays uniform. The
// integration is seeded in the outer forbidden region and terminated in the
// inner forbidden region; hydrogenic states keep their natural inner decay
// (cut only when roundoff contamination regrows), quantum-defect states are
// cut at the innermost node. Throws SolverError when no acceptable inner
// termination exists.
RadialSolution solve_radial(int n, int l, double energy_au,
                            const RadialGrid &grid, bool hydrogenic);

struct RadialDiagnostics {
  double pre_ortho_deficit = 0.0;  // worst |<i|j> - delta_ij| before symmetric
                                   // orthogonalization, per-l blocks
  double post_ortho_deficit = 0.0; // same after orthogonalization
  double worst_norm_dev = 0.0;     // max |1 - integral(u^2 dr)| over states
  double worst_end_ratio = 0.0;    // max over states of boundary |u| / peak |u|
  std::vector<int> node_counts;    // per state, counted before mixing
};

// All radial wavefunctions of a basis on one shared grid, stored as columns
// of a dense matrix. Same-l blocks are symmetrically orthogonalized
// (S^{-1/2}) after solving: the raw node-cut solutions agree pairwise only
// to ~1e-4 because their inner cut radii differ, and the symmetric correction
// restores orthonormality without biasing toward any one state.
class RadialBasis {
public:
  RadialBasis(const BasisSet &set, double points_per_wavelength,
              double outer_factor);

  const BasisSet &set() const { return set_; }
  const RadialGrid &grid() const { return grid_; }

  // Grid samples of the reduced wavefunction u_i, as matrix column i
  // (rows are grid points, in basis-set state order).
  const Eigen::MatrixXd &waves() const { return waves_; }

  // integral( u_i(r) f(r) u_j(r) dr ) with f given as grid samples.
  double radial_integral(size_t i, size_t j,
                         const Eigen::VectorXd &f_of_r) const;
  double expectation_r(size_t i, size_t j) const;

  // Recompute the worst per-l-block orthonormality violation right now.
  double overlap_deficit() const;

  const RadialDiagnostics &diagnostics() const { return diag_; }

private:
  void orthogonalize();

  BasisSet set_;
  RadialGrid grid_;
  Eigen::MatrixXd waves_; // grid points x states
  Eigen::VectorXd wr_;    // quadrature weights as Eigen vector
  RadialDiagnostics diag_;
};

} // namespace rydkick
