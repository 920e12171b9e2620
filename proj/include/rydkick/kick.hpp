#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "rydkick/basis.hpp"
#include "rydkick/radial.hpp"

namespace rydkick {

// Matrix of exp(i Q z) in the bound basis: the sudden-impulse propagator for
// a half-cycle pulse that transfers momentum Q along z. Assembled from the
// multipole expansion
//   <a| e^{iQz} |b> = sum_L (-i)^L (2L+1) R_L(a,b) A_L(la,lb,m)
// with R_L the radial spherical-Bessel integral and A_L the 3j coupling
// factor. Truncating the basis makes the matrix only approximately unitary;
// column norms measure how much amplitude leaks out of the model space.
class KickOperator {
public:
  KickOperator() = default;
  KickOperator(std::vector<BasisState> states, Eigen::MatrixXcd matrix,
               double impulse_au, int l_max_sum);

  const Eigen::MatrixXcd &matrix() const { return K_; }
  const std::vector<BasisState> &states() const { return states_; }
  size_t size() const { return states_.size(); }
  double impulse_au() const { return impulse_au_; }
  int l_max_sum() const { return l_max_sum_; }

  // |1 - sum_i |K_ij|^2| for column j: probability lost from state j.
  double column_deficit(size_t j) const;

  struct WindowReport {
    double worst = 0.0;      // largest column deficit in the window
    std::string worst_label; // state whose column is worst
    size_t checked = 0;      // number of columns examined
  };
  // Deficits over the columns with angular momentum l and n in [n_lo, n_hi]
  // (the window populated by the physical packet).
  WindowReport window_deficit(int n_lo, int n_hi, int l) const;

  // Throws TruncationError naming the worst offending column when the
  // window deficit exceeds tol.
  void require_unitary(int n_lo, int n_hi, int l, double tol) const;

  // Amplitude vector just after the impulse. Throws BasisMismatchError on a
  // length mismatch.
  Eigen::VectorXcd apply(const Eigen::VectorXcd &amplitudes) const;

  // Plain-text serialization: provenance header, one state per line
  // (n l m energy), then row-major "re im" entries.
  void save(const std::string &path) const;
  static KickOperator load(const std::string &path);

private:
  std::vector<BasisState> states_;
  Eigen::MatrixXcd K_;
  double impulse_au_ = 0.0;
  int l_max_sum_ = 0;
};

// Assemble the kick matrix on the radial basis. l_max_sum bounds the
// multipole sum (the angular factors close it exactly at la_max + lb_max,
// so basis l_max + packet l is enough in practice); quadrature_stride
// subsamples the radial grid for the Bessel integrals, which converge at a
// fraction of the resolution the Numerov solve needs.
KickOperator build_kick_operator(const RadialBasis &radial, double impulse_au,
                                 int l_max_sum, int quadrature_stride);

} // namespace rydkick
