#pragma once

#include <Eigen/Dense>
#include <complex>
#include <utility>
#include <vector>

#include "rydkick/basis.hpp"
#include "rydkick/kick.hpp"

namespace rydkick {

// Launch packet: coherent superposition of bound states with given relative
// weights and phases. Weights are normalized to unit total population when
// the packet is realized on a basis.
struct WavePacketSpec {
  std::vector<std::pair<int, int>> states; // (n, l)
  std::vector<double> weights;             // relative amplitude magnitudes
  std::vector<double> phases_rad;          // one per state

  void validate() const; // throws ConfigError on inconsistent sizes/values
};

// Full-length amplitude vector over the basis, zero outside the packet
// states. Normalized so the total population is exactly 1.
Eigen::VectorXcd initial_wavepacket(const WavePacketSpec &spec,
                                    const BasisSet &basis);

// State energies in basis order, as a vector (hartree).
Eigen::VectorXd energies_of(const BasisSet &basis);

// Free evolution by dt: amplitudes pick up e^{-i E dt}. Negative dt undoes
// evolution, which is how amplitudes move between the lab frame and the
// frame with free evolution removed.
Eigen::VectorXcd evolve(const Eigen::VectorXcd &amplitudes,
                        const Eigen::VectorXd &energies_au, double dt_au);

// Impulse applied at time t_kick to amplitudes carried in the frame with
// free evolution removed: evolve to the kick time, apply the operator,
// return to the rotating frame. The result is time-independent again.
Eigen::VectorXcd apply_kick_at(const KickOperator &kick,
                               const Eigen::VectorXcd &amps_rotating,
                               const Eigen::VectorXd &energies_au,
                               double t_kick_au);

// Detection-time population of each channel when the packet interferes with
// a delayed reference copy. a_rot are rotating-frame channel amplitudes,
// ref_* describe the reference packet created a delay tau after the first,
// omega_g is the launch-state energy the reference phase accumulates at:
//   P_k = | a_k + C_k e^{i (phi_k - (omega_g - omega_k) tau)} |^2 .
Eigen::VectorXd populations_with_reference(
    const Eigen::VectorXcd &a_rot, const Eigen::VectorXd &omega_au,
    const Eigen::VectorXd &ref_amplitude, const Eigen::VectorXd &ref_phase,
    double omega_g_au, double tau_au);

} // namespace rydkick
