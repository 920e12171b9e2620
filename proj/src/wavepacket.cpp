#include "rydkick/wavepacket.hpp"

#include <cmath>

#include "rydkick/errors.hpp"

namespace rydkick {

void WavePacketSpec::validate() const {
  if (states.empty())
    throw ConfigError("packet has no states");
  if (weights.size() != states.size())
    throw ConfigError("packet weights count (" +
                      std::to_string(weights.size()) +
                      ") does not match state count (" +
                      std::to_string(states.size()) + ")");
  if (phases_rad.size() != states.size())
    throw ConfigError("packet phases count (" +
                      std::to_string(phases_rad.size()) +
                      ") does not match state count (" +
                      std::to_string(states.size()) + ")");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0))
      throw ConfigError("packet weights must be non-negative");
    total += w * w;
  }
  if (!(total > 0.0))
    throw ConfigError("packet weights are all zero");
  for (size_t i = 0; i < states.size(); ++i)
    for (size_t j = i + 1; j < states.size(); ++j)
      if (states[i] == states[j])
        throw ConfigError("packet lists state n=" +
                          std::to_string(states[i].first) +
                          " l=" + std::to_string(states[i].second) + " twice");
}

Eigen::VectorXcd initial_wavepacket(const WavePacketSpec &spec,
                                    const BasisSet &basis) {
  spec.validate();
  Eigen::VectorXcd a =
      Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.size()));
  double norm2 = 0.0;
  for (double w : spec.weights)
    norm2 += w * w;
  double scale = 1.0 / std::sqrt(norm2);
  for (size_t k = 0; k < spec.states.size(); ++k) {
    size_t idx = basis.index(spec.states[k].first, spec.states[k].second);
    a(static_cast<Eigen::Index>(idx)) =
        std::polar(spec.weights[k] * scale, spec.phases_rad[k]);
  }
  return a;
}

Eigen::VectorXd energies_of(const BasisSet &basis) {
  Eigen::VectorXd e(static_cast<Eigen::Index>(basis.size()));
  for (size_t i = 0; i < basis.size(); ++i)
    e(static_cast<Eigen::Index>(i)) = basis.state(i).energy_au;
  return e;
}

Eigen::VectorXcd evolve(const Eigen::VectorXcd &amplitudes,
                        const Eigen::VectorXd &energies_au, double dt_au) {
  if (amplitudes.size() != energies_au.size())
    throw BasisMismatchError("amplitude and energy vectors differ in length");
  Eigen::VectorXcd out(amplitudes.size());
  for (Eigen::Index i = 0; i < amplitudes.size(); ++i)
    out(i) = amplitudes(i) * std::polar(1.0, -energies_au(i) * dt_au);
  return out;
}

Eigen::VectorXcd apply_kick_at(const KickOperator &kick,
                               const Eigen::VectorXcd &amps_rotating,
                               const Eigen::VectorXd &energies_au,
                               double t_kick_au) {
  Eigen::VectorXcd lab = evolve(amps_rotating, energies_au, t_kick_au);
  Eigen::VectorXcd kicked = kick.apply(lab);
  return evolve(kicked, energies_au, -t_kick_au);
}

Eigen::VectorXd populations_with_reference(
    const Eigen::VectorXcd &a_rot, const Eigen::VectorXd &omega_au,
    const Eigen::VectorXd &ref_amplitude, const Eigen::VectorXd &ref_phase,
    double omega_g_au, double tau_au) {
  const Eigen::Index n = a_rot.size();
  if (omega_au.size() != n || ref_amplitude.size() != n ||
      ref_phase.size() != n)
    throw BasisMismatchError(
        "channel amplitude/energy/reference vectors differ in length");
  Eigen::VectorXd p(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    std::complex<double> ref = std::polar(
        ref_amplitude(k),
        ref_phase(k) - (omega_g_au - omega_au(k)) * tau_au);
    p(k) = std::norm(a_rot(k) + ref);
  }
  return p;
}

} // namespace rydkick
