#include "rydkick/measurement.hpp"

#include <cmath>

#include "rydkick/constants.hpp"
#include "rydkick/errors.hpp"
#include "rydkick/rng.hpp"
#include "rydkick/wavepacket.hpp"

namespace rydkick {

std::vector<Channel> make_channels(
    const BasisSet &basis, const std::vector<std::pair<int, int>> &states,
    const std::vector<double> &ref_amplitudes,
    const std::vector<double> &ref_phases) {
  if (states.empty())
    throw ConfigError("no detection channels configured");
  if (ref_amplitudes.size() != states.size())
    throw ConfigError("reference amplitude count (" +
                      std::to_string(ref_amplitudes.size()) +
                      ") does not match channel count (" +
                      std::to_string(states.size()) + ")");
  if (ref_phases.size() != states.size())
    throw ConfigError("reference phase count (" +
                      std::to_string(ref_phases.size()) +
                      ") does not match channel count (" +
                      std::to_string(states.size()) + ")");
  std::vector<Channel> out;
  out.reserve(states.size());
  for (size_t k = 0; k < states.size(); ++k) {
    if (!(ref_amplitudes[k] >= 0.0))
      throw ConfigError("reference amplitudes must be non-negative");
    Channel ch;
    ch.basis_index = basis.index(states[k].first, states[k].second);
    const BasisState &st = basis.state(ch.basis_index);
    ch.label = st.label();
    ch.omega_au = st.energy_au;
    ch.ref_amplitude = ref_amplitudes[k];
    ch.ref_phase = ref_phases[k];
    out.push_back(ch);
  }
  for (size_t i = 0; i < out.size(); ++i)
    for (size_t j = i + 1; j < out.size(); ++j)
      if (out[i].basis_index == out[j].basis_index)
        throw ConfigError("channel " + out[i].label + " listed twice");
  return out;
}

double jitter_window_au(double omega_g_au, double omega_bar_au, long periods) {
  if (periods < 0)
    throw ConfigError("jitter_periods must be >= 0");
  double det = std::abs(omega_g_au - omega_bar_au);
  if (!(det > 0.0))
    throw ConfigError("launch and packet energies coincide; jitter window "
                      "undefined");
  return static_cast<double>(periods) * 2.0 * M_PI / det;
}

Eigen::VectorXd noise_sigma(const Eigen::VectorXcd &a_rot_channels,
                            const std::vector<Channel> &channels,
                            double relative_noise) {
  if (a_rot_channels.size() != static_cast<Eigen::Index>(channels.size()))
    throw BasisMismatchError("channel amplitude count mismatch");
  if (!(relative_noise >= 0.0))
    throw ConfigError("noise level must be >= 0");
  Eigen::VectorXd sigma(a_rot_channels.size());
  for (size_t k = 0; k < channels.size(); ++k) {
    double mean_sig = std::norm(a_rot_channels(static_cast<Eigen::Index>(k))) +
                      channels[k].ref_amplitude * channels[k].ref_amplitude;
    sigma(static_cast<Eigen::Index>(k)) = relative_noise * mean_sig;
  }
  return sigma;
}

Ensemble generate_ensemble(const Eigen::VectorXcd &a_rot_channels,
                           const std::vector<Channel> &channels,
                           const EnsembleParams &params) {
  const size_t nch = channels.size();
  if (a_rot_channels.size() != static_cast<Eigen::Index>(nch))
    throw BasisMismatchError("channel amplitude count mismatch");
  if (params.shots < 2)
    throw ConfigError("need at least 2 shots per delay");
  if (params.tau_ps.empty())
    throw ConfigError("empty delay grid");
  if (!(params.jitter_window >= 0.0))
    throw ConfigError("jitter window must be >= 0");

  Eigen::VectorXd omega(static_cast<Eigen::Index>(nch));
  Eigen::VectorXd ref_amp(static_cast<Eigen::Index>(nch));
  Eigen::VectorXd ref_phase(static_cast<Eigen::Index>(nch));
  for (size_t k = 0; k < nch; ++k) {
    omega(static_cast<Eigen::Index>(k)) = channels[k].omega_au;
    ref_amp(static_cast<Eigen::Index>(k)) = channels[k].ref_amplitude;
    ref_phase(static_cast<Eigen::Index>(k)) = channels[k].ref_phase;
  }
  Eigen::VectorXd sigma =
      noise_sigma(a_rot_channels, channels, params.relative_noise);

  Ensemble ens;
  ens.tau_ps = params.tau_ps;
  ens.channel_labels.reserve(nch);
  for (const auto &ch : channels)
    ens.channel_labels.push_back(ch.label);
  ens.signals.reserve(params.tau_ps.size());

  for (size_t d = 0; d < params.tau_ps.size(); ++d) {
    double tau_au = params.tau_ps[d] * kPsToAu;
    Eigen::MatrixXd block(params.shots, static_cast<Eigen::Index>(nch));
    for (long s = 0; s < params.shots; ++s) {
      RandomStream stream(params.seed, static_cast<uint64_t>(d),
                          static_cast<uint64_t>(s));
      double jitter = params.jitter_window * stream.uniform();
      Eigen::VectorXd p = populations_with_reference(
          a_rot_channels, omega, ref_amp, ref_phase, params.omega_g_au,
          tau_au + jitter);
      for (size_t k = 0; k < nch; ++k)
        block(s, static_cast<Eigen::Index>(k)) =
            p(static_cast<Eigen::Index>(k)) +
            sigma(static_cast<Eigen::Index>(k)) * stream.normal();
    }
    ens.signals.push_back(std::move(block));
  }
  return ens;
}

} // namespace rydkick
