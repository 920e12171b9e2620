#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "rydkick/basis.hpp"

namespace rydkick {

// One detected channel: a bound state whose population is read out
// shot-by-shot, interfering with the reference packet's copy of itself.
struct Channel {
  size_t basis_index = 0;
  std::string label;        // spectroscopic label, e.g. "30p"
  double omega_au = 0.0;    // state energy
  double ref_amplitude = 0.0; // reference-packet amplitude in this state
  double ref_phase = 0.0;     // reference-packet phase (rad)
};

// Resolve channel states against the basis and attach reference-packet
// parameters; channels keep the caller's state order. Throws
// BasisMismatchError for states outside the basis and ConfigError for
// mismatched list lengths.
std::vector<Channel> make_channels(const BasisSet &basis,
                                   const std::vector<std::pair<int, int>> &states,
                                   const std::vector<double> &ref_amplitudes,
                                   const std::vector<double> &ref_phases);

// Shot-to-shot timing jitter window: `periods` full cycles of the beat
// between the launch state and the packet's mean bound energy. Uniform
// jitter over whole cycles scrambles each channel's optical phase while
// leaving pair difference phases almost untouched.
double jitter_window_au(double omega_g_au, double omega_bar_au, long periods);

struct EnsembleParams {
  std::vector<double> tau_ps; // reference-delay grid
  long shots = 0;
  double jitter_window = 0.0; // uniform jitter width (a.u.)
  double relative_noise = 0.0; // detector noise rms / mean channel signal
  double omega_g_au = 0.0;
  uint64_t seed = 0;
};

// Simulated detection record: per delay, a shots x channels matrix of
// noisy populations.
struct Ensemble {
  std::vector<double> tau_ps;
  std::vector<std::string> channel_labels;
  std::vector<Eigen::MatrixXd> signals; // [delay](shot, channel)

  size_t n_delays() const { return tau_ps.size(); }
  size_t n_channels() const { return channel_labels.size(); }
};

// Noise level actually applied to channel k: relative_noise times the
// cycle-averaged channel signal |a_k|^2 + C_k^2.
Eigen::VectorXd noise_sigma(const Eigen::VectorXcd &a_rot_channels,
                            const std::vector<Channel> &channels,
                            double relative_noise);

// Generate the full synthetic detection record. a_rot_channels holds the
// rotating-frame amplitude of each channel state after any impulse.
// Reproducible: shot (d, s) consumes an independent counter-based stream
// derived from (seed, d, s) — first one uniform jitter draw, then one
// Gaussian noise draw per channel in channel order.
Ensemble generate_ensemble(const Eigen::VectorXcd &a_rot_channels,
                           const std::vector<Channel> &channels,
                           const EnsembleParams &params);

} // namespace rydkick
