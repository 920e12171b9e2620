#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "rydkick/measurement.hpp"

namespace rydkick {

// Channel pair, ordered so omega_j <= omega_k (ascending energy).
struct ChannelPair {
  size_t j = 0, k = 0;      // channel indices
  std::string label;        // "30p-31p"
  double delta_omega = 0.0; // omega_j - omega_k (a.u., non-positive)
};

std::vector<ChannelPair> channel_pairs(const std::vector<Channel> &channels);

// Pearson correlation of two columns using population (1/N) moments.
// Returns NaN when either variance vanishes.
double pearson(const Eigen::VectorXd &x, const Eigen::VectorXd &y);

// Shot-to-shot correlation of every channel pair at every delay.
struct CorrelationCurves {
  std::vector<ChannelPair> pairs;
  std::vector<double> tau_ps;
  Eigen::MatrixXd r; // pairs x delays; NaN marks degenerate shot sets
};

CorrelationCurves correlation_curves(const Ensemble &ensemble,
                                     const std::vector<Channel> &channels);

// Least-squares fit of r(tau) = c cos(w tau) + s sin(w tau) at fixed w,
// reported as amplitude A = sqrt(c^2 + s^2) and phase Phi = atan2(s, c),
// i.e. r = A cos(Phi - w tau). Standard errors come from the linear-fit
// covariance by the delta method. The phase is flagged undefined when the
// amplitude is not resolved (A < 3 sigma_A). NaN samples are skipped.
// Throws FitError when fewer than 3 valid samples remain or when the delay
// span covers less than one beat period of w.
struct QuadratureFit {
  double amplitude = 0.0;
  double amplitude_se = 0.0;
  double phase = 0.0; // NaN when !phase_defined
  double phase_se = 0.0;
  bool phase_defined = false;
  double freq_au = 0.0; // the w the fit used
  double rss = 0.0;
  long points = 0;
};

QuadratureFit fit_amplitude_phase(const std::vector<double> &tau_au,
                                  const std::vector<double> &r,
                                  double delta_omega_au);

// Residual-scan refinement of the beat frequency: evaluate the fit RSS on a
// relative grid of +-span around delta_omega_au and refine the minimum
// parabolically. Returns the refined (signed) frequency.
double refine_beat_frequency(const std::vector<double> &tau_au,
                             const std::vector<double> &r,
                             double delta_omega_au, double span = 0.02,
                             int npts = 81);

// Noise attenuation of a correlation: sigma_signal / sqrt(sigma_signal^2 +
// sigma_noise^2). The interference part of channel j fluctuates with rms
// sqrt(2) |a_j| C_j over a uniformly scrambled phase.
double attenuation_factor(double sigma_signal, double sigma_noise);

// Expected pair correlation att_j att_k cos(Phi - delta_omega tau).
double analytic_correlation(double att_j, double att_k, double phi,
                            double delta_omega_au, double tau_au);

// Fisher transform z = atanh(r), clamped away from |r| = 1, and its
// standard error 1/sqrt(shots - 3).
double fisher_z(double r);
double fisher_z_se(long shots);

// Dominant modulation period of a uniformly sampled curve, from the largest
// local maximum of the biased autocorrelation inside [lag_lo, lag_hi],
// refined parabolically. Throws FitError when the window holds no local
// maximum or the sampling is not uniform.
double modulation_period(const std::vector<double> &t,
                         const std::vector<double> &y, double lag_lo,
                         double lag_hi);

} // namespace rydkick
