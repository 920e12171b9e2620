#include "rydkick/analysis.hpp"

#include <cmath>
#include <limits>

#include "rydkick/errors.hpp"

namespace rydkick {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

std::vector<ChannelPair> channel_pairs(const std::vector<Channel> &channels) {
  if (channels.size() < 2)
    throw ConfigError("pair analysis needs at least 2 channels");
  std::vector<ChannelPair> pairs;
  for (size_t a = 0; a < channels.size(); ++a)
    for (size_t b = a + 1; b < channels.size(); ++b) {
      size_t j = a, k = b;
      if (channels[k].omega_au < channels[j].omega_au)
        std::swap(j, k);
      ChannelPair p;
      p.j = j;
      p.k = k;
      p.label = channels[j].label + "-" + channels[k].label;
      p.delta_omega = channels[j].omega_au - channels[k].omega_au;
      pairs.push_back(p);
    }
  return pairs;
}

double pearson(const Eigen::VectorXd &x, const Eigen::VectorXd &y) {
  if (x.size() != y.size() || x.size() < 2)
    throw FitError("correlation needs two equal-length series of >= 2 "
                   "samples");
  const double n = static_cast<double>(x.size());
  double mx = x.mean();
  double my = y.mean();
  Eigen::VectorXd xc = x.array() - mx;
  Eigen::VectorXd yc = y.array() - my;
  double vxx = xc.squaredNorm() / n;
  double vyy = yc.squaredNorm() / n;
  double vxy = xc.dot(yc) / n;
  if (!(vxx > 0.0) || !(vyy > 0.0))
    return kNaN;
  return vxy / std::sqrt(vxx * vyy);
}

CorrelationCurves correlation_curves(const Ensemble &ensemble,
                                     const std::vector<Channel> &channels) {
  if (channels.size() != ensemble.n_channels())
    throw BasisMismatchError("ensemble channel count does not match channel "
                             "list");
  for (size_t k = 0; k < channels.size(); ++k)
    if (channels[k].label != ensemble.channel_labels[k])
      throw BasisMismatchError("ensemble channel order mismatch: expected " +
                               channels[k].label + ", found " +
                               ensemble.channel_labels[k]);
  CorrelationCurves out;
  out.pairs = channel_pairs(channels);
  out.tau_ps = ensemble.tau_ps;
  out.r.resize(static_cast<Eigen::Index>(out.pairs.size()),
               static_cast<Eigen::Index>(ensemble.n_delays()));
  for (size_t d = 0; d < ensemble.n_delays(); ++d) {
    const Eigen::MatrixXd &block = ensemble.signals[d];
    for (size_t p = 0; p < out.pairs.size(); ++p) {
      const ChannelPair &pr = out.pairs[p];
      out.r(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(d)) =
          pearson(block.col(static_cast<Eigen::Index>(pr.j)),
                  block.col(static_cast<Eigen::Index>(pr.k)));
    }
  }
  return out;
}

namespace {

struct LinFit {
  double c = 0.0, s = 0.0;
  double var_c = 0.0, var_s = 0.0, cov_cs = 0.0;
  double rss = 0.0;
  long n = 0;
};

// Two-parameter least squares against {cos(w tau), sin(w tau)}, skipping
// NaN samples. with_errors adds the (XtX)^-1 covariance scaled by RSS/(n-2).
LinFit quadrature_lsq(const std::vector<double> &tau_au,
                      const std::vector<double> &r, double w,
                      bool with_errors) {
  if (tau_au.size() != r.size())
    throw FitError("delay and correlation series differ in length");
  double scc = 0.0, sss = 0.0, scs = 0.0, scy = 0.0, ssy = 0.0;
  long n = 0;
  for (size_t i = 0; i < r.size(); ++i) {
    if (std::isnan(r[i]))
      continue;
    double cv = std::cos(w * tau_au[i]);
    double sv = std::sin(w * tau_au[i]);
    scc += cv * cv;
    sss += sv * sv;
    scs += cv * sv;
    scy += cv * r[i];
    ssy += sv * r[i];
    ++n;
  }
  if (n < 3)
    throw FitError("fewer than 3 valid correlation samples");
  double det = scc * sss - scs * scs;
  if (!(std::abs(det) > 1e-12 * std::max(scc * sss, 1e-300)))
    throw FitError("quadrature design matrix is singular; delay grid cannot "
                   "separate the two quadratures");
  LinFit fit;
  fit.n = n;
  fit.c = (sss * scy - scs * ssy) / det;
  fit.s = (scc * ssy - scs * scy) / det;
  for (size_t i = 0; i < r.size(); ++i) {
    if (std::isnan(r[i]))
      continue;
    double model = fit.c * std::cos(w * tau_au[i]) +
                   fit.s * std::sin(w * tau_au[i]);
    double res = r[i] - model;
    fit.rss += res * res;
  }
  if (with_errors) {
    double s2 = fit.rss / static_cast<double>(n - 2);
    fit.var_c = s2 * sss / det;
    fit.var_s = s2 * scc / det;
    fit.cov_cs = -s2 * scs / det;
  }
  return fit;
}

void check_span(const std::vector<double> &tau_au,
                const std::vector<double> &r, double w) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < tau_au.size(); ++i) {
    if (i < r.size() && std::isnan(r[i]))
      continue;
    lo = std::min(lo, tau_au[i]);
    hi = std::max(hi, tau_au[i]);
  }
  if (!((hi - lo) * std::abs(w) >= 2.0 * M_PI))
    throw FitError("delay span covers less than one beat period; amplitude "
                   "and phase are not identifiable");
}

} // namespace

QuadratureFit fit_amplitude_phase(const std::vector<double> &tau_au,
                                  const std::vector<double> &r,
                                  double delta_omega_au) {
  check_span(tau_au, r, delta_omega_au);
  LinFit lin = quadrature_lsq(tau_au, r, delta_omega_au, true);

  QuadratureFit out;
  out.freq_au = delta_omega_au;
  out.rss = lin.rss;
  out.points = lin.n;
  out.amplitude = std::hypot(lin.c, lin.s);
  if (out.amplitude > 0.0) {
    double A = out.amplitude;
    // delta method: A = sqrt(c^2+s^2), Phi = atan2(s, c)
    double ja_c = lin.c / A, ja_s = lin.s / A;
    double jp_c = -lin.s / (A * A), jp_s = lin.c / (A * A);
    out.amplitude_se =
        std::sqrt(std::max(0.0, ja_c * ja_c * lin.var_c +
                                    ja_s * ja_s * lin.var_s +
                                    2.0 * ja_c * ja_s * lin.cov_cs));
    out.phase_se =
        std::sqrt(std::max(0.0, jp_c * jp_c * lin.var_c +
                                    jp_s * jp_s * lin.var_s +
                                    2.0 * jp_c * jp_s * lin.cov_cs));
  } else {
    out.amplitude_se = std::sqrt(
        std::max(0.0, 0.5 * (lin.var_c + lin.var_s)));
    out.phase_se = kNaN;
  }
  out.phase_defined =
      out.amplitude > 0.0 && out.amplitude > 3.0 * out.amplitude_se;
  out.phase = out.phase_defined ? std::atan2(lin.s, lin.c) : kNaN;
  if (!out.phase_defined)
    out.phase_se = kNaN;
  return out;
}

double refine_beat_frequency(const std::vector<double> &tau_au,
                             const std::vector<double> &r,
                             double delta_omega_au, double span, int npts) {
  if (npts < 5)
    throw FitError("frequency scan needs at least 5 points");
  if (!(std::abs(delta_omega_au) > 0.0))
    throw FitError("cannot refine a zero beat frequency");
  check_span(tau_au, r, delta_omega_au);
  std::vector<double> ws(static_cast<size_t>(npts)), rss(static_cast<size_t>(npts));
  for (int i = 0; i < npts; ++i) {
    double frac = -1.0 + 2.0 * static_cast<double>(i) /
                             static_cast<double>(npts - 1);
    ws[static_cast<size_t>(i)] = delta_omega_au * (1.0 + span * frac);
    rss[static_cast<size_t>(i)] =
        quadrature_lsq(tau_au, r, ws[static_cast<size_t>(i)], false).rss;
  }
  size_t best = 0;
  for (size_t i = 1; i < rss.size(); ++i)
    if (rss[i] < rss[best])
      best = i;
  if (best == 0 || best + 1 == rss.size())
    return ws[best]; // minimum at scan edge; no parabola available
  double num = rss[best - 1] - rss[best + 1];
  double den = rss[best - 1] - 2.0 * rss[best] + rss[best + 1];
  if (!(den > 0.0))
    return ws[best];
  double step = ws[1] - ws[0];
  return ws[best] + 0.5 * num / den * step;
}

double attenuation_factor(double sigma_signal, double sigma_noise) {
  if (sigma_signal < 0.0 || sigma_noise < 0.0)
    throw DomainError("attenuation factor takes non-negative rms inputs");
  if (!(sigma_signal > 0.0))
    return 0.0;
  return sigma_signal /
         std::sqrt(sigma_signal * sigma_signal + sigma_noise * sigma_noise);
}

double analytic_correlation(double att_j, double att_k, double phi,
                            double delta_omega_au, double tau_au) {
  return att_j * att_k * std::cos(phi - delta_omega_au * tau_au);
}

double fisher_z(double r) {
  if (std::isnan(r))
    return kNaN;
  const double lim = 1.0 - 1e-12;
  if (r > lim)
    r = lim;
  if (r < -lim)
    r = -lim;
  return std::atanh(r);
}

double fisher_z_se(long shots) {
  if (shots <= 3)
    throw FitError("Fisher z standard error needs more than 3 shots");
  return 1.0 / std::sqrt(static_cast<double>(shots - 3));
}

double modulation_period(const std::vector<double> &t,
                         const std::vector<double> &y, double lag_lo,
                         double lag_hi) {
  const size_t n = t.size();
  if (n < 8 || y.size() != n)
    throw FitError("period estimate needs a uniformly sampled curve of >= 8 "
                   "points");
  const double dt = t[1] - t[0];
  if (!(dt > 0.0))
    throw FitError("curve samples must be strictly increasing");
  for (size_t i = 1; i < n; ++i)
    if (std::abs((t[i] - t[i - 1]) - dt) > 1e-9 * dt)
      throw FitError("period estimate requires uniform sampling");
  if (!(lag_lo > 0.0) || !(lag_hi > lag_lo))
    throw FitError("invalid autocorrelation lag window");

  double mean = 0.0;
  for (double v : y)
    mean += v;
  mean /= static_cast<double>(n);
  std::vector<double> yc(n);
  double denom = 0.0;
  for (size_t i = 0; i < n; ++i) {
    yc[i] = y[i] - mean;
    denom += yc[i] * yc[i];
  }
  if (!(denom > 0.0))
    throw FitError("curve has no variance; period undefined");

  size_t k_lo = static_cast<size_t>(lag_lo / dt);
  size_t k_hi = static_cast<size_t>(lag_hi / dt);
  if (k_lo < 1)
    k_lo = 1;
  if (k_hi + 1 >= n)
    k_hi = n - 2;
  if (k_hi <= k_lo)
    throw FitError("autocorrelation lag window leaves no usable lags");

  // Biased autocorrelation, normalized by the zero-lag value.
  std::vector<double> ac(k_hi + 2, 0.0);
  for (size_t k = 0; k <= k_hi + 1; ++k) {
    double acc = 0.0;
    for (size_t i = 0; i + k < n; ++i)
      acc += yc[i] * yc[i + k];
    ac[k] = acc / denom;
  }

  size_t best = 0;
  bool found = false;
  for (size_t k = k_lo; k < k_hi; ++k) {
    if (ac[k] >= ac[k - 1] && ac[k] > ac[k + 1]) {
      if (!found || ac[k] > ac[best]) {
        best = k;
        found = true;
      }
    }
  }
  if (!found)
    throw FitError("no autocorrelation maximum inside the lag window; curve "
                   "has no modulation at the probed periods");
  double num = ac[best - 1] - ac[best + 1];
  double den = ac[best - 1] - 2.0 * ac[best] + ac[best + 1];
  double kref = static_cast<double>(best);
  if (den != 0.0)
    kref += 0.5 * num / den;
  return kref * dt;
}

} // namespace rydkick
