#include "rydkick/radial.hpp"

#include <cmath>
#include <limits>

#include "rydkick/errors.hpp"

namespace rydkick {

RadialGrid make_radial_grid(double nu_max, double points_per_wavelength,
                            double outer_factor) {
  if (nu_max <= 0.0)
    throw GridError("grid requires a positive effective quantum number");
  if (points_per_wavelength < 4.0)
    throw GridError("points_per_wavelength below 4 cannot resolve radial "
                    "oscillations");
  if (outer_factor <= 2.0)
    throw GridError("outer_factor must exceed 2 so the grid reaches past the "
                    "outer turning point r = 2 nu^2");

  RadialGrid g;
  g.dx = 2.0 * M_PI / (2.0 * std::sqrt(2.0) * points_per_wavelength);
  double x_max = std::sqrt(outer_factor) * nu_max;
  size_t npts = static_cast<size_t>(std::ceil(x_max / g.dx)) + 1;
  if (npts < 16)
    throw GridError("grid degenerate: fewer than 16 points");
  g.x.resize(npts);
  g.r.resize(npts);
  for (size_t i = 0; i < npts; ++i) {
    g.x[i] = g.dx * static_cast<double>(i + 1);
    g.r[i] = g.x[i] * g.x[i];
  }
  // Trapezoid weights for integrals in r over the (non-uniform in r) grid.
  g.wr.assign(npts, 0.0);
  for (size_t i = 1; i + 1 < npts; ++i)
    g.wr[i] = (g.r[i + 1] - g.r[i - 1]) / 2.0;
  g.wr[0] = (g.r[1] - g.r[0]) / 2.0;
  g.wr[npts - 1] = (g.r[npts - 1] - g.r[npts - 2]) / 2.0;
  return g;
}

namespace {

int count_nodes(const std::vector<double> &u) {
  double peak = 0.0;
  for (double v : u)
    peak = std::max(peak, std::abs(v));
  // Only samples clear of the contamination floor participate: sign flips
  // inside the ~1e-5-relative inner tail are roundoff, not nodes.
  const double thr = 1e-5 * peak;
  int flips = 0;
  double prev = 0.0;
  for (double v : u) {
    if (std::abs(v) <= thr)
      continue;
    if (prev != 0.0 && std::signbit(v) != std::signbit(prev))
      ++flips;
    prev = v;
  }
  return flips;
}

} // namespace

RadialSolution solve_radial(int n, int l, double energy_au,
                            const RadialGrid &grid, bool hydrogenic) {
  const size_t N = grid.size();
  const double dx = grid.dx;
  const auto &x = grid.x;

  if (energy_au >= 0.0)
    throw DomainError("bound-state solver requires negative energy");

  // w'' = G w with G(x) = (4 l(l+1) + 3/4)/x^2 - 8 - 8 E x^2.
  std::vector<double> G(N), c(N);
  for (size_t i = 0; i < N; ++i) {
    G[i] = (4.0 * l * (l + 1) + 0.75) / (x[i] * x[i]) - 8.0 -
           8.0 * energy_au * x[i] * x[i];
    c[i] = 1.0 - dx * dx * G[i] / 12.0;
  }
  // First classically allowed index: everything below it is the inner
  // forbidden region where termination decisions are made.
  size_t i_allow = N;
  for (size_t i = 0; i < N; ++i)
    if (G[i] < 0.0) {
      i_allow = i;
      break;
    }
  if (i_allow == N)
    throw SolverError("no classically allowed region on grid for n=" +
                      std::to_string(n) + " l=" + std::to_string(l));

  std::vector<double> w(N, 0.0);
  w[N - 1] = 0.0;
  w[N - 2] = 1e-20;

  double peak = 0.0;
  double min_inner = std::numeric_limits<double>::infinity();
  size_t i_min = 0;
  size_t stop = 0;
  enum class Mode { ReachedStart, Tail, Diverged } mode = Mode::ReachedStart;

  for (size_t i = N - 2; i >= 1; --i) {
    w[i - 1] = ((12.0 - 10.0 * c[i]) * w[i] - c[i + 1] * w[i + 1]) / c[i - 1];
    if (std::abs(w[i - 1]) > 1e140) {
      // Rescale before the growing solution overflows; relative structure
      // (and the running extrema) is all that matters pre-normalization.
      for (size_t j = i - 1; j < N; ++j)
        w[j] *= 1e-140;
      peak *= 1e-140;
      min_inner *= 1e-140;
    }
    double ui = std::abs(w[i - 1]) * std::sqrt(x[i - 1]);
    peak = std::max(peak, ui);
    if (i - 1 < i_allow) {
      if (ui < min_inner) {
        min_inner = ui;
        i_min = i - 1;
      }
      if (ui <= 1e-9 * peak) {
        stop = i - 1;
        mode = Mode::Tail;
        break;
      }
      if (ui > 100.0 * min_inner && ui > 1e-3 * peak) {
        stop = i - 1;
        mode = Mode::Diverged;
        break;
      }
    }
  }

  std::vector<double> u(N);
  for (size_t i = 0; i < N; ++i)
    u[i] = w[i] * std::sqrt(x[i]);

  std::vector<double> out(N, 0.0);
  if (hydrogenic) {
    // A hydrogenic inner solution decays monotonically below the turning
    // point; any regrowth there is the irregular solution injected by
    // roundoff. Cut at the interior minimum when that happened, keep the
    // full natural tail otherwise.
    bool regrew = (mode != Mode::ReachedStart) ||
                  (i_min > 0 && std::abs(u[0]) > 10.0 * min_inner);
    if (regrew && min_inner <= 1e-3 * peak) {
      for (size_t i = i_min + 1; i < N; ++i)
        out[i] = u[i];
    } else if (mode == Mode::Diverged) {
      throw SolverError("inner divergence for hydrogenic state n=" +
                        std::to_string(n) + " l=" + std::to_string(l));
    } else {
      out = u;
    }
  } else {
    // With a fractional quantum defect there is no regular r -> 0 limit on
    // this potential; the state is defined down to its innermost node and
    // cut there.
    size_t j0 = std::max(stop, size_t{1});
    size_t iz = N;
    for (size_t i = j0; i + 1 < N; ++i)
      if (u[i] != 0.0 && u[i + 1] != 0.0 &&
          std::signbit(u[i]) != std::signbit(u[i + 1])) {
        iz = i;
        break;
      }
    if (iz == N)
      throw SolverError("no inner node found for n=" + std::to_string(n) +
                        " l=" + std::to_string(l) +
                        " (grid too coarse or window too small)");
    for (size_t i = iz + 1; i < N; ++i)
      out[i] = u[i];
  }

  // Normalize to the peak first so u^2 cannot overflow, then to unit norm.
  double mx = 0.0;
  for (double v : out)
    mx = std::max(mx, std::abs(v));
  if (!(mx > 0.0) || !std::isfinite(mx))
    throw SolverError("radial solution vanished or overflowed for n=" +
                      std::to_string(n) + " l=" + std::to_string(l));
  double nrm2 = 0.0;
  for (size_t i = 0; i < N; ++i) {
    out[i] /= mx;
    nrm2 += grid.wr[i] * out[i] * out[i];
  }
  double nrm = std::sqrt(nrm2);
  for (double &v : out)
    v /= nrm;

  RadialSolution sol;
  sol.nodes = count_nodes(out);
  sol.u = std::move(out);
  return sol;
}

RadialBasis::RadialBasis(const BasisSet &set, double points_per_wavelength,
                         double outer_factor)
    : set_(set),
      grid_(make_radial_grid(set.nu_max(), points_per_wavelength,
                             outer_factor)) {
  const size_t npts = grid_.size();
  const size_t nst = set_.size();
  waves_.resize(static_cast<Eigen::Index>(npts), static_cast<Eigen::Index>(nst));
  wr_ = Eigen::Map<const Eigen::VectorXd>(grid_.wr.data(),
                                          static_cast<Eigen::Index>(npts));
  diag_.node_counts.resize(nst);
  for (size_t j = 0; j < nst; ++j) {
    const BasisState &st = set_.state(j);
    bool hyd = std::abs(st.defect - std::round(st.defect)) < 1e-12;
    RadialSolution sol =
        solve_radial(st.n, st.l, st.energy_au, grid_, hyd);
    diag_.node_counts[j] = sol.nodes;
    waves_.col(static_cast<Eigen::Index>(j)) = Eigen::Map<const Eigen::VectorXd>(
        sol.u.data(), static_cast<Eigen::Index>(npts));
  }
  orthogonalize();

  diag_.post_ortho_deficit = overlap_deficit();
  for (size_t j = 0; j < nst; ++j) {
    auto col = waves_.col(static_cast<Eigen::Index>(j));
    double nrm2 = col.dot(wr_.cwiseProduct(col));
    diag_.worst_norm_dev =
        std::max(diag_.worst_norm_dev, std::abs(1.0 - nrm2));
    double pk = col.cwiseAbs().maxCoeff();
    double ends = std::max(std::abs(col(0)),
                           std::abs(col(static_cast<Eigen::Index>(npts) - 1)));
    diag_.worst_end_ratio = std::max(diag_.worst_end_ratio, ends / pk);
  }
}

void RadialBasis::orthogonalize() {
  const auto &states = set_.states();
  double worst = 0.0;
  size_t blk = 0;
  while (blk < states.size()) {
    size_t end = blk;
    while (end < states.size() && states[end].l == states[blk].l)
      ++end;
    const Eigen::Index k0 = static_cast<Eigen::Index>(blk);
    const Eigen::Index nk = static_cast<Eigen::Index>(end - blk);
    Eigen::MatrixXd B = waves_.middleCols(k0, nk);
    Eigen::MatrixXd S = B.transpose() * wr_.asDiagonal() * B;
    worst = std::max(
        worst,
        (S - Eigen::MatrixXd::Identity(nk, nk)).cwiseAbs().maxCoeff());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S);
    if (es.info() != Eigen::Success)
      throw SolverError("overlap eigendecomposition failed for l=" +
                        std::to_string(states[blk].l));
    if (es.eigenvalues().minCoeff() <= 0.0)
      throw SolverError("overlap block not positive definite for l=" +
                        std::to_string(states[blk].l) +
                        " (radial solutions linearly dependent)");
    Eigen::MatrixXd inv_sqrt =
        es.eigenvectors() *
        es.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal() *
        es.eigenvectors().transpose();
    waves_.middleCols(k0, nk) = B * inv_sqrt;
    blk = end;
  }
  diag_.pre_ortho_deficit = worst;
}

double RadialBasis::overlap_deficit() const {
  const auto &states = set_.states();
  double worst = 0.0;
  size_t blk = 0;
  while (blk < states.size()) {
    size_t end = blk;
    while (end < states.size() && states[end].l == states[blk].l)
      ++end;
    const Eigen::Index k0 = static_cast<Eigen::Index>(blk);
    const Eigen::Index nk = static_cast<Eigen::Index>(end - blk);
    Eigen::MatrixXd B = waves_.middleCols(k0, nk);
    Eigen::MatrixXd S = B.transpose() * wr_.asDiagonal() * B;
    worst = std::max(
        worst,
        (S - Eigen::MatrixXd::Identity(nk, nk)).cwiseAbs().maxCoeff());
    blk = end;
  }
  return worst;
}

double RadialBasis::radial_integral(size_t i, size_t j,
                                    const Eigen::VectorXd &f_of_r) const {
  if (f_of_r.size() != static_cast<Eigen::Index>(grid_.size()))
    throw BasisMismatchError("radial integrand not sampled on basis grid");
  auto a = waves_.col(static_cast<Eigen::Index>(i));
  auto b = waves_.col(static_cast<Eigen::Index>(j));
  return (a.array() * b.array() * f_of_r.array() * wr_.array()).sum();
}

double RadialBasis::expectation_r(size_t i, size_t j) const {
  Eigen::VectorXd rv = Eigen::Map<const Eigen::VectorXd>(
      grid_.r.data(), static_cast<Eigen::Index>(grid_.size()));
  return radial_integral(i, j, rv);
}

} // namespace rydkick
