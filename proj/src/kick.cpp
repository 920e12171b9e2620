#include "rydkick/kick.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_bessel.h>

#include "rydkick/angular.hpp"
#include "rydkick/constants.hpp"
#include "rydkick/errors.hpp"

namespace rydkick {

KickOperator::KickOperator(std::vector<BasisState> states,
                           Eigen::MatrixXcd matrix, double impulse_au,
                           int l_max_sum)
    : states_(std::move(states)), K_(std::move(matrix)),
      impulse_au_(impulse_au), l_max_sum_(l_max_sum) {
  if (K_.rows() != K_.cols() ||
      K_.rows() != static_cast<Eigen::Index>(states_.size()))
    throw BasisMismatchError("kick matrix shape does not match state list");
}

double KickOperator::column_deficit(size_t j) const {
  double norm2 = K_.col(static_cast<Eigen::Index>(j)).squaredNorm();
  return std::abs(1.0 - norm2);
}

KickOperator::WindowReport KickOperator::window_deficit(int n_lo, int n_hi,
                                                        int l) const {
  WindowReport rep;
  for (size_t j = 0; j < states_.size(); ++j) {
    const BasisState &st = states_[j];
    if (st.l != l || st.n < n_lo || st.n > n_hi)
      continue;
    ++rep.checked;
    double d = column_deficit(j);
    if (d >= rep.worst) {
      rep.worst = d;
      rep.worst_label = st.label();
    }
  }
  if (rep.checked == 0)
    throw BasisMismatchError("no basis column in requested window n=[" +
                             std::to_string(n_lo) + "," + std::to_string(n_hi) +
                             "] l=" + std::to_string(l));
  return rep;
}

void KickOperator::require_unitary(int n_lo, int n_hi, int l,
                                   double tol) const {
  WindowReport rep = window_deficit(n_lo, n_hi, l);
  if (rep.worst > tol) {
    std::ostringstream msg;
    msg << "kick operator loses too much amplitude: column " << rep.worst_label
        << " deficit " << rep.worst << " exceeds tolerance " << tol
        << " (enlarge the basis window or l_max)";
    throw TruncationError(msg.str());
  }
}

Eigen::VectorXcd KickOperator::apply(const Eigen::VectorXcd &amplitudes) const {
  if (amplitudes.size() != K_.cols())
    throw BasisMismatchError("amplitude vector length " +
                             std::to_string(amplitudes.size()) +
                             " does not match kick operator dimension " +
                             std::to_string(K_.cols()));
  return K_ * amplitudes;
}

KickOperator build_kick_operator(const RadialBasis &radial, double impulse_au,
                                 int l_max_sum, int quadrature_stride) {
  if (l_max_sum < 0)
    throw DomainError("l_max_sum must be >= 0");
  if (quadrature_stride < 1)
    throw DomainError("quadrature_stride must be >= 1");

  const BasisSet &set = radial.set();
  const RadialGrid &grid = radial.grid();
  const size_t nst = set.size();
  const size_t npts = grid.size();
  const int m = set.m();

  // Subsample the grid for the Bessel integrals. The integrands are smooth
  // products of basis functions; they converge at far coarser resolution
  // than the Numerov solve requires.
  std::vector<size_t> sel;
  for (size_t i = 0; i < npts; i += static_cast<size_t>(quadrature_stride))
    sel.push_back(i);
  const size_t ns = sel.size();
  if (ns < 8)
    throw GridError("quadrature_stride leaves too few grid points");

  Eigen::MatrixXd Us(ns, nst);
  Eigen::VectorXd rs(ns);
  for (size_t k = 0; k < ns; ++k) {
    rs(static_cast<Eigen::Index>(k)) = grid.r[sel[k]];
    Us.row(static_cast<Eigen::Index>(k)) =
        radial.waves().row(static_cast<Eigen::Index>(sel[k]));
  }
  Eigen::VectorXd ws(ns);
  for (size_t k = 1; k + 1 < ns; ++k)
    ws(static_cast<Eigen::Index>(k)) =
        (rs(static_cast<Eigen::Index>(k + 1)) -
         rs(static_cast<Eigen::Index>(k - 1))) /
        2.0;
  ws(0) = (rs(1) - rs(0)) / 2.0;
  ws(static_cast<Eigen::Index>(ns - 1)) =
      (rs(static_cast<Eigen::Index>(ns - 1)) -
       rs(static_cast<Eigen::Index>(ns - 2))) /
      2.0;

  // Contiguous same-l blocks of the state list.
  struct Block {
    int l;
    size_t start, len;
  };
  std::vector<Block> blocks;
  {
    size_t i = 0;
    while (i < nst) {
      size_t j = i;
      while (j < nst && set.state(j).l == set.state(i).l)
        ++j;
      blocks.push_back({set.state(i).l, i, j - i});
      i = j;
    }
  }

  Eigen::MatrixXd Kre = Eigen::MatrixXd::Zero(nst, nst);
  Eigen::MatrixXd Kim = Eigen::MatrixXd::Zero(nst, nst);
  const double q_abs = std::abs(impulse_au);

  for (int L = 0; L <= l_max_sum; ++L) {
    // Any block pair using this multipole?
    bool used = false;
    for (const Block &a : blocks)
      for (const Block &b : blocks)
        if (multipole_allowed(a.l, b.l, L))
          used = true;
    if (!used)
      continue;

    Eigen::VectorXd jl(ns);
    for (size_t k = 0; k < ns; ++k) {
      gsl_sf_result res;
      int status = gsl_sf_bessel_jl_e(
          L, q_abs * rs(static_cast<Eigen::Index>(k)), &res);
      if (status == GSL_EUNDRFLW)
        res.val = 0.0;
      else if (status != GSL_SUCCESS)
        throw SolverError(std::string("spherical Bessel evaluation failed: ") +
                          gsl_strerror(status));
      jl(static_cast<Eigen::Index>(k)) = res.val;
    }
    // j_L(-x) = (-1)^L j_L(x): a reversed impulse flips odd multipoles.
    if (impulse_au < 0.0 && L % 2 == 1)
      jl = -jl;

    Eigen::MatrixXd scaled =
        Us.array().colwise() * (ws.array() * jl.array());
    Eigen::MatrixXd RL = scaled.transpose() * Us;

    for (const Block &a : blocks)
      for (const Block &b : blocks) {
        if (!multipole_allowed(a.l, b.l, L))
          continue;
        double coef =
            (2.0 * L + 1.0) * angular_coupling(a.l, b.l, L, m);
        if (coef == 0.0)
          continue;
        auto src = RL.block(static_cast<Eigen::Index>(a.start),
                            static_cast<Eigen::Index>(b.start),
                            static_cast<Eigen::Index>(a.len),
                            static_cast<Eigen::Index>(b.len));
        // (-i)^L cycles through +1, -i, -1, +i.
        switch (L % 4) {
        case 0:
          Kre.block(static_cast<Eigen::Index>(a.start),
                    static_cast<Eigen::Index>(b.start),
                    static_cast<Eigen::Index>(a.len),
                    static_cast<Eigen::Index>(b.len)) += coef * src;
          break;
        case 1:
          Kim.block(static_cast<Eigen::Index>(a.start),
                    static_cast<Eigen::Index>(b.start),
                    static_cast<Eigen::Index>(a.len),
                    static_cast<Eigen::Index>(b.len)) -= coef * src;
          break;
        case 2:
          Kre.block(static_cast<Eigen::Index>(a.start),
                    static_cast<Eigen::Index>(b.start),
                    static_cast<Eigen::Index>(a.len),
                    static_cast<Eigen::Index>(b.len)) -= coef * src;
          break;
        default:
          Kim.block(static_cast<Eigen::Index>(a.start),
                    static_cast<Eigen::Index>(b.start),
                    static_cast<Eigen::Index>(a.len),
                    static_cast<Eigen::Index>(b.len)) += coef * src;
          break;
        }
      }
  }

  Eigen::MatrixXcd K(nst, nst);
  K.real() = Kre;
  K.imag() = Kim;
  return KickOperator(set.states(), std::move(K), impulse_au, l_max_sum);
}

void KickOperator::save(const std::string &path) const {
  std::ofstream out(path);
  if (!out)
    throw ConfigError("cannot write kick operator file: " + path);
  char buf[80];
  out << "# kick operator\n";
  out << "# version: " << kVersion << "\n";
  std::snprintf(buf, sizeof(buf), "%.17g", impulse_au_);
  out << "# impulse_au: " << buf << "\n";
  out << "# l_max_sum: " << l_max_sum_ << "\n";
  out << "# states: " << states_.size() << "\n";
  out << "# state: n l m energy_au\n";
  for (const auto &st : states_) {
    std::snprintf(buf, sizeof(buf), "%.17g", st.energy_au);
    out << st.n << " " << st.l << " " << st.m << " " << buf << "\n";
  }
  out << "# entries: row-major re im\n";
  for (Eigen::Index i = 0; i < K_.rows(); ++i)
    for (Eigen::Index j = 0; j < K_.cols(); ++j) {
      char line[96];
      std::snprintf(line, sizeof(line), "%.17g %.17g\n", K_(i, j).real(),
                    K_(i, j).imag());
      out << line;
    }
  if (!out)
    throw ConfigError("write failed for kick operator file: " + path);
}

KickOperator KickOperator::load(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot open kick operator file: " + path);
  double impulse = 0.0;
  int l_max_sum = -1;
  long nstates = -1;
  std::vector<BasisState> states;
  std::string line;
  // Header block: comments carrying the metadata, then state lines.
  while (std::getline(in, line)) {
    if (line.empty())
      continue;
    if (line[0] == '#') {
      std::istringstream ss(line.substr(1));
      std::string key;
      ss >> key;
      if (key == "impulse_au:")
        ss >> impulse;
      else if (key == "l_max_sum:")
        ss >> l_max_sum;
      else if (key == "states:")
        ss >> nstates;
      else if (key == "entries:")
        break;
      continue;
    }
    std::istringstream ss(line);
    BasisState st;
    if (!(ss >> st.n >> st.l >> st.m >> st.energy_au))
      throw ConfigError("malformed state line in kick operator file: " + line);
    // Recover the quantum defect from the stored energy so labels and
    // effective quantum numbers survive a round trip.
    st.defect = st.n - std::sqrt(-0.5 / st.energy_au);
    states.push_back(st);
  }
  if (nstates < 0 || l_max_sum < 0)
    throw ConfigError("kick operator file missing header metadata: " + path);
  if (static_cast<long>(states.size()) != nstates)
    throw ConfigError("kick operator file state count mismatch: header says " +
                      std::to_string(nstates) + ", found " +
                      std::to_string(states.size()));
  const Eigen::Index n = static_cast<Eigen::Index>(states.size());
  Eigen::MatrixXcd K(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      double re, im;
      if (!(in >> re >> im))
        throw ConfigError("kick operator file truncated at entry (" +
                          std::to_string(i) + "," + std::to_string(j) + ")");
      K(i, j) = std::complex<double>(re, im);
    }
  return KickOperator(std::move(states), std::move(K), impulse, l_max_sum);
}

} // namespace rydkick
