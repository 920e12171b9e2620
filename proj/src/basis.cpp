#include "rydkick/basis.hpp"

#include <cmath>

#include "rydkick/constants.hpp"
#include "rydkick/errors.hpp"

namespace rydkick {

QuantumDefects::QuantumDefects()
    : per_l_(kCesiumDefects.begin(), kCesiumDefects.end()) {}

QuantumDefects::QuantumDefects(std::vector<double> per_l)
    : per_l_(std::move(per_l)) {}

double QuantumDefects::at(int l) const {
  if (l < 0)
    throw DomainError("orbital quantum number must be >= 0, got " +
                      std::to_string(l));
  if (static_cast<size_t>(l) >= per_l_.size())
    return 0.0;
  return per_l_[static_cast<size_t>(l)];
}

double rydberg_energy(int n, int l, const QuantumDefects &defects) {
  if (l < 0 || l >= n)
    throw DomainError("require 0 <= l < n, got n=" + std::to_string(n) +
                      " l=" + std::to_string(l));
  double nu = n - defects.at(l);
  if (nu <= 0.0)
    throw DomainError("effective quantum number not positive for n=" +
                      std::to_string(n) + " l=" + std::to_string(l));
  return -0.5 / (nu * nu);
}

std::string BasisState::label() const {
  static const char letters[] = "spdfghiklmno";
  if (l >= 0 && static_cast<size_t>(l) < sizeof(letters) - 1)
    return std::to_string(n) + letters[l];
  return std::to_string(n) + "(l=" + std::to_string(l) + ")";
}

BasisSet::BasisSet(int n_min, int n_max, int l_max, int m,
                   const QuantumDefects &defects)
    : n_min_(n_min), n_max_(n_max), l_max_(l_max), m_(m), defects_(defects) {
  if (n_min < 1 || n_max < n_min)
    throw DomainError("invalid principal quantum number range [" +
                      std::to_string(n_min) + ", " + std::to_string(n_max) +
                      "]");
  if (l_max < 0)
    throw DomainError("l_max must be >= 0");
  if (std::abs(m) > l_max)
    throw DomainError("|m| exceeds l_max");
  for (int l = 0; l <= l_max_; ++l) {
    if (l < std::abs(m_))
      continue;
    for (int n = std::max(n_min_, l + 1); n <= n_max_; ++n) {
      BasisState st;
      st.n = n;
      st.l = l;
      st.m = m_;
      st.defect = defects_.at(l);
      st.energy_au = rydberg_energy(n, l, defects_);
      states_.push_back(st);
    }
  }
  if (states_.empty())
    throw DomainError("basis window contains no states");
}

size_t BasisSet::index(int n, int l) const {
  // States are grouped by l; binary search is overkill for a few thousand
  // entries so walk the l block directly.
  for (size_t i = 0; i < states_.size(); ++i)
    if (states_[i].n == n && states_[i].l == l)
      return i;
  throw BasisMismatchError("state n=" + std::to_string(n) +
                           " l=" + std::to_string(l) + " not in basis");
}

bool BasisSet::contains(int n, int l) const {
  if (l < 0 || l > l_max_ || l < std::abs(m_))
    return false;
  return n >= std::max(n_min_, l + 1) && n <= n_max_;
}

double BasisSet::nu_max() const {
  double best = 0.0;
  for (const auto &st : states_)
    best = std::max(best, st.nu());
  return best;
}

} // namespace rydkick
