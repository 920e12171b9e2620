#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace rydkick {

// Quantum defects per orbital angular momentum. Values for l beyond the
// stored table are taken as zero (high-l states are essentially hydrogenic).
class QuantumDefects {
public:
  QuantumDefects();                              // cesium defaults
  explicit QuantumDefects(std::vector<double> per_l);

  double at(int l) const;

private:
  std::vector<double> per_l_;
};

// Bound-state energy -1/(2 (n - delta_l)^2) in atomic units. Throws
// DomainError when the effective quantum number n - delta_l is not positive.
double rydberg_energy(int n, int l, const QuantumDefects &defects);

struct BasisState {
  int n = 0;
  int l = 0;
  int m = 0;
  double defect = 0.0;    // quantum defect used for this state
  double energy_au = 0.0; // bound energy in hartree

  double nu() const { return n - defect; } // effective quantum number

  // Spectroscopic label like "30p" (falls back to "30(l=12)" past 'o').
  std::string label() const;
};

// Ordered collection of basis states: ascending l, then ascending n, all
// sharing one azimuthal quantum number m. Provides index lookups used to
// address rows of radial/kick matrices.
class BasisSet {
public:
  BasisSet(int n_min, int n_max, int l_max, int m,
           const QuantumDefects &defects);

  size_t size() const { return states_.size(); }
  const BasisState &state(size_t i) const { return states_[i]; }
  const std::vector<BasisState> &states() const { return states_; }

  // Index of (n, l); throws BasisMismatchError when absent.
  size_t index(int n, int l) const;
  bool contains(int n, int l) const;

  int n_min() const { return n_min_; }
  int n_max() const { return n_max_; }
  int l_max() const { return l_max_; }
  int m() const { return m_; }
  const QuantumDefects &defects() const { return defects_; }

  // Largest effective quantum number in the set (controls grid extent).
  double nu_max() const;

private:
  int n_min_, n_max_, l_max_, m_;
  QuantumDefects defects_;
  std::vector<BasisState> states_;
};

} // namespace rydkick
