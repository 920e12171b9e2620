#pragma once

#include <stdexcept>
#include <string>

namespace rydkick {

// Base class for all toolkit errors. Subclasses map to CLI exit codes:
// ConfigError -> 2, everything else -> 3.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string &msg) : std::runtime_error(msg) {}
};

// Invalid or inconsistent configuration / scenario input.
class ConfigError : public Error {
public:
  using Error::Error;
};

// Arguments outside the physical domain (bad quantum numbers, n* <= 0, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

// Radial grid construction or compatibility problems.
class GridError : public Error {
public:
  using Error::Error;
};

// Numerov integration failed (divergent inner boundary, no node found, ...).
class SolverError : public Error {
public:
  using Error::Error;
};

// Operands built over different ordered bases.
class BasisMismatchError : public Error {
public:
  using Error::Error;
};

// Basis truncation inadequate (kick-operator column norms out of tolerance).
class TruncationError : public Error {
public:
  using Error::Error;
};

// Least-squares fit is ill-conditioned or otherwise unusable.
class FitError : public Error {
public:
  using Error::Error;
};

} // namespace rydkick
