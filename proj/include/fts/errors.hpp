#pragma once

#include <stdexcept>
#include <string>

namespace fts {

/// Objects living on different grids, or arrays with incompatible shapes.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An argument outside the domain of an operation (bad lag, bad bandwidth, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The requested quantity has no closed form for this model.
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical precondition failed (non-Hermitian input, singular resolvent, ...).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed file, bad magic, truncated payload.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fts
