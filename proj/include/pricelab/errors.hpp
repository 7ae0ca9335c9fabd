#pragma once

#include <stdexcept>
#include <string>

namespace pricelab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A market with no traders on the side an operation needs.
class DegenerateMarketError : public Error {
 public:
  using Error::Error;
};

/// Invalid distribution parameters, session settings, or scenario values.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Continuous clearing could not bracket a sign change of G - alpha*F.
class NoCrossingError : public Error {
 public:
  NoCrossingError(const std::string& what, double lo, double hi)
      : Error(what), lo_(lo), hi_(hi) {}
  double bracket_lo() const { return lo_; }
  double bracket_hi() const { return hi_; }

 private:
  double lo_;
  double hi_;
};

class DerivativeUndefinedError : public Error {
 public:
  using Error::Error;
};

/// Input matrix or vector fails structural checks (shape, sign).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// The input matrix is not productive, so no positive price system exists.
class NoEquilibriumError : public Error {
 public:
  using Error::Error;
};

class ConditioningError : public Error {
 public:
  using Error::Error;
};

/// A session log does not belong to the market it is checked against.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace pricelab
