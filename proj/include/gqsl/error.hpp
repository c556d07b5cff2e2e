#pragma once

#include <stdexcept>
#include <string>

namespace gqsl {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation (negative time,
/// out-of-range Bloch angle, x = y = 0 in the kernel, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Operand dimensions are incompatible.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Input fails a structural invariant (not Hermitian, not unit trace, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// The metric is infinite along the requested direction, e.g. a metric with
/// f(0) = 0 probed with coherences at a rank-deficient state.
class DivergentMetricError : public Error {
 public:
  using Error::Error;
};

/// A closed form hits one of its singular loci.
class SingularPointError : public Error {
 public:
  SingularPointError(const std::string& what, double where)
      : Error(what + " (at " + std::to_string(where) + ")"), where_(where) {}
  double where() const noexcept { return where_; }

 private:
  double where_;
};

/// Geodesic length requested for a metric without a known closed form.
class GeodesicUnknownError : public Error {
 public:
  using Error::Error;
};

/// Endpoints coincide while the path has nonzero length; tightness undefined.
class DegenerateEndpointError : public Error {
 public:
  using Error::Error;
};

/// Composite quadrature did not reach its relative target before the panel cap.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double previous, double last)
      : Error(what), previous_(previous), last_(last) {}
  double previous_estimate() const noexcept { return previous_; }
  double last_estimate() const noexcept { return last_; }

 private:
  double previous_;
  double last_;
};

}  // namespace gqsl
