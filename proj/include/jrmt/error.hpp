#pragma once

#include <stdexcept>
#include <string>

namespace jrmt {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid dimensions, ranks, or parameters.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of a function (e.g. |x| >= 1 for the kernel).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Input fails a structural check (non-Hermitian, non-orthonormal columns).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Parameters valid but outside the regime a formula covers.
class RegimeError : public Error {
 public:
  using Error::Error;
};

/// Matrix that must be invertible is (numerically) singular.
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// Non-finite intermediate values or a failed root search.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Result violates a property that must hold (e.g. a gap probability < 0).
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw ParameterError(what);
}

}  // namespace detail
}  // namespace jrmt
