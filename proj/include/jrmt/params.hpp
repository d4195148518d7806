#pragma once

#include <cmath>

#include "jrmt/error.hpp"

namespace jrmt {

/// Jacobi unitary ensemble of size n with weight (1-x)^a (1+x)^b on [-1, 1].
struct EnsembleParams {
  int n = 1;
  double a = 0.0;
  double b = 0.0;

  double alpha() const { return a / n; }
  double beta() const { return b / n; }

  void validate() const {
    if (n < 1) throw ParameterError("EnsembleParams: need n >= 1");
    if (!(a >= 0.0) || !(b >= 0.0) || !std::isfinite(a) || !std::isfinite(b))
      throw ParameterError("EnsembleParams: need finite a, b >= 0");
  }
};

}  // namespace jrmt
