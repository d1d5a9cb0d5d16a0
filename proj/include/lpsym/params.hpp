#pragma once

#include <cmath>
#include <string>

#include "lpsym/error.hpp"

namespace lpsym {

/// Number of coordinates of the random vectors; always at least two.
class Dimension {
 public:
  explicit Dimension(int d) : d_(d) {
    if (d < 2) {
      throw ParameterError("dimension must be >= 2, got " + std::to_string(d));
    }
  }
  int value() const noexcept { return d_; }
  friend bool operator==(Dimension, Dimension) = default;

 private:
  int d_;
};

/// The norm exponent p >= 1 together with theta = 1/p.
class PowerParam {
 public:
  explicit PowerParam(double p) : p_(p), theta_(1.0 / p) {
    if (!std::isfinite(p) || !(p >= 1.0)) {
      throw ParameterError("power p must be a finite real >= 1, got " + std::to_string(p));
    }
  }
  double p() const noexcept { return p_; }
  double theta() const noexcept { return theta_; }

 private:
  double p_;
  double theta_;
};

}  // namespace lpsym
