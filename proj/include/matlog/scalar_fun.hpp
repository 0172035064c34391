#pragma once

#include <cmath>
#include <complex>

#include "matlog/types.hpp"

namespace matlog {

// e^z - 1 without cancellation near the zeros of e^z - 1.
inline Complex expm1c(Complex z) {
  double x = z.real(), y = z.imag();
  double em = std::expm1(x);
  double sy = std::sin(y);
  double sh = std::sin(0.5 * y);
  // e^z - 1 = expm1(x) cos y - 2 sin^2(y/2) + i e^x sin y
  return {em * std::cos(y) - 2.0 * sh * sh, (em + 1.0) * sy};
}

// phi(z) = (e^z - 1)/z with phi(0) = 1. Series below |z| = 1/2, direct
// cancellation-free quotient above.
inline Complex phi_scalar(Complex z) {
  if (std::abs(z) < 0.5) {
    Complex sum{1.0, 0.0};
    Complex term{1.0, 0.0};
    double factorial = 1.0;
    for (int k = 1; k <= 18; ++k) {
      term *= z;
      factorial *= static_cast<double>(k + 1);
      sum += term / factorial;
    }
    return sum;
  }
  return expm1c(z) / z;
}

}  // namespace matlog
