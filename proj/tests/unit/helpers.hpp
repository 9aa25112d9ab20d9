#pragma once

// Test-side oracles, written independently of the library's spectral code.

#include <cmath>

#include "lqu_lab/linalg.hpp"

namespace testing {

using lqu_lab::ComplexMatrix;
using lqu_lab::cplx;
using lqu_lab::real;

// exp(m) by scaling and squaring of a truncated Taylor series.
inline ComplexMatrix taylor_exp(const ComplexMatrix& m) {
  int squarings = 0;
  real norm = m.max_abs() * static_cast<real>(m.dim());
  while (norm > 0.5L) {
    norm /= 2;
    ++squarings;
  }
  const ComplexMatrix a = m * cplx(std::ldexp(real(1), -squarings));
  ComplexMatrix term = ComplexMatrix::identity(m.dim());
  ComplexMatrix sum = term;
  for (int k = 1; k < 30; ++k) {
    term = term * a * cplx(real(1) / k);
    sum += term;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

inline double diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return static_cast<double>(lqu_lab::max_abs_diff(a, b));
}

}  // namespace testing
