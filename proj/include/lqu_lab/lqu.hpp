#pragma once

// Local quantum uncertainty of two-qubit states, measured on qubit A.
//
// Three independent routes are provided:
//   * lqu_closed_xstate  - closed-form eigenvalues for X states,
//   * lqu_numeric        - 1 - largest eigenvalue of the 3x3 W matrix,
//   * lqu_bruteforce     - direct minimization of the skew information over
//                          local observables n.sigma on the Bloch sphere.
// The second and third serve as oracles for the first.

#include <array>
#include <optional>

#include "lqu_lab/linalg.hpp"
#include "lqu_lab/model.hpp"

namespace lqu_lab {

using Vec3 = std::array<double, 3>;

// Real symmetric 3x3 matrix W_ij = Tr{ sqrt(rho) (s_i x I) sqrt(rho) (s_j x I) },
// indices ordered (x, y, z). For unit n, n.W.n = 1 - I(rho, n.sigma x I).
struct WMatrix {
  std::array<std::array<double, 3>, 3> entries{};

  const std::array<double, 3>& operator[](std::size_t i) const { return entries[i]; }
  double quadratic_form(const Vec3& n) const;
  // Ascending eigenvalues.
  std::array<double, 3> eigenvalues() const;
};

struct ClosedFormDiagnostics {
  double lambda1 = 0.0;  // W_xx branch, carries +4|cd|
  double lambda2 = 0.0;  // W_yy branch, carries -4|cd|
  double lambda3 = 0.0;  // W_zz
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double gamma3 = 0.0;
  double gamma4 = 0.0;
  double lqu = 0.0;
  // The closed form was singular and the value came from lqu_numeric.
  bool fallback = false;
  // |lambda1 - lambda3| <= 1e-12.
  bool crossover = false;
};

// Throws NotADensityMatrix naming the failed check (dimension, Hermiticity,
// trace, positivity).
void validate_density_matrix(const ComplexMatrix& rho);

WMatrix w_matrix(const ComplexMatrix& rho);

// -1/2 Tr{[sqrt(rho), K x I]^2} with K = n.sigma and |n| = 1.
double skew_information(const ComplexMatrix& rho, const Vec3& n);

double lqu_numeric(const ComplexMatrix& rho);

// Minimum skew information over a Fibonacci sphere of `resolution`
// directions, polished by alternating golden-section searches along two
// great circles through the best grid point. resolution >= 64.
double lqu_bruteforce(const ComplexMatrix& rho, int resolution);

ClosedFormDiagnostics lqu_closed_xstate(const XStateParams& x);

// Smallest temperature in [t_lo, t_hi] where lambda1 - lambda3 of the thermal
// state changes sign, located to 1e-6 by bisection; nullopt if none.
std::optional<double> crossover_temperature(double ej, double em, double t_lo, double t_hi);

// Points of a Fibonacci sphere; deterministic.
Vec3 fibonacci_direction(int index, int count);

namespace detail {

// Closed form with the sign of the 4|cd| term in lambda1 exposed, so the
// self-test can check that a sign flip is caught by the oracle comparison.
// cross_sign = +1 is the correct formula.
ClosedFormDiagnostics closed_form(const XStateParams& x, double cross_sign);

}  // namespace detail

}  // namespace lqu_lab
