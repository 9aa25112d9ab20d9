#pragma once

// Two capacitively coupled charge qubits: Hamiltonians and thermal states.
//
// Units are dimensionless with k_B = 1, so beta = 1 / T. The computational
// basis ordering is |00>, |01>, |10>, |11> with qubit A the left tensor factor.

#include <optional>

#include "lqu_lab/linalg.hpp"

namespace lqu_lab {

struct HamiltonianParams {
  double ej1 = 0.0;  // Josephson energy, qubit A
  double ej2 = 0.0;  // Josephson energy, qubit B
  double em = 0.0;   // mutual coupling energy
};

// Strictly positive temperature, T >= 1e-4.
class Temperature {
 public:
  explicit Temperature(double t);
  double value() const { return t_; }
  double beta() const { return 1.0 / t_; }

 private:
  double t_;
};

// X-form two-qubit state
//
//   | a+  0  0  c  |
//   | 0   b  d  0  |
//   | 0   d  b  0  |
//   | c   0  0  a- |
struct XStateParams {
  real aPlus = 0.25;
  real aMinus = 0.25;
  real b = 0.25;
  real c = 0.0;
  real d = 0.0;

  // Block determinants a+ a- - c^2 and b^2 - d^2 when they are known to
  // better relative accuracy than the entries give by cancellation. Thermal
  // states and the channel maps fill them in; they never change to_matrix().
  std::optional<real> outerDet;
  std::optional<real> innerDet;

  real outer_det() const;
  real inner_det() const;

  ComplexMatrix to_matrix() const;

  // Throws InvalidXState naming the violated invariant.
  void validate() const;
  bool is_valid() const noexcept;
};

// Reads the X entries back from a 4x4 matrix. The (1,1) and (2,2) entries are
// averaged into b; nothing else is checked.
XStateParams xstate_from_matrix(const ComplexMatrix& rho);

// -1/2 [E_j1 sx(x)I + E_j2 I(x)sx - 2 E_m sz(x)sz]
ComplexMatrix build_hamiltonian_tqs(const HamiltonianParams& p);

// Hadamard-rotated form for E_j1 = E_j2 = E_j: diag(-E_j, 0, 0, E_j) with E_m
// on the anti-diagonal. Throws UnequalJosephsonEnergies otherwise.
ComplexMatrix build_hamiltonian_x(const HamiltonianParams& p);

// exp(-h/T) / Tr exp(-h/T), evaluated after shifting h by its smallest
// eigenvalue.
ComplexMatrix gibbs_state_numeric(const ComplexMatrix& h, Temperature t);

// Closed-form Gibbs state of build_hamiltonian_x(ej, ej, em), rescaled by
// exp(-alpha/T) so no hyperbolic function is ever evaluated at a large
// argument.
XStateParams thermal_xstate(double ej, double em, Temperature t);

}  // namespace lqu_lab
