#include <cmath>
#include <limits>

#include "doctest.h"
#include "helpers.hpp"
#include "lqu_lab/errors.hpp"
#include "lqu_lab/model.hpp"

using namespace lqu_lab;
using testing::diff;

namespace {

// Gibbs state through the Taylor-series exponential; fine while the
// spectrum spread over T stays moderate.
ComplexMatrix taylor_gibbs(const ComplexMatrix& h, double t) {
  ComplexMatrix e = testing::taylor_exp(h * cplx(-1 / real(t)));
  return e * cplx(1 / e.trace().real());
}

}  // namespace

TEST_CASE("Temperature enforces the floor") {
  CHECK(Temperature(1e-4).value() == 1e-4);
  CHECK(Temperature(2.0).beta() == 0.5);
  CHECK_THROWS_AS(Temperature(0.0), InvalidTemperature);
  CHECK_THROWS_AS(Temperature(9.9e-5), InvalidTemperature);
  CHECK_THROWS_AS(Temperature(-1.0), InvalidTemperature);
  CHECK_THROWS_AS(Temperature(std::numeric_limits<double>::quiet_NaN()), InvalidTemperature);
  CHECK_THROWS_AS(Temperature(std::numeric_limits<double>::infinity()), InvalidTemperature);
  try {
    Temperature(1e-5);
  } catch (const InvalidTemperature& e) {
    CHECK(std::string(e.what()).find("T >= 0.0001") != std::string::npos);
  }
}

TEST_CASE("Hamiltonians") {
  SUBCASE("Hadamard on both qubits maps the charge form to the X form") {
    const ComplexMatrix hh = kron(pauli::hadamard(), pauli::hadamard());
    for (double ej : {0.0, 0.7, 2.0})
      for (double em : {0.0, 1.3, -0.4}) {
        const ComplexMatrix rotated = hh * build_hamiltonian_tqs({ej, ej, em}) * hh;
        CHECK(diff(rotated, build_hamiltonian_x({ej, ej, em})) < 1e-15);
      }
  }
  SUBCASE("charge form entries") {
    const ComplexMatrix h = build_hamiltonian_tqs({1.0, 3.0, 2.0});
    // -1/2 (E_j1 sx x I + E_j2 I x sx - 2 E_m sz x sz)
    CHECK(h(0, 0) == cplx(2.0));
    CHECK(h(1, 1) == cplx(-2.0));
    CHECK(h(0, 2) == cplx(-0.5));
    CHECK(h(0, 1) == cplx(-1.5));
    CHECK(h.is_hermitian(0.0));
  }
  SUBCASE("the X form needs equal Josephson energies") {
    CHECK_THROWS_AS(build_hamiltonian_x({1.0, 1.5, 1.0}), UnequalJosephsonEnergies);
    CHECK_NOTHROW(build_hamiltonian_tqs({1.0, 1.5, 1.0}));
  }
}

TEST_CASE("thermal_xstate matches an independent Gibbs state") {
  for (double ej : {0.0, 0.5, 1.0, 2.0})
    for (double em : {0.0, 0.5, 1.0, -1.5})
      for (double t : {0.3, 1.0, 4.0}) {
        CAPTURE(ej);
        CAPTURE(em);
        CAPTURE(t);
        const ComplexMatrix oracle = taylor_gibbs(build_hamiltonian_x({ej, ej, em}), t);
        CHECK(diff(thermal_xstate(ej, em, Temperature(t)).to_matrix(), oracle) < 1e-15);
        CHECK(diff(gibbs_state_numeric(build_hamiltonian_x({ej, ej, em}), Temperature(t)), oracle) <
              1e-15);
      }
}

TEST_CASE("thermal_xstate hyperbolic entries at a moderate point") {
  const long double ej = 1.0L, em = 2.0L, t = 0.8L;
  const long double alpha = std::sqrt(ej * ej + em * em);
  const long double z = 2 * (std::cosh(alpha / t) + std::cosh(em / t));
  const XStateParams x = thermal_xstate(1.0, 2.0, Temperature(0.8));
  auto close = [](long double a, long double b) { return std::abs(a - b) < 1e-17L; };
  CHECK(close(x.aPlus, (std::cosh(alpha / t) + ej * std::sinh(alpha / t) / alpha) / z));
  CHECK(close(x.aMinus, (std::cosh(alpha / t) - ej * std::sinh(alpha / t) / alpha) / z));
  CHECK(close(x.b, std::cosh(em / t) / z));
  CHECK(close(x.c, -em * std::sinh(alpha / t) / (alpha * z)));
  CHECK(close(x.d, -std::sinh(em / t) / z));
  // Both block determinants are 1 / Z^2.
  REQUIRE(x.outerDet.has_value());
  REQUIRE(x.innerDet.has_value());
  CHECK(std::abs(*x.outerDet * z * z - 1) < 1e-15L);
  CHECK(std::abs(*x.innerDet * z * z - 1) < 1e-15L);
}

TEST_CASE("thermal_xstate approaches the ground state at the temperature floor") {
  // Ground state of the outer block [[-ej, em], [em, ej]] at energy -alpha.
  const double ej = 1.0, em = 1.0;
  const double alpha = std::sqrt(2.0);
  const double n2 = em * em + (alpha - ej) * (alpha - ej);
  const XStateParams x = thermal_xstate(ej, em, Temperature(1e-4));
  CHECK(x.is_valid());
  CHECK(static_cast<double>(x.aPlus) == doctest::Approx(em * em / n2).epsilon(1e-14));
  CHECK(static_cast<double>(x.aMinus) == doctest::Approx((alpha - ej) * (alpha - ej) / n2).epsilon(1e-14));
  CHECK(static_cast<double>(x.c) == doctest::Approx(-em * (alpha - ej) / n2).epsilon(1e-14));
  CHECK(x.b < 1e-1000L);  // exp(-(alpha - em) / 1e-4)
  CHECK(std::abs(static_cast<double>(x.aPlus + x.aMinus + 2 * x.b) - 1) < 1e-15);
}

TEST_CASE("thermal_xstate sign and symmetry structure") {
  const XStateParams pos = thermal_xstate(1.5, 0.7, Temperature(0.2));
  const XStateParams neg = thermal_xstate(-1.5, 0.7, Temperature(0.2));
  CHECK(pos.aPlus == neg.aMinus);
  CHECK(pos.aMinus == neg.aPlus);
  const XStateParams flip = thermal_xstate(1.5, -0.7, Temperature(0.2));
  CHECK(flip.c == -pos.c);
  CHECK(flip.d == -pos.d);
  // No coupling, no coherence.
  const XStateParams free = thermal_xstate(2.0, 0.0, Temperature(0.5));
  CHECK(free.c == 0.0L);
  CHECK(free.d == 0.0L);
  // Infinite-temperature limit.
  const XStateParams hot = thermal_xstate(1.0, 1.0, Temperature(1e8));
  CHECK(std::abs(static_cast<double>(hot.aPlus) - 0.25) < 1e-8);
  CHECK(std::abs(static_cast<double>(hot.c)) < 1e-8);
}

TEST_CASE("XStateParams validation") {
  XStateParams x;
  CHECK(x.is_valid());
  CHECK(x.to_matrix() == ComplexMatrix::identity(4) * cplx(0.25));
  CHECK(xstate_from_matrix(x.to_matrix()).b == x.b);

  XStateParams bad = x;
  bad.aPlus = 0.5;
  CHECK_THROWS_AS(bad.validate(), InvalidXState);  // trace 1.25

  bad = x;
  bad.c = 0.3;  // |c| > sqrt(a+ a-)
  CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains("outer block"), InvalidXState);

  bad = x;
  bad.d = -0.26;
  CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains("inner block"), InvalidXState);

  bad = x;
  bad.b = std::numeric_limits<real>::quiet_NaN();
  CHECK_FALSE(bad.is_valid());

  bad = x;
  bad.outerDet = 0.01L;  // true value 1/16
  CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains("determinant"), InvalidXState);
}

TEST_CASE("xstate_from_matrix reads the X entries") {
  const XStateParams x = thermal_xstate(0.8, 1.1, Temperature(0.4));
  const XStateParams y = xstate_from_matrix(x.to_matrix());
  CHECK(y.aPlus == x.aPlus);
  CHECK(y.aMinus == x.aMinus);
  CHECK(y.b == x.b);
  CHECK(y.c == x.c);
  CHECK(y.d == x.d);
  CHECK_FALSE(y.outerDet.has_value());
  CHECK(std::abs(y.outer_det() - *x.outerDet) < 1e-18L);
}
