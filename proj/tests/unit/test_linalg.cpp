#include <cmath>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "lqu_lab/errors.hpp"
#include "lqu_lab/linalg.hpp"
#include "lqu_lab/model.hpp"
#include "lqu_lab/sampling.hpp"

using namespace lqu_lab;
using testing::diff;

TEST_CASE("matrix construction and basic algebra") {
  const ComplexMatrix m{{1.0, cplx(2.0, 1.0)}, {cplx(2.0, -1.0), -3.0}};
  CHECK(m.dim() == 2);
  CHECK(m.is_hermitian(1e-15));
  CHECK(m.trace() == cplx(-2.0));
  CHECK(m.adjoint() == m);
  CHECK(ComplexMatrix::identity(3) * ComplexMatrix::identity(3) == ComplexMatrix::identity(3));
  CHECK(diff(m - m, ComplexMatrix::zero(2)) == 0.0);

  CHECK_THROWS_AS(ComplexMatrix(1), std::invalid_argument);
  CHECK_THROWS_AS(ComplexMatrix(5), std::invalid_argument);
  CHECK_THROWS_AS((ComplexMatrix{{1.0, 2.0}, {3.0}}), std::invalid_argument);
  CHECK_THROWS(kron(ComplexMatrix::identity(2), ComplexMatrix::identity(3)));
}

TEST_CASE("pauli algebra") {
  const cplx i(0, 1);
  CHECK(diff(commutator(pauli::x(), pauli::y()), 2.0L * i * pauli::z()) == 0.0);
  CHECK(diff(pauli::x() * pauli::x(), pauli::identity()) == 0.0);
  CHECK(diff(pauli::hadamard() * pauli::hadamard(), pauli::identity()) < 1e-18);
  CHECK(diff(pauli::hadamard() * pauli::z() * pauli::hadamard(), pauli::x()) < 1e-18);

  const ComplexMatrix zz = kron(pauli::z(), pauli::z());
  CHECK(zz == ComplexMatrix::diagonal({1, -1, -1, 1}));
}

TEST_CASE("eig_hermitian on known spectra") {
  SUBCASE("diagonal input keeps its eigenvectors") {
    const EigenDecomposition e = eig_hermitian(ComplexMatrix::diagonal({3, -1, 2}));
    CHECK(e.eigenvalues == std::vector<real>{-1, 2, 3});
    CHECK(std::abs(e.eigenvectors(1, 0)) == 1.0L);
  }
  SUBCASE("sigma_y") {
    const EigenDecomposition e = eig_hermitian(pauli::y());
    CHECK(e.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(e.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("X-form Hamiltonian at ej = em = 1") {
    // Outer block eigenvalues are +-sqrt(ej^2 + em^2), inner block +-em.
    const EigenDecomposition e = eig_hermitian(build_hamiltonian_x({1, 1, 1}));
    const double r2 = std::sqrt(2.0);
    CHECK(static_cast<double>(e.eigenvalues[0]) == doctest::Approx(-r2).epsilon(1e-15));
    CHECK(static_cast<double>(e.eigenvalues[1]) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(static_cast<double>(e.eigenvalues[2]) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(static_cast<double>(e.eigenvalues[3]) == doctest::Approx(r2).epsilon(1e-15));
  }
  SUBCASE("exactly degenerate spectrum") {
    const EigenDecomposition e = eig_hermitian(ComplexMatrix::identity(4) * cplx(0.25));
    for (real v : e.eigenvalues) CHECK(v == 0.25L);
  }
}

TEST_CASE("eig_hermitian reconstructs random Hermitian matrices") {
  Rng rng(7);
  for (std::size_t dim : {2u, 3u, 4u}) {
    for (int k = 0; k < 20; ++k) {
      const ComplexMatrix m = random_hermitian(rng, dim, 3.0);
      const EigenDecomposition e = eig_hermitian(m);
      CHECK(diff(spectral_apply(e, e.eigenvalues), m) < 1e-15);
      CHECK(diff(e.eigenvectors.adjoint() * e.eigenvectors, ComplexMatrix::identity(dim)) < 1e-15);
      // Trace is the eigenvalue sum.
      real sum = 0;
      for (real v : e.eigenvalues) sum += v;
      CHECK(std::abs(static_cast<double>(sum - m.trace().real())) < 1e-15);
    }
  }
}

TEST_CASE("eig_hermitian rejects non-Hermitian input") {
  const ComplexMatrix m{{1.0, 2.0}, {0.0, 1.0}};
  CHECK_THROWS_AS(eig_hermitian(m), NonHermitianInput);
  CHECK_THROWS_AS(eig_hermitian(m), DomainError);
}

TEST_CASE("mat_sqrt_psd") {
  SUBCASE("closed form for [[2, 1], [1, 2]]") {
    const ComplexMatrix m{{2.0, 1.0}, {1.0, 2.0}};
    const real a = (std::sqrt(real(3)) + 1) / 2, b = (std::sqrt(real(3)) - 1) / 2;
    CHECK(diff(mat_sqrt_psd(m), ComplexMatrix{{a, b}, {b, a}}) < 1e-18);
  }
  SUBCASE("rank-deficient projector is its own root") {
    const ComplexMatrix proj{{0.5, 0.5}, {0.5, 0.5}};
    CHECK(diff(mat_sqrt_psd(proj), proj) < 1e-18);
  }
  SUBCASE("squares back for random states") {
    Rng rng(8);
    for (int k = 0; k < 20; ++k) {
      const ComplexMatrix rho = random_density_matrix(rng);
      const ComplexMatrix s = mat_sqrt_psd(rho);
      CHECK(s.is_hermitian(1e-15));
      CHECK(diff(s * s, rho) < 1e-15);
    }
  }
  SUBCASE("tiny negative roundoff is clamped, real negativity is not") {
    CHECK(diff(mat_sqrt_psd(ComplexMatrix::diagonal({1, -1e-12})), ComplexMatrix::diagonal({1, 0})) ==
          0.0);
    CHECK_THROWS_AS(mat_sqrt_psd(ComplexMatrix::diagonal({1, -1e-6})), NotPSD);
  }
}

TEST_CASE("mat_exp_hermitian agrees with a Taylor series") {
  CHECK(diff(mat_exp_hermitian(ComplexMatrix::zero(4)), ComplexMatrix::identity(4)) <= 1e-14);
  Rng rng(9);
  for (int k = 0; k < 20; ++k) {
    const ComplexMatrix h = random_hermitian(rng, 4, 2.0);
    const ComplexMatrix e = mat_exp_hermitian(h);
    CHECK(diff(e, testing::taylor_exp(h)) < 1e-14 * (1 + static_cast<double>(e.max_abs())));
  }
}

TEST_CASE("kron follows the left-factor-major convention") {
  const ComplexMatrix a{{1.0, 2.0}, {3.0, 4.0}};
  const ComplexMatrix b{{0.0, 1.0}, {1.0, 0.0}};
  const ComplexMatrix k = kron(a, b);
  CHECK(k(0, 1) == cplx(1.0));
  CHECK(k(0, 3) == cplx(2.0));
  CHECK(k(3, 2) == cplx(4.0));
  CHECK(k(2, 1) == cplx(3.0));
  CHECK(k(0, 0) == cplx(0.0));
}
