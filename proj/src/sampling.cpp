#include "lqu_lab/sampling.hpp"

#include <cmath>
#include <numbers>

namespace lqu_lab {

std::uint64_t Rng::next_u64() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double Rng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

ComplexMatrix random_hermitian(Rng& rng, std::size_t dim, double scale) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    m(i, i) = rng.uniform(-scale, scale);
    for (std::size_t j = i + 1; j < dim; ++j) {
      const double r = rng.uniform(0.0, scale);
      const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
      m(i, j) = std::polar(real(r), real(phi));
      m(j, i) = std::conj(m(i, j));
    }
  }
  return m;
}

ComplexMatrix random_density_matrix(Rng& rng) {
  ComplexMatrix a(4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) a(i, j) = cplx(rng.normal(), rng.normal());
  ComplexMatrix rho = a.adjoint() * a;
  rho *= 1 / rho.trace().real();
  // Exact Hermitian symmetry.
  for (std::size_t i = 0; i < 4; ++i) {
    rho(i, i) = rho(i, i).real();
    for (std::size_t j = i + 1; j < 4; ++j) rho(j, i) = std::conj(rho(i, j));
  }
  return rho;
}

ComplexMatrix random_unitary2(Rng& rng) {
  const cplx a(rng.normal(), rng.normal());
  const cplx b(rng.normal(), rng.normal());
  const real n = std::sqrt(std::norm(a) + std::norm(b));
  const cplx phase = std::polar(real(1), real(rng.uniform(0.0, 2.0 * std::numbers::pi)));
  const cplx an = a / n, bn = b / n;
  return {{phase * an, -phase * std::conj(bn)}, {phase * bn, phase * std::conj(an)}};
}

Vec3 random_unit_vector(Rng& rng) {
  const double x = rng.normal(), y = rng.normal(), z = rng.normal();
  const double n = std::sqrt(x * x + y * y + z * z);
  return {x / n, y / n, z / n};
}

XStateParams random_xstate(Rng& rng) {
  const double w1 = rng.uniform(0.05, 1.0);
  const double w2 = rng.uniform(0.05, 1.0);
  const double w3 = rng.uniform(0.05, 1.0);
  const double total = w1 + w2 + 2.0 * w3;
  XStateParams x;
  x.aPlus = w1 / total;
  x.aMinus = w2 / total;
  x.b = 0.5 * (1.0 - x.aPlus - x.aMinus);
  x.c = rng.uniform(-0.95, 0.95) * std::sqrt(x.aPlus * x.aMinus);
  x.d = rng.uniform(-0.95, 0.95) * x.b;
  return x;
}

}  // namespace lqu_lab
