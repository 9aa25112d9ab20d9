#pragma once

// Deterministic pseudo-random inputs for property checks. The generator and
// the double conversion are fully specified here, so sequences are identical
// across platforms and standard libraries.

#include <cstdint>

#include "lqu_lab/linalg.hpp"
#include "lqu_lab/lqu.hpp"
#include "lqu_lab/model.hpp"

namespace lqu_lab {

// SplitMix64.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();
  // Uniform in [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Standard normal via Box-Muller.
  double normal();

 private:
  std::uint64_t state_;
};

// Hermitian with entries bounded by `scale`.
ComplexMatrix random_hermitian(Rng& rng, std::size_t dim, double scale = 1.0);
// A^dagger A / Tr(A^dagger A) with Gaussian A.
ComplexMatrix random_density_matrix(Rng& rng);
// Haar-distributed 2x2 unitary.
ComplexMatrix random_unitary2(Rng& rng);
Vec3 random_unit_vector(Rng& rng);
// Valid X state with moderately mixed blocks.
XStateParams random_xstate(Rng& rng);

}  // namespace lqu_lab
