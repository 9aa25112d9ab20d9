#pragma once

// Shared numerical tolerances. Code and tests read from this table so a
// threshold is never stated in two places.
namespace lqu_lab::tol {

// Hermiticity: max |M_ij - conj(M_ji)| <= kHermitian * (1 + max|M_ij|).
inline constexpr double kHermitian = 1e-12;

// Eigen reconstruction and unitarity of the eigenvector matrix.
inline constexpr double kReconstruction = 1e-10;

// Eigenvalues in [-kPsdClamp, 0) are rounded to zero by PSD operations;
// anything below -kPsdClamp is rejected.
inline constexpr double kPsdClamp = 1e-10;

// Square root check: |R*R - M|_max.
inline constexpr double kSqrtResidual = 1e-9;

// Density matrices: trace one to this tolerance.
inline constexpr double kTrace = 1e-10;

// X-state parameter invariants (normalization and block determinants).
inline constexpr double kXState = 1e-12;

// W matrix: symmetry, discarded imaginary parts, eigenvalue range slack.
inline constexpr double kWMatrix = 1e-10;

// Unit direction vectors.
inline constexpr double kUnitNorm = 1e-12;

// Closed-form LQU: denominators below this trigger the numeric fallback.
inline constexpr double kDegenerateDenominator = 1e-14;

// |lambda1 - lambda3| below this flags a crossover in diagnostics.
inline constexpr double kCrossoverFlag = 1e-12;

// Kraus closure condition.
inline constexpr double kKrausClosure = 1e-12;

// Bisection width for crossover temperatures.
inline constexpr double kCrossoverBisection = 1e-6;

// Small-argument switch for sinh(x)/x in the thermal state.
inline constexpr double kSeriesSwitch = 1e-8;

// Lowest temperature accepted at API boundaries.
inline constexpr double kMinTemperature = 1e-4;

}  // namespace lqu_lab::tol
