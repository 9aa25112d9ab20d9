#include "lqu_lab/lqu.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "lqu_lab/errors.hpp"
#include "lqu_lab/tolerances.hpp"

namespace lqu_lab {

namespace {

const std::array<ComplexMatrix, 3>& local_paulis() {
  static const std::array<ComplexMatrix, 3> ops = {
      kron(pauli::x(), pauli::identity()),
      kron(pauli::y(), pauli::identity()),
      kron(pauli::z(), pauli::identity()),
  };
  return ops;
}

// -1/2 Tr{[S, K x I]^2} for a precomputed S = sqrt(rho).
double skew_from_sqrt(const ComplexMatrix& s, const Vec3& n) {
  const auto& ops = local_paulis();
  ComplexMatrix k = n[0] * ops[0] + n[1] * ops[1] + n[2] * ops[2];
  const ComplexMatrix c = commutator(s, k);
  cplx tr = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) tr += c(i, j) * c(j, i);
  return -0.5 * tr.real();
}

Vec3 normalized(const Vec3& v) {
  const double len = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  return {v[0] / len, v[1] / len, v[2] / len};
}

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

// Deterministic unit vector orthogonal to n.
Vec3 tangent(const Vec3& n) {
  std::size_t axis = 0;
  for (std::size_t i = 1; i < 3; ++i)
    if (std::abs(n[i]) < std::abs(n[axis])) axis = i;
  Vec3 e{0.0, 0.0, 0.0};
  e[axis] = 1.0;
  const double dot = n[axis];
  return normalized({e[0] - dot * n[0], e[1] - dot * n[1], e[2] - dot * n[2]});
}

Vec3 along(const Vec3& n, const Vec3& dir, double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return normalized({c * n[0] + s * dir[0], c * n[1] + s * dir[1], c * n[2] + s * dir[2]});
}

struct LineMin {
  double theta;
  double value;
};

template <class F>
LineMin golden_section(F&& f, double lo, double hi, double width) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  while (hi - lo > width) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    }
  }
  return f1 <= f2 ? LineMin{x1, f1} : LineMin{x2, f2};
}

ClosedFormDiagnostics numeric_diagnostics(const XStateParams& x) {
  const ComplexMatrix rho = x.to_matrix();
  const WMatrix w = w_matrix(rho);
  ClosedFormDiagnostics out;
  out.lambda1 = std::max(w[0][0], w[1][1]);
  out.lambda2 = std::min(w[0][0], w[1][1]);
  out.lambda3 = w[2][2];
  out.lqu = lqu_numeric(rho);
  out.fallback = true;
  return out;
}

}  // namespace

double WMatrix::quadratic_form(const Vec3& n) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) acc += n[i] * entries[i][j] * n[j];
  return acc;
}

std::array<double, 3> WMatrix::eigenvalues() const {
  ComplexMatrix m(3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m(i, j) = entries[i][j];
  const EigenDecomposition e = eig_hermitian(m);
  return {static_cast<double>(e.eigenvalues[0]), static_cast<double>(e.eigenvalues[1]),
          static_cast<double>(e.eigenvalues[2])};
}

void validate_density_matrix(const ComplexMatrix& rho) {
  if (rho.dim() != 4) {
    throw NotADensityMatrix("density matrix check failed: expected 4x4, got " +
                            std::to_string(rho.dim()) + "x" + std::to_string(rho.dim()));
  }
  if (!rho.is_hermitian(tol::kHermitian)) {
    throw NotADensityMatrix("density matrix check failed: not Hermitian");
  }
  const cplx tr = rho.trace();
  if (std::abs(tr - real(1)) > tol::kTrace) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "density matrix check failed: trace " << tr.real() << " != 1";
    throw NotADensityMatrix(msg.str());
  }
  const EigenDecomposition e = eig_hermitian(rho);
  if (e.eigenvalues.front() < -tol::kPsdClamp) {
    std::ostringstream msg;
    msg << "density matrix check failed: negative eigenvalue " << e.eigenvalues.front();
    throw NotADensityMatrix(msg.str());
  }
}

WMatrix w_matrix(const ComplexMatrix& rho) {
  validate_density_matrix(rho);
  const ComplexMatrix s = mat_sqrt_psd(rho);
  const auto& ops = local_paulis();
  std::array<ComplexMatrix, 3> m = {s * ops[0], s * ops[1], s * ops[2]};

  WMatrix w;
  std::array<std::array<cplx, 3>, 3> raw{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) raw[i][j] = (m[i] * m[j]).trace();

  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      if (std::abs(raw[i][j].imag()) > tol::kWMatrix) {
        throw InternalError("w_matrix: trace has imaginary part " +
                            std::to_string(raw[i][j].imag()));
      }
      if (std::abs(raw[i][j].real() - raw[j][i].real()) > tol::kWMatrix) {
        throw InternalError("w_matrix: result is not symmetric");
      }
      w.entries[i][j] = 0.5 * (raw[i][j].real() + raw[j][i].real());
    }
  }
  return w;
}

double skew_information(const ComplexMatrix& rho, const Vec3& n) {
  const double norm = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
  if (!(std::abs(norm - 1.0) <= tol::kUnitNorm)) {
    throw NonUnitDirection("skew_information: |n| = " + std::to_string(norm) + ", expected 1");
  }
  validate_density_matrix(rho);
  return skew_from_sqrt(mat_sqrt_psd(rho), n);
}

double lqu_numeric(const ComplexMatrix& rho) {
  const double top = w_matrix(rho).eigenvalues()[2];
  return std::clamp(1.0 - top, 0.0, 1.0);
}

Vec3 fibonacci_direction(int index, int count) {
  const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
  const double z = 1.0 - 2.0 * (index + 0.5) / count;
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  const double phi = golden_angle * index;
  return {r * std::cos(phi), r * std::sin(phi), z};
}

double lqu_bruteforce(const ComplexMatrix& rho, int resolution) {
  if (resolution < 64) {
    throw std::invalid_argument("lqu_bruteforce: resolution must be >= 64");
  }
  validate_density_matrix(rho);
  const ComplexMatrix s = mat_sqrt_psd(rho);

  Vec3 best = fibonacci_direction(0, resolution);
  double best_value = skew_from_sqrt(s, best);
  for (int i = 1; i < resolution; ++i) {
    const Vec3 n = fibonacci_direction(i, resolution);
    const double v = skew_from_sqrt(s, n);
    if (v < best_value) {
      best_value = v;
      best = n;
    }
  }

  // Polish: alternate golden-section searches along two orthogonal great
  // circles through the current point.
  const double patch = 2.0 * std::sqrt(4.0 * std::numbers::pi / resolution);
  constexpr double kAngleWidth = 1e-10;
  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    const double start = best_value;
    for (int k = 0; k < 2; ++k) {
      const Vec3 base = best;
      const Vec3 t = tangent(base);
      const Vec3 dir = k == 0 ? t : cross(base, t);
      auto f = [&](double theta) { return skew_from_sqrt(s, along(base, dir, theta)); };
      const LineMin m = golden_section(f, -patch, patch, kAngleWidth);
      if (m.value < best_value) {
        best_value = m.value;
        best = along(base, dir, m.theta);
      }
    }
    if (start - best_value < 1e-16) break;
  }
  return std::clamp(best_value, 0.0, 1.0);
}

namespace detail {

ClosedFormDiagnostics closed_form(const XStateParams& x, double cross_sign) {
  x.validate();
  ClosedFormDiagnostics out;

  const real abs_c = std::abs(x.c);
  const real abs_d = std::abs(x.d);
  const real sum = x.aPlus + x.aMinus;
  const real root = std::hypot(x.aPlus - x.aMinus, 2 * abs_c);
  // The small eigenvalue of each block is det / large one, which avoids the
  // cancellation in sum - root and b - |d|.
  const real g1 = (sum + root) / 2;
  const real g2 = g1 > 0 ? std::max(real(0), x.outer_det()) / g1 : real(0);
  const real g3 = x.b + abs_d;
  const real g4 = g3 > 0 ? std::max(real(0), x.inner_det()) / g3 : real(0);
  out.gamma1 = static_cast<double>(g1);
  out.gamma2 = static_cast<double>(g2);
  out.gamma3 = static_cast<double>(g3);
  out.gamma4 = static_cast<double>(g4);

  const real p = std::sqrt(g1) + std::sqrt(g2);
  const real q = std::sqrt(g3) + std::sqrt(g4);
  const real pq = p * q;
  if (pq < tol::kDegenerateDenominator) {
    ClosedFormDiagnostics fb = numeric_diagnostics(x);
    fb.gamma1 = out.gamma1;
    fb.gamma2 = out.gamma2;
    fb.gamma3 = out.gamma3;
    fb.gamma4 = out.gamma4;
    fb.crossover = std::abs(fb.lambda1 - fb.lambda3) <= tol::kCrossoverFlag;
    return fb;
  }

  const real cross_term = 4 * abs_c * abs_d / pq;
  const real l1 = pq + cross_sign * cross_term;
  const real l2 = pq - cross_term;
  const real diff = x.aMinus - x.aPlus;
  const real l3 = (p * p + q * q + (diff * diff - 4 * abs_c * abs_c) / (p * p) -
                   4 * abs_d * abs_d / (q * q)) /
                  2;
  out.lambda1 = static_cast<double>(l1);
  out.lambda2 = static_cast<double>(l2);
  out.lambda3 = static_cast<double>(l3);
  out.lqu = static_cast<double>(std::clamp(1 - std::max(l1, l3), real(0), real(1)));
  out.crossover = std::abs(out.lambda1 - out.lambda3) <= tol::kCrossoverFlag;
  return out;
}

}  // namespace detail

ClosedFormDiagnostics lqu_closed_xstate(const XStateParams& x) {
  return detail::closed_form(x, +1.0);
}

std::optional<double> crossover_temperature(double ej, double em, double t_lo, double t_hi) {
  const Temperature lo_t(t_lo);
  const Temperature hi_t(t_hi);
  if (!(lo_t.value() < hi_t.value())) {
    throw std::invalid_argument("crossover_temperature: need t_lo < t_hi");
  }
  auto gap = [&](double t) {
    const ClosedFormDiagnostics d = lqu_closed_xstate(thermal_xstate(ej, em, Temperature(t)));
    return d.lambda1 - d.lambda3;
  };

  // Geometric scan brackets the first sign change, bisection refines it.
  constexpr int kScan = 2048;
  const double ratio = std::log(t_hi / t_lo);
  double prev_t = t_lo;
  double prev_g = gap(prev_t);
  if (prev_g == 0.0) return prev_t;
  for (int i = 1; i <= kScan; ++i) {
    const double t = i == kScan ? t_hi : t_lo * std::exp(ratio * i / kScan);
    const double g = gap(t);
    if (g == 0.0) return t;
    if ((g < 0.0) != (prev_g < 0.0)) {
      double a = prev_t, b = t;
      double ga = prev_g;
      while (b - a > tol::kCrossoverBisection) {
        const double mid = 0.5 * (a + b);
        const double gm = gap(mid);
        if (gm == 0.0) return mid;
        if ((gm < 0.0) == (ga < 0.0)) {
          a = mid;
          ga = gm;
        } else {
          b = mid;
        }
      }
      return 0.5 * (a + b);
    }
    prev_t = t;
    prev_g = g;
  }
  return std::nullopt;
}

}  // namespace lqu_lab
