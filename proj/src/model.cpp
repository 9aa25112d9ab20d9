#include "lqu_lab/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "lqu_lab/errors.hpp"
#include "lqu_lab/tolerances.hpp"

namespace lqu_lab {

Temperature::Temperature(double t) : t_(t) {
  if (!std::isfinite(t) || !(t >= tol::kMinTemperature)) {
    std::ostringstream msg;
    msg << "temperature " << t << " is below the supported floor T >= " << tol::kMinTemperature;
    throw InvalidTemperature(msg.str());
  }
}

real XStateParams::outer_det() const {
  return outerDet ? *outerDet : std::fma(aPlus, aMinus, -c * c);
}

real XStateParams::inner_det() const { return innerDet ? *innerDet : std::fma(b, b, -d * d); }

ComplexMatrix XStateParams::to_matrix() const {
  ComplexMatrix m(4);
  m(0, 0) = aPlus;
  m(1, 1) = b;
  m(2, 2) = b;
  m(3, 3) = aMinus;
  m(0, 3) = m(3, 0) = c;
  m(1, 2) = m(2, 1) = d;
  return m;
}

void XStateParams::validate() const {
  auto fail = [this](const char* what) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "invalid X state (" << what << "): a+=" << aPlus << " a-=" << aMinus << " b=" << b
        << " c=" << c << " d=" << d;
    throw InvalidXState(msg.str());
  };
  for (real v : {aPlus, aMinus, b, c, d}) {
    if (!std::isfinite(v)) fail("non-finite entry");
  }
  if (std::abs(aPlus + aMinus + 2 * b - 1) > tol::kXState) fail("trace != 1");
  if (aPlus < -tol::kXState || aMinus < -tol::kXState || b < -tol::kXState) {
    fail("negative population");
  }
  if (aPlus * aMinus - c * c < -tol::kXState) fail("outer block not PSD");
  if (b * b - d * d < -tol::kXState) fail("inner block not PSD");
  // A carried determinant must describe these entries.
  if (outerDet && (!std::isfinite(*outerDet) || *outerDet < 0 ||
                   std::abs(*outerDet - (aPlus * aMinus - c * c)) > tol::kXState)) {
    fail("outer determinant inconsistent with entries");
  }
  if (innerDet && (!std::isfinite(*innerDet) || *innerDet < 0 ||
                   std::abs(*innerDet - (b * b - d * d)) > tol::kXState)) {
    fail("inner determinant inconsistent with entries");
  }
}

bool XStateParams::is_valid() const noexcept {
  try {
    validate();
    return true;
  } catch (const InvalidXState&) {
    return false;
  }
}

XStateParams xstate_from_matrix(const ComplexMatrix& rho) {
  if (rho.dim() != 4) throw std::invalid_argument("xstate_from_matrix: need a 4x4 matrix");
  XStateParams x;
  x.aPlus = rho(0, 0).real();
  x.aMinus = rho(3, 3).real();
  x.b = 0.5 * (rho(1, 1).real() + rho(2, 2).real());
  x.c = rho(0, 3).real();
  x.d = rho(1, 2).real();
  return x;
}

ComplexMatrix build_hamiltonian_tqs(const HamiltonianParams& p) {
  const ComplexMatrix id = pauli::identity();
  ComplexMatrix h = p.ej1 * kron(pauli::x(), id) + p.ej2 * kron(id, pauli::x()) -
                    2.0 * p.em * kron(pauli::z(), pauli::z());
  return -0.5 * h;
}

ComplexMatrix build_hamiltonian_x(const HamiltonianParams& p) {
  if (p.ej1 != p.ej2) {
    std::ostringstream msg;
    msg << "X-form Hamiltonian requires equal Josephson energies (got " << p.ej1 << " and "
        << p.ej2 << ")";
    throw UnequalJosephsonEnergies(msg.str());
  }
  const double ej = p.ej1;
  ComplexMatrix h(4);
  h(0, 0) = -ej;
  h(3, 3) = ej;
  h(0, 3) = h(3, 0) = p.em;
  h(1, 2) = h(2, 1) = p.em;
  return h;
}

ComplexMatrix gibbs_state_numeric(const ComplexMatrix& h, Temperature t) {
  const EigenDecomposition e = eig_hermitian(h);
  const real e0 = e.eigenvalues.front();
  std::vector<real> w(e.eigenvalues.size());
  real z = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    w[k] = std::exp(-(e.eigenvalues[k] - e0) / t.value());
    z += w[k];
  }
  for (real& wk : w) wk /= z;
  return spectral_apply(e, w);
}

XStateParams thermal_xstate(double ej_in, double em_in, Temperature t) {
  const real ej = ej_in;
  const real em = em_in;
  const real temp = t.value();
  const real alpha = std::hypot(ej, em);
  const real x = alpha / temp;
  const real abs_em = std::abs(em);

  // Everything below is multiplied by exp(-alpha/T).
  const real e2 = std::exp(-2 * x);
  const real u = std::exp((abs_em - alpha) / temp);  // cosh/sinh(E_m/T) pieces
  const real w = std::exp(-(abs_em + alpha) / temp);

  // sinh(x) exp(-x) / x
  const real shx = x >= tol::kSeriesSwitch ? -std::expm1(-2 * x) / (2 * x)
                                             : (1 + x * x / 6) * std::exp(-x);
  const real sinh_over_alpha = shx / temp;  // sinh(alpha/T) exp(-alpha/T) / alpha
  const real cosh_a = 0.5 * (1.0 + e2);

  const real z = (1.0 + e2) + u + w;  // Z exp(-alpha/T)

  // cosh(x) +- E_j sinh(x)/alpha. The minus branch for large x cancels to
  // O(E_m^2 / alpha^2); write 1 - |E_j|/alpha as E_m^2 / (alpha (alpha + |E_j|)).
  const real big = cosh_a + std::abs(ej) * sinh_over_alpha;
  real small;
  if (x >= tol::kSeriesSwitch) {
    const real one_minus = em * em / (alpha * (alpha + std::abs(ej)));
    const real one_plus = 1.0 + std::abs(ej) / alpha;
    small = 0.5 * (one_minus + e2 * one_plus);
  } else {
    small = cosh_a - std::abs(ej) * sinh_over_alpha;
  }

  XStateParams s;
  s.aPlus = (ej >= 0.0 ? big : small) / z;
  s.aMinus = (ej >= 0.0 ? small : big) / z;
  s.b = 0.5 * (u + w) / z;
  s.c = -em * sinh_over_alpha / z;
  // sinh(E_m/T) exp(-alpha/T) = (u - w)/2 = -u expm1(-2|E_m|/T) / 2
  const real sinh_m = -0.5 * u * std::expm1(-2.0 * abs_em / temp);
  s.d = -(em >= 0.0 ? sinh_m : -sinh_m) / z;
  // Both blocks have determinant 1/Z^2 (cosh^2 - sinh^2 = 1), while the
  // entries alone would leave it to cancellation.
  s.outerDet = s.innerDet = e2 / (z * z);
  return s;
}

}  // namespace lqu_lab
