#include "lqu_lab/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>
#include <string>

#include "lqu_lab/errors.hpp"
#include "lqu_lab/tolerances.hpp"

namespace lqu_lab {

namespace {

void check_dim(std::size_t dim) {
  if (dim < 2 || dim > ComplexMatrix::kMaxDim) {
    throw std::invalid_argument("ComplexMatrix: dimension " + std::to_string(dim) +
                                " outside [2, 4]");
  }
}

// Relative off-diagonal threshold below which a Jacobi rotation is skipped.
constexpr real kJacobiSkip = 1e-21L;
constexpr int kJacobiMaxSweeps = 64;

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim) { check_dim(dim); }

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows)
    : dim_(rows.size()) {
  check_dim(dim_);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != dim_) {
      throw std::invalid_argument("ComplexMatrix: ragged initializer");
    }
    std::size_t j = 0;
    for (const auto& v : row) (*this)(i, j++) = v;
    ++i;
  }
}

ComplexMatrix ComplexMatrix::zero(std::size_t dim) { return ComplexMatrix(dim); }

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const real> values) {
  ComplexMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<real> values) {
  return diagonal(std::span<const real>(values.begin(), values.size()));
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix r(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

cplx ComplexMatrix::trace() const {
  cplx t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

real ComplexMatrix::max_abs() const {
  real m = 0.0;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) m = std::max(m, std::abs((*this)(i, j)));
  return m;
}

real ComplexMatrix::hermiticity_defect() const {
  real d = 0.0;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i; j < dim_; ++j)
      d = std::max(d, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return d;
}

bool ComplexMatrix::is_hermitian(double tol) const {
  return hermiticity_defect() <= tol * (1.0 + max_abs());
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  assert(dim_ == rhs.dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) (*this)(i, j) += rhs(i, j);
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  assert(dim_ == rhs.dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) (*this)(i, j) -= rhs(i, j);
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) (*this)(i, j) *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  assert(a.dim_ == b.dim_);
  ComplexMatrix r(a.dim_);
  for (std::size_t i = 0; i < a.dim_; ++i)
    for (std::size_t k = 0; k < a.dim_; ++k) {
      const cplx aik = a(i, k);
      for (std::size_t j = 0; j < a.dim_; ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

bool operator==(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim_ != b.dim_) return false;
  for (std::size_t i = 0; i < a.dim_; ++i)
    for (std::size_t j = 0; j < a.dim_; ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

real max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  assert(a.dim() == b.dim());
  real m = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

EigenDecomposition eig_hermitian(const ComplexMatrix& m) {
  if (!m.is_hermitian(tol::kHermitian)) {
    throw NonHermitianInput("eig_hermitian: matrix is not Hermitian (defect " +
                            std::to_string(m.hermiticity_defect()) + ")");
  }
  const std::size_t n = m.dim();

  // Work on the Hermitian part; the upper triangle defines the matrix.
  ComplexMatrix a(n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = m(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      a(i, j) = 0.5L * (m(i, j) + std::conj(m(j, i)));
      a(j, i) = std::conj(a(i, j));
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(n);

  for (int sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const real mag = std::abs(a(p, q));
        if (mag == 0.0) continue;
        const real app = a(p, p).real();
        const real aqq = a(q, q).real();
        if (mag <= kJacobiSkip * std::sqrt(std::abs(app) * std::abs(aqq))) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        rotated = true;
        const cplx phase = a(p, q) / mag;  // e^{i phi}
        const real tau = (aqq - app) / (2.0 * mag);
        const real t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
        const real c = 1.0 / std::hypot(1.0, t);
        const real s = t * c;
        // J: J_pp = J_qq = c, J_pq = s e^{i phi}, J_qp = -s e^{-i phi}.
        const cplx jpq = s * phase;
        const cplx jqp = -s * std::conj(phase);
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const cplx akp = a(k, p);
          const cplx akq = a(k, q);
          a(k, p) = akp * c + akq * jqp;
          a(k, q) = akp * jpq + akq * c;
          a(p, k) = std::conj(a(k, p));
          a(q, k) = std::conj(a(k, q));
        }
        a(p, p) = app - t * mag;
        a(q, q) = aqq + t * mag;
        a(p, q) = a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const cplx vkp = v(k, p);
          const cplx vkq = v(k, q);
          v(k, p) = vkp * c + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * c;
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() < a(j, j).real();
  });

  EigenDecomposition out{std::vector<real>(n), ComplexMatrix(n)};
  for (std::size_t col = 0; col < n; ++col) {
    out.eigenvalues[col] = a(order[col], order[col]).real();
    for (std::size_t row = 0; row < n; ++row) out.eigenvectors(row, col) = v(row, order[col]);
  }
  return out;
}

ComplexMatrix spectral_apply(const EigenDecomposition& e, std::span<const real> values) {
  const std::size_t n = e.eigenvectors.dim();
  assert(values.size() == n);
  const ComplexMatrix& v = e.eigenvectors;
  ComplexMatrix r(n);
  for (std::size_t i = 0; i < n; ++i) {
    real diag = 0.0;
    for (std::size_t k = 0; k < n; ++k) diag += values[k] * std::norm(v(i, k));
    r(i, i) = diag;
    for (std::size_t j = i + 1; j < n; ++j) {
      cplx acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        if (values[k] == 0.0) continue;
        acc += v(i, k) * values[k] * std::conj(v(j, k));
      }
      r(i, j) = acc;
      r(j, i) = std::conj(acc);
    }
  }
  return r;
}

ComplexMatrix mat_sqrt_psd(const ComplexMatrix& m) {
  const EigenDecomposition e = eig_hermitian(m);
  std::vector<real> roots(e.eigenvalues.size());
  for (std::size_t k = 0; k < roots.size(); ++k) {
    const real lam = e.eigenvalues[k];
    if (lam < -tol::kPsdClamp) {
      throw NotPSD("mat_sqrt_psd: eigenvalue " + std::to_string(lam) + " below -1e-10");
    }
    roots[k] = lam > 0.0 ? std::sqrt(lam) : 0.0;
  }
  return spectral_apply(e, roots);
}

ComplexMatrix mat_exp_hermitian(const ComplexMatrix& m) {
  const EigenDecomposition e = eig_hermitian(m);
  std::vector<real> ex(e.eigenvalues.size());
  std::transform(e.eigenvalues.begin(), e.eigenvalues.end(), ex.begin(),
                 [](real x) { return std::exp(x); });
  return spectral_apply(e, ex);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t n = a.dim() * b.dim();
  check_dim(n);
  ComplexMatrix r(n);
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      for (std::size_t k = 0; k < b.dim(); ++k)
        for (std::size_t l = 0; l < b.dim(); ++l)
          r(i * b.dim() + k, j * b.dim() + l) = a(i, j) * b(k, l);
  return r;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b - b * a;
}

namespace pauli {

ComplexMatrix identity() { return ComplexMatrix::identity(2); }
ComplexMatrix x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
ComplexMatrix y() { return {{0.0, cplx(0.0, -1.0)}, {cplx(0.0, 1.0), 0.0}}; }
ComplexMatrix z() { return {{1.0, 0.0}, {0.0, -1.0}}; }

ComplexMatrix hadamard() {
  const real h = 1 / std::sqrt(real(2));
  return {{h, h}, {h, -h}};
}

}  // namespace pauli

}  // namespace lqu_lab
