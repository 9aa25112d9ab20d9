#pragma once

// Small dense complex matrices (dimension 2, 3 or 4) and the handful of
// spectral operations the rest of the library is built on.

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace lqu_lab {

// Extended precision. Cold thermal states have eigenvalues far below their
// largest entry, and sqrt(rho) turns a roundoff of eps in such an eigenvalue
// into an error of order sqrt(eps).
using real = long double;
using cplx = std::complex<real>;

class ComplexMatrix {
 public:
  static constexpr std::size_t kMaxDim = 4;

  ComplexMatrix() : ComplexMatrix(2) {}
  explicit ComplexMatrix(std::size_t dim);
  // Row-major nested initializer, e.g. {{1, 0}, {0, -1}}.
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static ComplexMatrix zero(std::size_t dim);
  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const real> values);
  static ComplexMatrix diagonal(std::initializer_list<real> values);

  std::size_t dim() const { return dim_; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * kMaxDim + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * kMaxDim + j]; }

  ComplexMatrix adjoint() const;
  cplx trace() const;
  real max_abs() const;

  // max |M_ij - conj(M_ji)| <= tol * (1 + max|M_ij|)
  bool is_hermitian(double tol) const;
  real hermiticity_defect() const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(cplx s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

  friend bool operator==(const ComplexMatrix& a, const ComplexMatrix& b);

 private:
  std::size_t dim_;
  std::array<cplx, kMaxDim * kMaxDim> data_{};
};

// max_ij |a_ij - b_ij|; dims must agree.
real max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

struct EigenDecomposition {
  std::vector<real> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // unitary, eigenvectors in columns
};

// Cyclic complex Jacobi. Entries that are exactly zero stay exactly zero, so
// block structure (e.g. X states) is diagonalized block by block.
EigenDecomposition eig_hermitian(const ComplexMatrix& m);

// V diag(f(lambda)) V^dagger for a real function of the eigenvalues.
ComplexMatrix spectral_apply(const EigenDecomposition& e, std::span<const real> values);

ComplexMatrix mat_sqrt_psd(const ComplexMatrix& m);
ComplexMatrix mat_exp_hermitian(const ComplexMatrix& m);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

namespace pauli {
ComplexMatrix identity();
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
// Hadamard gate (sigma_x + sigma_z) / sqrt(2).
ComplexMatrix hadamard();
}  // namespace pauli

}  // namespace lqu_lab
