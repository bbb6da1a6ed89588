#pragma once

// Dense complex linear algebra for the tiny matrices this project lives on:
// 2x2 and 4x4 complex (Hermitian eigenproblems, tensor products, Pauli-basis
// transforms) and 3x3 real (SVD of the interaction block). No external
// dependencies; everything is sized at compile time.

#include <array>
#include <complex>
#include <cstddef>

#include "qtherm/errors.hpp"

namespace qtherm {

using cplx = std::complex<double>;

template <int N>
struct CMat {
  // Row-major storage.
  std::array<cplx, static_cast<std::size_t>(N) * N> a{};

  static constexpr int dim = N;

  cplx& operator()(int r, int c) { return a[static_cast<std::size_t>(r) * N + c]; }
  const cplx& operator()(int r, int c) const {
    return a[static_cast<std::size_t>(r) * N + c];
  }

  static CMat zero() { return CMat{}; }
  static CMat identity() {
    CMat m;
    for (int i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  CMat adjoint() const {
    CMat m;
    for (int r = 0; r < N; ++r)
      for (int c = 0; c < N; ++c) m(r, c) = std::conj((*this)(c, r));
    return m;
  }

  CMat conjugate() const {
    CMat m;
    for (std::size_t i = 0; i < a.size(); ++i) m.a[i] = std::conj(a[i]);
    return m;
  }

  CMat transpose() const {
    CMat m;
    for (int r = 0; r < N; ++r)
      for (int c = 0; c < N; ++c) m(r, c) = (*this)(c, r);
    return m;
  }

  cplx trace() const {
    cplx t = 0.0;
    for (int i = 0; i < N; ++i) t += (*this)(i, i);
    return t;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const cplx& z : a) s += std::norm(z);
    return std::sqrt(s);
  }

  double max_abs() const {
    double m = 0.0;
    for (const cplx& z : a) m = std::max(m, std::abs(z));
    return m;
  }

  // Largest |M - M^dagger| entry, the Hermiticity defect.
  double hermiticity_defect() const {
    double d = 0.0;
    for (int r = 0; r < N; ++r)
      for (int c = 0; c < N; ++c)
        d = std::max(d, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
    return d;
  }

  bool is_hermitian(double rel_tol = 1e-12) const {
    const double scale = max_abs();
    return hermiticity_defect() <= rel_tol * (scale > 0.0 ? scale : 1.0);
  }

  friend CMat operator+(const CMat& x, const CMat& y) {
    CMat m;
    for (std::size_t i = 0; i < x.a.size(); ++i) m.a[i] = x.a[i] + y.a[i];
    return m;
  }
  friend CMat operator-(const CMat& x, const CMat& y) {
    CMat m;
    for (std::size_t i = 0; i < x.a.size(); ++i) m.a[i] = x.a[i] - y.a[i];
    return m;
  }
  friend CMat operator*(const cplx& s, const CMat& x) {
    CMat m;
    for (std::size_t i = 0; i < x.a.size(); ++i) m.a[i] = s * x.a[i];
    return m;
  }
  friend CMat operator*(const CMat& x, const CMat& y) {
    CMat m;
    for (int r = 0; r < N; ++r)
      for (int c = 0; c < N; ++c) {
        cplx s = 0.0;
        for (int k = 0; k < N; ++k) s += x(r, k) * y(k, c);
        m(r, c) = s;
      }
    return m;
  }
};

using CMat2 = CMat<2>;
using CMat3 = CMat<3>;
using CMat4 = CMat<4>;

struct RMat3 {
  std::array<double, 9> a{};

  double& operator()(int r, int c) { return a[static_cast<std::size_t>(r) * 3 + c]; }
  const double& operator()(int r, int c) const {
    return a[static_cast<std::size_t>(r) * 3 + c];
  }

  static RMat3 identity() {
    RMat3 m;
    m(0, 0) = m(1, 1) = m(2, 2) = 1.0;
    return m;
  }
  static RMat3 diag(double x, double y, double z) {
    RMat3 m;
    m(0, 0) = x;
    m(1, 1) = y;
    m(2, 2) = z;
    return m;
  }

  RMat3 transpose() const {
    RMat3 m;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) m(r, c) = (*this)(c, r);
    return m;
  }

  double det() const {
    const RMat3& m = *this;
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
           m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
  }

  double max_abs() const {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
  }

  friend RMat3 operator*(const RMat3& x, const RMat3& y) {
    RMat3 m;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) {
        double s = 0.0;
        for (int k = 0; k < 3; ++k) s += x(r, k) * y(k, c);
        m(r, c) = s;
      }
    return m;
  }
};

template <int N>
struct EigenSystem {
  std::array<double, N> values{};  // ascending
  CMat<N> vectors;                 // orthonormal columns, vectors(:,i) <-> values[i]
};

// Pauli matrices in the order I, X, Y, Z (index 0..3).
const CMat2& pauli(int i);

// Kronecker product, row-major block layout: (a ox b)(2r+s, 2c+t) = a(r,c) b(s,t).
CMat4 kron(const CMat2& a, const CMat2& b);

// sigma_i ox sigma_j for i,j in 0..3 (cached).
const CMat4& pauli_kron(int i, int j);

// Full eigensystem of a Hermitian matrix by cyclic complex Jacobi sweeps.
// Eigenvalues ascending; degenerate values are ordered by the lexicographic
// order of the phase-fixed eigenvector rounded to 8 decimals, so identical
// input always yields the identical output. Throws InvalidInput if the
// Hermiticity defect exceeds 1e-12 of the largest entry.
template <int N>
EigenSystem<N> hermitian_eig(const CMat<N>& m);

struct Svd3 {
  RMat3 u;                      // orthogonal
  std::array<double, 3> s{};    // nonnegative, descending
  RMat3 v;                      // orthogonal; u^T r v = diag(s)
};

// SVD of a real 3x3 matrix via the eigendecomposition of r^T r. Columns of u
// for singular values below 1e-12 are completed by Gram-Schmidt, so
// rank-deficient interaction blocks are handled.
Svd3 svd3(const RMat3& r);

// 4x4 coefficient tensor over the basis {I,X,Y,Z} ox {I,X,Y,Z}.
using PauliCoeffs = std::array<std::array<double, 4>, 4>;

// c[i][j] = Re Tr[(sigma_i ox sigma_j) h] / 4. Throws InvalidInput when h is
// not Hermitian (the coefficients would not be real).
PauliCoeffs pauli_decompose(const CMat4& h);

// Inverse of pauli_decompose: sum_ij c[i][j] sigma_i ox sigma_j.
CMat4 pauli_compose(const PauliCoeffs& c);

// det of a 4x4 complex matrix, Laplace expansion along the first two rows.
cplx det4(const CMat4& m);

extern template EigenSystem<2> hermitian_eig(const CMat<2>&);
extern template EigenSystem<3> hermitian_eig(const CMat<3>&);
extern template EigenSystem<4> hermitian_eig(const CMat<4>&);

}  // namespace qtherm
