#include "qtherm/smallmat.hpp"

#include <algorithm>
#include <cmath>

namespace qtherm {

const CMat2& pauli(int i) {
  static const std::array<CMat2, 4> table = [] {
    std::array<CMat2, 4> t{};
    t[0] = CMat2::identity();
    t[1](0, 1) = 1.0;  // X
    t[1](1, 0) = 1.0;
    t[2](0, 1) = cplx(0.0, -1.0);  // Y
    t[2](1, 0) = cplx(0.0, 1.0);
    t[3](0, 0) = 1.0;  // Z
    t[3](1, 1) = -1.0;
    return t;
  }();
  if (i < 0 || i > 3) throw InvalidInput("pauli: index out of range");
  return table[static_cast<std::size_t>(i)];
}

CMat4 kron(const CMat2& a, const CMat2& b) {
  CMat4 m;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c)
      for (int s = 0; s < 2; ++s)
        for (int t = 0; t < 2; ++t) m(2 * r + s, 2 * c + t) = a(r, c) * b(s, t);
  return m;
}

const CMat4& pauli_kron(int i, int j) {
  static const std::array<CMat4, 16> table = [] {
    std::array<CMat4, 16> t{};
    for (int p = 0; p < 4; ++p)
      for (int q = 0; q < 4; ++q) t[static_cast<std::size_t>(4 * p + q)] = kron(pauli(p), pauli(q));
    return t;
  }();
  return table[static_cast<std::size_t>(4 * i + j)];
}

namespace {

template <int N>
double off_diagonal_norm(const CMat<N>& m) {
  double s = 0.0;
  for (int r = 0; r < N; ++r)
    for (int c = 0; c < N; ++c)
      if (r != c) s += std::norm(m(r, c));
  return std::sqrt(s);
}

// Deterministic ordering for degenerate eigenvalues: compare the phase-fixed
// eigenvector entries rounded to 8 decimals, real part before imaginary.
template <int N>
bool lex_less(const CMat<N>& vecs, int i, int j) {
  auto snap = [](double x) { return std::round(x * 1e8); };
  for (int k = 0; k < N; ++k) {
    const double ri = snap(vecs(k, i).real()), rj = snap(vecs(k, j).real());
    if (ri != rj) return ri < rj;
    const double ii = snap(vecs(k, i).imag()), ij = snap(vecs(k, j).imag());
    if (ii != ij) return ii < ij;
  }
  return false;
}

}  // namespace

template <int N>
EigenSystem<N> hermitian_eig(const CMat<N>& input) {
  const double scale = input.max_abs();
  if (input.hermiticity_defect() > 1e-12 * (scale > 0.0 ? scale : 1.0))
    throw InvalidInput("hermitian_eig: matrix is not Hermitian within tolerance");

  // Work on the symmetrized matrix so tiny defects cannot bias the sweep.
  CMat<N> m;
  for (int r = 0; r < N; ++r)
    for (int c = 0; c < N; ++c) m(r, c) = 0.5 * (input(r, c) + std::conj(input(c, r)));

  CMat<N> vecs = CMat<N>::identity();
  const double target = 1e-13 * input.frobenius_norm();

  for (int sweep = 0; sweep < 100 && off_diagonal_norm(m) > target; ++sweep) {
    for (int p = 0; p < N - 1; ++p) {
      for (int q = p + 1; q < N; ++q) {
        const cplx mpq = m(p, q);
        const double r = std::abs(mpq);
        if (r < 1e-300) continue;
        const cplx phase = mpq / r;
        const double tau = (m(q, q).real() - m(p, p).real()) / (2.0 * r);
        // Smaller-magnitude root of t^2 - 2 tau t - 1 = 0 for a stable angle.
        const double t = tau >= 0.0 ? -1.0 / (tau + std::sqrt(tau * tau + 1.0))
                                    : 1.0 / (-tau + std::sqrt(tau * tau + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const cplx sp = s * phase;
        const cplx spc = s * std::conj(phase);

        for (int k = 0; k < N; ++k) {  // columns p,q: m <- m * U
          const cplx kp = m(k, p), kq = m(k, q);
          m(k, p) = c * kp + spc * kq;
          m(k, q) = -sp * kp + c * kq;
        }
        for (int k = 0; k < N; ++k) {  // rows p,q: m <- U^dagger * m
          const cplx pk = m(p, k), qk = m(q, k);
          m(p, k) = c * pk + sp * qk;
          m(q, k) = -spc * pk + c * qk;
        }
        for (int k = 0; k < N; ++k) {  // accumulate vecs <- vecs * U
          const cplx kp = vecs(k, p), kq = vecs(k, q);
          vecs(k, p) = c * kp + spc * kq;
          vecs(k, q) = -sp * kp + c * kq;
        }
      }
    }
  }
  if (off_diagonal_norm(m) > std::max(target, 1e-300))
    throw ComputationError("hermitian_eig: Jacobi sweep limit reached");

  // Phase-fix each eigenvector: largest-magnitude entry made real positive.
  for (int i = 0; i < N; ++i) {
    int best = 0;
    double mag = 0.0;
    for (int k = 0; k < N; ++k) {
      const double v = std::abs(vecs(k, i));
      if (v > mag) {
        mag = v;
        best = k;
      }
    }
    const cplx z = vecs(best, i);
    if (std::abs(z) > 0.0) {
      const cplx fix = std::conj(z) / std::abs(z);
      for (int k = 0; k < N; ++k) vecs(k, i) *= fix;
    }
  }

  std::array<int, N> order{};
  for (int i = 0; i < N; ++i) order[static_cast<std::size_t>(i)] = i;
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    const double vi = m(i, i).real(), vj = m(j, j).real();
    if (vi != vj) return vi < vj;
    return lex_less(vecs, i, j);
  });

  EigenSystem<N> out;
  for (int i = 0; i < N; ++i) {
    const int src = order[static_cast<std::size_t>(i)];
    out.values[static_cast<std::size_t>(i)] = m(src, src).real();
    for (int k = 0; k < N; ++k) out.vectors(k, i) = vecs(k, src);
  }
  return out;
}

template EigenSystem<2> hermitian_eig(const CMat<2>&);
template EigenSystem<3> hermitian_eig(const CMat<3>&);
template EigenSystem<4> hermitian_eig(const CMat<4>&);

namespace {

std::array<double, 3> column(const RMat3& m, int c) {
  return {m(0, c), m(1, c), m(2, c)};
}

void set_column(RMat3& m, int c, const std::array<double, 3>& v) {
  for (int r = 0; r < 3; ++r) m(r, c) = v[static_cast<std::size_t>(r)];
}

double dot3(const std::array<double, 3>& x, const std::array<double, 3>& y) {
  return x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
}

double norm3(const std::array<double, 3>& x) { return std::sqrt(dot3(x, x)); }

}  // namespace

Svd3 svd3(const RMat3& r) {
  for (double v : r.a)
    if (!std::isfinite(v)) throw InvalidInput("svd3: non-finite entry");

  // Eigendecomposition of r^T r gives v and the squared singular values.
  CMat3 gram;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += r(k, i) * r(k, j);
      gram(i, j) = s;
    }
  const EigenSystem<3> eig = hermitian_eig(gram);

  Svd3 out;
  for (int i = 0; i < 3; ++i) {
    // Descending singular values: reverse the ascending eigenvalue order.
    const int src = 2 - i;
    out.s[static_cast<std::size_t>(i)] = std::sqrt(std::max(0.0, eig.values[static_cast<std::size_t>(src)]));
    for (int k = 0; k < 3; ++k) out.v(k, i) = eig.vectors(k, src).real();
  }

  // u_i = r v_i / s_i where s_i is meaningful; Gram-Schmidt completion below
  // fills the rest and removes any drift.
  const double s_floor = 1e-12 * std::max(1.0, out.s[0]);
  for (int i = 0; i < 3; ++i) {
    std::array<double, 3> u{};
    if (out.s[static_cast<std::size_t>(i)] > s_floor) {
      const auto v = column(out.v, i);
      for (int k = 0; k < 3; ++k)
        u[static_cast<std::size_t>(k)] =
            (r(k, 0) * v[0] + r(k, 1) * v[1] + r(k, 2) * v[2]) / out.s[static_cast<std::size_t>(i)];
    }
    // Orthogonalize against the columns already placed.
    for (int j = 0; j < i; ++j) {
      const auto prev = column(out.u, j);
      const double proj = dot3(u, prev);
      for (int k = 0; k < 3; ++k) u[static_cast<std::size_t>(k)] -= proj * prev[static_cast<std::size_t>(k)];
    }
    double n = norm3(u);
    if (n < 0.5) {
      // Deficient direction: seed from the first basis vector that survives.
      for (int e = 0; e < 3 && n < 0.5; ++e) {
        u = {0.0, 0.0, 0.0};
        u[static_cast<std::size_t>(e)] = 1.0;
        for (int j = 0; j < i; ++j) {
          const auto prev = column(out.u, j);
          const double proj = dot3(u, prev);
          for (int k = 0; k < 3; ++k) u[static_cast<std::size_t>(k)] -= proj * prev[static_cast<std::size_t>(k)];
        }
        n = norm3(u);
      }
    }
    for (int k = 0; k < 3; ++k) u[static_cast<std::size_t>(k)] /= n;
    set_column(out.u, i, u);
  }
  return out;
}

PauliCoeffs pauli_decompose(const CMat4& h) {
  const double scale = h.max_abs();
  if (h.hermiticity_defect() > 1e-12 * (scale > 0.0 ? scale : 1.0))
    throw InvalidInput("pauli_decompose: matrix is not Hermitian within tolerance");

  PauliCoeffs c{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const CMat4& basis = pauli_kron(i, j);
      cplx t = 0.0;
      for (int r = 0; r < 4; ++r)
        for (int k = 0; k < 4; ++k) t += basis(r, k) * h(k, r);
      c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 0.25 * t.real();
    }
  return c;
}

CMat4 pauli_compose(const PauliCoeffs& c) {
  CMat4 m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const double w = c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (w == 0.0) continue;
      const CMat4& basis = pauli_kron(i, j);
      for (std::size_t k = 0; k < m.a.size(); ++k) m.a[k] += w * basis.a[k];
    }
  return m;
}

cplx det4(const CMat4& m) {
  auto minor2 = [&](int r0, int r1, int c0, int c1) {
    return m(r0, c0) * m(r1, c1) - m(r0, c1) * m(r1, c0);
  };
  return minor2(0, 1, 0, 1) * minor2(2, 3, 2, 3) - minor2(0, 1, 0, 2) * minor2(2, 3, 1, 3) +
         minor2(0, 1, 0, 3) * minor2(2, 3, 1, 2) + minor2(0, 1, 1, 2) * minor2(2, 3, 0, 3) -
         minor2(0, 1, 1, 3) * minor2(2, 3, 0, 2) + minor2(0, 1, 2, 3) * minor2(2, 3, 0, 1);
}

}  // namespace qtherm
