#include "doctest.h"

#include <cmath>
#include <complex>

#include "qtherm/rng.hpp"
#include "qtherm/smallmat.hpp"

using namespace qtherm;

namespace {

CMat4 random_hermitian4(Xoshiro256pp& rng, double scale = 1.0) {
  CMat4 g;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) g(r, c) = cplx(rng.gaussian(), rng.gaussian());
  CMat4 h = 0.5 * (g + g.adjoint());
  return cplx(scale) * h;
}

// Random rotation assembled from three Givens rotations -- deliberately
// independent of svd3 so it can serve as an oracle for it.
RMat3 random_rotation3(Xoshiro256pp& rng) {
  auto givens = [](int i, int j, double angle) {
    RMat3 m = RMat3::identity();
    m(i, i) = std::cos(angle);
    m(j, j) = std::cos(angle);
    m(i, j) = -std::sin(angle);
    m(j, i) = std::sin(angle);
    return m;
  };
  const double two_pi = 2.0 * std::acos(-1.0);
  return givens(0, 1, two_pi * rng.uniform01()) * givens(0, 2, two_pi * rng.uniform01()) *
         givens(1, 2, two_pi * rng.uniform01());
}

double max_abs_diff(const CMat4& x, const CMat4& y) { return (x - y).max_abs(); }

}  // namespace

TEST_CASE("kron reproduces the standard Pauli tensor products") {
  const CMat4 ii = kron(pauli(0), pauli(0));
  CHECK(max_abs_diff(ii, CMat4::identity()) == 0.0);

  const CMat4 zz = kron(pauli(3), pauli(3));
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      const double expect = (r != c) ? 0.0 : (r == 0 || r == 3 ? 1.0 : -1.0);
      CHECK(zz(r, c) == cplx(expect));
    }

  const CMat4 xx = kron(pauli(1), pauli(1));
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) CHECK(xx(r, c) == cplx(r + c == 3 ? 1.0 : 0.0));
}

TEST_CASE("pauli_kron matches kron for every index pair") {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(max_abs_diff(pauli_kron(i, j), kron(pauli(i), pauli(j))) == 0.0);
}

TEST_CASE("hermitian_eig sorts a diagonal matrix ascending") {
  CMat4 m;
  m(0, 0) = 3.0;
  m(1, 1) = 1.0;
  m(2, 2) = 2.0;
  m(3, 3) = 0.0;
  const EigenSystem<4> eig = hermitian_eig(m);
  CHECK(std::abs(eig.values[0]) < 1e-14);
  CHECK(eig.values[1] == doctest::Approx(1.0));
  CHECK(eig.values[2] == doctest::Approx(2.0));
  CHECK(eig.values[3] == doctest::Approx(3.0));
  // Eigenvectors must be the matching basis vectors (up to the fixed phase).
  const int expect_basis[4] = {3, 1, 2, 0};
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k)
      CHECK(std::abs(eig.vectors(k, i) - cplx(k == expect_basis[i] ? 1.0 : 0.0)) < 1e-14);
}

TEST_CASE("hermitian_eig knows the X-tensor-X spectrum") {
  const EigenSystem<4> eig = hermitian_eig(pauli_kron(1, 1));
  CHECK(eig.values[0] == doctest::Approx(-1.0));
  CHECK(eig.values[1] == doctest::Approx(-1.0));
  CHECK(eig.values[2] == doctest::Approx(1.0));
  CHECK(eig.values[3] == doctest::Approx(1.0));
}

TEST_CASE("hermitian_eig reconstructs random Hermitian matrices") {
  Xoshiro256pp rng(20240401);
  for (int trial = 0; trial < 50; ++trial) {
    const CMat4 m = random_hermitian4(rng);
    const EigenSystem<4> eig = hermitian_eig(m);

    CMat4 rebuilt;
    for (int i = 0; i < 4; ++i)
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
          rebuilt(r, c) += eig.values[i] * eig.vectors(r, i) * std::conj(eig.vectors(c, i));
    CHECK(max_abs_diff(rebuilt, m) < 1e-10);

    // Orthonormal columns.
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        cplx dot = 0.0;
        for (int k = 0; k < 4; ++k) dot += std::conj(eig.vectors(k, i)) * eig.vectors(k, j);
        CHECK(std::abs(dot - cplx(i == j ? 1.0 : 0.0)) < 1e-12);
      }

    // Trace and squared-trace identities.
    double sum = 0.0, sq = 0.0;
    for (double v : eig.values) {
      sum += v;
      sq += v * v;
    }
    CHECK(sum == doctest::Approx(m.trace().real()).epsilon(1e-10).scale(1.0 + std::abs(sum)));
    CHECK(sq == doctest::Approx((m * m).trace().real()).epsilon(1e-9).scale(1.0 + sq));
  }
}

TEST_CASE("hermitian_eig is deterministic for identical input") {
  Xoshiro256pp rng(777);
  const CMat4 m = random_hermitian4(rng);
  const EigenSystem<4> a = hermitian_eig(m);
  const EigenSystem<4> b = hermitian_eig(m);
  for (int i = 0; i < 4; ++i) CHECK(a.values[i] == b.values[i]);
  CHECK(max_abs_diff(a.vectors, b.vectors) == 0.0);
}

TEST_CASE("hermitian_eig rejects a clearly non-Hermitian matrix") {
  CMat4 m = CMat4::identity();
  m(0, 1) = 1.0;  // no conjugate partner
  CHECK_THROWS_AS((void)hermitian_eig(m), InvalidInput);
}

TEST_CASE("svd3 of the identity is all-ones") {
  const Svd3 f = svd3(RMat3::identity());
  for (double s : f.s) CHECK(s == doctest::Approx(1.0));
}

TEST_CASE("svd3 handles a rank-deficient diagonal") {
  const Svd3 f = svd3(RMat3::diag(-1.0, 0.0, 1.0));
  CHECK(f.s[0] == doctest::Approx(1.0));
  CHECK(f.s[1] == doctest::Approx(1.0));
  CHECK(std::abs(f.s[2]) < 1e-12);
  // u and v must still be fully orthogonal despite the zero singular value.
  const RMat3 utu = f.u.transpose() * f.u;
  const RMat3 vtv = f.v.transpose() * f.v;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      CHECK(std::abs(utu(r, c) - (r == c ? 1.0 : 0.0)) < 1e-12);
      CHECK(std::abs(vtv(r, c) - (r == c ? 1.0 : 0.0)) < 1e-12);
    }
}

TEST_CASE("svd3 reconstructs random matrices") {
  Xoshiro256pp rng(5150);
  for (int trial = 0; trial < 50; ++trial) {
    RMat3 r;
    for (int i = 0; i < 9; ++i) r.a[static_cast<std::size_t>(i)] = rng.gaussian();
    const Svd3 f = svd3(r);

    CHECK(f.s[0] >= f.s[1]);
    CHECK(f.s[1] >= f.s[2]);
    CHECK(f.s[2] >= 0.0);

    const RMat3 rebuilt = f.u * RMat3::diag(f.s[0], f.s[1], f.s[2]) * f.v.transpose();
    double diff = 0.0;
    for (int i = 0; i < 9; ++i)
      diff = std::max(diff, std::abs(rebuilt.a[static_cast<std::size_t>(i)] -
                                     r.a[static_cast<std::size_t>(i)]));
    CHECK(diff < 1e-10);

    // u^T r v recovers the diagonal.
    const RMat3 d = f.u.transpose() * r * f.v;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        CHECK(std::abs(d(i, j) - (i == j ? f.s[static_cast<std::size_t>(i)] : 0.0)) < 1e-10);
  }
}

TEST_CASE("svd3 singular values ignore orthogonal factors") {
  Xoshiro256pp rng(31337);
  for (int trial = 0; trial < 20; ++trial) {
    RMat3 r;
    for (int i = 0; i < 9; ++i) r.a[static_cast<std::size_t>(i)] = rng.gaussian();
    const Svd3 base = svd3(r);
    const Svd3 twisted = svd3(random_rotation3(rng) * r * random_rotation3(rng));
    for (int i = 0; i < 3; ++i)
      CHECK(twisted.s[static_cast<std::size_t>(i)] ==
            doctest::Approx(base.s[static_cast<std::size_t>(i)]).epsilon(1e-9).scale(1.0 + base.s[0]));
  }
}

TEST_CASE("pauli_decompose picks out single basis terms") {
  const PauliCoeffs cxx = pauli_decompose(pauli_kron(1, 1));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(cxx[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] ==
            (i == 1 && j == 1 ? 1.0 : 0.0));

  const CMat4 zi_iz = pauli_kron(3, 0) + pauli_kron(0, 3);
  const PauliCoeffs c = pauli_decompose(zi_iz);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const bool hit = (i == 3 && j == 0) || (i == 0 && j == 3);
      CHECK(c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] == (hit ? 1.0 : 0.0));
    }
}

TEST_CASE("pauli_decompose round-trips through pauli_compose") {
  Xoshiro256pp rng(90210);
  for (int trial = 0; trial < 50; ++trial) {
    const CMat4 h = random_hermitian4(rng);
    const PauliCoeffs c = pauli_decompose(h);
    CHECK(max_abs_diff(pauli_compose(c), h) < 1e-12);

    // Parseval over the Pauli basis.
    double csq = 0.0;
    for (const auto& row : c)
      for (double v : row) csq += v * v;
    const double hsq = (h * h).trace().real();
    CHECK(hsq == doctest::Approx(4.0 * csq).epsilon(1e-10).scale(1.0 + hsq));
  }
}

TEST_CASE("pauli_decompose rejects non-Hermitian input") {
  CMat4 m;
  m(0, 1) = cplx(0.0, 1.0);
  CHECK_THROWS_AS((void)pauli_decompose(m), InvalidInput);
}

TEST_CASE("det4 agrees with eigenvalue products and known diagonals") {
  CMat4 d;
  d(0, 0) = 1.0;
  d(1, 1) = 2.0;
  d(2, 2) = 3.0;
  d(3, 3) = 4.0;
  CHECK(det4(d).real() == doctest::Approx(24.0));
  CHECK(det4(d).imag() == doctest::Approx(0.0));

  Xoshiro256pp rng(424242);
  for (int trial = 0; trial < 20; ++trial) {
    const CMat4 h = random_hermitian4(rng);
    const EigenSystem<4> eig = hermitian_eig(h);
    double prod = 1.0;
    for (double v : eig.values) prod *= v;
    CHECK(det4(h).real() == doctest::Approx(prod).epsilon(1e-9).scale(1.0 + std::abs(prod)));
    CHECK(std::abs(det4(h).imag()) < 1e-10 * (1.0 + std::abs(prod)));
  }
}
