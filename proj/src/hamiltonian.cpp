#include "qtherm/hamiltonian.hpp"

#include <cmath>
#include <string>

#include "qtherm/rng.hpp"

namespace qtherm {

namespace {

enum : int { I = 0, X = 1, Y = 2, Z = 3 };

void require(bool present, bool wanted, const char* family, const char* param) {
  if (wanted && !present)
    throw InvalidInput(std::string("build: family '") + family + "' requires parameter '" + param + "'");
  if (!wanted && present)
    throw InvalidInput(std::string("build: family '") + family + "' does not accept parameter '" + param + "'");
}

void check_params(const FamilySpec& s, const char* family, bool j, bool h, bool gamma, bool delta,
                  bool alpha, bool beta, bool c) {
  require(s.j.has_value(), j, family, "J");
  require(s.h.has_value(), h, family, "h");
  require(s.gamma.has_value(), gamma, family, "gamma");
  require(s.delta.has_value(), delta, family, "delta");
  require(s.alpha.has_value(), alpha, family, "alpha");
  require(s.beta.has_value(), beta, family, "beta");
  require(s.c.has_value(), c, family, "pauli");
}

}  // namespace

PauliHamiltonian make_rosci(double j, double h) {
  PauliHamiltonian out;
  out.c[X][X] = -j;
  out.c[Z][Z] = j;
  out.c[Z][I] = -j * h;
  out.c[I][Z] = -j * h;
  return out;
}

PauliHamiltonian make_wang(double j, double h) {
  PauliHamiltonian out;
  out.c[X][X] = j;
  out.c[Y][Y] = j;
  out.c[Z][I] = j * h;
  out.c[I][Z] = j * h;
  return out;
}

PauliHamiltonian make_anisotropic(double j, double h, double gamma) {
  PauliHamiltonian out;
  out.c[X][X] = j * (1.0 + gamma);
  out.c[Y][Y] = j * (1.0 - gamma);
  out.c[Z][I] = j * h;
  out.c[I][Z] = j * h;
  return out;
}

PauliHamiltonian make_misaligned(double j, double h, double delta) {
  PauliHamiltonian out;
  out.c[X][X] = j;
  out.c[Y][Y] = j;
  out.c[Z][I] = j * h;
  out.c[I][Z] = j * h;
  out.c[X][I] = j * h * delta;
  out.c[I][X] = j * h * delta;
  return out;
}

PauliHamiltonian make_example11() {
  PauliHamiltonian out;
  out.c[X][X] = 0.006;
  out.c[Y][Y] = 0.006;
  out.c[X][Y] = 0.03;
  out.c[Y][X] = -0.03;
  out.c[Z][X] = 0.02;
  out.c[I][X] = -0.02;
  out.c[Z][Y] = 1.0 / 10.0;
  out.c[I][Y] = -1.0 / 10.0;
  out.c[X][Z] = 1.0 / 14.0;
  out.c[X][I] = -1.0 / 14.0;
  out.c[Z][Z] = 1.0 / 7.0;
  out.c[Z][I] = -1.0 / 4.0;
  out.c[I][Z] = -1.0 / 5.0;
  return out;
}

PauliHamiltonian build_homogeneous(const HomogeneousParams& p, double h) {
  PauliHamiltonian out;
  for (int a = 0; a < 3; ++a) {
    out.c[static_cast<std::size_t>(a + 1)][static_cast<std::size_t>(a + 1)] =
        p.alpha[static_cast<std::size_t>(a)];
    out.c[static_cast<std::size_t>(a + 1)][I] = h * p.beta[static_cast<std::size_t>(a)];
    out.c[I][static_cast<std::size_t>(a + 1)] = h * p.beta[static_cast<std::size_t>(a)];
  }
  return out;
}

PauliHamiltonian build(const FamilySpec& s) {
  switch (s.family) {
    case Family::rosci:
      check_params(s, "rosci", true, true, false, false, false, false, false);
      return make_rosci(*s.j, *s.h);
    case Family::wang:
      check_params(s, "wang", true, true, false, false, false, false, false);
      return make_wang(*s.j, *s.h);
    case Family::anisotropic:
      check_params(s, "anisotropic", true, true, true, false, false, false, false);
      return make_anisotropic(*s.j, *s.h, *s.gamma);
    case Family::misaligned:
      check_params(s, "misaligned", true, true, false, true, false, false, false);
      return make_misaligned(*s.j, *s.h, *s.delta);
    case Family::homogeneous: {
      check_params(s, "homogeneous", true, true, false, false, true, true, false);
      return *s.j * build_homogeneous(HomogeneousParams{*s.alpha, *s.beta}, *s.h);
    }
    case Family::example11:
      check_params(s, "example11", false, false, false, false, false, false, false);
      return make_example11();
    case Family::explicit_: {
      check_params(s, "explicit", false, false, false, false, false, false, true);
      for (const auto& row : *s.c)
        for (double v : row)
          if (!std::isfinite(v)) throw InvalidInput("build: non-finite coefficient");
      return PauliHamiltonian{*s.c};
    }
  }
  throw InvalidInput("build: unknown family");
}

CMat2 lift_rotation(const RMat3& o) {
  const RMat3 gram = o.transpose() * o;
  double defect = 0.0;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) defect = std::max(defect, std::abs(gram(r, c) - (r == c ? 1.0 : 0.0)));
  if (defect > 1e-9) throw InvalidInput("lift_rotation: input is not orthogonal");
  if (std::abs(o.det() - 1.0) > 1e-9)
    throw InvalidInput("lift_rotation: determinant must be +1 (absorb reflections first)");

  // Quaternion extraction (Shepperd): branch on the largest of the trace and
  // the diagonal entries so the divisor is always well away from zero.
  const double trace = o(0, 0) + o(1, 1) + o(2, 2);
  double w, x, y, z;
  if (trace > o(0, 0) && trace > o(1, 1) && trace > o(2, 2)) {
    const double s = 2.0 * std::sqrt(1.0 + trace);
    w = 0.25 * s;
    x = (o(2, 1) - o(1, 2)) / s;
    y = (o(0, 2) - o(2, 0)) / s;
    z = (o(1, 0) - o(0, 1)) / s;
  } else if (o(0, 0) > o(1, 1) && o(0, 0) > o(2, 2)) {
    const double s = 2.0 * std::sqrt(1.0 + o(0, 0) - o(1, 1) - o(2, 2));
    w = (o(2, 1) - o(1, 2)) / s;
    x = 0.25 * s;
    y = (o(0, 1) + o(1, 0)) / s;
    z = (o(0, 2) + o(2, 0)) / s;
  } else if (o(1, 1) > o(2, 2)) {
    const double s = 2.0 * std::sqrt(1.0 + o(1, 1) - o(0, 0) - o(2, 2));
    w = (o(0, 2) - o(2, 0)) / s;
    x = (o(0, 1) + o(1, 0)) / s;
    y = 0.25 * s;
    z = (o(1, 2) + o(2, 1)) / s;
  } else {
    const double s = 2.0 * std::sqrt(1.0 + o(2, 2) - o(0, 0) - o(1, 1));
    w = (o(1, 0) - o(0, 1)) / s;
    x = (o(0, 2) + o(2, 0)) / s;
    y = (o(1, 2) + o(2, 1)) / s;
    z = 0.25 * s;
  }
  const double norm = std::sqrt(w * w + x * x + y * y + z * z);
  w /= norm;
  x /= norm;
  y /= norm;
  z /= norm;

  // V = w I + i (x X + y Y + z Z) conjugates the Pauli vector by o:
  // V sigma_j V^dagger = sum_k o[j][k] sigma_k.
  CMat2 v;
  v(0, 0) = cplx(w, z);
  v(0, 1) = cplx(y, x);
  v(1, 0) = cplx(-y, x);
  v(1, 1) = cplx(w, -z);
  return v;
}

CanonicalForm canonical_form(const PauliHamiltonian& h) {
  RMat3 r;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      r(a, b) = h.c[static_cast<std::size_t>(a + 1)][static_cast<std::size_t>(b + 1)];

  Svd3 f = svd3(r);

  // Both rotations must be proper to be realizable by qubit unitaries. If
  // only one factor is a reflection, flipping its last column moves the sign
  // onto the smallest diagonal entry instead.
  const bool u_improper = f.u.det() < 0.0;
  const bool v_improper = f.v.det() < 0.0;
  double last_sign = 1.0;
  if (u_improper && v_improper) {
    for (int k = 0; k < 3; ++k) {
      f.u(k, 2) = -f.u(k, 2);
      f.v(k, 2) = -f.v(k, 2);
    }
  } else if (u_improper != v_improper) {
    RMat3& flip = u_improper ? f.u : f.v;
    for (int k = 0; k < 3; ++k) flip(k, 2) = -flip(k, 2);
    last_sign = -1.0;
  }

  CanonicalForm out;
  out.alpha = {f.s[0], f.s[1], last_sign * f.s[2]};
  for (int m = 0; m < 3; ++m) {
    double fa = 0.0, fb = 0.0;
    for (int j = 0; j < 3; ++j) {
      fa += f.u(j, m) * h.c[static_cast<std::size_t>(j + 1)][I];
      fb += f.v(j, m) * h.c[I][static_cast<std::size_t>(j + 1)];
    }
    out.field_a[static_cast<std::size_t>(m)] = fa;
    out.field_b[static_cast<std::size_t>(m)] = fb;
  }
  out.v1 = lift_rotation(f.u);
  out.v2 = lift_rotation(f.v);
  return out;
}

std::pair<PauliHamiltonian, PauliHamiltonian> split_local_nonlocal(const PauliHamiltonian& h) {
  PauliHamiltonian nonlocal, local;
  for (int i = 1; i < 4; ++i) {
    local.c[static_cast<std::size_t>(i)][I] = h.c[static_cast<std::size_t>(i)][I];
    local.c[I][static_cast<std::size_t>(i)] = h.c[I][static_cast<std::size_t>(i)];
    for (int j = 1; j < 4; ++j)
      nonlocal.c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          h.c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return {nonlocal, local};
}

HomogeneousParams sample_homogeneous(std::uint64_t seed) {
  Xoshiro256pp rng(seed);
  HomogeneousParams p;
  for (double& a : p.alpha) a = rng.uniform01();
  for (double& b : p.beta) b = rng.uniform_symmetric();
  return p;
}

CMat4 sample_gue(std::uint64_t seed) {
  Xoshiro256pp rng(seed);
  CMat4 g;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      const auto [re, im] = rng.gaussian_pair();
      g(r, c) = cplx(re, im);
    }
  return 0.5 * (g + g.adjoint());
}

PauliHamiltonian sample_separable_ground(std::uint64_t seed) {
  Xoshiro256pp rng(seed);

  // Haar-random orthonormal basis of the 3-dimensional complement of |00>,
  // built by Gram-Schmidt on complex Gaussian columns. The residual norm is
  // the (positive real) QR diagonal, which makes the construction unique.
  std::array<std::array<cplx, 3>, 3> q{};
  for (int col = 0; col < 3; ++col) {
    for (;;) {
      std::array<cplx, 3> v{};
      for (auto& entry : v) {
        const auto [re, im] = rng.gaussian_pair();
        entry = cplx(re, im);
      }
      for (int prev = 0; prev < col; ++prev) {
        cplx overlap = 0.0;
        for (int k = 0; k < 3; ++k)
          overlap += std::conj(q[static_cast<std::size_t>(prev)][static_cast<std::size_t>(k)]) *
                     v[static_cast<std::size_t>(k)];
        for (int k = 0; k < 3; ++k)
          v[static_cast<std::size_t>(k)] -=
              overlap * q[static_cast<std::size_t>(prev)][static_cast<std::size_t>(k)];
      }
      double norm = 0.0;
      for (const cplx& z : v) norm += std::norm(z);
      norm = std::sqrt(norm);
      if (norm > 1e-12) {
        for (int k = 0; k < 3; ++k)
          q[static_cast<std::size_t>(col)][static_cast<std::size_t>(k)] =
              v[static_cast<std::size_t>(k)] / norm;
        break;
      }
    }
  }

  std::array<double, 3> energy{};
  for (double& e : energy) e = rng.uniform01_positive();

  // Rows/columns 1..3 span {|01>,|10>,|11>}; row/column 0 stays zero so
  // H|00> = 0 exactly before the coefficient round-trip.
  CMat4 m;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      cplx s = 0.0;
      for (int k = 0; k < 3; ++k)
        s += energy[static_cast<std::size_t>(k)] * q[static_cast<std::size_t>(k)][static_cast<std::size_t>(a)] *
             std::conj(q[static_cast<std::size_t>(k)][static_cast<std::size_t>(b)]);
      m(a + 1, b + 1) = s;
    }
  return PauliHamiltonian{pauli_decompose(m)};
}

}  // namespace qtherm
