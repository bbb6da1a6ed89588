#pragma once

// Two-qubit Hamiltonians in the Pauli-coefficient representation, the named
// model families the tool ships with, the local-unitary canonical form, the
// local/nonlocal split, and the random sampling procedures used by the
// campaign drivers.

#include <array>
#include <cstdint>
#include <optional>
#include <utility>

#include "qtherm/smallmat.hpp"

namespace qtherm {

// H = sum_ij c[i][j] sigma_i (x) sigma_j with basis order I, X, Y, Z.
// c[0][0] is a global energy offset; every entanglement computation ignores
// it, so thermal results are exactly invariant under energy shifts.
struct PauliHamiltonian {
  PauliCoeffs c{};

  CMat4 matrix() const { return pauli_compose(c); }

  friend PauliHamiltonian operator+(const PauliHamiltonian& x, const PauliHamiltonian& y) {
    PauliHamiltonian out;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        out.c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            x.c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +
            y.c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    return out;
  }
  friend PauliHamiltonian operator*(double s, const PauliHamiltonian& x) {
    PauliHamiltonian out;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        out.c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            s * x.c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    return out;
  }
};

enum class Family { rosci, homogeneous, wang, anisotropic, misaligned, example11, explicit_ };

// Parameters for build(). Exactly the fields a family consumes must be set;
// a missing or extraneous parameter is an InvalidInput error, so a config
// typo cannot silently fall back to a default.
struct FamilySpec {
  Family family = Family::explicit_;
  std::optional<double> j;
  std::optional<double> h;
  std::optional<double> gamma;
  std::optional<double> delta;
  std::optional<std::array<double, 3>> alpha;
  std::optional<std::array<double, 3>> beta;
  std::optional<PauliCoeffs> c;
};

PauliHamiltonian build(const FamilySpec& spec);

// Direct constructors for the named families (J is an overall scale).
PauliHamiltonian make_rosci(double j, double h);
PauliHamiltonian make_wang(double j, double h);
PauliHamiltonian make_anisotropic(double j, double h, double gamma);
PauliHamiltonian make_misaligned(double j, double h, double delta);
PauliHamiltonian make_example11();

struct HomogeneousParams {
  std::array<double, 3> alpha{};  // interaction strengths, each in [0,1)
  std::array<double, 3> beta{};   // homogeneous field direction, each in (-1,1)
};

// Diagonal interaction plus homogeneous field, J = 1:
//   H = sum_j alpha_j s_j(x)s_j + h sum_j beta_j (s_j(x)I + I(x)s_j).
PauliHamiltonian build_homogeneous(const HomogeneousParams& p, double h);

// Result of reducing H by local unitaries so the interaction block becomes
// diagonal. alpha is sorted descending by magnitude; when the interaction
// block has negative determinant the last entry carries the sign, keeping
// both conjugating unitaries realizable as qubit rotations.
struct CanonicalForm {
  std::array<double, 3> alpha{};
  std::array<double, 3> field_a{};
  std::array<double, 3> field_b{};
  CMat2 v1;
  CMat2 v2;
};

CanonicalForm canonical_form(const PauliHamiltonian& h);

// SU(2) element V realizing a proper rotation o on the Pauli vector:
// V sigma_j V^dagger = sum_k o[j][k] sigma_k. Throws InvalidInput when o is
// not orthogonal with determinant +1 (reflections must be absorbed into the
// interaction coefficients first).
CMat2 lift_rotation(const RMat3& o);

// (nonlocal, local): the local part keeps exactly the single-qubit terms
// c[i][I], c[I][j]; the nonlocal part the two-qubit terms; c[I][I] is
// dropped. nonlocal + local reproduces the input minus its identity term.
std::pair<PauliHamiltonian, PauliHamiltonian> split_local_nonlocal(const PauliHamiltonian& h);

// Random draw of homogeneous-family parameters: alpha uniform on [0,1),
// beta uniform on (-1,1); h stays a free scan parameter.
HomogeneousParams sample_homogeneous(std::uint64_t seed);

// Gaussian-unitary-ensemble draw: M = (G + G^dagger)/2 where every real and
// imaginary component of G is standard normal. Off-diagonal components of M
// then have variance 1/2, diagonal entries variance 1.
CMat4 sample_gue(std::uint64_t seed);

// Random Hamiltonian whose ground state is exactly |00> at energy 0: the
// other three eigenvectors are a Haar-random orthonormal basis of the
// complement of |00> with energies uniform on (0,1].
PauliHamiltonian sample_separable_ground(std::uint64_t seed);

}  // namespace qtherm
