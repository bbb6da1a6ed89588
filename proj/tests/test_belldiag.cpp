#include "doctest.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <vector>

#include "qtherm/belldiag.hpp"
#include "qtherm/entanglement.hpp"
#include "qtherm/errors.hpp"
#include "qtherm/regions.hpp"
#include "qtherm/rng.hpp"

using namespace qtherm;

namespace {

PauliHamiltonian interaction(double ax, double ay, double az) {
  PauliHamiltonian h;
  h.c[1][1] = ax;
  h.c[2][2] = ay;
  h.c[3][3] = az;
  return h;
}

PauliHamiltonian random_zero_field(std::uint64_t seed) {
  const PauliHamiltonian full{pauli_decompose(sample_gue(seed))};
  return split_local_nonlocal(full).first;
}

double max_entry_diff(const CMat4& x, const CMat4& y) {
  double d = 0.0;
  for (std::size_t i = 0; i < x.a.size(); ++i) d = std::max(d, std::abs(x.a[i] - y.a[i]));
  return d;
}

// |<bell_i| u |bell_j>|^2, the phase-insensitive action on the Bell basis.
double overlap_sq(const CMat4& u, int i, int j) {
  const CMat4& b = bell_basis();
  cplx s = 0.0;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) s += std::conj(b(r, i)) * u(r, c) * b(c, j);
  return std::norm(s);
}

}  // namespace

TEST_CASE("bell basis is unitary with the documented columns") {
  const CMat4& b = bell_basis();
  const CMat4 gram = b.adjoint() * b;
  CHECK(max_entry_diff(gram, CMat4::identity()) < 1e-15);

  const double s = 1.0 / std::sqrt(2.0);
  CHECK(b(0, 0).real() == doctest::Approx(s));   // phi+ on |00>
  CHECK(b(3, 0).real() == doctest::Approx(s));   // phi+ on |11>
  CHECK(b(3, 1).real() == doctest::Approx(-s));  // phi- on |11>
  CHECK(b(1, 2).real() == doctest::Approx(s));   // psi+ on |01>
  CHECK(b(2, 3).real() == doctest::Approx(-s));  // psi- on |10>

  CHECK(std::string(bell_label_name(BellLabel::phi_plus)) == "phi+");
  CHECK(std::string(bell_label_name(BellLabel::psi_minus)) == "psi-");
}

TEST_CASE("bell_form reproduces the closed-form energies") {
  SUBCASE("Heisenberg alpha = (1,1,1)") {
    const BellForm f = bell_form(interaction(1.0, 1.0, 1.0));
    CHECK(f.bell_energies[0] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(f.bell_energies[1] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(f.bell_energies[2] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(f.bell_energies[3] == doctest::Approx(-3.0).epsilon(1e-10));
    // Ground state is the singlet psi-.
    CHECK(std::min_element(f.bell_energies.begin(), f.bell_energies.end()) -
              f.bell_energies.begin() ==
          3);
  }
  SUBCASE("pure XX coupling alpha = (1,0,0)") {
    const BellForm f = bell_form(interaction(1.0, 0.0, 0.0));
    const std::array<double, 4> expect = {1.0, -1.0, 1.0, -1.0};
    for (int i = 0; i < 4; ++i)
      CHECK(f.bell_energies[static_cast<std::size_t>(i)] ==
            doctest::Approx(expect[static_cast<std::size_t>(i)]).epsilon(1e-10));
  }
  SUBCASE("zero Hamiltonian") {
    const BellForm f = bell_form(PauliHamiltonian{});
    for (double e : f.bell_energies) CHECK(e == doctest::Approx(0.0));
  }
  SUBCASE("energy offset is ignored") {
    PauliHamiltonian h = interaction(0.7, -0.2, 0.4);
    h.c[0][0] = 42.0;
    const BellForm f = bell_form(h);
    double sum = 0.0;
    for (double e : f.bell_energies) sum += e;
    CHECK(sum == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("bell_form rejects Hamiltonians with a field") {
  CHECK_THROWS_AS((void)bell_form(make_rosci(1.0, 1.0)), InvalidInput);
  PauliHamiltonian h = interaction(1.0, 0.5, 0.25);
  h.c[0][3] = 1e-6;
  CHECK_THROWS_AS((void)bell_form(h), InvalidInput);
}

TEST_CASE("bell_form energies match the spectrum of the original operator") {
  // The closed forms are validated against an independent oracle: local
  // unitaries preserve the spectrum, so the Bell energies must equal the
  // eigenvalues of the input (with its trace offset removed).
  for (std::uint64_t trial = 0; trial < 50; ++trial) {
    const PauliHamiltonian h = random_zero_field(mix_seed(0x0be11f0277ULL, trial));
    const BellForm f = bell_form(h);

    CMat4 m = h.matrix();
    const EigenSystem<4> eig = hermitian_eig(m);
    std::array<double, 4> bell_sorted = f.bell_energies;
    std::sort(bell_sorted.begin(), bell_sorted.end());
    for (int i = 0; i < 4; ++i)
      CHECK(bell_sorted[static_cast<std::size_t>(i)] ==
            doctest::Approx(eig.values[static_cast<std::size_t>(i)]).epsilon(1e-9));
  }
}

TEST_CASE("bell_swaps are the three named transpositions") {
  const std::array<LocalSwap, 3> swaps = bell_swaps();

  CHECK(swaps[0].name == "phi+ <-> phi-");
  CHECK(swaps[0].swapped_pair[0] == BellLabel::phi_plus);
  CHECK(swaps[0].swapped_pair[1] == BellLabel::phi_minus);
  CHECK(swaps[1].name == "psi+ <-> psi-");
  CHECK(swaps[2].name == "phi- <-> psi+");

  for (const LocalSwap& s : swaps) {
    // Both factors are unitary.
    CHECK((s.u1.adjoint() * s.u1 - CMat2::identity()).max_abs() < 1e-14);
    CHECK((s.u2.adjoint() * s.u2 - CMat2::identity()).max_abs() < 1e-14);

    // The squared Bell overlaps form exactly the named transposition matrix.
    const CMat4 u = kron(s.u1, s.u2);
    const int a = static_cast<int>(s.swapped_pair[0]);
    const int b = static_cast<int>(s.swapped_pair[1]);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        const int image = j == a ? b : (j == b ? a : j);
        CHECK(overlap_sq(u, i, j) == doctest::Approx(i == image ? 1.0 : 0.0).epsilon(1e-12));
      }
  }

  // Spot checks straight from the definitions.
  CHECK(overlap_sq(kron(swaps[0].u1, swaps[0].u2), 1, 0) == doctest::Approx(1.0));  // phi+ -> phi-
  CHECK(overlap_sq(kron(swaps[2].u1, swaps[2].u2), 2, 1) == doctest::Approx(1.0));  // phi- -> psi+
}

TEST_CASE("composing the swaps yields all 24 Bell permutations") {
  const std::vector<BellPermutation> group = bell_permutation_group();
  CHECK(group.size() == 24);

  std::set<std::array<int, 4>> perms;
  for (const BellPermutation& g : group) {
    perms.insert(g.perm);
    // Each composed unitary realizes its labeled permutation up to phases.
    for (int j = 0; j < 4; ++j)
      for (int i = 0; i < 4; ++i) {
        const double expect = i == g.perm[static_cast<std::size_t>(j)] ? 1.0 : 0.0;
        CHECK(overlap_sq(g.u, i, j) == doctest::Approx(expect).epsilon(1e-12));
      }
  }
  CHECK(perms.size() == 24);
  CHECK(perms.count({0, 1, 2, 3}) == 1);
  CHECK(perms.count({1, 0, 2, 3}) == 1);  // the first generator
}

TEST_CASE("any permutation of the Gibbs populations is locally realizable") {
  const PauliHamiltonian h = interaction(0.9, 0.4, -0.7);
  const DensityMatrix rho = thermal_state(h, 0.8);
  const CMat4& b = bell_basis();

  std::array<double, 4> weights{};
  for (int i = 0; i < 4; ++i) {
    cplx w = 0.0;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) w += std::conj(b(r, i)) * rho.rho(r, c) * b(c, i);
    weights[static_cast<std::size_t>(i)] = w.real();
  }

  for (const BellPermutation& g : bell_permutation_group()) {
    const CMat4 conj = g.u * rho.rho * g.u.adjoint();
    CMat4 expect;
    for (int i = 0; i < 4; ++i) {
      const int target = g.perm[static_cast<std::size_t>(i)];
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
          expect(r, c) += weights[static_cast<std::size_t>(i)] * b(r, target) *
                          std::conj(b(c, target));
    }
    CHECK(max_entry_diff(conj, expect) < 1e-12);
  }
}

TEST_CASE("check_monotone_separability validates its inputs") {
  const PauliHamiltonian h = interaction(1.0, 1.0, 1.0);
  CHECK_THROWS_AS((void)check_monotone_separability(h, {}), InvalidInput);
  CHECK_THROWS_AS((void)check_monotone_separability(h, {0.5, 0.5}), InvalidInput);
  CHECK_THROWS_AS((void)check_monotone_separability(h, {1.0, 0.5}), InvalidInput);
  CHECK_THROWS_AS((void)check_monotone_separability(h, {-1.0, 0.5}), InvalidInput);
  CHECK_THROWS_AS((void)check_monotone_separability(make_rosci(1.0, 1.0), {0.1, 0.2}),
                  InvalidInput);
}

TEST_CASE("heating a zero-field thermal state never revives entanglement") {
  SUBCASE("Heisenberg chain: entangled prefix, then separable forever") {
    const PauliHamiltonian h = interaction(1.0, 1.0, 1.0);
    const std::vector<double> grid = default_t_grid(default_t_max(h), 400);
    const MonotoneReport r = check_monotone_separability(h, grid);
    CHECK(r.monotone);
    CHECK(r.violation_index == -1);
    CHECK(is_entangled(thermal_state(h, grid.front())));
    CHECK_FALSE(is_entangled(thermal_state(h, grid.back())));
  }
  SUBCASE("pure ZZ coupling: diagonal state, empty entangled prefix") {
    const PauliHamiltonian h = interaction(0.0, 0.0, 1.0);
    const std::vector<double> grid = default_t_grid(default_t_max(h), 200);
    CHECK(check_monotone_separability(h, grid).monotone);
    CHECK_FALSE(is_entangled(thermal_state(h, grid.front())));
  }
  SUBCASE("1000 random zero-field samples") {
    for (std::uint64_t trial = 0; trial < 1000; ++trial) {
      const PauliHamiltonian h = random_zero_field(mix_seed(0x2e20f1e1dULL, trial));
      const std::vector<double> grid = default_t_grid(default_t_max(h), 128);
      const MonotoneReport r = check_monotone_separability(h, grid);
      CAPTURE(trial);
      CAPTURE(r.violation_t);
      REQUIRE(r.monotone);
    }
  }
}

TEST_CASE("zero-field Hamiltonians admit at most one entangled region") {
  for (std::uint64_t trial = 0; trial < 1000; ++trial) {
    const PauliHamiltonian h = random_zero_field(mix_seed(0x51491e0177ULL, trial));
    const RegionReport report = detect_regions(h, default_t_max(h));
    CAPTURE(trial);
    REQUIRE(report.intervals.size() <= 1);
  }
}
