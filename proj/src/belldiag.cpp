#include "qtherm/belldiag.hpp"

#include <cmath>
#include <numbers>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qtherm/entanglement.hpp"
#include "qtherm/errors.hpp"

namespace qtherm {

namespace {

constexpr double kLocalTol = 1e-12;
constexpr double kEnergyTol = 1e-10;
constexpr double kSwapTol = 1e-12;

void require_zero_local(const PauliHamiltonian& h, const char* fn) {
  for (std::size_t k = 1; k < 4; ++k)
    if (std::abs(h.c[k][0]) > kLocalTol || std::abs(h.c[0][k]) > kLocalTol)
      throw InvalidInput(std::string(fn) + ": Hamiltonian has a nonzero local part");
}

// e^{i theta Z} = diag(e^{i theta}, e^{-i theta}).
CMat2 exp_i_z(double theta) {
  CMat2 m;
  m(0, 0) = std::polar(1.0, theta);
  m(1, 1) = std::polar(1.0, -theta);
  return m;
}

CMat2 hadamard() {
  const double s = 1.0 / std::sqrt(2.0);
  CMat2 m;
  m(0, 0) = s;
  m(0, 1) = s;
  m(1, 0) = s;
  m(1, 1) = -s;
  return m;
}

// P(i, j) = |<bell_i| u |bell_j>|^2; phase-insensitive action on the basis.
std::array<std::array<double, 4>, 4> bell_overlap_sq(const CMat4& u) {
  const CMat4& b = bell_basis();
  const CMat4 m = b.adjoint() * (u * b);
  std::array<std::array<double, 4>, 4> p{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      p[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = std::norm(m(i, j));
  return p;
}

}  // namespace

const char* bell_label_name(BellLabel label) {
  switch (label) {
    case BellLabel::phi_plus: return "phi+";
    case BellLabel::phi_minus: return "phi-";
    case BellLabel::psi_plus: return "psi+";
    case BellLabel::psi_minus: return "psi-";
  }
  throw InvalidInput("bell_label_name: invalid label");
}

const CMat4& bell_basis() {
  static const CMat4 b = [] {
    const double s = 1.0 / std::sqrt(2.0);
    CMat4 m;
    // Rows: |00>, |01>, |10>, |11>. Columns: phi+, phi-, psi+, psi-.
    m(0, 0) = s;
    m(3, 0) = s;
    m(0, 1) = s;
    m(3, 1) = -s;
    m(1, 2) = s;
    m(2, 2) = s;
    m(1, 3) = s;
    m(2, 3) = -s;
    return m;
  }();
  return b;
}

BellForm bell_form(const PauliHamiltonian& h) {
  require_zero_local(h, "bell_form");
  const CanonicalForm cf = canonical_form(h);

  BellForm out;
  out.alpha = cf.alpha;
  const double ax = cf.alpha[0];
  const double ay = cf.alpha[1];
  const double az = cf.alpha[2];
  out.bell_energies = {ax - ay + az, -ax + ay + az, ax + ay - az, -ax - ay - az};

  // Cross-check: conjugating h (minus its energy offset) by the canonical
  // unitaries must give an operator that is Bell-diagonal with exactly these
  // energies. This catches any sign/permutation slip in the closed forms.
  CMat4 hm = h.matrix() - h.c[0][0] * CMat4::identity();
  const CMat4 v = kron(cf.v1, cf.v2);
  const CMat4 d = bell_basis().adjoint() * (v * hm * v.adjoint()) * bell_basis();
  double scale = 1.0;
  for (double e : out.bell_energies) scale = std::max(scale, std::abs(e));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const cplx expect = i == j ? out.bell_energies[static_cast<std::size_t>(i)] : cplx{};
      if (std::abs(d(i, j) - expect) > kEnergyTol * scale)
        throw ComputationError("bell_form: canonical operator is not Bell-diagonal "
                               "with the closed-form energies");
    }
  return out;
}

std::array<LocalSwap, 3> bell_swaps() {
  constexpr double quarter = std::numbers::pi / 4.0;
  std::array<LocalSwap, 3> swaps = {
      LocalSwap{exp_i_z(quarter), exp_i_z(quarter),
                {BellLabel::phi_plus, BellLabel::phi_minus}, "phi+ <-> phi-"},
      LocalSwap{exp_i_z(-quarter), exp_i_z(quarter),
                {BellLabel::psi_plus, BellLabel::psi_minus}, "psi+ <-> psi-"},
      LocalSwap{hadamard(), hadamard(),
                {BellLabel::phi_minus, BellLabel::psi_plus}, "phi- <-> psi+"},
  };

  // Verify each swap acts as the named transposition on Bell projectors.
  for (const LocalSwap& s : swaps) {
    const auto p = bell_overlap_sq(kron(s.u1, s.u2));
    const int a = static_cast<int>(s.swapped_pair[0]);
    const int b = static_cast<int>(s.swapped_pair[1]);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        int image = j == a ? b : (j == b ? a : j);
        const double expect = i == image ? 1.0 : 0.0;
        if (std::abs(p[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] - expect) >
            kSwapTol)
          throw ComputationError(std::string("bell_swaps: ") + s.name +
                                 " does not act as the named transposition");
      }
  }
  return swaps;
}

std::vector<BellPermutation> bell_permutation_group() {
  const std::array<LocalSwap, 3> swaps = bell_swaps();
  struct Generator {
    std::array<int, 4> perm;
    CMat4 u;
  };
  std::vector<Generator> gens;
  for (const LocalSwap& s : swaps) {
    Generator g{{0, 1, 2, 3}, kron(s.u1, s.u2)};
    std::swap(g.perm[static_cast<std::size_t>(s.swapped_pair[0])],
              g.perm[static_cast<std::size_t>(s.swapped_pair[1])]);
    gens.push_back(g);
  }

  std::map<std::array<int, 4>, CMat4> reached;
  reached.emplace(std::array<int, 4>{0, 1, 2, 3}, CMat4::identity());
  std::vector<std::array<int, 4>> frontier = {{0, 1, 2, 3}};
  while (!frontier.empty()) {
    std::vector<std::array<int, 4>> next;
    for (const auto& perm : frontier) {
      const CMat4 u = reached.at(perm);
      for (const Generator& g : gens) {
        std::array<int, 4> composed{};
        for (std::size_t i = 0; i < 4; ++i)
          composed[i] = g.perm[static_cast<std::size_t>(perm[i])];
        if (reached.emplace(composed, g.u * u).second) next.push_back(composed);
      }
    }
    frontier = std::move(next);
  }

  std::vector<BellPermutation> out;
  out.reserve(reached.size());
  for (const auto& [perm, u] : reached) out.push_back(BellPermutation{perm, u});
  return out;
}

MonotoneReport check_monotone_separability(const PauliHamiltonian& h,
                                           const std::vector<double>& t_grid) {
  require_zero_local(h, "check_monotone_separability");
  if (t_grid.empty())
    throw InvalidInput("check_monotone_separability: empty temperature grid");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (std::isnan(t_grid[i]) || t_grid[i] < 0.0)
      throw InvalidInput("check_monotone_separability: temperatures must be >= 0");
    if (i > 0 && !(t_grid[i] > t_grid[i - 1]))
      throw InvalidInput("check_monotone_separability: grid must be strictly ascending");
  }

  MonotoneReport report;
  bool seen_separable = false;
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    const bool e = is_entangled(thermal_state(h, t_grid[i]));
    if (e && seen_separable) {
      report.monotone = false;
      report.violation_index = static_cast<int>(i);
      report.violation_t = t_grid[i];
      return report;
    }
    if (!e) seen_separable = true;
  }
  return report;
}

}  // namespace qtherm
