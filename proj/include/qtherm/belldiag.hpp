#pragma once

// Zero-field (no single-qubit terms) two-qubit Hamiltonians: the Bell-basis
// canonical form, the three local-unitary Bell swaps, the permutation group
// they generate, and the monotone-separability check behind the single
// entangled-region theorem for this class.

#include <array>
#include <string>
#include <vector>

#include "qtherm/hamiltonian.hpp"
#include "qtherm/thermal.hpp"

namespace qtherm {

// Fixed Bell-state order used everywhere in this module.
enum class BellLabel : int { phi_plus = 0, phi_minus = 1, psi_plus = 2, psi_minus = 3 };

const char* bell_label_name(BellLabel label);  // "phi+", "phi-", "psi+", "psi-"

// Unitary whose columns are the Bell states in label order:
// |phi+-> = (|00> +- |11>)/sqrt(2), |psi+-> = (|01> +- |10>)/sqrt(2).
const CMat4& bell_basis();

// A zero-field Hamiltonian reduced by local unitaries to
// alpha_x XX + alpha_y YY + alpha_z ZZ, which is diagonal in the Bell basis.
struct BellForm {
  std::array<double, 3> alpha{};          // canonical interaction coefficients
  std::array<double, 4> bell_energies{};  // eigenvalues in Bell label order
};

// Reduce h to Bell-diagonal form. The energies come from the closed forms
//   E(phi+) = ax - ay + az,   E(phi-) = -ax + ay + az,
//   E(psi+) = ax + ay - az,   E(psi-) = -ax - ay - az,
// and are cross-checked numerically against the conjugated operator (the
// canonical-form sign repair may permute or negate the alphas, so the forms
// are verified rather than trusted). Throws InvalidInput when any
// single-qubit coefficient exceeds 1e-12, ComputationError if the numeric
// check fails beyond 1e-10.
BellForm bell_form(const PauliHamiltonian& h);

// A product unitary u1 (x) u2 that exchanges one pair of Bell states and
// fixes the other two, all up to global phases.
struct LocalSwap {
  CMat2 u1;
  CMat2 u2;
  std::array<BellLabel, 2> swapped_pair{};
  std::string name;
};

// The three generating swaps:
//   phi+ <-> phi- : e^{i pi Z/4} (x) e^{i pi Z/4}
//   psi+ <-> psi- : e^{-i pi Z/4} (x) e^{i pi Z/4}
//   phi- <-> psi+ : H (x) H with H = (X + Z)/sqrt(2)
// Each is verified at construction by conjugation: the squared overlaps
// |<bell_i| u1 (x) u2 |bell_j>|^2 must form the named transposition's
// permutation matrix to 1e-12 (squared overlaps make the check insensitive
// to the phases picked up along the way).
std::array<LocalSwap, 3> bell_swaps();

// One element of the permutation group generated by the swaps.
struct BellPermutation {
  std::array<int, 4> perm{};  // Bell state i is sent to Bell state perm[i]
  CMat4 u;                    // composed product unitary realizing it
};

// Breadth-first closure of bell_swaps() under composition. For two qubits
// the three transpositions generate all 24 permutations of the Bell labels,
// so any reordering of the Gibbs populations of a Bell-diagonal state is
// realizable by local unitaries.
std::vector<BellPermutation> bell_permutation_group();

// Result of scanning is_entangled(rho(t)) over an ascending grid.
struct MonotoneReport {
  bool monotone = true;
  int violation_index = -1;   // first grid index entangled after separable
  double violation_t = 0.0;   // temperature at that index
};

// True iff the entanglement indicator over the grid is a block of ones
// followed by a block of zeros (either block may be empty): once the state
// turns separable while heating it stays separable. Throws InvalidInput for
// a nonzero local part or a non-ascending grid.
MonotoneReport check_monotone_separability(const PauliHamiltonian& h,
                                           const std::vector<double>& t_grid);

}  // namespace qtherm
