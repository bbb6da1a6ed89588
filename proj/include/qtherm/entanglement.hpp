#pragma once

// Entanglement of two-qubit mixed states: Wootters concurrence, the partial
// transpose, and the entangled/separable decision. For two qubits the
// positive-partial-transpose test is exact, so is_entangled and
// concurrence > 0 agree away from the numerical boundary.

#include "qtherm/thermal.hpp"

namespace qtherm {

// Wootters concurrence C = max(0, l1 - l2 - l3 - l4), where the l_i are the
// descending square roots of the eigenvalues of rho * rho_tilde and
// rho_tilde = (Y(x)Y) conj(rho) (Y(x)Y). Computed through the Hermitian
// equivalent sqrt(rho) * rho_tilde * sqrt(rho); eigenvalues above -1e-12 are
// clamped to zero before the square root. Throws InvalidInput when rho is
// not a density matrix (Hermitian, unit trace, eigenvalues >= -1e-12).
double concurrence(const DensityMatrix& rho);

// Transpose of the first qubit: block (m,n) of the 2x2-block structure moves
// to (n,m). An involution; preserves Hermiticity and trace.
CMat4 partial_transpose(const CMat4& m);

struct PTReport {
  double min_eigenvalue = 0.0;  // smallest eigenvalue of the partial transpose
  double determinant = 0.0;     // det of the partial transpose (independent path)
};

// Minimum eigenvalue and determinant of partial_transpose(rho). A two-qubit
// partial transpose has at most one negative eigenvalue, so the two fields
// agree in sign away from zero.
PTReport pt_report(const DensityMatrix& rho);

// True iff the minimum partial-transpose eigenvalue is below -tol. The
// default 1e-13 is the resolution limit of this representation: states
// entangled more weakly than that are reported separable.
bool is_entangled(const DensityMatrix& rho, double tol = 1e-13);

}  // namespace qtherm
