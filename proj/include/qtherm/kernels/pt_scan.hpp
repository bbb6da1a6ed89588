#pragma once

// Batched evaluation of det(PT(rho(T)) + shift*I) over temperature grids.
// This is the inner loop of region detection: a two-qubit partial transpose
// has at most one negative eigenvalue, so for shift > 0 the determinant is
// negative exactly when the minimum PT eigenvalue is below -shift. That
// turns the entanglement decision into a branch-free determinant sign.
//
// The Hamiltonian-dependent work (one eigendecomposition, four transposed
// projectors) is hoisted into a context; per temperature only four
// exponentials and a 4x4 determinant remain. A scalar reference
// implementation and an AVX2 variant (four temperatures per iteration) are
// selected at runtime and tested for equivalence.

#include <array>
#include <cstddef>

#include "qtherm/hamiltonian.hpp"

namespace qtherm {

struct ThermalPtContext {
  // Eigenenergies shifted so energies[0] == 0, ascending.
  std::array<double, 4> energies{};
  // Partial transposes of the four eigenprojectors, row-major, split into
  // real and imaginary parts for vector-friendly access.
  std::array<std::array<double, 16>, 4> q_re{};
  std::array<std::array<double, 16>, 4> q_im{};
};

ThermalPtContext make_pt_context(const PauliHamiltonian& h);

// det(sum_i w[i] Q_i + shift*I) for explicit weights; used for the T = 0
// and T = infinity endpoints where the Gibbs weights are not exponentials.
double pt_det_from_weights(const ThermalPtContext& ctx, const std::array<double, 4>& weights,
                           double shift);

enum class Isa { scalar, avx2 };

// Instruction set the dispatcher will use on this machine.
Isa active_isa();

// out[k] = det(PT(rho(temps[k])) + shift*I). Every temperature must be
// finite and positive; endpoints go through pt_det_from_weights.
void pt_det_scan(const ThermalPtContext& ctx, const double* temps, std::size_t n, double shift,
                 double* out);

namespace detail {
void pt_det_scan_scalar(const ThermalPtContext& ctx, const double* temps, std::size_t n,
                        double shift, double* out);
#if defined(QTHERM_HAVE_AVX2)
void pt_det_scan_avx2(const ThermalPtContext& ctx, const double* temps, std::size_t n,
                      double shift, double* out);
#endif
}  // namespace detail

}  // namespace qtherm
