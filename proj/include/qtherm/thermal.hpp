#pragma once

// Canonical-ensemble thermal states rho(T) = exp(-H/T)/Z (k_B = 1), their
// population spectra, and the majorization comparator used to show that
// heating never sharpens the spectrum.

#include <array>
#include <limits>

#include "qtherm/hamiltonian.hpp"

namespace qtherm {

// Marker accepted by every temperature argument: rho becomes I/4.
inline constexpr double kInfiniteTemperature = std::numeric_limits<double>::infinity();

struct DensityMatrix {
  CMat4 rho;
};

// Gibbs weights for the given energies at temperature t, in matching order.
// Exponentials are taken relative to the minimum energy so small t cannot
// overflow. t below 1e-12 is treated as exactly zero: the weight is spread
// uniformly over the ground space, where levels within 1e-10 of the spectral
// width count as degenerate. Throws InvalidInput for negative or NaN t.
std::array<double, 4> gibbs_weights(const std::array<double, 4>& energies, double t);

// rho(T). The identity coefficient c[I][I] is dropped before
// diagonalization, making the result exactly invariant under energy shifts.
DensityMatrix thermal_state(const PauliHamiltonian& h, double t);

struct Spectrum {
  std::array<double, 4> values{};  // populations, descending
};

// The four Gibbs populations of thermal_state(h, t), sorted descending.
Spectrum gibbs_spectrum(const PauliHamiltonian& h, double t);

// True iff p majorizes q: every prefix sum of p (descending) is at least the
// matching prefix sum of q, within slack 1e-12. Throws InvalidInput unless
// both spectra are normalized to 1e-9.
bool majorizes(const Spectrum& p, const Spectrum& q);

}  // namespace qtherm
