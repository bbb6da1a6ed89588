#pragma once

// Certified bound on the number of entangled temperature regions. After
// scaling the spectrum so the minimum energy is zero and approximating the
// level ratios by rationals, Z^4 * det(PT(rho(T))) becomes a polynomial in
// x = e^{-r/T} with integer exponents and at most 35 terms (the distinct
// sums of four, possibly repeated, levels). Descartes' rule of signs on its
// formal derivative then caps the number of negative regions — hence
// entangled regions — at 17 for two qubits.

#include <array>
#include <cstdint>
#include <map>

#include "qtherm/hamiltonian.hpp"

namespace qtherm {

struct RationalSpectrum {
  // Nonnegative, minimum exactly 0, in the order of the input energies.
  std::array<long long, 4> integer_levels{};
  double r = 1.0;             // positive scale: E_i ~ r * integer_levels[i]
  double approx_error = 0.0;  // max_i |E_i - r * integer_levels[i]| after the min shift
};

// Continued-fraction approximation of the energy ratios over a common
// denominator bounded by max_denominator. Exactly rational spectra with a
// representable denominator are recovered with zero error; an all-equal
// spectrum maps to levels (0,0,0,0) with r = 1.
RationalSpectrum rationalize_energies(const std::array<double, 4>& energies,
                                      long long max_denominator = 1000000);

struct ExpPolynomial {
  std::map<long long, double> terms;  // ascending exponent -> coefficient
  double r = 1.0;                     // x = e^{-r/T}
};

// Exact cofactor-expansion determinant of sum_i x^{n_i} * PT(|psi_i><psi_i|)
// over the polynomial ring, pruned at 1e-12 of the largest coefficient.
// Throws InvalidInput when spec does not match h's spectrum, and
// ComputationError if any coefficient keeps an imaginary residue > 1e-10.
ExpPolynomial pt_det_polynomial(const PauliHamiltonian& h, const RationalSpectrum& spec);

// Sign changes of the formal derivative's coefficients in ascending exponent
// order, with coefficients below 1e-12 of the largest treated as zero. At
// most 34 for a two-qubit determinant polynomial (<= 35 derivative terms).
int derivative_sign_changes(const ExpPolynomial& p);

// Upper bound on the number of maximal x-intervals in (0, 1) where p < 0,
// i.e. on the number of entangled temperature regions. With S sign changes
// the derivative has at most S positive roots (Descartes), so at most S
// turning points. k interior negative intervals need a minimum inside each
// and a maximum between consecutive ones (>= 2k - 1 turning points); when p
// is negative as x -> 0+ (lowest stored coefficient < 0) one interval may
// lean on the boundary and the count drops to >= 2k - 2. Hence
// floor(S/2) + 1 in the negative-near-zero case and floor((S+1)/2)
// otherwise, both capped at 17 for two qubits.
int descartes_region_bound(const ExpPolynomial& p);

// sum_n c_n x^n; with x = e^{-p.r/T} this reproduces Z^4 * det(PT(rho(T)))
// for the rationalized spectrum.
double evaluate(const ExpPolynomial& p, double x);

}  // namespace qtherm
