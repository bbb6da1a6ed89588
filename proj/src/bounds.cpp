#include "qtherm/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <vector>

#include "qtherm/errors.hpp"
#include "qtherm/kernels/pt_scan.hpp"
#include "qtherm/smallmat.hpp"

namespace qtherm {

namespace {

// Denominators of the continued-fraction convergents of y in [0, 1], capped.
std::vector<long long> convergent_denominators(double y, long long max_den) {
  std::vector<long long> dens{1};
  long long k_prev = 0, k_curr = 1;
  double frac = y;
  for (int depth = 0; depth < 64; ++depth) {
    if (std::abs(frac) < 1e-15) break;
    frac = 1.0 / frac;
    const double a_real = std::floor(frac);
    if (a_real > static_cast<double>(max_den)) break;
    const long long a = static_cast<long long>(a_real);
    const long long k_next = a * k_curr + k_prev;
    if (k_next > max_den || k_next <= 0) break;
    dens.push_back(k_next);
    k_prev = k_curr;
    k_curr = k_next;
    frac -= a_real;
  }
  return dens;
}

using Poly = std::map<long long, std::complex<double>>;

void add_scaled(Poly& acc, const Poly& p, double sign) {
  for (const auto& [n, c] : p) acc[n] += sign * c;
}

Poly mul(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [na, ca] : a) {
    for (const auto& [nb, cb] : b) out[na + nb] += ca * cb;
  }
  return out;
}

// minor(r0, r1; c0, c1) of a 4x4 polynomial-entry matrix.
Poly minor2(const std::array<Poly, 16>& m, int r0, int r1, int c0, int c1) {
  Poly out = mul(m[4 * r0 + c0], m[4 * r1 + c1]);
  add_scaled(out, mul(m[4 * r0 + c1], m[4 * r1 + c0]), -1.0);
  return out;
}

}  // namespace

RationalSpectrum rationalize_energies(const std::array<double, 4>& energies,
                                      long long max_denominator) {
  for (double e : energies) {
    if (!std::isfinite(e)) throw InvalidInput("rationalize_energies: non-finite energy");
  }
  if (max_denominator < 1) throw InvalidInput("rationalize_energies: max_denominator must be >= 1");

  const double e_min = *std::min_element(energies.begin(), energies.end());
  std::array<double, 4> shifted{};
  for (int i = 0; i < 4; ++i) shifted[i] = energies[i] - e_min;
  const double width = *std::max_element(shifted.begin(), shifted.end());

  RationalSpectrum out;
  if (width == 0.0) {
    out.integer_levels = {0, 0, 0, 0};
    out.r = 1.0;
    out.approx_error = 0.0;
    return out;
  }

  // Candidate common denominators: convergent denominators of each ratio
  // E_i / width, plus their pairwise lcms within the cap. Exact rationals are
  // recovered because every reduced denominator appears among convergents.
  std::vector<long long> candidates{1};
  std::array<double, 4> ratios{};
  for (int i = 0; i < 4; ++i) {
    ratios[i] = shifted[i] / width;
    if (ratios[i] > 0.0 && ratios[i] < 1.0) {
      const auto dens = convergent_denominators(ratios[i], max_denominator);
      candidates.insert(candidates.end(), dens.begin(), dens.end());
    }
  }
  const std::size_t primary = candidates.size();
  for (std::size_t a = 0; a < primary; ++a) {
    for (std::size_t b = a + 1; b < primary; ++b) {
      const long long l = std::lcm(candidates[a], candidates[b]);
      if (l <= max_denominator) candidates.push_back(l);
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  const auto error_of = [&](long long q, std::array<long long, 4>& levels) {
    double err = 0.0;
    for (int i = 0; i < 4; ++i) {
      levels[i] = std::llround(ratios[i] * static_cast<double>(q));
      err = std::max(err, std::abs(shifted[i] - (width / q) * levels[i]));
    }
    return err;
  };

  double best_err = std::numeric_limits<double>::infinity();
  for (long long q : candidates) {
    std::array<long long, 4> levels{};
    best_err = std::min(best_err, error_of(q, levels));
  }
  // Smallest denominator within noise of the best keeps levels in lowest
  // terms instead of overfitting eigenvalue jitter with a huge lcm.
  for (long long q : candidates) {
    std::array<long long, 4> levels{};
    const double err = error_of(q, levels);
    if (err <= best_err + 1e-12 * width) {
      out.integer_levels = levels;
      out.r = width / q;
      out.approx_error = err;
      return out;
    }
  }
  throw ComputationError("rationalize_energies: no candidate denominator");  // unreachable
}

ExpPolynomial pt_det_polynomial(const PauliHamiltonian& h, const RationalSpectrum& spec) {
  if (!(spec.r > 0.0) || !std::isfinite(spec.r)) {
    throw InvalidInput("pt_det_polynomial: scale r must be positive");
  }
  const ThermalPtContext ctx = make_pt_context(h);
  const double width = ctx.energies[3];
  long long min_level = spec.integer_levels[0];
  for (long long n : spec.integer_levels) min_level = std::min(min_level, n);
  if (min_level != 0) throw InvalidInput("pt_det_polynomial: minimum level must be 0");
  for (int i = 0; i < 4; ++i) {
    const double mismatch = std::abs(ctx.energies[i] - spec.r * spec.integer_levels[i]);
    if (mismatch > spec.approx_error + 1e-9 * (1.0 + width)) {
      throw InvalidInput("pt_det_polynomial: spectrum does not match the Hamiltonian");
    }
  }

  // Entry (m, n) of Z * PT(rho) as a polynomial: sum_i x^{n_i} (Q_i)_{mn}.
  std::array<Poly, 16> m{};
  for (int i = 0; i < 4; ++i) {
    for (int e = 0; e < 16; ++e) {
      const std::complex<double> q(ctx.q_re[i][e], ctx.q_im[i][e]);
      if (q != 0.0) m[e][spec.integer_levels[i]] += q;
    }
  }

  // Laplace expansion along the first two rows, as in the numeric det4.
  Poly det;
  add_scaled(det, mul(minor2(m, 0, 1, 0, 1), minor2(m, 2, 3, 2, 3)), 1.0);
  add_scaled(det, mul(minor2(m, 0, 1, 0, 2), minor2(m, 2, 3, 1, 3)), -1.0);
  add_scaled(det, mul(minor2(m, 0, 1, 0, 3), minor2(m, 2, 3, 1, 2)), 1.0);
  add_scaled(det, mul(minor2(m, 0, 1, 1, 2), minor2(m, 2, 3, 0, 3)), 1.0);
  add_scaled(det, mul(minor2(m, 0, 1, 1, 3), minor2(m, 2, 3, 0, 2)), -1.0);
  add_scaled(det, mul(minor2(m, 0, 1, 2, 3), minor2(m, 2, 3, 0, 1)), 1.0);

  double max_abs = 0.0;
  for (const auto& [n, c] : det) max_abs = std::max(max_abs, std::abs(c.real()));
  ExpPolynomial out;
  out.r = spec.r;
  for (const auto& [n, c] : det) {
    if (std::abs(c.imag()) > 1e-10) {
      throw ComputationError("pt_det_polynomial: imaginary residue above 1e-10");
    }
    if (std::abs(c.real()) > 1e-12 * max_abs) out.terms[n] = c.real();
  }
  return out;
}

int derivative_sign_changes(const ExpPolynomial& p) {
  if (p.terms.empty()) throw InvalidInput("descartes_region_bound: empty polynomial");
  // Formal derivative n * c_n at exponent n - 1 (the n = 0 term drops),
  // reduced to its coefficient sign pattern.
  std::map<long long, double> deriv;
  double max_abs = 0.0;
  for (const auto& [n, c] : p.terms) {
    if (n == 0) continue;
    deriv[n - 1] = static_cast<double>(n) * c;
    max_abs = std::max(max_abs, std::abs(deriv[n - 1]));
  }
  int changes = 0;
  int prev = 0;
  for (const auto& [n, c] : deriv) {
    if (std::abs(c) <= 1e-12 * max_abs) continue;
    const int sign = c > 0.0 ? 1 : -1;
    if (prev != 0 && sign != prev) ++changes;
    prev = sign;
  }
  return changes;
}

int descartes_region_bound(const ExpPolynomial& p) {
  const int changes = derivative_sign_changes(p);
  // As x -> 0+ the lowest-exponent stored term dominates, so its coefficient
  // carries the sign of p near the low-temperature end of the domain.  Using
  // the lowest *stored* term (rather than requiring exponent exactly 0) keeps
  // the test meaningful when a microscopic constant term fell below the
  // pruning threshold.
  const bool negative_near_zero = p.terms.begin()->second < 0.0;
  const int bound = negative_near_zero ? changes / 2 + 1 : (changes + 1) / 2;
  return std::min(bound, 17);
}

double evaluate(const ExpPolynomial& p, double x) {
  if (!(x >= 0.0) || !std::isfinite(x)) throw InvalidInput("evaluate: x must be finite and >= 0");
  double sum = 0.0;
  for (const auto& [n, c] : p.terms) sum += c * std::pow(x, static_cast<double>(n));
  return sum;
}

}  // namespace qtherm
