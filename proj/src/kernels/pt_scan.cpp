#include "qtherm/kernels/pt_scan.hpp"

#include <cmath>
#include <complex>

#include "qtherm/entanglement.hpp"

namespace qtherm {

ThermalPtContext make_pt_context(const PauliHamiltonian& h) {
  PauliHamiltonian copy = h;
  copy.c[0][0] = 0.0;  // same exact shift invariance as thermal_state
  const EigenSystem<4> eig = hermitian_eig(copy.matrix());

  ThermalPtContext ctx;
  for (int i = 0; i < 4; ++i)
    ctx.energies[static_cast<std::size_t>(i)] =
        eig.values[static_cast<std::size_t>(i)] - eig.values[0];

  for (int i = 0; i < 4; ++i) {
    CMat4 proj;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) proj(r, c) = eig.vectors(r, i) * std::conj(eig.vectors(c, i));
    const CMat4 q = partial_transpose(proj);
    for (int k = 0; k < 16; ++k) {
      ctx.q_re[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] =
          q.a[static_cast<std::size_t>(k)].real();
      ctx.q_im[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] =
          q.a[static_cast<std::size_t>(k)].imag();
    }
  }
  return ctx;
}

namespace {

double det_of_weighted(const ThermalPtContext& ctx, const double w[4], double shift) {
  std::complex<double> m[16];
  for (int k = 0; k < 16; ++k) {
    double re = 0.0, im = 0.0;
    for (int i = 0; i < 4; ++i) {
      re += w[i] * ctx.q_re[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
      im += w[i] * ctx.q_im[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
    }
    m[k] = {re, im};
  }
  for (int d = 0; d < 4; ++d) m[5 * d] += shift;

  // Laplace expansion along the first two rows.
  auto minor01 = [&](int c0, int c1) { return m[c0] * m[4 + c1] - m[c1] * m[4 + c0]; };
  auto minor23 = [&](int c0, int c1) { return m[8 + c0] * m[12 + c1] - m[8 + c1] * m[12 + c0]; };
  const std::complex<double> det = minor01(0, 1) * minor23(2, 3) - minor01(0, 2) * minor23(1, 3) +
                                   minor01(0, 3) * minor23(1, 2) + minor01(1, 2) * minor23(0, 3) -
                                   minor01(1, 3) * minor23(0, 2) + minor01(2, 3) * minor23(0, 1);
  return det.real();
}

}  // namespace

double pt_det_from_weights(const ThermalPtContext& ctx, const std::array<double, 4>& weights,
                           double shift) {
  return det_of_weighted(ctx, weights.data(), shift);
}

namespace detail {

void pt_det_scan_scalar(const ThermalPtContext& ctx, const double* temps, std::size_t n,
                        double shift, double* out) {
  for (std::size_t k = 0; k < n; ++k) {
    const double t = temps[k];
    double w[4];
    double z = 0.0;
    for (int i = 0; i < 4; ++i) {
      w[i] = std::exp(-ctx.energies[static_cast<std::size_t>(i)] / t);
      z += w[i];
    }
    const double inv_z = 1.0 / z;
    for (double& v : w) v *= inv_z;
    out[k] = det_of_weighted(ctx, w, shift);
  }
}

}  // namespace detail

Isa active_isa() {
#if defined(QTHERM_HAVE_AVX2)
  static const bool avx2 = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return avx2 ? Isa::avx2 : Isa::scalar;
#else
  return Isa::scalar;
#endif
}

void pt_det_scan(const ThermalPtContext& ctx, const double* temps, std::size_t n, double shift,
                 double* out) {
  for (std::size_t k = 0; k < n; ++k)
    if (!(temps[k] > 0.0) || std::isinf(temps[k]))
      throw InvalidInput("pt_det_scan: temperatures must be finite and positive");
#if defined(QTHERM_HAVE_AVX2)
  if (active_isa() == Isa::avx2) {
    detail::pt_det_scan_avx2(ctx, temps, n, shift, out);
    return;
  }
#endif
  detail::pt_det_scan_scalar(ctx, temps, n, shift, out);
}

}  // namespace qtherm
