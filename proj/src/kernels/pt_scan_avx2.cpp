#include "qtherm/kernels/pt_scan.hpp"

#if defined(QTHERM_HAVE_AVX2)

#include <immintrin.h>

namespace qtherm {
namespace detail {
namespace {

// exp(x) for x <= 0, four lanes. Cody-Waite argument reduction against ln 2
// followed by a degree-13 Taylor polynomial on |r| <= ln(2)/2 (truncation
// error ~4e-18 relative) and exponent reassembly through the double's bit
// layout. Lanes below -708 flush to zero: they would be subnormal anyway
// and the Gibbs weight is then indistinguishable from zero.
inline __m256d exp_nonpositive(__m256d x) {
  const __m256d flush = _mm256_cmp_pd(x, _mm256_set1_pd(-708.0), _CMP_LT_OQ);
  const __m256d xc = _mm256_max_pd(x, _mm256_set1_pd(-750.0));

  const __m256d n = _mm256_round_pd(_mm256_mul_pd(xc, _mm256_set1_pd(1.44269504088896338700e+00)),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(n, _mm256_set1_pd(6.93147180369123816490e-01), xc);
  r = _mm256_fnmadd_pd(n, _mm256_set1_pd(1.90821492927058770002e-10), r);

  static constexpr double kInvFactorial[14] = {
      1.0,
      1.0,
      1.0 / 2,
      1.0 / 6,
      1.0 / 24,
      1.0 / 120,
      1.0 / 720,
      1.0 / 5040,
      1.0 / 40320,
      1.0 / 362880,
      1.0 / 3628800,
      1.0 / 39916800,
      1.0 / 479001600,
      1.0 / 6227020800.0,
  };
  __m256d p = _mm256_set1_pd(kInvFactorial[13]);
  for (int k = 12; k >= 0; --k) p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(kInvFactorial[k]));

  const __m256i n64 = _mm256_cvtepi32_epi64(_mm256_cvtpd_epi32(n));
  const __m256i bits = _mm256_slli_epi64(_mm256_add_epi64(n64, _mm256_set1_epi64x(1023)), 52);
  const __m256d result = _mm256_mul_pd(p, _mm256_castsi256_pd(bits));
  return _mm256_andnot_pd(flush, result);
}

struct CVec {
  __m256d re, im;
};

inline CVec cmul(const CVec& a, const CVec& b) {
  return {_mm256_fmsub_pd(a.re, b.re, _mm256_mul_pd(a.im, b.im)),
          _mm256_fmadd_pd(a.re, b.im, _mm256_mul_pd(a.im, b.re))};
}

inline CVec csub(const CVec& a, const CVec& b) {
  return {_mm256_sub_pd(a.re, b.re), _mm256_sub_pd(a.im, b.im)};
}

// a*d - b*c, the 2x2 minor.
inline CVec cminor(const CVec& a, const CVec& b, const CVec& c, const CVec& d) {
  return csub(cmul(a, d), cmul(b, c));
}

inline __m256d real_of_product(const CVec& p, const CVec& q) {
  return _mm256_fmsub_pd(p.re, q.re, _mm256_mul_pd(p.im, q.im));
}

}  // namespace

void pt_det_scan_avx2(const ThermalPtContext& ctx, const double* temps, std::size_t n,
                      double shift, double* out) {
  const std::size_t main = n - n % 4;

  for (std::size_t k = 0; k < main; k += 4) {
    const __m256d t = _mm256_loadu_pd(temps + k);
    const __m256d neg_inv_t = _mm256_div_pd(_mm256_set1_pd(-1.0), t);

    __m256d w[4];
    __m256d z = _mm256_setzero_pd();
    for (int i = 0; i < 4; ++i) {
      w[i] = exp_nonpositive(_mm256_mul_pd(_mm256_set1_pd(ctx.energies[static_cast<std::size_t>(i)]),
                                           neg_inv_t));
      z = _mm256_add_pd(z, w[i]);
    }
    const __m256d inv_z = _mm256_div_pd(_mm256_set1_pd(1.0), z);
    for (auto& wi : w) wi = _mm256_mul_pd(wi, inv_z);

    // Weighted sum of the four transposed projectors, plus shift on the
    // diagonal. Entries are per-Hamiltonian scalars broadcast to all lanes.
    CVec m[16];
    for (int e = 0; e < 16; ++e) {
      __m256d re = _mm256_mul_pd(w[0], _mm256_set1_pd(ctx.q_re[0][static_cast<std::size_t>(e)]));
      __m256d im = _mm256_mul_pd(w[0], _mm256_set1_pd(ctx.q_im[0][static_cast<std::size_t>(e)]));
      for (int i = 1; i < 4; ++i) {
        re = _mm256_fmadd_pd(w[i], _mm256_set1_pd(ctx.q_re[static_cast<std::size_t>(i)][static_cast<std::size_t>(e)]), re);
        im = _mm256_fmadd_pd(w[i], _mm256_set1_pd(ctx.q_im[static_cast<std::size_t>(i)][static_cast<std::size_t>(e)]), im);
      }
      m[e] = {re, im};
    }
    const __m256d shift_v = _mm256_set1_pd(shift);
    for (int d = 0; d < 4; ++d) m[5 * d].re = _mm256_add_pd(m[5 * d].re, shift_v);

    // Laplace expansion along the first two rows, keeping only the real
    // part of the final sum (the matrix is Hermitian).
    const CVec m01_01 = cminor(m[0], m[1], m[4], m[5]);
    const CVec m01_02 = cminor(m[0], m[2], m[4], m[6]);
    const CVec m01_03 = cminor(m[0], m[3], m[4], m[7]);
    const CVec m01_12 = cminor(m[1], m[2], m[5], m[6]);
    const CVec m01_13 = cminor(m[1], m[3], m[5], m[7]);
    const CVec m01_23 = cminor(m[2], m[3], m[6], m[7]);
    const CVec m23_01 = cminor(m[8], m[9], m[12], m[13]);
    const CVec m23_02 = cminor(m[8], m[10], m[12], m[14]);
    const CVec m23_03 = cminor(m[8], m[11], m[12], m[15]);
    const CVec m23_12 = cminor(m[9], m[10], m[13], m[14]);
    const CVec m23_13 = cminor(m[9], m[11], m[13], m[15]);
    const CVec m23_23 = cminor(m[10], m[11], m[14], m[15]);

    __m256d det = real_of_product(m01_01, m23_23);
    det = _mm256_sub_pd(det, real_of_product(m01_02, m23_13));
    det = _mm256_add_pd(det, real_of_product(m01_03, m23_12));
    det = _mm256_add_pd(det, real_of_product(m01_12, m23_03));
    det = _mm256_sub_pd(det, real_of_product(m01_13, m23_02));
    det = _mm256_add_pd(det, real_of_product(m01_23, m23_01));

    _mm256_storeu_pd(out + k, det);
  }

  if (main < n) pt_det_scan_scalar(ctx, temps + main, n - main, shift, out + main);
}

}  // namespace detail
}  // namespace qtherm

#endif  // QTHERM_HAVE_AVX2
