// AVX2+FMA variant of the weighted cos/sin reduction. Compiled with
// -mavx2 -mfma on x86; selected at runtime only when the CPU supports both.
//
// sincos is evaluated in-register: Cody-Waite reduction modulo pi/2 (three
// part constants, exact for quadrant indices |k| < 2^26) followed by the
// standard double-precision minimax polynomials on [-pi/4, pi/4].

#include "nmregress/kernels.hpp"

#if defined(NMREGRESS_HAVE_X86)

#include <immintrin.h>

#include <cmath>

namespace nmregress::kernels {

namespace {

constexpr double kTwoOverPi = 6.36619772367581382433e-1;
// pi/2 split into three parts, high parts with zeroed low mantissa bits
constexpr double kDP1 = 1.57079625129699707031e+0;
constexpr double kDP2 = 7.54978941586159635335e-8;
constexpr double kDP3 = 5.39030285815811905290e-15;

constexpr double kSinCoef[6] = {
    1.58962301576546568060e-10, -2.50507477628578072866e-8,
    2.75573136213857245213e-6,  -1.98412698295895385996e-4,
    8.33333333332211858878e-3,  -1.66666666666666307295e-1,
};
constexpr double kCosCoef[6] = {
    -1.13585365213876817300e-11, 2.08757008419747316778e-9,
    -2.75573141792967388112e-7,  2.48015872888517179954e-5,
    -1.38888888888730564116e-3,  4.16666666666665929218e-2,
};

inline __m256d poly5(__m256d z, const double* c) {
    __m256d p = _mm256_set1_pd(c[0]);
    for (int i = 1; i < 6; ++i) {
        p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(c[i]));
    }
    return p;
}

// sin and cos of four phases at once
inline void sincos4(__m256d phase, __m256d& sin_out, __m256d& cos_out) {
    const __m256d k_real = _mm256_mul_pd(phase, _mm256_set1_pd(kTwoOverPi));
    const __m128i q = _mm256_cvtpd_epi32(k_real); // round to nearest
    const __m256d k = _mm256_cvtepi32_pd(q);

    __m256d r = _mm256_fnmadd_pd(k, _mm256_set1_pd(kDP1), phase);
    r = _mm256_fnmadd_pd(k, _mm256_set1_pd(kDP2), r);
    r = _mm256_fnmadd_pd(k, _mm256_set1_pd(kDP3), r);

    const __m256d z = _mm256_mul_pd(r, r);
    // sin(r) = r + r z P(z) ; cos(r) = 1 - z/2 + z^2 Q(z)
    const __m256d sp =
        _mm256_fmadd_pd(_mm256_mul_pd(r, z), poly5(z, kSinCoef), r);
    const __m256d cp = _mm256_add_pd(
        _mm256_fnmadd_pd(z, _mm256_set1_pd(0.5), _mm256_set1_pd(1.0)),
        _mm256_mul_pd(_mm256_mul_pd(z, z), poly5(z, kCosCoef)));

    // quadrant fixup: q&1 swaps sin/cos, q&2 flips sin sign, (q+1)&2 flips cos sign
    const __m128i one = _mm_set1_epi32(1);
    const __m128i two = _mm_set1_epi32(2);
    const __m128i swap32 = _mm_cmpeq_epi32(_mm_and_si128(q, one), one);
    const __m128i sneg32 = _mm_cmpeq_epi32(_mm_and_si128(q, two), two);
    const __m128i cneg32 =
        _mm_cmpeq_epi32(_mm_and_si128(_mm_add_epi32(q, one), two), two);
    const __m256d swap_mask = _mm256_castsi256_pd(_mm256_cvtepi32_epi64(swap32));
    const __m256d sneg_mask = _mm256_castsi256_pd(_mm256_cvtepi32_epi64(sneg32));
    const __m256d cneg_mask = _mm256_castsi256_pd(_mm256_cvtepi32_epi64(cneg32));

    const __m256d sign_bit = _mm256_set1_pd(-0.0);
    __m256d s_val = _mm256_blendv_pd(sp, cp, swap_mask);
    __m256d c_val = _mm256_blendv_pd(cp, sp, swap_mask);
    s_val = _mm256_xor_pd(s_val, _mm256_and_pd(sneg_mask, sign_bit));
    c_val = _mm256_xor_pd(c_val, _mm256_and_pd(cneg_mask, sign_bit));
    sin_out = s_val;
    cos_out = c_val;
}

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d sum2 = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(sum2, _mm_unpackhi_pd(sum2, sum2)));
}

} // namespace

CosSinSums weighted_cos_sin_avx2(const double* x, const double* wc, const double* ws,
                                 std::size_t n, double a) {
    const __m256d a_vec = _mm256_set1_pd(a);
    __m256d acc_c0 = _mm256_setzero_pd();
    __m256d acc_s0 = _mm256_setzero_pd();
    __m256d acc_c1 = _mm256_setzero_pd();
    __m256d acc_s1 = _mm256_setzero_pd();

    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256d sin0, cos0, sin1, cos1;
        sincos4(_mm256_mul_pd(a_vec, _mm256_loadu_pd(x + i)), sin0, cos0);
        sincos4(_mm256_mul_pd(a_vec, _mm256_loadu_pd(x + i + 4)), sin1, cos1);
        acc_c0 = _mm256_fmadd_pd(_mm256_loadu_pd(wc + i), cos0, acc_c0);
        acc_s0 = _mm256_fmadd_pd(_mm256_loadu_pd(ws + i), sin0, acc_s0);
        acc_c1 = _mm256_fmadd_pd(_mm256_loadu_pd(wc + i + 4), cos1, acc_c1);
        acc_s1 = _mm256_fmadd_pd(_mm256_loadu_pd(ws + i + 4), sin1, acc_s1);
    }
    for (; i + 4 <= n; i += 4) {
        __m256d sin0, cos0;
        sincos4(_mm256_mul_pd(a_vec, _mm256_loadu_pd(x + i)), sin0, cos0);
        acc_c0 = _mm256_fmadd_pd(_mm256_loadu_pd(wc + i), cos0, acc_c0);
        acc_s0 = _mm256_fmadd_pd(_mm256_loadu_pd(ws + i), sin0, acc_s0);
    }

    CosSinSums out;
    out.cos_sum = hsum(_mm256_add_pd(acc_c0, acc_c1));
    out.sin_sum = hsum(_mm256_add_pd(acc_s0, acc_s1));
    for (; i < n; ++i) {
        const double phase = a * x[i];
        out.cos_sum += wc[i] * std::cos(phase);
        out.sin_sum += ws[i] * std::sin(phase);
    }
    return out;
}

} // namespace nmregress::kernels

#endif // NMREGRESS_HAVE_X86
