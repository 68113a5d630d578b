// kernels.hpp — Data-parallel trigonometric reduction kernels.
//
// The two hot loops in this project are weighted cosine/sine moments
//
//     cos_sum = sum_i wc[i] * cos(a * x[i])
//     sin_sum = sum_i ws[i] * sin(a * x[i])
//
// evaluated for many values of `a`: the bath-correlation quadrature
// (x = frequency nodes, a = time) and the half-line Fourier transform of
// g1 (x = time grid, a = frequency). A scalar reference implementation and
// an AVX2+FMA variant are provided; the active implementation is selected
// at runtime from CPU capabilities and can be forced for testing. The two
// are equivalence-tested against each other.
//
// Accuracy: the AVX2 path uses Cody-Waite reduction modulo pi/2, valid to
// full double precision for |a * x| up to ~1e6. All uses here stay below
// ~3e4.

#pragma once

#include <cstddef>

namespace nmregress::kernels {

struct CosSinSums {
    double cos_sum = 0.0;
    double sin_sum = 0.0;
};

enum class Impl {
    Auto,   // pick best available at first use
    Scalar,
    Avx2,
};

bool avx2_available();

// Force an implementation (throws std::invalid_argument if unavailable).
void select_impl(Impl impl);

// The implementation that will actually run (never Auto).
Impl active_impl();
const char* impl_name(Impl impl);

// Dispatched entry points.
CosSinSums weighted_cos_sin(const double* x, const double* wc, const double* ws,
                            std::size_t n, double a);
void weighted_cos_sin_batch(const double* x, const double* wc, const double* ws,
                            std::size_t n, const double* a, std::size_t m,
                            double* cos_out, double* sin_out);

// Concrete implementations, exposed for equivalence tests.
CosSinSums weighted_cos_sin_scalar(const double* x, const double* wc, const double* ws,
                                   std::size_t n, double a);
#if defined(__x86_64__) || defined(__i386__) || defined(_M_X64)
#define NMREGRESS_HAVE_X86 1
CosSinSums weighted_cos_sin_avx2(const double* x, const double* wc, const double* ws,
                                 std::size_t n, double a);
#endif

} // namespace nmregress::kernels
