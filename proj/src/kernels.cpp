#include "nmregress/kernels.hpp"

#include <atomic>
#include <stdexcept>

namespace nmregress::kernels {

bool avx2_available() {
#if defined(NMREGRESS_HAVE_X86) && defined(__GNUC__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

namespace {

std::atomic<Impl> g_selected{Impl::Auto};

Impl resolve(Impl requested) {
    if (requested == Impl::Auto) {
        return avx2_available() ? Impl::Avx2 : Impl::Scalar;
    }
    return requested;
}

} // namespace

void select_impl(Impl impl) {
    if (impl == Impl::Avx2 && !avx2_available()) {
        throw std::invalid_argument("kernels: AVX2 implementation not available on this CPU");
    }
    g_selected.store(impl);
}

Impl active_impl() {
    return resolve(g_selected.load());
}

const char* impl_name(Impl impl) {
    switch (impl) {
        case Impl::Auto: return "auto";
        case Impl::Scalar: return "scalar";
        case Impl::Avx2: return "avx2";
    }
    return "?";
}

CosSinSums weighted_cos_sin(const double* x, const double* wc, const double* ws,
                            std::size_t n, double a) {
#if defined(NMREGRESS_HAVE_X86)
    if (active_impl() == Impl::Avx2) {
        return weighted_cos_sin_avx2(x, wc, ws, n, a);
    }
#endif
    return weighted_cos_sin_scalar(x, wc, ws, n, a);
}

void weighted_cos_sin_batch(const double* x, const double* wc, const double* ws,
                            std::size_t n, const double* a, std::size_t m,
                            double* cos_out, double* sin_out) {
    for (std::size_t j = 0; j < m; ++j) {
        const CosSinSums sums = weighted_cos_sin(x, wc, ws, n, a[j]);
        cos_out[j] = sums.cos_sum;
        sin_out[j] = sums.sin_sum;
    }
}

} // namespace nmregress::kernels
