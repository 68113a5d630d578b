#include "nmregress/kernels.hpp"

#include <cmath>

namespace nmregress::kernels {

CosSinSums weighted_cos_sin_scalar(const double* x, const double* wc, const double* ws,
                                   std::size_t n, double a) {
    double c = 0.0;
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double phase = a * x[i];
        c += wc[i] * std::cos(phase);
        s += ws[i] * std::sin(phase);
    }
    return {c, s};
}

} // namespace nmregress::kernels
