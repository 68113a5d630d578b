#include "nmregress/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

namespace nmregress {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK constants)
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0,
};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

struct Segment {
    double a, b;
    Complex value;
    double error;
    bool operator<(const Segment& other) const { return error < other.error; }
};

Segment gk15(const std::function<Complex(double)>& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    Complex kronrod = 0.0;
    Complex gauss = 0.0;
    for (int i = 0; i < 8; ++i) {
        if (kXgk[i] == 0.0) {
            const Complex fc = f(mid);
            kronrod += kWgk[i] * fc;
            gauss += kWg[3] * fc;
            continue;
        }
        const Complex fp = f(mid + half * kXgk[i]);
        const Complex fm = f(mid - half * kXgk[i]);
        kronrod += kWgk[i] * (fp + fm);
        if (i % 2 == 1) {
            gauss += kWg[i / 2] * (fp + fm);
        }
    }
    kronrod *= half;
    gauss *= half;
    const double diff = std::abs(kronrod - gauss);
    // QUADPACK-style sharpened estimate
    const double err = diff > 0.0 ? diff * std::min(1.0, std::pow(200.0 * diff, 1.5)) : 0.0;
    return {a, b, kronrod, std::max(err, 1e-300)};
}

} // namespace

AdaptiveResult integrate_adaptive(const std::function<Complex(double)>& f, double a, double b,
                                  double rel_tol, double abs_tol, int max_intervals,
                                  int initial_panels) {
    initial_panels = std::max(initial_panels, 1);
    max_intervals = std::max(max_intervals, 4 * initial_panels);

    std::priority_queue<Segment> queue;
    Complex total = 0.0;
    double total_err = 0.0;
    double total_abs = 0.0; // sum of |panel values|, sets the roundoff floor
    const double width = (b - a) / initial_panels;
    for (int p = 0; p < initial_panels; ++p) {
        Segment seg = gk15(f, a + p * width, a + (p + 1) * width);
        total += seg.value;
        total_err += seg.error;
        total_abs += std::abs(seg.value);
        queue.push(seg);
    }
    int count = initial_panels;

    auto threshold = [&]() {
        return std::max({abs_tol, rel_tol * std::abs(total), 100.0 * 1e-16 * total_abs});
    };
    while (total_err > threshold()) {
        if (count >= max_intervals) {
            std::ostringstream msg;
            msg << "integrate_adaptive: no convergence after " << count
                << " intervals, achieved error estimate " << total_err;
            throw numerical_error(msg.str());
        }
        Segment worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        Segment left = gk15(f, worst.a, mid);
        Segment right = gk15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        total_abs += std::abs(left.value) + std::abs(right.value) - std::abs(worst.value);
        queue.push(left);
        queue.push(right);
        ++count;
    }

    return {total, total_err, count};
}

namespace {

// 16-point Gauss-Legendre abscissas/weights on [-1, 1] (positive half)
constexpr double kGlNodes[8] = {
    0.0950125098376374401853193, 0.2816035507792589132304605,
    0.4580167776572273863424194, 0.6178762444026437484466718,
    0.7554044083550030338951012, 0.8656312023878317438804679,
    0.9445750230732325760779884, 0.9894009349916499325961542,
};
constexpr double kGlWeights[8] = {
    0.1894506104550684962853967, 0.1826034150449235888667637,
    0.1691565193950025381893121, 0.1495959888165767320815017,
    0.1246289712555338720524763, 0.0951585116824927848099251,
    0.0622535239386478928628438, 0.0271524594117540948517806,
};

} // namespace

PanelRule composite_gauss_legendre(double a, double b, int panels) {
    if (panels < 1 || !(b > a)) {
        throw std::invalid_argument("composite_gauss_legendre: bad interval or panel count");
    }
    PanelRule rule;
    rule.nodes.reserve(static_cast<std::size_t>(panels) * 16);
    rule.weights.reserve(static_cast<std::size_t>(panels) * 16);
    const double width = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * width;
        const double half = 0.5 * width;
        for (int i = 7; i >= 0; --i) { // ascending node order within the panel
            rule.nodes.push_back(mid - half * kGlNodes[i]);
            rule.weights.push_back(half * kGlWeights[i]);
        }
        for (int i = 0; i < 8; ++i) {
            rule.nodes.push_back(mid + half * kGlNodes[i]);
            rule.weights.push_back(half * kGlWeights[i]);
        }
    }
    return rule;
}

} // namespace nmregress
