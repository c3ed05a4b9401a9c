#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "wgf/errors.hpp"

namespace wgf {

namespace detail {

// Kronrod-15 nodes/weights on [-1,1] and the embedded Gauss-7 weights.
inline constexpr double kKronrodNodes[15] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898, 0.0,
    0.207784955007898,  0.405845151377397,  0.586087235467691,
    0.741531185599394,  0.864864423359769,  0.949107912342759,
    0.991455371120813};

inline constexpr double kKronrodWeights[15] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728,
    0.204432940075298, 0.190350578064785, 0.169004726639267,
    0.140653259715525, 0.104790010322250, 0.063092092629979,
    0.022935322010529};

inline constexpr double kGaussWeights[7] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469, 0.381830050505119, 0.279705391489277,
    0.129484966168870};

struct PanelResult {
    double value;
    double error;
};

inline PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double kron = 0.0, gauss = 0.0;
    for (int i = 0; i < 15; ++i) {
        const double fx = f(mid + half * kKronrodNodes[i]);
        kron += kKronrodWeights[i] * fx;
        if (i % 2 == 1) gauss += kGaussWeights[i / 2] * fx;
    }
    kron *= half;
    gauss *= half;
    return {kron, std::abs(kron - gauss)};
}

inline double integrate_rec(const std::function<double(double)>& f, double a,
                            double b, double abs_tol, int depth, int max_depth) {
    const PanelResult r = gk15(f, a, b);
    if (r.error <= abs_tol || depth >= max_depth) {
        if (depth >= max_depth && r.error > 1e3 * abs_tol)
            throw numerical_error("adaptive quadrature did not converge");
        return r.value;
    }
    const double mid = 0.5 * (a + b);
    return integrate_rec(f, a, mid, 0.5 * abs_tol, depth + 1, max_depth) +
           integrate_rec(f, mid, b, 0.5 * abs_tol, depth + 1, max_depth);
}

}  // namespace detail

// Adaptive Gauss-Kronrod (G7,K15) quadrature with recursive bisection.
inline double integrate(const std::function<double(double)>& f, double a,
                        double b, double abs_tol = 1e-10, int max_depth = 48) {
    if (a == b) return 0.0;
    return detail::integrate_rec(f, a, b, abs_tol, 0, max_depth);
}

// Integrates over consecutive segments [breaks[k], breaks[k+1]]; use when the
// integrand has kinks at known locations.
inline double integrate_segmented(const std::function<double(double)>& f,
                                  const std::vector<double>& breaks,
                                  double abs_tol = 1e-10) {
    double sum = 0.0;
    if (breaks.size() < 2) return sum;
    const double per_tol = abs_tol / static_cast<double>(breaks.size() - 1);
    for (std::size_t k = 0; k + 1 < breaks.size(); ++k)
        sum += integrate(f, breaks[k], breaks[k + 1], per_tol);
    return sum;
}

// Finds x in [lo,hi] with f(x) = target for non-decreasing continuous f.
inline double bisect_increasing(const std::function<double(double)>& f,
                                double lo, double hi, double target,
                                double x_tol = 1e-14, int max_iter = 200) {
    double flo = f(lo), fhi = f(hi);
    if (target <= flo) return lo;
    if (target >= fhi) return hi;
    for (int it = 0; it < max_iter && hi - lo > x_tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) < target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace wgf
