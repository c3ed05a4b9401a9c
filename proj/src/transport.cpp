#include "wgf/transport.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "wgf/quadrature.hpp"

namespace wgf {

QuantileFunction QuantileFunction::from_evaluator(std::function<double(double)> phi) {
    QuantileFunction q;
    q.phi_ = std::move(phi);
    return q;
}

QuantileFunction QuantileFunction::from_atomic(const ParticleState& state) {
    QuantileFunction q;
    const std::vector<double> x = state.positions();
    const int n = state.size();
    q.phi_ = [x, n](double eta) {
        if (eta >= 1.0) return x[n - 1];
        const int i = std::max(0, std::min(n - 1, static_cast<int>(std::floor(eta * n))));
        return x[i];
    };
    return q;
}

QuantileFunction QuantileFunction::from_cdf(std::function<double(double)> cdf, double lo,
                                            double hi, int grid_size) {
    if (grid_size < 1024) throw input_error("quantile grid needs at least 1024 nodes");
    if (!(hi > lo)) throw input_error("quantile inversion needs lo < hi");
    const double f_lo = cdf(lo), f_hi = cdf(hi);
    if (f_hi < f_lo) throw input_error("CDF samples are not non-decreasing");

    auto nodes = std::make_shared<std::vector<double>>(grid_size + 1);
    double prev_x = lo;
    for (int k = 0; k <= grid_size; ++k) {
        const double eta = static_cast<double>(k) / grid_size;
        double x = bisect_increasing(cdf, prev_x, hi, eta, 1e-12);
        x = std::max(x, prev_x);
        (*nodes)[k] = x;
        prev_x = x;
    }

    QuantileFunction q;
    const int m = grid_size;
    q.phi_ = [nodes, m](double eta) {
        if (eta <= 0.0) return nodes->front();
        if (eta >= 1.0) return nodes->back();
        const double s = eta * m;
        const int k = std::min(m - 1, static_cast<int>(std::floor(s)));
        const double frac = s - k;
        return (*nodes)[k] + frac * ((*nodes)[k + 1] - (*nodes)[k]);
    };
    return q;
}

double QuantileFunction::operator()(double eta) const {
    if (eta < 0.0 || eta > 1.0) throw input_error("quantile argument must be in [0,1]");
    return phi_(eta);
}

double d2_atomic_atomic(const ParticleState& a, const ParticleState& b) {
    if (a.size() != b.size())
        throw input_error("d2 between atomic measures requires equal N");
    std::vector<double> diff(a.size());
    for (int i = 0; i < a.size(); ++i) diff[i] = a.position(i) - b.position(i);
    return weighted_norm(diff);
}

double d2_atomic_quantile(const ParticleState& a, const QuantileFunction& phi,
                          double abs_tol) {
    const int n = a.size();
    const double per_tol = abs_tol / n;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double lo = static_cast<double>(i) / n;
        const double hi = static_cast<double>(i + 1) / n;
        const double xi = a.position(i);
        acc += integrate([&](double eta) {
            const double d = xi - phi(eta);
            return d * d;
        }, lo, hi, per_tol);
    }
    return std::sqrt(std::max(acc, 0.0));
}

double d2_quantile_quantile(const QuantileFunction& a, const QuantileFunction& b,
                            double abs_tol) {
    const double acc = integrate([&](double eta) {
        const double d = a(eta) - b(eta);
        return d * d;
    }, 0.0, 1.0, abs_tol);
    return std::sqrt(std::max(acc, 0.0));
}

std::vector<double> metric_derivative(const Trajectory& traj) {
    const auto& s = traj.samples;
    if (s.size() < 2) throw input_error("metric derivative needs at least 2 samples");
    std::vector<double> out;
    out.reserve(s.size() >= 3 ? s.size() - 2 : 0);
    for (std::size_t k = 1; k + 1 < s.size(); ++k) {
        const ParticleState a(s[k - 1].positions, traj.domain);
        const ParticleState b(s[k + 1].positions, traj.domain);
        out.push_back(d2_atomic_atomic(a, b) / (s[k + 1].t - s[k - 1].t));
    }
    return out;
}

}  // namespace wgf
