#include "wgf/piecewise_density.hpp"

#include <algorithm>
#include <cmath>

#include "wgf/quadrature.hpp"

namespace wgf {

PiecewiseDensity::PiecewiseDensity(std::vector<Piece> pieces, double declared_mass)
    : pieces_(std::move(pieces)), declared_mass_(declared_mass) {
    if (pieces_.empty()) throw input_error("piecewise density needs at least one piece");
    for (std::size_t k = 0; k < pieces_.size(); ++k) {
        const auto& p = pieces_[k];
        if (!(p.b > p.a)) throw input_error("piece must have positive length");
        if (!p.constant && !p.f) throw input_error("non-constant piece needs an evaluator");
        if (p.constant && p.value < 0.0) throw input_error("density must be non-negative");
        if (k > 0 && p.a < pieces_[k - 1].b - 1e-15 * std::abs(p.a))
            throw input_error("pieces must be ordered and non-overlapping");
    }
}

double PiecewiseDensity::operator()(double x) const {
    // Pieces are few enough in practice that binary search on edges suffices.
    auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                               [](double v, const Piece& p) { return v < p.a; });
    if (it == pieces_.begin()) return 0.0;
    const Piece& p = *(it - 1);
    if (x > p.b) return 0.0;
    return p.constant ? p.value : std::max(0.0, p.f(x));
}

double PiecewiseDensity::derivative(double x) const {
    auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                               [](double v, const Piece& p) { return v < p.a; });
    if (it == pieces_.begin()) return 0.0;
    const Piece& p = *(it - 1);
    if (x > p.b) return 0.0;
    if (p.constant) return 0.0;
    if (!p.df) throw numerical_error("density piece has no derivative evaluator");
    return p.df(x);
}

bool PiecewiseDensity::has_derivative() const {
    for (const auto& p : pieces_)
        if (!p.constant && !p.df) return false;
    return true;
}

double PiecewiseDensity::mass(double abs_tol) const {
    double m = 0.0;
    for (const auto& p : pieces_) {
        if (p.constant)
            m += p.value * (p.b - p.a);
        else
            m += integrate(p.f, p.a, p.b, abs_tol / static_cast<double>(pieces_.size()));
    }
    return m;
}

double PiecewiseDensity::second_moment(double abs_tol) const {
    double m = 0.0;
    for (const auto& p : pieces_) {
        if (p.constant)
            m += p.value * (p.b * p.b * p.b - p.a * p.a * p.a) / 3.0;
        else
            m += integrate([&](double x) { return x * x * p.f(x); }, p.a, p.b,
                           abs_tol / static_cast<double>(pieces_.size()));
    }
    return m;
}

double PiecewiseDensity::cdf(double x, double abs_tol) const {
    double c = 0.0;
    for (const auto& p : pieces_) {
        if (x <= p.a) break;
        const double hi = std::min(x, p.b);
        if (p.constant)
            c += p.value * (hi - p.a);
        else
            c += integrate(p.f, p.a, hi, abs_tol / static_cast<double>(pieces_.size()));
    }
    return c;
}

}  // namespace wgf
