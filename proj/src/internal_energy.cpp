#include "wgf/internal_energy.hpp"

#include <cmath>

namespace wgf {

namespace {

void require_positive(double x, const char* who) {
    if (!(x > 0.0)) throw input_error(std::string(who) + ": argument must be > 0");
}

}  // namespace

InternalEnergy InternalEnergy::heat() {
    InternalEnergy e;
    e.kind_ = Kind::Heat;
    e.label_ = "heat";
    return e;
}

InternalEnergy InternalEnergy::power_law(double m) {
    if (!(m > 1.0)) throw input_error("power-law exponent must satisfy m > 1");
    InternalEnergy e;
    e.kind_ = Kind::PowerLaw;
    e.m_ = m;
    e.label_ = "pme";
    return e;
}

InternalEnergy InternalEnergy::custom(std::function<double(double)> H,
                                      std::function<double(double)> dH,
                                      std::function<double(double)> d2H,
                                      double psi_at_infinity, std::string label) {
    InternalEnergy e;
    e.kind_ = Kind::Custom;
    e.H_ = std::move(H);
    e.dH_ = std::move(dH);
    e.d2H_ = std::move(d2H);
    e.psi_at_infinity_ = psi_at_infinity;
    e.label_ = std::move(label);
    e.check_hypotheses();
    return e;
}

double InternalEnergy::H(double x) const {
    switch (kind_) {
        case Kind::Heat:
            if (x == 0.0) return 0.0;
            require_positive(x, "H");
            return x * std::log(x);
        case Kind::PowerLaw:
            if (x == 0.0) return 0.0;
            require_positive(x, "H");
            return std::pow(x, m_) / (m_ - 1.0);
        case Kind::Custom:
            return H_(x);
    }
    return 0.0;
}

double InternalEnergy::dH(double x) const {
    require_positive(x, "dH");
    switch (kind_) {
        case Kind::Heat:
            return std::log(x) + 1.0;
        case Kind::PowerLaw:
            return m_ / (m_ - 1.0) * std::pow(x, m_ - 1.0);
        case Kind::Custom:
            return dH_(x);
    }
    return 0.0;
}

double InternalEnergy::d2H(double x) const {
    require_positive(x, "d2H");
    switch (kind_) {
        case Kind::Heat:
            return 1.0 / x;
        case Kind::PowerLaw:
            return m_ * std::pow(x, m_ - 2.0);
        case Kind::Custom:
            return d2H_(x);
    }
    return 0.0;
}

double InternalEnergy::h(double x) const {
    require_positive(x, "h");
    switch (kind_) {
        case Kind::Heat:
            return -std::log(x);
        case Kind::PowerLaw:
            return std::pow(x, 1.0 - m_) / (m_ - 1.0);
        case Kind::Custom:
            return x * H_(1.0 / x);
    }
    return 0.0;
}

double InternalEnergy::dh(double x) const {
    require_positive(x, "dh");
    switch (kind_) {
        case Kind::Heat:
            return -1.0 / x;
        case Kind::PowerLaw:
            return -std::pow(x, -m_);
        case Kind::Custom:
            return H_(1.0 / x) - dH_(1.0 / x) / x;
    }
    return 0.0;
}

double InternalEnergy::psi(double x) const { return -dh(x); }

double InternalEnergy::dpsi(double x) const {
    require_positive(x, "dpsi");
    switch (kind_) {
        case Kind::Heat:
            return -1.0 / (x * x);
        case Kind::PowerLaw:
            return -m_ * std::pow(x, -m_ - 1.0);
        case Kind::Custom:
            return -d2H_(1.0 / x) / (x * x * x);
    }
    return 0.0;
}

double InternalEnergy::psi_inverse(double y,
                                   std::optional<std::pair<double, double>> bracket) const {
    require_positive(y, "psi_inverse");
    switch (kind_) {
        case Kind::Heat:
            return 1.0 / y;
        case Kind::PowerLaw:
            return std::pow(y, -1.0 / m_);
        case Kind::Custom:
            break;
    }
    if (!bracket) throw input_error("psi_inverse: custom energy requires a bracket");
    double a = bracket->first, b = bracket->second;
    if (!(a > 0.0 && b > a)) throw input_error("psi_inverse: bracket must satisfy 0 < a < b");
    double pa = psi(a), pb = psi(b);
    if (pa < pb) throw hypothesis_error("psi_inverse: psi is not decreasing on the bracket");
    const double slack = 1e-12 * (1.0 + std::abs(y));
    if (y > pa + slack || y < pb - slack)
        throw input_error("psi_inverse: bracket does not straddle the target value");
    // psi is decreasing: bisect on psi(x) - y.
    for (int it = 0; it < 200 && (b - a) > 1e-12 * a; ++it) {
        const double mid = 0.5 * (a + b);
        if (psi(mid) > y)
            a = mid;
        else
            b = mid;
    }
    const double x = 0.5 * (a + b);
    if (std::abs(psi(x) - y) > 1e-10 * y + 1e-300)
        throw numerical_error("psi_inverse: bisection failed to meet tolerance");
    return x;
}

void InternalEnergy::check_hypotheses() const {
    // Sampled spot checks on a log grid; not a proof, but misuse fails loudly.
    constexpr int kSamples = 64;
    double prev_psi = 0.0;
    double xs[kSamples], hs[kSamples];
    for (int i = 0; i < kSamples; ++i) {
        const double t = static_cast<double>(i) / (kSamples - 1);
        const double x = std::pow(10.0, -3.0 + 6.0 * t);
        xs[i] = x;
        hs[i] = h(x);
        const double p = psi(x);
        if (!(p >= 0.0))
            throw hypothesis_error("custom energy: psi(x) < 0 at x=" + std::to_string(x));
        if (i > 0 && !(p < prev_psi))
            throw hypothesis_error("custom energy: psi not strictly decreasing at x=" +
                                   std::to_string(x));
        prev_psi = p;
    }
    for (int i = 1; i + 1 < kSamples; ++i) {
        const double lam = (xs[i + 1] - xs[i]) / (xs[i + 1] - xs[i - 1]);
        const double chord = lam * hs[i - 1] + (1.0 - lam) * hs[i + 1];
        if (hs[i] > chord + 1e-10 * (1.0 + std::abs(chord)))
            throw hypothesis_error("custom energy: h is not convex near x=" +
                                   std::to_string(xs[i]));
        if (hs[i + 1] > hs[i - 1] + 1e-10 * (1.0 + std::abs(hs[i])))
            throw hypothesis_error("custom energy: h is not non-increasing near x=" +
                                   std::to_string(xs[i]));
    }
    // Declared limit of psi at infinity must match samples at large x.
    const double tail = psi(1e8);
    if (std::abs(tail - psi_at_infinity_) > 1e-4 * (1.0 + std::abs(psi_at_infinity_)))
        throw hypothesis_error("custom energy: psi(1e8) disagrees with declared psi(inf)");
}

}  // namespace wgf
