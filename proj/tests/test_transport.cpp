#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "wgf/discrete_energy.hpp"
#include "wgf/oracles.hpp"
#include "wgf/smooth_profile.hpp"
#include "wgf/transport.hpp"

using namespace wgf;

namespace {

ParticleState random_state(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> u(0.05, 1.0);
    std::vector<double> x(n);
    x[0] = -2.0 + u(rng);
    for (int i = 1; i < n; ++i) x[i] = x[i - 1] + u(rng);
    return ParticleState(std::move(x), Domain::whole_line());
}

}  // namespace

TEST_CASE("pseudo-inverse examples") {
    const QuantileFunction phi =
        QuantileFunction::from_evaluator([](double eta) { return 2.0 * eta - 1.0; });
    CHECK(phi(0.25) == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(phi(1.0) == doctest::Approx(1.0).epsilon(1e-14));

    const QuantileFunction gamma =
        QuantileFunction::from_atomic(ParticleState({0.0, 1.0}, Domain::whole_line()));
    CHECK(gamma(0.0) == 0.0);
    CHECK(gamma(0.49) == 0.0);
    CHECK(gamma(0.5) == 1.0);
    CHECK(gamma(1.0) == 1.0);
}

TEST_CASE("numeric CDF inversion matches a closed form") {
    const QuantileFunction q = QuantileFunction::from_cdf(
        [](double x) { return 0.5 * (x + 1.0); }, -1.0, 1.0, 2048);
    for (double eta : {0.0, 0.2, 0.5, 0.77, 1.0})
        CHECK(q(eta) == doctest::Approx(2.0 * eta - 1.0).epsilon(1e-9));
    CHECK_THROWS_AS(QuantileFunction::from_cdf([](double x) { return x; }, 0.0, 1.0, 16),
                    input_error);
}

TEST_CASE("atomic-atomic distance") {
    const ParticleState a({0.0, 1.0}, Domain::whole_line());
    const ParticleState b({0.5, 1.5}, Domain::whole_line());
    CHECK(d2_atomic_atomic(a, b) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(d2_atomic_atomic(a, a) == 0.0);
    CHECK_THROWS_AS(
        d2_atomic_atomic(a, ParticleState({0.0, 1.0, 2.0}, Domain::whole_line())),
        input_error);
}

TEST_CASE("sorted coupling matches the permutation oracle") {
    std::mt19937_64 rng(43);
    for (int k = 0; k < 100; ++k) {
        const int n = 2 + k % 5;
        const ParticleState a = random_state(rng, n);
        const ParticleState b = random_state(rng, n);
        CHECK(std::abs(d2_atomic_atomic(a, b) - d2_permutation_oracle(a, b)) <= 1e-12);
    }
}

TEST_CASE("atomic-density distance against the analytic value") {
    const ParticleState a({-0.5, 0.5}, Domain::whole_line());
    const QuantileFunction phi =
        QuantileFunction::from_evaluator([](double eta) { return 2.0 * eta - 1.0; });
    CHECK(d2_atomic_quantile(a, phi) ==
          doctest::Approx(std::sqrt(1.0 / 12.0)).epsilon(1e-10));
}

TEST_CASE("well-prepared states approach their profile in d2") {
    const SmoothProfile prof = SmoothProfile::linear_ramp();
    const QuantileFunction phi = QuantileFunction::from_evaluator(
        [&prof](double eta) { return prof.quantile(eta); });
    double prev = 1e9;
    for (int n : {8, 16, 32, 64}) {
        const ParticleState wp = well_prepared(prof, n, Domain::interval(1.0));
        const double d = d2_atomic_quantile(wp, phi);
        CHECK(d <= 2.0 / (n * prof.min_density()) + 1e-12);
        CHECK(d < prev);
        prev = d;
    }
}

TEST_CASE("blob quantile distance shrinks with N") {
    const SmoothProfile prof = SmoothProfile::linear_ramp();
    double prev = 1e9;
    for (int n : {8, 16, 32}) {
        const ParticleState wp = well_prepared(prof, n, Domain::interval(1.0));
        const PiecewiseDensity blob = blob_density(wp);
        const QuantileFunction qb = QuantileFunction::from_cdf(
            [&blob](double x) { return blob.cdf(x); }, blob.support_left(),
            blob.support_right(), 2048);
        const double d = d2_atomic_quantile(wp, qb, 1e-11);
        CHECK(d < prev);
        prev = d;
    }
    // Dense-sampling cross-check at N = 3 for the blob quantile integral.
    const ParticleState s({-1.0, 0.0, 1.0}, Domain::whole_line());
    const PiecewiseDensity blob = blob_density(s);
    const QuantileFunction qb = QuantileFunction::from_cdf(
        [&blob](double x) { return blob.cdf(x); }, blob.support_left(),
        blob.support_right(), 4096);
    double riemann = 0.0;
    const int grid = 20000;
    const QuantileFunction ga = QuantileFunction::from_atomic(s);
    for (int k = 0; k < grid; ++k) {
        const double eta = (k + 0.5) / grid;
        const double d = ga(eta) - qb(eta);
        riemann += d * d / grid;
    }
    CHECK(d2_atomic_quantile(s, qb, 1e-11) ==
          doctest::Approx(std::sqrt(riemann)).epsilon(1e-3));
}

TEST_CASE("triangle inequality on random atomic triples") {
    std::mt19937_64 rng(47);
    for (int k = 0; k < 100; ++k) {
        const int n = 2 + k % 6;
        const ParticleState a = random_state(rng, n);
        const ParticleState b = random_state(rng, n);
        const ParticleState c = random_state(rng, n);
        CHECK(d2_atomic_atomic(a, c) <=
              d2_atomic_atomic(a, b) + d2_atomic_atomic(b, c) + 1e-12);
    }
}

TEST_CASE("atomic pseudo-inverse reproduces the atomic distance") {
    std::mt19937_64 rng(53);
    for (int k = 0; k < 20; ++k) {
        const int n = 2 + k % 5;
        const ParticleState a = random_state(rng, n);
        const ParticleState b = random_state(rng, n);
        const QuantileFunction qb = QuantileFunction::from_atomic(b);
        CHECK(d2_atomic_quantile(a, qb, 1e-12) ==
              doctest::Approx(d2_atomic_atomic(a, b)).epsilon(1e-10));
    }
}

TEST_CASE("metric derivative examples") {
    // Stationary trajectory.
    Trajectory traj;
    traj.domain = Domain::whole_line();
    traj.n = 3;
    for (int k = 0; k <= 4; ++k) {
        TrajectorySample s;
        s.t = 0.1 * k;
        s.positions = {-1.0, 0.0, 1.0};
        traj.samples.push_back(s);
    }
    for (double v : metric_derivative(traj)) CHECK(v == 0.0);

    // Rigid expansion x(t) = (-1 - t, 0, 1 + t).
    Trajectory rigid;
    rigid.domain = Domain::whole_line();
    rigid.n = 3;
    for (int k = 0; k <= 4; ++k) {
        TrajectorySample s;
        s.t = 0.1 * k;
        s.positions = {-1.0 - s.t, 0.0, 1.0 + s.t};
        rigid.samples.push_back(s);
    }
    for (double v : metric_derivative(rigid))
        CHECK(v == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-12));
}
