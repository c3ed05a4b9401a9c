#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "wgf/discrete_energy.hpp"
#include "wgf/gap_stats.hpp"

using namespace wgf;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

ParticleState random_state(std::mt19937_64& rng, int n, const Domain& dom) {
    std::uniform_real_distribution<double> u(0.05, 1.0);
    std::vector<double> x(n);
    x[0] = -1.0 + u(rng);
    for (int i = 1; i < n; ++i) x[i] = x[i - 1] + u(rng);
    if (dom.is_interval()) {
        // Rescale into the interval.
        const double lo = x.front(), hi = x.back();
        const double l = dom.halfwidth() * 0.9;
        for (double& xi : x) xi = -l + 2.0 * l * (xi - lo) / (hi - lo);
    }
    return ParticleState(std::move(x), dom);
}

}  // namespace

TEST_CASE("state invariants") {
    CHECK_THROWS_AS(ParticleState({0.0}, Domain::whole_line()), input_error);
    CHECK_THROWS_AS(ParticleState({0.0, 0.0}, Domain::whole_line()), input_error);
    CHECK_THROWS_AS(ParticleState({1.0, 0.0}, Domain::whole_line()), input_error);
    CHECK_THROWS_AS(ParticleState({-2.0, 0.5}, Domain::interval(1.0)), input_error);
}

TEST_CASE("geometry with whole-line conventions") {
    const ParticleState s({-1.0, 0.0, 1.0}, Domain::whole_line());
    const Geometry g = geometry(s);
    CHECK(std::isinf(g.gap[0]));
    CHECK(g.gap[1] == 1.0);
    CHECK(g.gap[2] == 1.0);
    CHECK(std::isinf(g.gap[3]));
    CHECK(g.r == std::vector<double>{1.0, 1.0, 1.0});

    const Geometry g2 = geometry(ParticleState({0.0, 1.0, 3.0}, Domain::whole_line()));
    CHECK(g2.r == std::vector<double>{1.0, 1.0, 2.0});
}

TEST_CASE("geometry with boundary mirrors") {
    const ParticleState s({-1.0, -0.5, 0.0, 0.5, 1.0}, Domain::interval(1.0));
    const Geometry g = geometry(s);
    for (int j = 0; j <= 5; ++j) CHECK(g.gap[j] == doctest::Approx(0.5).epsilon(1e-15));
    for (double r : g.r) CHECK(r == doctest::Approx(0.5).epsilon(1e-15));

    // Interior particles on an interval get infinite fictitious gaps.
    const Geometry gi = geometry(ParticleState({-0.5, 0.5}, Domain::interval(1.0)));
    CHECK(std::isinf(gi.gap[0]));
    CHECK(std::isinf(gi.gap[2]));
}

TEST_CASE("discrete energy examples") {
    const InternalEnergy heat = InternalEnergy::heat();
    const InternalEnergy pme2 = InternalEnergy::power_law(2.0);
    const ParticleState s({-1.0, 0.0, 1.0}, Domain::whole_line());
    CHECK(discrete_energy(s, heat) == doctest::Approx(-std::log(3.0)).epsilon(1e-14));
    CHECK(discrete_energy(s, pme2) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

    // Equally spaced, pinned: all N r_i = N * 2/(N-1) ... computed exactly.
    const int n = 5;
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = -1.0 + 2.0 * i / (n - 1);
    const ParticleState sp(x, Domain::interval(1.0));
    CHECK(discrete_energy(sp, heat) == doctest::Approx(-std::log(2.5)).epsilon(1e-14));
}

TEST_CASE("blob density examples") {
    const ParticleState s({-1.0, 0.0, 1.0}, Domain::whole_line());
    const PiecewiseDensity rho = blob_density(s);
    CHECK(rho(-1.2) == doctest::Approx(1.0 / 3.0));
    CHECK(rho(0.2) == doctest::Approx(1.0 / 3.0));
    CHECK(rho(1.4) == doctest::Approx(1.0 / 3.0));
    CHECK(rho.mass() == doctest::Approx(1.0).epsilon(1e-12));

    const PiecewiseDensity rho2 =
        blob_density(ParticleState({0.0, 1.0, 3.0}, Domain::whole_line()));
    CHECK(rho2(0.0) == doctest::Approx(1.0 / 3.0));
    CHECK(rho2(1.0) == doctest::Approx(1.0 / 3.0));
    CHECK(rho2(3.0) == doctest::Approx(1.0 / 6.0));
    CHECK(rho2(1.8) == 0.0);  // between blobs
    CHECK(rho2.mass() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("continuum energy closed forms") {
    const InternalEnergy heat = InternalEnergy::heat();
    const InternalEnergy pme2 = InternalEnergy::power_law(2.0);
    std::vector<PiecewiseDensity::Piece> pieces(1);
    pieces[0] = {.a = -1.0, .b = 1.0, .constant = true, .value = 0.5, .f = {}, .df = {}};
    const PiecewiseDensity uniform(pieces, 1.0);
    CHECK(continuum_energy(uniform, heat) == doctest::Approx(std::log(0.5)).epsilon(1e-13));
    CHECK(continuum_energy(uniform, pme2) == doctest::Approx(0.5).epsilon(1e-13));

    const ParticleState s({-1.0, 0.0, 1.0}, Domain::whole_line());
    CHECK(continuum_energy(blob_density(s), heat) ==
          doctest::Approx(-std::log(3.0)).epsilon(1e-13));
}

TEST_CASE("second moment and the blob correction") {
    const ParticleState s({-1.0, 0.0, 1.0}, Domain::whole_line());
    CHECK(second_moment(s) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(blob_density(s).second_moment() == doctest::Approx(0.75).epsilon(1e-12));

    const ParticleState sym({-0.7, 0.7}, Domain::whole_line());
    CHECK(second_moment(sym) == doctest::Approx(0.49).epsilon(1e-14));
}

TEST_CASE("energy identity E_N = E(rho_N) on random states") {
    std::mt19937_64 rng(11);
    const InternalEnergy heat = InternalEnergy::heat();
    const InternalEnergy pme3 = InternalEnergy::power_law(3.0);
    for (int k = 0; k < 50; ++k) {
        const ParticleState s = random_state(rng, 2 + k % 9, Domain::whole_line());
        for (const InternalEnergy* e : {&heat, &pme3}) {
            const double en = discrete_energy(s, *e);
            const double ec = continuum_energy(blob_density(s), *e);
            CHECK(std::abs(en - ec) <= 1e-12 * (1.0 + std::abs(en)));
        }
        // Blob second-moment identity from the moment bound proof.
        const Geometry g = geometry(s);
        double corr = 0.0;
        for (double r : g.r) corr += r * r / 12.0;
        corr /= s.size();
        CHECK(blob_density(s).second_moment() ==
              doctest::Approx(second_moment(s) + corr).epsilon(1e-10));
    }
}

TEST_CASE("blob balls are pairwise disjoint") {
    std::mt19937_64 rng(13);
    for (int k = 0; k < 50; ++k) {
        const ParticleState s = random_state(rng, 2 + k % 9, Domain::whole_line());
        const PiecewiseDensity rho = blob_density(s);
        for (std::size_t i = 0; i + 1 < rho.pieces().size(); ++i)
            CHECK(rho.pieces()[i].b <= rho.pieces()[i + 1].a + 1e-14);
    }
}

TEST_CASE("translation invariance on the whole line") {
    std::mt19937_64 rng(17);
    const InternalEnergy heat = InternalEnergy::heat();
    for (int k = 0; k < 20; ++k) {
        const ParticleState s = random_state(rng, 5, Domain::whole_line());
        std::vector<double> shifted = s.positions();
        for (double& x : shifted) x += 3.25;
        const ParticleState t(shifted, Domain::whole_line());
        CHECK(discrete_energy(s, heat) ==
              doctest::Approx(discrete_energy(t, heat)).epsilon(1e-13));
    }
}

TEST_CASE("discrete energy is convex in positions") {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const InternalEnergy heat = InternalEnergy::heat();
    const InternalEnergy pme2 = InternalEnergy::power_law(2.0);
    for (int k = 0; k < 100; ++k) {
        const int n = 2 + k % 7;
        const ParticleState a = random_state(rng, n, Domain::whole_line());
        const ParticleState b = random_state(rng, n, Domain::whole_line());
        const double lam = unit(rng);
        std::vector<double> mix(n);
        for (int i = 0; i < n; ++i)
            mix[i] = lam * a.position(i) + (1.0 - lam) * b.position(i);
        std::sort(mix.begin(), mix.end());
        bool distinct = true;
        for (int i = 0; i + 1 < n; ++i) distinct = distinct && mix[i] < mix[i + 1];
        if (!distinct) continue;
        const ParticleState m(mix, Domain::whole_line());
        for (const InternalEnergy* e : {&heat, &pme2}) {
            const double lhs = discrete_energy(m, *e);
            const double rhs = lam * discrete_energy(a, *e) +
                               (1.0 - lam) * discrete_energy(b, *e);
            CHECK(lhs <= rhs + 1e-12);
        }
    }
}

TEST_CASE("gap statistics") {
    const ParticleState even({-1.0, 0.0, 1.0}, Domain::whole_line());
    CHECK(gap_total(even) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(uniform_ratio(even) == doctest::Approx(0.0).epsilon(1e-15));

    const ParticleState s({0.0, 1.0, 3.0}, Domain::whole_line());
    CHECK(gap_total(s) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(uniform_ratio(s) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("infinite gaps stay symbolic") {
    const Geometry g = geometry(ParticleState({0.0, 1.0}, Domain::whole_line()));
    CHECK(g.gap[0] == kInf);
    CHECK(g.gap[2] == kInf);
    CHECK(g.r == std::vector<double>{1.0, 1.0});
}
