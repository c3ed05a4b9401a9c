#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "wgf/discrete_energy.hpp"
#include "wgf/oracles.hpp"
#include "wgf/subgradient.hpp"

using namespace wgf;

namespace {

ParticleState from_gaps(std::vector<double> gaps, double x0 = 0.0) {
    std::vector<double> x{x0};
    for (double g : gaps) x.push_back(x.back() + g);
    return ParticleState(std::move(x), Domain::whole_line());
}

ParticleState random_state(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> u(0.1, 1.1);
    std::vector<double> gaps(n - 1);
    for (double& g : gaps) g = u(rng);
    return from_gaps(std::move(gaps), -1.0 + u(rng));
}

}  // namespace

TEST_CASE("classification examples") {
    const NeighborLabels a =
        classify(ParticleState({-1.0, 0.0, 1.0}, Domain::whole_line()));
    CHECK(a.a == std::vector<Side>{Side::L, Side::R, Side::E, Side::L, Side::R});

    // Equally spaced pinned interval: every interior comparison ties.
    std::vector<double> x(6);
    for (int i = 0; i < 6; ++i) x[i] = -1.0 + 0.4 * i;
    const NeighborLabels b = classify(ParticleState(x, Domain::interval(1.0)));
    for (int j = 1; j <= 6; ++j) CHECK(b.a[j] == Side::E);

    const NeighborLabels c =
        classify(ParticleState({0.0, 1.0, 3.0}, Domain::whole_line()));
    CHECK(c.a == std::vector<Side>{Side::L, Side::R, Side::L, Side::L, Side::R});
}

TEST_CASE("psi value examples") {
    // Heat: psi_i = 1/dx_i independent of N.
    const ParticleState s({0.0, 0.5, 1.5}, Domain::whole_line());
    const auto psi = psi_values(s, InternalEnergy::heat());
    CHECK(psi[0] == 0.0);  // infinite gap
    CHECK(psi[1] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(psi[2] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(psi[3] == 0.0);

    // Power law: psi_i = N (N dx_i)^-m.
    const ParticleState t({0.0, 1.0, 2.0}, Domain::whole_line());
    const auto psi2 = psi_values(t, InternalEnergy::power_law(2.0));
    CHECK(psi2[1] == doctest::Approx(3.0 / 9.0).epsilon(1e-14));
}

TEST_CASE("case table is complete and matches the tie override") {
    const CaseTable& t = case_table();
    using enum Side;
    for (Side l : {L, E, R})
        for (Side r : {L, E, R}) {
            const auto [cn, cs] = t.coef[CaseTable::index(l, E, r)];
            CHECK(cn == 0.0);
            CHECK(cs == 0.0);
        }
    CHECK(t.coef[CaseTable::index(R, R, L)] == std::pair{2.0, 1.0});
    CHECK(t.coef[CaseTable::index(L, R, L)] == std::pair{2.0, 0.0});
    CHECK(t.coef[CaseTable::index(R, L, R)] == std::pair{0.0, 2.0});
    CHECK(t.coef[CaseTable::index(L, L, L)] == std::pair{1.0, 1.0});
}

TEST_CASE("minimal norm examples") {
    const InternalEnergy heat = InternalEnergy::heat();
    const Subgradient z =
        minimal_norm(ParticleState({-1.0, 0.0, 1.0}, Domain::whole_line()), heat);
    CHECK(z.z[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(z.z[1] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(z.z[2] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(z.norm_w == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-14));

    // Equally spaced pinned state: zero subgradient.
    std::vector<double> x(7);
    for (int i = 0; i < 7; ++i) x[i] = -1.0 + i / 3.0;
    const Subgradient zp = minimal_norm(ParticleState(x, Domain::interval(1.0)), heat);
    for (double zi : zp.z) CHECK(zi == 0.0);
    CHECK(local_slope(ParticleState(x, Domain::interval(1.0)), heat) == 0.0);

    // Asymmetric state, frozen from the vertex-enumeration oracle.
    const ParticleState s({0.0, 1.0, 3.0}, Domain::whole_line());
    const Subgradient za = minimal_norm(s, heat);
    const Subgradient oracle = lambda_vertex_minimal(s, heat);
    CHECK(za.z[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(za.z[1] == doctest::Approx(-1.5).epsilon(1e-12));
    CHECK(za.z[2] == doctest::Approx(-0.5).epsilon(1e-12));
    for (int i = 0; i < 3; ++i)
        CHECK(za.z[i] == doctest::Approx(oracle.z[i]).epsilon(1e-9));
}

TEST_CASE("gradient consistency at tie-free states") {
    std::mt19937_64 rng(23);
    const InternalEnergy heat = InternalEnergy::heat();
    const InternalEnergy pme2 = InternalEnergy::power_law(2.0);
    for (int k = 0; k < 60; ++k) {
        const ParticleState s = random_state(rng, 2 + k % 7);
        const NeighborLabels lab = classify(s);
        bool tie = false;
        for (Side a : lab.a) tie = tie || (a == Side::E);
        if (tie) continue;
        for (const InternalEnergy* e : {&heat, &pme2}) {
            const Subgradient z = minimal_norm(s, *e);
            const std::vector<double> fd = fd_gradient_z(s, *e);
            for (int i = 0; i < s.size(); ++i)
                CHECK(z.z[i] ==
                      doctest::Approx(fd[i]).epsilon(1e-5).scale(std::abs(fd[i]) + 1.0));
        }
    }
}

TEST_CASE("first-order membership inequality at tie-free states") {
    std::mt19937_64 rng(29);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const InternalEnergy heat = InternalEnergy::heat();
    const double eps = 1e-7;
    for (int k = 0; k < 40; ++k) {
        const ParticleState s = random_state(rng, 3 + k % 5);
        const NeighborLabels lab = classify(s);
        bool tie = false;
        for (Side a : lab.a) tie = tie || (a == Side::E);
        if (tie) continue;
        const Subgradient z = minimal_norm(s, heat);
        const double e0 = discrete_energy(s, heat);
        const int n = s.size();
        for (int rep = 0; rep < 5; ++rep) {
            std::vector<double> v(n);
            for (double& vi : v) vi = gauss(rng);
            const double vn = weighted_norm(v);
            for (double& vi : v) vi /= vn;
            std::vector<double> y = s.positions();
            for (int i = 0; i < n; ++i) y[i] += eps * v[i];
            bool ordered = true;
            for (int i = 0; i + 1 < n; ++i) ordered = ordered && y[i] < y[i + 1];
            if (!ordered) continue;
            double inner = 0.0;
            for (int i = 0; i < n; ++i) inner += z.z[i] * eps * v[i];
            inner /= n;
            const double e1 = discrete_energy(ParticleState(y, s.domain()), heat);
            CHECK(e1 >= e0 + inner - 1e-10);
        }
    }
}

TEST_CASE("minimality against multiplier vertices at engineered ties") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.1, 1.1);
    const InternalEnergy heat = InternalEnergy::heat();
    const InternalEnergy pme2 = InternalEnergy::power_law(2.0);
    for (int k = 0; k < 40; ++k) {
        const int n = 3 + k % 6;
        std::vector<double> gaps(n - 1);
        for (double& g : gaps) g = u(rng);
        std::uniform_int_distribution<int> pick(1, n - 2);
        gaps[pick(rng)] = gaps[pick(rng) - 1];
        const ParticleState s = from_gaps(gaps);
        for (const InternalEnergy* e : {&heat, &pme2}) {
            const Subgradient z = minimal_norm(s, *e);
            const auto candidates = lambda_vertex_candidates(s, *e);
            for (int i = 0; i < n; ++i)
                for (double cand : candidates[i])
                    CHECK(std::abs(z.z[i]) <= std::abs(cand) + 1e-12);
            CHECK(z.norm_w <= lambda_vertex_minimal(s, *e).norm_w + 1e-9);
        }
    }
}

TEST_CASE("a strictly widest gap contracts") {
    // Gaps 0.5, 1.0, 0.5: the middle gap is the strict maximum, so the two
    // particles flanking it must move toward each other.
    const ParticleState s = from_gaps({0.5, 1.0, 0.5});
    const Subgradient z = minimal_norm(s, InternalEnergy::heat());
    CHECK(-z.z[1] > 0.0);  // left flank moves right
    CHECK(-z.z[2] < 0.0);  // right flank moves left
}

TEST_CASE("sliding selection agrees with the table off ties") {
    std::mt19937_64 rng(37);
    const InternalEnergy heat = InternalEnergy::heat();
    for (int k = 0; k < 40; ++k) {
        const ParticleState s = random_state(rng, 2 + k % 7);
        const NeighborLabels lab = classify(s);
        bool tie = false;
        for (Side a : lab.a) tie = tie || (a == Side::E);
        if (tie) continue;
        const Subgradient table = minimal_norm(s, heat);
        const Subgradient slide = sliding_selection(s, heat, kDefaultTieTol, false, false);
        for (int i = 0; i < s.size(); ++i)
            CHECK(slide.z[i] == doctest::Approx(table.z[i]).epsilon(1e-12));
    }
}

TEST_CASE("sliding selection keeps attractive ties together") {
    // Symmetric tied pair: the shared-multiplier minimiser expands both
    // gaps at the same rate.
    const ParticleState sym({-1.0, 0.0, 1.0}, Domain::whole_line());
    const Subgradient zs = sliding_selection(sym, InternalEnergy::heat(),
                                             kDefaultTieTol, false, false);
    CHECK(zs.z[0] == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(zs.z[1] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(zs.z[2] == doctest::Approx(-1.5).epsilon(1e-12));

    // Asymmetric neighbour pressures: gap rates still equalise on the tie.
    const ParticleState s({0.0, 1.0, 2.0, 3.5}, Domain::whole_line());
    const Subgradient z = sliding_selection(s, InternalEnergy::heat(), kDefaultTieTol,
                                            false, false);
    const double rate2 = -z.z[1] + z.z[0];
    const double rate3 = -z.z[2] + z.z[1];
    CHECK(rate2 == doctest::Approx(rate3).epsilon(1e-10));
    CHECK(rate2 == doctest::Approx(7.0 / 6.0).epsilon(1e-10));
}

TEST_CASE("sliding selection vanishes on the uniform pinned state") {
    std::vector<double> x(9);
    for (int i = 0; i < 9; ++i) x[i] = -1.0 + 0.25 * i;
    const ParticleState s(x, Domain::interval(1.0));
    const Subgradient z = sliding_selection(s, InternalEnergy::heat(), kDefaultTieTol,
                                            true, true);
    for (double zi : z.z) CHECK(std::abs(zi) <= 1e-12);
}

TEST_CASE("subgradient box brackets the table value") {
    std::mt19937_64 rng(41);
    const InternalEnergy heat = InternalEnergy::heat();
    for (int k = 0; k < 40; ++k) {
        const ParticleState s = random_state(rng, 3 + k % 5);
        const Subgradient z = minimal_norm(s, heat);
        const auto box = subgradient_box(s, heat);
        for (int i = 0; i < s.size(); ++i) {
            CHECK(z.z[i] >= box[i].first - 1e-12);
            CHECK(z.z[i] <= box[i].second + 1e-12);
        }
    }
}
