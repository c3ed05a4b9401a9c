#include "wgf/serfaty.hpp"

#include <cmath>

#include "wgf/errors.hpp"

namespace wgf {

SerfatyReport serfaty_report(const std::vector<Trajectory>& trajectories,
                             const std::function<double(double)>& ref_energy_at,
                             const std::function<double(double)>& ref_fisher_at) {
    if (trajectories.empty()) throw input_error("serfaty_report needs trajectories");
    const auto& t0 = trajectories.front();
    for (const auto& tr : trajectories) {
        if (tr.samples.size() != t0.samples.size())
            throw input_error("trajectories must share the sample grid");
        for (std::size_t k = 0; k < tr.samples.size(); ++k)
            if (std::abs(tr.samples[k].t - t0.samples[k].t) > 1e-12)
                throw input_error("trajectories must share the sample grid");
    }

    SerfatyReport rep;
    for (const auto& s : t0.samples) rep.times.push_back(s.t);
    const std::size_t kt = rep.times.size();

    // Continuum columns are shared across N.
    std::vector<double> cont_energy(kt), cont_fisher(kt), cont_speed2(kt, 0.0);
    for (std::size_t k = 0; k < kt; ++k) {
        cont_energy[k] = ref_energy_at(rep.times[k]);
        cont_fisher[k] = ref_fisher_at(rep.times[k]);
        if (k > 0)
            cont_speed2[k] = cont_speed2[k - 1] +
                             0.5 * (cont_fisher[k - 1] + cont_fisher[k]) *
                                 (rep.times[k] - rep.times[k - 1]);
    }

    for (const auto& tr : trajectories) {
        rep.ns.push_back(tr.n);
        double cum = 0.0;
        for (std::size_t k = 0; k < kt; ++k) {
            const auto& s = tr.samples[k];
            if (k > 0) {
                const auto& prev = tr.samples[k - 1];
                cum += 0.5 * (prev.slope * prev.slope + s.slope * s.slope) *
                       (s.t - prev.t);
            }
            SerfatyRow row;
            row.t = s.t;
            row.n = tr.n;
            row.disc_speed2_int = cum;
            row.disc_energy = s.energy;
            row.disc_slope = s.slope;
            row.cont_speed2_int = cont_speed2[k];
            row.cont_energy = cont_energy[k];
            row.cont_slope = std::sqrt(std::max(cont_fisher[k], 0.0));
            rep.rows.push_back(row);
        }
    }

    // Monotone-trend verdicts in N.
    const auto err = [&](std::size_t ni, std::size_t k, auto disc, auto cont) {
        const SerfatyRow& r = rep.rows[ni * kt + k];
        return std::abs(disc(r) - cont(r));
    };
    const auto trend = [&](auto disc, auto cont, bool include_t0) {
        for (std::size_t k = include_t0 ? 0 : 1; k < kt; ++k)
            for (std::size_t ni = 0; ni + 1 < rep.ns.size(); ++ni)
                if (err(ni + 1, k, disc, cont) > err(ni, k, disc, cont) * (1.0 + 1e-9))
                    return false;
        return true;
    };
    rep.energy_trend = trend([](const SerfatyRow& r) { return r.disc_energy; },
                             [](const SerfatyRow& r) { return r.cont_energy; }, true);
    rep.slope_trend = trend([](const SerfatyRow& r) { return r.disc_slope; },
                            [](const SerfatyRow& r) { return r.cont_slope; }, false);
    rep.speed_trend = trend([](const SerfatyRow& r) { return r.disc_speed2_int; },
                            [](const SerfatyRow& r) { return r.cont_speed2_int; }, false);
    return rep;
}

}  // namespace wgf
