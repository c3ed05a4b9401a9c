#pragma once

#include <vector>

#include "wgf/domain.hpp"
#include "wgf/errors.hpp"

namespace wgf {

// Inter-particle geometry with the fictitious-particle conventions.
//
// gap[j] holds the inter-particle distance between particles j and j+1 in
// 0-based terms, i.e. gap[0] is the distance to the left fictitious particle,
// gap[j] = x[j] - x[j-1] for 1 <= j <= N-1, and gap[N] the distance to the
// right fictitious particle. Fictitious gaps are +infinity on the whole line
// and for interior end particles on an interval; they mirror the adjacent
// real gap when an end particle sits on the boundary.
//
// r[i] = min(gap[i], gap[i+1]) is the diameter of particle i's ball; all r
// are finite and positive.
struct Geometry {
    std::vector<double> gap;  // size N+1; entries may be +infinity
    std::vector<double> r;    // size N; finite, positive

    double min_interior_gap() const;  // over gap[1..N-1]
    double max_interior_gap() const;
};

// N >= 2 strictly increasing positions with uniform weights 1/N inside the
// given domain. Immutable after construction.
class ParticleState {
  public:
    ParticleState(std::vector<double> positions, Domain domain);

    int size() const { return static_cast<int>(x_.size()); }
    const std::vector<double>& positions() const { return x_; }
    double position(int i) const { return x_[i]; }
    const Domain& domain() const { return domain_; }

    // True when the first/last particle sits on the interval boundary
    // (within 1e-14 * halfwidth), which activates the mirror convention.
    bool left_on_boundary() const;
    bool right_on_boundary() const;

  private:
    std::vector<double> x_;
    Domain domain_;
};

Geometry geometry(const ParticleState& state);

// Weighted norm sqrt((1/N) sum v_i^2) of a particle-space vector.
double weighted_norm(const std::vector<double>& v);

}  // namespace wgf
