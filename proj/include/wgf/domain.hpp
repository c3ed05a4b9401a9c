#pragma once

#include "wgf/errors.hpp"

namespace wgf {

// Spatial domain: the whole real line (no boundary conditions) or a
// symmetric interval [-halfwidth, halfwidth] with no-flux boundaries.
class Domain {
  public:
    static Domain whole_line() { return Domain(true, 0.0); }

    static Domain interval(double halfwidth) {
        if (!(halfwidth > 0.0)) throw input_error("interval halfwidth must be > 0");
        return Domain(false, halfwidth);
    }

    bool is_whole_line() const { return whole_line_; }
    bool is_interval() const { return !whole_line_; }

    // Only meaningful for intervals.
    double halfwidth() const { return halfwidth_; }

    bool contains(double x) const {
        if (whole_line_) return true;
        const double slack = 1e-12 * halfwidth_;
        return x >= -halfwidth_ - slack && x <= halfwidth_ + slack;
    }

    bool operator==(const Domain& o) const {
        return whole_line_ == o.whole_line_ && halfwidth_ == o.halfwidth_;
    }

  private:
    Domain(bool whole_line, double halfwidth)
        : whole_line_(whole_line), halfwidth_(halfwidth) {}

    bool whole_line_;
    double halfwidth_;
};

}  // namespace wgf
