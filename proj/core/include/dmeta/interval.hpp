#pragma once

#include <algorithm>
#include <stdexcept>

namespace dmeta {

// Closed interval [lo, hi] on the real line. Degenerate (lo == hi) is allowed
// where noted by the consumer; most call sites require positive width.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    Interval() = default;
    Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
        if (!(lo <= hi)) throw std::invalid_argument("Interval: lo > hi");
    }

    double width() const { return hi - lo; }
    double midpoint() const { return 0.5 * (lo + hi); }

    bool contains(double x) const { return x >= lo && x <= hi; }
    bool contains(const Interval& other) const { return other.lo >= lo && other.hi <= hi; }

    // Intersection clipped to this interval; empty result collapses to a
    // degenerate interval at the nearest endpoint.
    Interval clip(const Interval& to) const {
        double a = std::max(lo, to.lo);
        double b = std::min(hi, to.hi);
        if (a > b) {
            double p = std::clamp(lo, to.lo, to.hi);
            return Interval(p, p);
        }
        return Interval(a, b);
    }

    bool operator==(const Interval& other) const { return lo == other.lo && hi == other.hi; }
};

// Ball B(center, radius) as an interval, before any clipping to the domain.
inline Interval ball(double center, double radius) {
    return Interval(center - radius, center + radius);
}

}  // namespace dmeta
