#pragma once

#include <cstddef>
#include <vector>

#include "dmeta/interval.hpp"

namespace dmeta {

// Breakpoints closer than this are merged by normalize().
inline constexpr double kBreakpointMergeTol = 1e-12;

// Real-valued piecewise-constant function on a closed interval domain.
// breakpoints: strictly increasing, first == domain.lo, last == domain.hi.
// values: one per cell. Cell k covers [b_k, b_{k+1}); the last cell is closed.
// A point at a breakpoint evaluates to the right cell's value.
class PiecewiseConstant {
public:
    PiecewiseConstant(std::vector<double> breakpoints, std::vector<double> values);

    static PiecewiseConstant constant(const Interval& domain, double value);

    Interval domain() const { return Interval(breakpoints_.front(), breakpoints_.back()); }
    std::size_t cell_count() const { return values_.size(); }
    Interval cell(std::size_t k) const { return Interval(breakpoints_[k], breakpoints_[k + 1]); }
    double cell_value(std::size_t k) const { return values_[k]; }
    const std::vector<double>& breakpoints() const { return breakpoints_; }
    const std::vector<double>& values() const { return values_; }

    std::size_t cell_index(double x) const;
    double operator()(double x) const { return values_[cell_index(x)]; }

    double integral() const;
    // Integral over `over` clipped to the domain.
    double integral(const Interval& over) const;

    double min_value() const;
    double max_value() const;

    // Merges breakpoints within kBreakpointMergeTol and adjacent cells with
    // exactly equal values. Pointwise values are preserved except inside
    // dropped sliver cells.
    PiecewiseConstant normalized() const;

    // Interior breakpoints where the value jumps.
    std::vector<double> discontinuities() const;

private:
    std::vector<double> breakpoints_;
    std::vector<double> values_;
};

// Nonnegative piecewise-constant weight function. Not required to integrate
// to one; normalized() rescales so that mass() == 1.
class Density {
public:
    explicit Density(PiecewiseConstant pc);

    static Density uniform(const Interval& domain);

    const PiecewiseConstant& pc() const { return pc_; }
    double mass() const { return mass_; }
    // Unnormalized mass inside `region` clipped to the domain.
    double mass_in(const Interval& region) const { return pc_.integral(region); }

    Density normalized() const;

private:
    PiecewiseConstant pc_;
    double mass_;
};

struct ArgminResult {
    Interval cell;
    double value = 0.0;
    double representative = 0.0;  // cell midpoint
};

struct CellMass {
    Interval cell;
    double mass = 0.0;
};

// Merged breakpoint sequence of f and g (same domain), deduplicated at
// kBreakpointMergeTol.
std::vector<double> merged_breakpoints(const PiecewiseConstant& f, const PiecewiseConstant& g);

// Pointwise sum on the merged partition, normalized.
PiecewiseConstant pc_add(const PiecewiseConstant& f, const PiecewiseConstant& g);

// a*f + b, normalized.
PiecewiseConstant pc_affine(const PiecewiseConstant& f, double a, double b);

// Values clamped into [lo, hi], normalized.
PiecewiseConstant pc_clamp(const PiecewiseConstant& f, double lo, double hi);

// Leftmost cell attaining the global minimum.
ArgminResult pc_argmin(const PiecewiseConstant& f);

// Per-cell masses of base * exp(-lambda * F) on the merged partition of F
// and base. Closed form per cell, no quadrature.
std::vector<CellMass> exp_neg_masses(const PiecewiseConstant& F, double lambda, const Density& base);

// Forecaster weights base * exp(-lambda * (F - min F)), shifted by the
// running minimum so cell masses stay representable for large lambda * F.
struct WeightCells {
    std::vector<double> breakpoints;
    std::vector<double> masses;  // one per cell, proportional to true masses
    double total = 0.0;
};
WeightCells stable_weight_cells(const PiecewiseConstant& F, double lambda,
                                const PiecewiseConstant& base);

}  // namespace dmeta
