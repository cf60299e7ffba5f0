#include "dmeta/piecewise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace dmeta {

PiecewiseConstant::PiecewiseConstant(std::vector<double> breakpoints, std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
    if (breakpoints_.size() < 2) throw std::invalid_argument("PiecewiseConstant: need >= 2 breakpoints");
    if (values_.size() + 1 != breakpoints_.size())
        throw std::invalid_argument("PiecewiseConstant: values/breakpoints size mismatch");
    for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i) {
        if (!(breakpoints_[i] < breakpoints_[i + 1]))
            throw std::invalid_argument("PiecewiseConstant: breakpoints not strictly increasing");
    }
    for (double v : values_) {
        if (!std::isfinite(v)) throw std::invalid_argument("PiecewiseConstant: non-finite value");
    }
}

PiecewiseConstant PiecewiseConstant::constant(const Interval& domain, double value) {
    if (!(domain.width() > 0.0)) throw std::invalid_argument("constant: empty domain");
    return PiecewiseConstant({domain.lo, domain.hi}, {value});
}

std::size_t PiecewiseConstant::cell_index(double x) const {
    const double lo = breakpoints_.front();
    const double hi = breakpoints_.back();
    if (x < lo || x > hi) throw std::domain_error("PiecewiseConstant: point outside domain");
    auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
    std::size_t idx = static_cast<std::size_t>(it - breakpoints_.begin());
    if (idx == 0) return 0;                       // x == lo with lo repeated is impossible
    if (idx >= breakpoints_.size()) return values_.size() - 1;  // x == hi
    return idx - 1;
}

double PiecewiseConstant::integral() const {
    double s = 0.0;
    for (std::size_t k = 0; k < values_.size(); ++k)
        s += values_[k] * (breakpoints_[k + 1] - breakpoints_[k]);
    return s;
}

double PiecewiseConstant::integral(const Interval& over) const {
    Interval d = domain();
    double a = std::max(over.lo, d.lo);
    double b = std::min(over.hi, d.hi);
    if (!(a < b)) return 0.0;
    double s = 0.0;
    std::size_t ka = cell_index(a);
    std::size_t kb = cell_index(b);
    if (kb == ka) return values_[ka] * (b - a);
    s += values_[ka] * (breakpoints_[ka + 1] - a);
    for (std::size_t k = ka + 1; k < kb; ++k)
        s += values_[k] * (breakpoints_[k + 1] - breakpoints_[k]);
    s += values_[kb] * (b - breakpoints_[kb]);
    return s;
}

double PiecewiseConstant::min_value() const {
    return *std::min_element(values_.begin(), values_.end());
}

double PiecewiseConstant::max_value() const {
    return *std::max_element(values_.begin(), values_.end());
}

PiecewiseConstant PiecewiseConstant::normalized() const {
    const double lo = breakpoints_.front();
    const double hi = breakpoints_.back();
    std::vector<double> bps;
    bps.reserve(breakpoints_.size());
    bps.push_back(lo);
    for (std::size_t i = 1; i + 1 < breakpoints_.size(); ++i) {
        double b = breakpoints_[i];
        if (b - bps.back() > kBreakpointMergeTol && hi - b > kBreakpointMergeTol) bps.push_back(b);
    }
    bps.push_back(hi);

    std::vector<double> vals;
    vals.reserve(bps.size() - 1);
    for (std::size_t k = 0; k + 1 < bps.size(); ++k)
        vals.push_back((*this)(0.5 * (bps[k] + bps[k + 1])));

    // Merge runs of equal adjacent values.
    std::vector<double> mbps{bps.front()};
    std::vector<double> mvals;
    for (std::size_t k = 0; k < vals.size(); ++k) {
        if (!mvals.empty() && mvals.back() == vals[k]) {
            mbps.back() = bps[k + 1];
        } else {
            mvals.push_back(vals[k]);
            mbps.push_back(bps[k + 1]);
        }
    }
    return PiecewiseConstant(std::move(mbps), std::move(mvals));
}

std::vector<double> PiecewiseConstant::discontinuities() const {
    std::vector<double> out;
    for (std::size_t k = 0; k + 1 < values_.size(); ++k)
        if (values_[k] != values_[k + 1]) out.push_back(breakpoints_[k + 1]);
    return out;
}

Density::Density(PiecewiseConstant pc) : pc_(std::move(pc)), mass_(0.0) {
    for (double v : pc_.values())
        if (v < 0.0) throw std::invalid_argument("Density: negative value");
    mass_ = pc_.integral();
}

Density Density::uniform(const Interval& domain) {
    return Density(PiecewiseConstant::constant(domain, 1.0 / domain.width()));
}

Density Density::normalized() const {
    if (!(mass_ > 0.0)) throw std::invalid_argument("Density: cannot normalize zero mass");
    return Density(pc_affine(pc_, 1.0 / mass_, 0.0));
}

static void check_same_domain(const PiecewiseConstant& f, const PiecewiseConstant& g) {
    if (!(f.domain() == g.domain()))
        throw std::invalid_argument("piecewise op: domain mismatch");
}

std::vector<double> merged_breakpoints(const PiecewiseConstant& f, const PiecewiseConstant& g) {
    check_same_domain(f, g);
    const auto& a = f.breakpoints();
    const auto& b = g.breakpoints();
    std::vector<double> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        double next;
        if (j >= b.size() || (i < a.size() && a[i] <= b[j]))
            next = a[i++];
        else
            next = b[j++];
        if (out.empty() || next - out.back() > kBreakpointMergeTol) out.push_back(next);
    }
    out.back() = a.back();  // keep the exact domain endpoint
    return out;
}

// Walks the merged partition evaluating both functions at cell midpoints in
// one pass; `op` receives (cell_lo, cell_hi, f_value, g_value).
template <typename Op>
static void walk_merged(const PiecewiseConstant& f, const PiecewiseConstant& g, Op&& op) {
    std::vector<double> bps = merged_breakpoints(f, g);
    const auto& fb = f.breakpoints();
    const auto& gb = g.breakpoints();
    std::size_t fi = 0, gi = 0;
    for (std::size_t k = 0; k + 1 < bps.size(); ++k) {
        double mid = 0.5 * (bps[k] + bps[k + 1]);
        while (fi + 2 < fb.size() && fb[fi + 1] <= mid) ++fi;
        while (gi + 2 < gb.size() && gb[gi + 1] <= mid) ++gi;
        op(bps[k], bps[k + 1], f.values()[fi], g.values()[gi]);
    }
}

PiecewiseConstant pc_add(const PiecewiseConstant& f, const PiecewiseConstant& g) {
    std::vector<double> bps;
    std::vector<double> vals;
    walk_merged(f, g, [&](double lo, double hi, double fv, double gv) {
        if (bps.empty()) bps.push_back(lo);
        bps.push_back(hi);
        vals.push_back(fv + gv);
    });
    return PiecewiseConstant(std::move(bps), std::move(vals)).normalized();
}

PiecewiseConstant pc_affine(const PiecewiseConstant& f, double a, double b) {
    std::vector<double> vals = f.values();
    for (double& v : vals) v = a * v + b;
    return PiecewiseConstant(f.breakpoints(), std::move(vals)).normalized();
}

PiecewiseConstant pc_clamp(const PiecewiseConstant& f, double lo, double hi) {
    std::vector<double> vals = f.values();
    for (double& v : vals) v = std::clamp(v, lo, hi);
    return PiecewiseConstant(f.breakpoints(), std::move(vals)).normalized();
}

ArgminResult pc_argmin(const PiecewiseConstant& f) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < f.cell_count(); ++k)
        if (f.cell_value(k) < f.cell_value(best)) best = k;
    ArgminResult r;
    r.cell = f.cell(best);
    r.value = f.cell_value(best);
    r.representative = r.cell.midpoint();
    return r;
}

std::vector<CellMass> exp_neg_masses(const PiecewiseConstant& F, double lambda, const Density& base) {
    if (lambda < 0.0) throw std::invalid_argument("exp_neg_masses: lambda < 0");
    std::vector<CellMass> out;
    walk_merged(F, base.pc(), [&](double lo, double hi, double Fv, double bv) {
        out.push_back({Interval(lo, hi), bv * (hi - lo) * std::exp(-lambda * Fv)});
    });
    return out;
}

WeightCells stable_weight_cells(const PiecewiseConstant& F, double lambda,
                                const PiecewiseConstant& base) {
    const double fmin = F.min_value();
    WeightCells wc;
    walk_merged(F, base, [&](double lo, double hi, double Fv, double bv) {
        if (wc.breakpoints.empty()) wc.breakpoints.push_back(lo);
        wc.breakpoints.push_back(hi);
        double m = bv * (hi - lo) * std::exp(-lambda * (Fv - fmin));
        wc.masses.push_back(m);
        wc.total += m;
    });
    return wc;
}

}  // namespace dmeta
