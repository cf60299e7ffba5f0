#include "dmeta/partition.hpp"

#include <algorithm>
#include <stdexcept>

namespace dmeta {

namespace {
constexpr double kCutTol = 1e-12;
}

CellPartition::CellPartition(const Interval& domain) : domain_(domain) {
    if (!(domain.width() > 0.0)) throw std::invalid_argument("CellPartition: empty domain");
}

Interval CellPartition::cell(std::size_t k) const {
    double lo = (k == 0) ? domain_.lo : cuts_[k - 1];
    double hi = (k == cuts_.size()) ? domain_.hi : cuts_[k];
    return Interval(lo, hi);
}

std::vector<double> CellPartition::breakpoints() const {
    std::vector<double> bps;
    bps.reserve(cuts_.size() + 2);
    bps.push_back(domain_.lo);
    bps.insert(bps.end(), cuts_.begin(), cuts_.end());
    bps.push_back(domain_.hi);
    return bps;
}

CellPartition refine(const CellPartition& partition, const Interval& ball) {
    const Interval& dom = partition.domain();
    Interval clipped = dom.clip(ball);
    if (!(clipped.width() > 0.0))
        throw std::invalid_argument("refine: ball disjoint from domain");
    CellPartition out = partition;
    for (double e : {clipped.lo, clipped.hi}) {
        if (e - dom.lo <= kCutTol || dom.hi - e <= kCutTol) continue;
        auto it = std::lower_bound(out.cuts_.begin(), out.cuts_.end(), e);
        bool dup = (it != out.cuts_.end() && *it - e <= kCutTol) ||
                   (it != out.cuts_.begin() && e - *(it - 1) <= kCutTol);
        if (!dup) out.cuts_.insert(it, e);
    }
    return out;
}

std::vector<int> indicator_vector(const CellPartition& partition, const Interval& ball) {
    Interval clipped = partition.domain().clip(ball);
    if (!(clipped.width() > 0.0))
        throw std::invalid_argument("indicator_vector: ball disjoint from domain");
    std::vector<int> out(partition.cell_count(), 0);
    for (std::size_t k = 0; k < partition.cell_count(); ++k) {
        Interval c = partition.cell(k);
        for (double e : {clipped.lo, clipped.hi}) {
            if (c.lo < e - kCutTol && c.hi > e + kCutTol)
                throw std::invalid_argument("indicator_vector: partition not refined by ball");
        }
        out[k] = (c.lo >= clipped.lo - kCutTol && c.hi <= clipped.hi + kCutTol) ? 1 : 0;
    }
    return out;
}

}  // namespace dmeta
