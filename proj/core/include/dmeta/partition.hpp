#pragma once

#include <vector>

#include "dmeta/interval.hpp"

namespace dmeta {

// Partition of the domain into disjoint cells, induced by the clipped
// endpoints of observed optimum balls. Cuts only accumulate; refining never
// moves an existing cut. Cells narrower than 1e-12 are never created.
class CellPartition {
public:
    explicit CellPartition(const Interval& domain);

    const Interval& domain() const { return domain_; }
    const std::vector<double>& cuts() const { return cuts_; }
    std::size_t cell_count() const { return cuts_.size() + 1; }
    Interval cell(std::size_t k) const;
    double cell_width(std::size_t k) const { return cell(k).width(); }
    std::vector<double> breakpoints() const;

    friend CellPartition refine(const CellPartition& partition, const Interval& ball);

private:
    Interval domain_;
    std::vector<double> cuts_;
};

// Adds the ball's clipped endpoints as cuts. The ball must overlap the
// domain with positive width.
CellPartition refine(const CellPartition& partition, const Interval& ball);

// Entry k is 1 iff cell k lies inside the (clipped) ball. The partition must
// already be refined by the ball; a straddling cell is an error.
std::vector<int> indicator_vector(const CellPartition& partition, const Interval& ball);

// Observed task balls B(rho*_t, m^-beta), clipped to the domain.
struct BallHistory {
    std::vector<Interval> balls;
};

}  // namespace dmeta
