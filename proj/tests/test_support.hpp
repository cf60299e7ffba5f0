#pragma once

#include <vector>

#include "dmeta/piecewise.hpp"
#include "dmeta/rng.hpp"

namespace dmeta::testing {

// Random piecewise-constant function with `cells` cells and values in
// [vlo, vhi].
inline PiecewiseConstant random_pc(Rng& rng, const Interval& domain, int cells, double vlo = 0.0,
                                   double vhi = 1.0) {
    std::vector<double> bps{domain.lo};
    for (int i = 0; i < cells - 1; ++i) bps.push_back(rng.uniform(domain.lo, domain.hi));
    bps.push_back(domain.hi);
    std::sort(bps.begin(), bps.end());
    for (std::size_t i = 1; i < bps.size(); ++i)
        if (bps[i] - bps[i - 1] < 1e-9) bps[i] = bps[i - 1] + 1e-9;
    bps.back() = domain.hi;
    std::vector<double> vals;
    for (std::size_t k = 0; k + 1 < bps.size(); ++k) vals.push_back(rng.uniform(vlo, vhi));
    return PiecewiseConstant(std::move(bps), std::move(vals));
}

inline Density random_density(Rng& rng, const Interval& domain, int cells) {
    return Density(random_pc(rng, domain, cells, 0.05, 2.0)).normalized();
}

}  // namespace dmeta::testing
