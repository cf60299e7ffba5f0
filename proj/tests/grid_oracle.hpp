#pragma once

#include <cmath>
#include <vector>

#include "dmeta/ftrl.hpp"
#include "dmeta/partition.hpp"

namespace dmeta::testing {

// Objective evaluated from scratch (kept independent of the solver path):
// KL(w || v_hat) + eta * sum_s -log(mass of w inside ball_s).
inline double ftrl_objective_direct(const BallHistory& history, const CellPartition& partition,
                                    const std::vector<double>& w, double eta) {
    double vol = partition.domain().width();
    double obj = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) {
        double vhat = partition.cell_width(k) / vol;
        if (w[k] > 0.0) obj += w[k] * std::log(w[k] / vhat);
    }
    for (const Interval& b : history.balls) {
        double mass = 0.0;
        for (std::size_t k = 0; k < w.size(); ++k) {
            Interval c = partition.cell(k);
            if (c.lo >= b.lo - 1e-12 && c.hi <= b.hi + 1e-12) mass += w[k];
        }
        if (!(mass > 0.0)) return 1e300;
        obj += eta * -std::log(mass);
    }
    return obj;
}

// Exhaustive grid search over w = gamma*v_hat + (1-gamma)*z for z on the
// simplex with the given step. Supports up to 3 cells.
inline std::vector<double> ftrl_grid_oracle(const BallHistory& history,
                                            const CellPartition& partition, double gamma,
                                            double eta, double step) {
    const std::size_t n = partition.cell_count();
    double vol = partition.domain().width();
    std::vector<double> vhat(n);
    for (std::size_t k = 0; k < n; ++k) vhat[k] = partition.cell_width(k) / vol;
    if (n == 1) return {1.0};

    const int grid = static_cast<int>(std::lround(1.0 / step));
    std::vector<double> best;
    double best_obj = 1e301;
    std::vector<double> w(n);
    auto consider = [&](double z0, double z1, double z2) {
        w[0] = gamma * vhat[0] + (1.0 - gamma) * z0;
        w[1] = gamma * vhat[1] + (1.0 - gamma) * z1;
        if (n == 3) w[2] = gamma * vhat[2] + (1.0 - gamma) * z2;
        double obj = ftrl_objective_direct(history, partition, w, eta);
        if (obj < best_obj) {
            best_obj = obj;
            best = w;
        }
    };
    if (n == 2) {
        for (int i = 0; i <= grid; ++i) {
            double z0 = static_cast<double>(i) / grid;
            consider(z0, 1.0 - z0, 0.0);
        }
    } else {
        for (int i = 0; i <= grid; ++i) {
            double z0 = static_cast<double>(i) / grid;
            for (int j = 0; j <= grid - i; ++j) {
                double z1 = static_cast<double>(j) / grid;
                consider(z0, z1, 1.0 - z0 - z1);
            }
        }
    }
    return best;
}

}  // namespace dmeta::testing
