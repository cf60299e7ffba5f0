#pragma once

#include <vector>

#include "dmeta/interval.hpp"
#include "dmeta/piecewise.hpp"

namespace dmeta {

struct DispersionReport {
    double epsilon = 0.0;
    int max_window_count = 0;
    int total_discontinuities = 0;
    int windows_scanned = 0;
};

// -log of the mass fraction w assigns to the ball (clipped to the domain).
// Returns +infinity when the ball mass is zero. Invariant under positive
// rescaling of w.
double neg_log_overlap(const Density& w, const Interval& ball);

struct TaskSimilarity {
    double v_squared = 0.0;  // minimized average negative log-overlap
    double v = 0.0;          // sqrt(v_squared)
    Density minimizer;
};

// Minimizes -(1/T) sum_t log(mass in ball_t) over probability densities on
// the domain. The optimum is constant on the cells of the partition refined
// by all balls; within a group of equivalent cells mass is spread
// proportionally to width.
TaskSimilarity task_similarity(const std::vector<Interval>& balls, const Interval& domain);

// Max number of pooled discontinuity locations in any closed window of width
// epsilon, via a sorted sweep.
DispersionReport dispersion_count(const std::vector<PiecewiseConstant>& losses, double epsilon);

double task_averaged_regret(const std::vector<double>& regrets);

}  // namespace dmeta
