#pragma once

#include <vector>

#include "dmeta/piecewise.hpp"
#include "dmeta/rng.hpp"

namespace dmeta {

// Continuous-action exponential weights: the sampling density at round i is
// proportional to init(rho) * exp(-lambda * cumulative_loss(rho)). Weights
// are kept implicitly as (init, cumulative_loss, lambda) and cell masses are
// computed with the running minimum subtracted, so large exponents never
// underflow to a zero-mass state.
struct ForecasterState {
    Density init;
    PiecewiseConstant cumulative_loss;
    double lambda = 0.0;
    int round = 0;
};

struct TaskTrace {
    std::vector<double> plays;
    std::vector<double> incurred;
    double opt_value = 0.0;
    double opt_rho = 0.0;
    double regret = 0.0;
};

ForecasterState ef_init(const Interval& domain, Density init, double lambda);

// Current per-cell sampling weights (proportional to true masses).
WeightCells ef_weight_cells(const ForecasterState& state);

// Inverse-CDF sampling: cell proportional to mass, then uniform in the cell.
// Consumes exactly two uniform draws.
double ef_sample(const ForecasterState& state, Rng& rng);

// Requires loss values in [0, 1] and a matching domain.
ForecasterState ef_update(ForecasterState state, const PiecewiseConstant& loss);

// Runs one task: sample, suffer, update for each loss. The optimum in
// hindsight is the leftmost minimizing cell of the summed losses.
TaskTrace ef_run_task(const std::vector<PiecewiseConstant>& losses, const Density& init,
                      double lambda, Rng& rng);

// Step size minimizing the m*lambda + neg_log_overlap/lambda regret terms,
// floored so a full-overlap ball still gives a usable positive step.
double theory_step_size(double neg_log_overlap, int m);

}  // namespace dmeta
