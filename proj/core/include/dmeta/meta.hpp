#pragma once

#include <cstdint>
#include <vector>

#include "dmeta/forecaster.hpp"
#include "dmeta/partition.hpp"
#include "dmeta/piecewise.hpp"
#include "dmeta/rng.hpp"
#include "dmeta/step_size.hpp"

namespace dmeta {

enum class LambdaMode { kMeta, kTheoryFixed };

struct MetaConfig {
    int T = 1;
    int m = 1;
    double beta = 0.5;
    double gamma = 0.01;
    double eta = 0.01;
    // 0 means "use the default": epsilon = T^(-1/4) (EWOO) or T^(-1/5) (FTL),
    // D = sqrt(beta * log m).
    double epsilon = 0.0;
    double D = 0.0;
    StepVariant step_variant = StepVariant::kFtl;
    LambdaMode lambda_mode = LambdaMode::kMeta;
};

struct MetaResults {
    std::vector<double> task_regrets;
    double task_averaged = 0.0;
    std::vector<double> lambdas;           // step size used at each task
    std::vector<double> overlaps;          // <w*_t(t), w_t(t)>
    std::vector<double> neg_log_overlaps;  // -log of the above
    std::vector<double> opt_rhos;
    std::vector<Interval> balls;           // clipped B(rho*_t, m^-beta)
    std::vector<Density> initializers;     // w_1 (uniform) .. w_{T+1}
    std::vector<TaskTrace> traces;
    double epsilon_used = 0.0;
    double D_used = 0.0;

    const Density& final_initializer() const { return initializers.back(); }
};

// Meta loop: per task, run the forecaster with the current initializer and
// step size, locate the task optimum, refine the discretization with its
// ball, FTRL-update the initializer, and feed the ball overlap to the
// step-size learner. In theory-fixed mode the step size is instead set per
// task from the realized optimum's ball overlap (oracle), and the
// initializer sequence is unchanged relative to meta mode.
MetaResults meta_run(const std::vector<std::vector<PiecewiseConstant>>& tasks,
                     const MetaConfig& cfg, Rng& rng);

}  // namespace dmeta
