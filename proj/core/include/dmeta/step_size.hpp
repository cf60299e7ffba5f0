#pragma once

#include <cmath>

namespace dmeta {

enum class StepVariant { kFtl, kEwoo };

// State of the scalar step-size learner. The scalar v lives on
// [epsilon, sqrt(D^2 + epsilon^2 - log gamma)] and the forecaster step size
// is v / sqrt(m). running_sum accumulates epsilon^2 - log(overlap_s) over
// observed tasks.
struct StepSizeState {
    double epsilon = 0.0;
    double D = 1.0;
    double gamma = 0.01;
    double running_sum = 0.0;
    int t = 0;
    StepVariant variant = StepVariant::kFtl;

    double scalar_lo() const { return epsilon; }
    double scalar_hi() const {
        return std::sqrt(D * D + epsilon * epsilon - std::log(gamma));
    }

    // Feed one task's ball overlap <w*_t(t), w_t(t)>.
    void observe_overlap(double overlap);
};

// First-task step size (epsilon + scalar_hi) / (2 sqrt(m)).
double initial_lambda(const StepSizeState& state, int m);

// Follow-the-leader: sqrt(running_sum / (t*m)), clamped into the scalar
// domain divided by sqrt(m). Requires t >= 1.
double ftl_lambda(const StepSizeState& state, int m);

// EWOO: lambda = integral(x*mu) / (sqrt(m) * integral(mu)) with
// mu(x) = exp(-alpha*(t*x + running_sum/x)) over the scalar domain and
// alpha = (2/D) * min(epsilon^2/D^2, 1). Adaptive Simpson at relative 1e-8.
double ewoo_lambda(const StepSizeState& state, int m);

// Weighted mean of the EWOO density with an explicit alpha; the alpha -> 0
// limit is the interval midpoint.
double ewoo_scalar_mean(double lo, double hi, double alpha, int t, double running_sum);

// Default offset parameter: T^(-1/4) for EWOO, T^(-1/5) for FTL.
double default_epsilon(StepVariant variant, int T);

// Default domain parameter: D^2 = mean log(1/vol(C_t)) target beta*log(m).
double default_domain_param(double beta, int m);

}  // namespace dmeta
