#include "dmeta/step_size.hpp"

#include <algorithm>
#include <stdexcept>

#include "dmeta/quadrature.hpp"

namespace dmeta {

void StepSizeState::observe_overlap(double overlap) {
    double clipped = std::clamp(overlap, 1e-300, 1.0);
    running_sum += epsilon * epsilon - std::log(clipped);
    t += 1;
}

double initial_lambda(const StepSizeState& state, int m) {
    if (m < 1) throw std::invalid_argument("initial_lambda: m < 1");
    return (state.epsilon + state.scalar_hi()) / (2.0 * std::sqrt(static_cast<double>(m)));
}

double ftl_lambda(const StepSizeState& state, int m) {
    if (state.t < 1) throw std::invalid_argument("ftl_lambda: no tasks observed");
    if (m < 1) throw std::invalid_argument("ftl_lambda: m < 1");
    double v = std::sqrt(state.running_sum / (static_cast<double>(state.t) * m));
    double sqm = std::sqrt(static_cast<double>(m));
    return std::clamp(v, state.scalar_lo() / sqm, state.scalar_hi() / sqm);
}

double ewoo_scalar_mean(double lo, double hi, double alpha, int t, double running_sum) {
    if (hi - lo < 1e-15) return 0.5 * (lo + hi);
    // Shift the exponent by its maximum over the interval before integrating.
    auto exponent = [&](double x) { return -alpha * (t * x + running_sum / x); };
    double emax = std::max(exponent(lo), exponent(hi));
    if (t > 0 && running_sum > 0.0) {
        double xstar = std::sqrt(running_sum / t);
        if (xstar > lo && xstar < hi) emax = std::max(emax, exponent(xstar));
    }
    auto mu = [&](double x) { return std::exp(exponent(x) - emax); };
    auto xmu = [&](double x) { return x * mu(x); };
    double denom = adaptive_simpson(mu, lo, hi, 1e-8);
    double numer = adaptive_simpson(xmu, lo, hi, 1e-8);
    return numer / denom;
}

double ewoo_lambda(const StepSizeState& state, int m) {
    if (state.t < 1) throw std::invalid_argument("ewoo_lambda: no tasks observed");
    if (m < 1) throw std::invalid_argument("ewoo_lambda: m < 1");
    if (!(state.D > 0.0)) throw std::invalid_argument("ewoo_lambda: D must be positive");
    double e2d2 = (state.epsilon * state.epsilon) / (state.D * state.D);
    double alpha = (2.0 / state.D) * std::min(e2d2, 1.0);
    double v = ewoo_scalar_mean(state.scalar_lo(), state.scalar_hi(), alpha, state.t,
                                state.running_sum);
    return v / std::sqrt(static_cast<double>(m));
}

double default_epsilon(StepVariant variant, int T) {
    if (T < 1) throw std::invalid_argument("default_epsilon: T < 1");
    double Td = static_cast<double>(T);
    return variant == StepVariant::kEwoo ? std::pow(Td, -0.25) : std::pow(Td, -0.2);
}

double default_domain_param(double beta, int m) {
    if (m < 1) throw std::invalid_argument("default_domain_param: m < 1");
    return std::sqrt(std::max(beta * std::log(static_cast<double>(m)), 1e-6));
}

}  // namespace dmeta
