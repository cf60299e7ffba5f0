#include "dmeta/forecaster.hpp"

#include <cmath>
#include <stdexcept>

namespace dmeta {

ForecasterState ef_init(const Interval& domain, Density init, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("ef_init: lambda must be positive");
    if (!(init.mass() > 0.0)) throw std::invalid_argument("ef_init: zero-mass initialization");
    if (!(init.pc().domain() == domain)) throw std::invalid_argument("ef_init: domain mismatch");
    ForecasterState s{std::move(init), PiecewiseConstant::constant(domain, 0.0), lambda, 0};
    return s;
}

WeightCells ef_weight_cells(const ForecasterState& state) {
    return stable_weight_cells(state.cumulative_loss, state.lambda, state.init.pc());
}

double ef_sample(const ForecasterState& state, Rng& rng) {
    WeightCells wc = ef_weight_cells(state);
    if (!(wc.total > 0.0)) throw std::runtime_error("ef_sample: total weight is zero");
    double u = rng.uniform() * wc.total;
    std::size_t k = 0;
    double acc = 0.0;
    for (; k + 1 < wc.masses.size(); ++k) {
        acc += wc.masses[k];
        if (u < acc) break;
    }
    double lo = wc.breakpoints[k];
    double hi = wc.breakpoints[k + 1];
    return lo + rng.uniform() * (hi - lo);
}

ForecasterState ef_update(ForecasterState state, const PiecewiseConstant& loss) {
    if (!(loss.domain() == state.cumulative_loss.domain()))
        throw std::invalid_argument("ef_update: domain mismatch");
    if (loss.min_value() < -1e-12 || loss.max_value() > 1.0 + 1e-12)
        throw std::invalid_argument("ef_update: loss values outside [0, 1]");
    state.cumulative_loss = pc_add(state.cumulative_loss, loss);
    state.round += 1;
    return state;
}

TaskTrace ef_run_task(const std::vector<PiecewiseConstant>& losses, const Density& init,
                      double lambda, Rng& rng) {
    if (losses.empty()) throw std::invalid_argument("ef_run_task: empty loss sequence");
    ForecasterState state = ef_init(losses.front().domain(), init, lambda);
    TaskTrace trace;
    trace.plays.reserve(losses.size());
    trace.incurred.reserve(losses.size());
    for (const PiecewiseConstant& loss : losses) {
        double rho = ef_sample(state, rng);
        trace.plays.push_back(rho);
        trace.incurred.push_back(loss(rho));
        state = ef_update(std::move(state), loss);
    }
    ArgminResult opt = pc_argmin(state.cumulative_loss);
    trace.opt_value = opt.value;
    trace.opt_rho = opt.representative;
    double total = 0.0;
    for (double v : trace.incurred) total += v;
    trace.regret = total - trace.opt_value;
    return trace;
}

double theory_step_size(double neg_log_overlap, int m) {
    if (m < 1) throw std::invalid_argument("theory_step_size: m < 1");
    return std::sqrt(std::max(neg_log_overlap, 1e-6) / static_cast<double>(m));
}

}  // namespace dmeta
