#include "dmeta/meta.hpp"

#include <cmath>
#include <stdexcept>

#include "dmeta/ftrl.hpp"
#include "dmeta/metrics.hpp"

namespace dmeta {

MetaResults meta_run(const std::vector<std::vector<PiecewiseConstant>>& tasks,
                     const MetaConfig& cfg, Rng& rng) {
    if (tasks.empty()) throw std::invalid_argument("meta_run: no tasks");
    if (cfg.m < 1) throw std::invalid_argument("meta_run: m < 1");
    if (!(cfg.beta > 0.0)) throw std::invalid_argument("meta_run: beta <= 0");
    for (const auto& task : tasks)
        if (static_cast<int>(task.size()) != cfg.m)
            throw std::invalid_argument("meta_run: task length != m");

    const Interval domain = tasks.front().front().domain();
    const int T = static_cast<int>(tasks.size());
    const double radius = std::pow(static_cast<double>(cfg.m), -cfg.beta);

    MetaResults res;
    res.epsilon_used = cfg.epsilon > 0.0 ? cfg.epsilon : default_epsilon(cfg.step_variant, T);
    res.D_used = cfg.D > 0.0 ? cfg.D : default_domain_param(cfg.beta, cfg.m);

    StepSizeState step{res.epsilon_used, res.D_used, cfg.gamma, 0.0, 0, cfg.step_variant};
    CellPartition partition(domain);
    BallHistory history;
    Density current = Density::uniform(domain);
    res.initializers.push_back(current);
    double lambda_meta = initial_lambda(step, cfg.m);

    for (int t = 0; t < T; ++t) {
        const auto& losses = tasks[t];
        PiecewiseConstant total = losses.front();
        for (std::size_t i = 1; i < losses.size(); ++i) total = pc_add(total, losses[i]);
        ArgminResult opt = pc_argmin(total);
        Interval task_ball = domain.clip(ball(opt.representative, radius));

        double nlo = neg_log_overlap(current, task_ball);
        double overlap = std::exp(-nlo);
        double lambda = (cfg.lambda_mode == LambdaMode::kTheoryFixed)
                            ? theory_step_size(nlo, cfg.m)
                            : lambda_meta;

        TaskTrace trace = ef_run_task(losses, current, lambda, rng);
        res.task_regrets.push_back(trace.regret);
        res.lambdas.push_back(lambda);
        res.overlaps.push_back(overlap);
        res.neg_log_overlaps.push_back(nlo);
        res.opt_rhos.push_back(opt.representative);
        res.balls.push_back(task_ball);
        res.traces.push_back(std::move(trace));

        partition = refine(partition, task_ball);
        history.balls.push_back(task_ball);
        current = to_density(ftrl_update(history, partition, cfg.gamma, cfg.eta));
        res.initializers.push_back(current);

        step.observe_overlap(overlap);
        lambda_meta = (cfg.step_variant == StepVariant::kEwoo) ? ewoo_lambda(step, cfg.m)
                                                               : ftl_lambda(step, cfg.m);
    }
    res.task_averaged = task_averaged_regret(res.task_regrets);
    return res;
}

}  // namespace dmeta
