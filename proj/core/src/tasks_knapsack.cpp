#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "dmeta/tasks.hpp"

namespace dmeta {

double KnapsackInstance::total_value() const {
    double s = 0.0;
    for (const KnapsackItem& it : items) s += it.value;
    return s;
}

GreedySelection greedy_knapsack(const KnapsackInstance& inst, double rho) {
    if (rho < 0.0) throw std::invalid_argument("greedy_knapsack: rho < 0");
    const std::size_t n = inst.items.size();
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> score(n);
    for (std::size_t i = 0; i < n; ++i)
        score[i] = inst.items[i].value / std::pow(inst.items[i].weight, rho);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (score[a] != score[b]) return score[a] > score[b];
        return a < b;
    });
    GreedySelection out;
    double remaining = inst.cap;
    for (int i : order) {
        if (inst.items[i].weight <= remaining) {
            out.selected.push_back(i);
            out.value += inst.items[i].value;
            remaining -= inst.items[i].weight;
        }
    }
    std::sort(out.selected.begin(), out.selected.end());
    return out;
}

std::vector<double> knapsack_critical_rhos(const KnapsackInstance& inst, const Interval& domain) {
    if (domain.lo < 0.0) throw std::invalid_argument("knapsack_critical_rhos: domain below 0");
    std::vector<double> crits;
    const auto& items = inst.items;
    for (std::size_t i = 0; i < items.size(); ++i) {
        for (std::size_t j = i + 1; j < items.size(); ++j) {
            if (items[i].weight == items[j].weight) continue;
            if (!(items[i].value > 0.0) || !(items[j].value > 0.0)) continue;
            double rho = std::log(items[i].value / items[j].value) /
                         std::log(items[i].weight / items[j].weight);
            if (rho > domain.lo && rho < domain.hi) crits.push_back(rho);
        }
    }
    std::sort(crits.begin(), crits.end());
    std::vector<double> out;
    for (double r : crits)
        if (out.empty() || r - out.back() > 1e-12) out.push_back(r);
    return out;
}

PiecewiseConstant knapsack_loss(const KnapsackInstance& inst, const Interval& domain) {
    std::vector<double> crits = knapsack_critical_rhos(inst, domain);
    std::vector<double> bps;
    bps.reserve(crits.size() + 2);
    bps.push_back(domain.lo);
    bps.insert(bps.end(), crits.begin(), crits.end());
    bps.push_back(domain.hi);
    const double total = inst.total_value();
    std::vector<double> vals(bps.size() - 1);
    for (std::size_t k = 0; k + 1 < bps.size(); ++k) {
        double mid = 0.5 * (bps[k] + bps[k + 1]);
        double value = greedy_knapsack(inst, mid).value;
        vals[k] = (total > 0.0) ? 1.0 - value / total : 0.0;
    }
    return PiecewiseConstant(std::move(bps), std::move(vals)).normalized();
}

KnapsackInstance knapsack_gen(double task_shift, Rng& rng) {
    if (task_shift < 0.0 || task_shift > 2.0)
        throw std::invalid_argument("knapsack_gen: task_shift outside [0, 2]");
    KnapsackInstance inst;
    inst.cap = 100.0;
    inst.items.reserve(50);
    for (int i = 0; i < 10; ++i)
        inst.items.push_back({rng.gauss_positive(27.0, 0.5), rng.gauss_positive(27.0, 0.5)});
    for (int i = 0; i < 40; ++i)
        inst.items.push_back(
            {rng.gauss_positive(19.0 + task_shift, 0.5), rng.gauss_positive(18.0, 0.5)});
    return inst;
}

}  // namespace dmeta
