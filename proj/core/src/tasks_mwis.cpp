#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dmeta/tasks.hpp"

namespace dmeta {

namespace {

std::vector<std::vector<int>> adjacency(const WeightedGraph& g) {
    std::vector<std::vector<int>> adj(g.n);
    for (const auto& [u, v] : g.edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    return adj;
}

}  // namespace

GreedySelection mwis_greedy(const WeightedGraph& g, double rho) {
    if (rho < 0.0) throw std::invalid_argument("mwis_greedy: rho < 0");
    std::vector<std::vector<int>> adj = adjacency(g);
    std::vector<char> alive(g.n, 1);
    GreedySelection out;
    int remaining = g.n;
    while (remaining > 0) {
        int best = -1;
        double best_score = -1.0;
        for (int v = 0; v < g.n; ++v) {
            if (!alive[v]) continue;
            int deg = 0;
            for (int u : adj[v])
                if (alive[u]) ++deg;
            double score = g.weights[v] / std::pow(1.0 + deg, rho);
            if (score > best_score) {
                best_score = score;
                best = v;
            }
        }
        out.selected.push_back(best);
        out.value += g.weights[best];
        alive[best] = 0;
        --remaining;
        for (int u : adj[best]) {
            if (alive[u]) {
                alive[u] = 0;
                --remaining;
            }
        }
    }
    std::sort(out.selected.begin(), out.selected.end());
    return out;
}

PiecewiseConstant mwis_loss(const WeightedGraph& g, const Interval& domain) {
    if (domain.lo < 0.0 || domain.hi > 10.0)
        throw std::invalid_argument("mwis_loss: domain outside [0, 10]");
    double total = 0.0;
    for (double w : g.weights) total += w;

    // Crossing candidates from original-graph degrees. Degrees change in the
    // residual graph, so cells are verified by probing below.
    std::vector<std::vector<int>> adj = adjacency(g);
    std::vector<int> deg(g.n);
    for (int v = 0; v < g.n; ++v) deg[v] = static_cast<int>(adj[v].size());
    std::vector<double> crits;
    for (int u = 0; u < g.n; ++u) {
        for (int v = u + 1; v < g.n; ++v) {
            if (deg[u] == deg[v]) continue;
            double rho = std::log(g.weights[v] / g.weights[u]) /
                         std::log((1.0 + deg[v]) / (1.0 + deg[u]));
            if (rho > domain.lo && rho < domain.hi) crits.push_back(rho);
        }
    }
    std::sort(crits.begin(), crits.end());
    std::vector<double> dedup;
    for (double r : crits)
        if (dedup.empty() || r - dedup.back() > 1e-12) dedup.push_back(r);

    auto loss_at = [&](double rho) {
        return (total > 0.0) ? 1.0 - mwis_greedy(g, rho).value / total : 0.0;
    };

    std::vector<double> bps{domain.lo};
    bps.insert(bps.end(), dedup.begin(), dedup.end());
    bps.push_back(domain.hi);

    std::vector<double> out_bps{domain.lo};
    std::vector<double> out_vals;
    // Probe each candidate cell at three interior points; subdivide on
    // disagreement down to width 1e-9.
    std::vector<std::pair<double, double>> stack;
    for (std::size_t k = bps.size() - 1; k > 0; --k)
        stack.emplace_back(bps[k - 1], bps[k]);
    while (!stack.empty()) {
        auto [lo, hi] = stack.back();
        stack.pop_back();
        double w = hi - lo;
        double a = loss_at(lo + 0.25 * w);
        double b = loss_at(lo + 0.50 * w);
        double c = loss_at(lo + 0.75 * w);
        if ((a == b && b == c) || w <= 1e-9) {
            out_bps.push_back(hi);
            out_vals.push_back(b);
        } else {
            double mid = lo + 0.5 * w;
            stack.emplace_back(mid, hi);
            stack.emplace_back(lo, mid);
        }
    }
    return PiecewiseConstant(std::move(out_bps), std::move(out_vals)).normalized();
}

WeightedGraph mwis_gen(int n, double edge_p, double weight_floor, Rng& rng) {
    if (n < 1) throw std::invalid_argument("mwis_gen: n < 1");
    if (weight_floor < 0.0 || weight_floor >= 1.0)
        throw std::invalid_argument("mwis_gen: weight_floor outside [0, 1)");
    WeightedGraph g;
    g.n = n;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.uniform() < edge_p) g.edges.emplace_back(u, v);
    g.weights.resize(n);
    for (int v = 0; v < n; ++v)
        g.weights[v] = weight_floor + (1.0 - weight_floor) * (1.0 - rng.uniform());
    return g;
}

}  // namespace dmeta
