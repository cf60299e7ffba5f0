#pragma once

#include <array>
#include <utility>
#include <vector>

#include "dmeta/interval.hpp"
#include "dmeta/piecewise.hpp"
#include "dmeta/rng.hpp"

namespace dmeta {

// ---------------------------------------------------------------- knapsack

struct KnapsackItem {
    double weight = 0.0;
    double value = 0.0;
};

struct KnapsackInstance {
    double cap = 0.0;
    std::vector<KnapsackItem> items;

    double total_value() const;
};

struct GreedySelection {
    std::vector<int> selected;
    double value = 0.0;
};

// Greedy by decreasing v_i / w_i^rho, skipping items that overflow the
// remaining capacity. Equal scores break toward the lower index.
GreedySelection greedy_knapsack(const KnapsackInstance& inst, double rho);

// Pairwise score-crossing points ln(v_i/v_j) / ln(w_i/w_j) inside the domain,
// sorted and deduplicated at 1e-12.
std::vector<double> knapsack_critical_rhos(const KnapsackInstance& inst, const Interval& domain);

// loss(rho) = 1 - greedy_value(rho) / sum_i v_i, exact between critical rhos.
PiecewiseConstant knapsack_loss(const KnapsackInstance& inst, const Interval& domain);

// Synthetic family: cap 100, 10 heavy items with weight and value drawn
// around 27, 40 light items with weight around 19 + task_shift and value
// around 18. task_shift in [0, 2]; negative draws are resampled.
KnapsackInstance knapsack_gen(double task_shift, Rng& rng);

// --------------------------------------------------------------- clustering

struct ClusterDataset {
    std::vector<std::array<double, 2>> points;
    std::vector<int> truth;
    int k = 0;
};

// Two 2-D gaussian classes of 100 points each: centers (0,0) and
// (d*sigma, 0), per-coordinate variances (sigma, 2*sigma).
ClusterDataset gaussian_mixture_gen(double d, double sigma, Rng& rng);

// Min over label permutations of the mismatch fraction. k <= 8.
double hamming_loss(const std::vector<int>& pred, const std::vector<int>& truth, int k);

// Seeding-center indices selected by inverse-CDF sampling with shared
// uniforms u_1..u_k: center i+1 is drawn proportionally to
// min_c d(point, c)^alpha given the first i centers.
std::vector<int> lloyd_seed_centers(const ClusterDataset& data, double alpha,
                                    const std::vector<double>& shared_u);

// Hamming loss of nearest-center assignment for a fixed seeded center set.
double lloyd_loss_for_centers(const ClusterDataset& data, const std::vector<int>& centers);

// Single-alpha evaluation: seed then assign. The piecewise construction
// below agrees with this at every alpha off the breakpoints.
double lloyd_direct_loss(const ClusterDataset& data, double alpha,
                         const std::vector<double>& shared_u);

// Exact piecewise-constant Hamming loss over alpha for fixed shared uniforms.
// Breakpoints are located by a sign-change scan (2^10 grid per greedy step)
// plus bisection to 1e-9, recursing per chosen-center regime.
PiecewiseConstant lloyd_seed_loss(const ClusterDataset& data, const Interval& alpha_domain,
                                  const std::vector<double>& shared_u);

// ---------------------------------------------------------------------- mwis

struct WeightedGraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;  // unordered pairs, no self-loops
    std::vector<double> weights;             // in (0, 1]
};

// Greedy by largest w_v / (1 + deg(v))^rho with degrees recomputed in the
// residual graph; neighbors of a selected vertex are removed.
GreedySelection mwis_greedy(const WeightedGraph& g, double rho);

// loss(rho) = 1 - greedy_weight(rho) / sum_v w_v. Candidate breakpoints come
// from the original-degree crossing formula; any cell where probe evaluations
// disagree is subdivided down to width 1e-9.
PiecewiseConstant mwis_loss(const WeightedGraph& g, const Interval& domain);

// Erdos-Renyi G(n, edge_p) with weights uniform on (weight_floor, 1].
WeightedGraph mwis_gen(int n, double edge_p, double weight_floor, Rng& rng);

}  // namespace dmeta
