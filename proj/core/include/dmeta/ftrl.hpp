#pragma once

#include <vector>

#include "dmeta/partition.hpp"
#include "dmeta/piecewise.hpp"

namespace dmeta {

// FTRL iterate: a probability vector over partition cells, constrained by
// probs[k] >= gamma * vol(cell_k) / vol(domain).
struct CellDistribution {
    CellPartition partition;
    std::vector<double> probs;
    double gamma = 0.0;
};

// Uniform reference measure over the partition: v_hat[k] = width_k / vol(C).
std::vector<double> uniform_reference(const CellPartition& partition);

// KL(w || v_hat) + eta * sum_s -log<indicator(ball_s), w>, the objective the
// FTRL update minimizes.
double ftrl_objective(const BallHistory& history, const CellPartition& partition,
                      const std::vector<double>& probs, double eta);

// Minimizer of the FTRL objective over {sum w = 1, w >= gamma * v_hat}. The
// partition must be refined by every history ball. Solved by reparameterizing
// w = gamma*v_hat + (1-gamma)*z and running exponentiated gradient on z.
CellDistribution ftrl_update(const BallHistory& history, const CellPartition& partition,
                             double gamma, double eta);

// Density that is constant per cell with mass probs[k] inside cell k.
Density to_density(const CellDistribution& dist);

// Analytic parameter settings: gamma^2 = G*B/sqrt(T) (capped at 0.5) and
// eta^2 = B^2*gamma^2/(T*G^2), with G^2 the mean inverse squared clipped ball
// volume. Returns {gamma, eta, capped}.
struct TheoryFtrlParams {
    double gamma = 0.0;
    double eta = 0.0;
    bool gamma_capped = false;
};
TheoryFtrlParams theory_ftrl_params(const BallHistory& history, double B);

}  // namespace dmeta
