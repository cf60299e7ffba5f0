#pragma once

#include <vector>

#include "dmeta/interval.hpp"
#include "dmeta/piecewise.hpp"
#include "dmeta/rng.hpp"

namespace dmeta {

// Loss perturbation supported inside B(center, delta) intersected with the
// domain. Bump values may be negative (a lower-bound adversary cancels the
// true loss on its support); the perturbed loss is clipped back to [0, 1].
struct Attack {
    double center = 0.0;
    double delta = 0.0;
    PiecewiseConstant bump;

    static Attack none(const Interval& domain);
};

struct PerturbedRound {
    PiecewiseConstant true_loss;
    Attack attack;
    PiecewiseConstant perturbed;  // clip(true_loss + bump, 0, 1)
    bool clipped = false;         // clipping changed some value
};

PerturbedRound make_perturbed_round(PiecewiseConstant true_loss, Attack attack);

// Threshold loss u^(b,x): for b = 0 the loss is 1 right of x, for b = 1 it is
// 1 at and left of x (up to the right-open cell convention at x itself).
PiecewiseConstant threshold_loss(const Interval& domain, int b, double x);

// m rectangular bumps of the given height on B(center, m^-beta_a) with
// centers drawn uniformly on the domain.
std::vector<Attack> dispersed_attack_gen(int m, double beta_a, const Interval& domain,
                                         double height, Rng& rng);

struct HalvingDetails {
    Interval final_interval;  // optimum-containing interval after all halvings
    int halving_rounds = 0;
    int bulk_rounds = 0;
    int depth_reached = 0;  // halvings actually applied before the width floor
};

// Lower-bound environment: most rounds have their threshold in the middle
// third of [a, a+d_star]; ceil((3/d_star) * m^(1-beta)) rounds bisect the
// optimum-containing interval (starting from the left third) with a uniform
// random side. Nesting stops at a width floor dictated by breakpoint
// precision; later halving rounds reuse the frozen midpoint.
std::vector<PiecewiseConstant> halving_losses(int m, double beta, double d_star, double a,
                                              const Interval& domain, Rng& rng,
                                              HalvingDetails* details = nullptr);

// Two-phase construction: halving shrinks the optimum interval I below
// m^-beta with paired (flat-sum) rounds, then continues halving inside I for
// ~m^(1-beta_a)/2 rounds while attacks zero the perturbed loss on I. For
// beta <= beta_a no attack is needed and the plain halving environment is
// returned with zero attacks.
std::vector<PerturbedRound> robust_lb_sequence(int m, double beta, double beta_a,
                                               const Interval& domain, Rng& rng);

struct DualRegret {
    double true_regret = 0.0;
    double perturbed_regret = 0.0;
};

// Regret of the plays against the exact optima of the summed true and
// perturbed losses.
DualRegret dual_regret(const std::vector<double>& plays,
                       const std::vector<PerturbedRound>& rounds);

}  // namespace dmeta
