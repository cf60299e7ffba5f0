#include "dmeta/robust.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dmeta {

namespace {

// Narrowest nested interval the piecewise pipeline can keep distinct; stays
// above the breakpoint merge tolerance with margin.
constexpr double kWidthFloor = 1e-11;

PiecewiseConstant negated_restriction(const PiecewiseConstant& f, const Interval& support) {
    std::vector<double> bps{f.domain().lo};
    std::vector<double> vals;
    auto push = [&](double hi, double v) {
        if (hi - bps.back() > 0.0) {
            bps.push_back(hi);
            vals.push_back(v);
        }
    };
    for (std::size_t k = 0; k < f.cell_count(); ++k) {
        Interval c = f.cell(k);
        double v = f.cell_value(k);
        double lo = std::max(c.lo, support.lo);
        double hi = std::min(c.hi, support.hi);
        if (lo < hi) {
            push(lo, 0.0);
            push(hi, -v);
            push(c.hi, 0.0);
        } else {
            push(c.hi, 0.0);
        }
    }
    return PiecewiseConstant(std::move(bps), std::move(vals)).normalized();
}

}  // namespace

Attack Attack::none(const Interval& domain) {
    return Attack{domain.midpoint(), 0.0, PiecewiseConstant::constant(domain, 0.0)};
}

PerturbedRound make_perturbed_round(PiecewiseConstant true_loss, Attack attack) {
    PiecewiseConstant sum = pc_add(true_loss, attack.bump);
    PiecewiseConstant clipped = pc_clamp(sum, 0.0, 1.0);
    bool changed = sum.min_value() < 0.0 || sum.max_value() > 1.0;
    return PerturbedRound{std::move(true_loss), std::move(attack), std::move(clipped), changed};
}

PiecewiseConstant threshold_loss(const Interval& domain, int b, double x) {
    if (x <= domain.lo || x >= domain.hi) {
        double everywhere = (b == 0) ? (x < domain.hi ? 1.0 : 0.0) : (x >= domain.hi ? 1.0 : 0.0);
        return PiecewiseConstant::constant(domain, everywhere);
    }
    if (b == 0) return PiecewiseConstant({domain.lo, x, domain.hi}, {0.0, 1.0});
    return PiecewiseConstant({domain.lo, x, domain.hi}, {1.0, 0.0});
}

std::vector<Attack> dispersed_attack_gen(int m, double beta_a, const Interval& domain,
                                         double height, Rng& rng) {
    if (!(beta_a > 0.0)) throw std::invalid_argument("dispersed_attack_gen: beta_a <= 0");
    if (height < 0.0 || height > 1.0)
        throw std::invalid_argument("dispersed_attack_gen: height outside [0, 1]");
    const double delta = std::pow(static_cast<double>(m), -beta_a);
    std::vector<Attack> out;
    out.reserve(m);
    for (int i = 0; i < m; ++i) {
        double center = rng.uniform(domain.lo, domain.hi);
        Interval support = domain.clip(ball(center, delta));
        std::vector<double> bps{domain.lo};
        std::vector<double> vals;
        if (support.lo > domain.lo) {
            bps.push_back(support.lo);
            vals.push_back(0.0);
        }
        bps.push_back(support.hi);
        vals.push_back(height);
        if (support.hi < domain.hi) {
            bps.push_back(domain.hi);
            vals.push_back(0.0);
        }
        out.push_back(Attack{center, delta,
                             PiecewiseConstant(std::move(bps), std::move(vals)).normalized()});
    }
    return out;
}

std::vector<PiecewiseConstant> halving_losses(int m, double beta, double d_star, double a,
                                              const Interval& domain, Rng& rng,
                                              HalvingDetails* details) {
    if (!(beta > 0.0)) throw std::invalid_argument("halving_losses: beta <= 0");
    if (!(d_star > 0.0)) throw std::invalid_argument("halving_losses: d_star <= 0");
    if (a < domain.lo || a + d_star > domain.hi)
        throw std::invalid_argument("halving_losses: [a, a+d_star] outside domain");
    const double md = static_cast<double>(m);
    if (!(md > std::pow(3.0 / d_star, 1.0 / beta)))
        throw std::invalid_argument("halving_losses: m too small for the construction");
    int n_halve = static_cast<int>(std::ceil((3.0 / d_star) * std::pow(md, 1.0 - beta)));
    if (n_halve >= m) throw std::invalid_argument("halving_losses: m too small for the construction");

    std::vector<char> is_halving(m, 0);
    std::fill(is_halving.begin(), is_halving.begin() + n_halve, 1);
    for (int i = m - 1; i > 0; --i)
        std::swap(is_halving[i], is_halving[rng.uniform_index(static_cast<std::uint64_t>(i + 1))]);

    Interval opt(a, a + d_star / 3.0);
    const double bulk_lo = a + d_star / 3.0;
    const double bulk_hi = a + 2.0 * d_star / 3.0;
    int depth = 0;
    int bulk_left = m - n_halve;
    bool pending = false;
    double pending_x = 0.0;
    std::vector<PiecewiseConstant> losses;
    losses.reserve(m);
    for (int i = 0; i < m; ++i) {
        if (is_halving[i]) {
            double x = opt.midpoint();
            int b = rng.coin() ? 1 : 0;
            losses.push_back(threshold_loss(domain, b, x));
            if (opt.width() > 2.0 * kWidthFloor) {
                opt = (b == 0) ? Interval(opt.lo, x) : Interval(x, opt.hi);
                ++depth;
            }
        } else if (pending) {
            losses.push_back(threshold_loss(domain, 1, pending_x));
            pending = false;
        } else if (bulk_left == 1) {
            // One unpaired round: b = 0 costs nothing left of the bulk band,
            // so the optimum interval is unaffected.
            losses.push_back(threshold_loss(domain, 0, rng.uniform(bulk_lo, bulk_hi)));
        } else {
            // Bulk rounds come in pairs with both thresholds at the same cut;
            // the pair adds exactly 1 to every point, so only the halving
            // rounds decide the hindsight optimum.
            pending_x = rng.uniform(bulk_lo, bulk_hi);
            losses.push_back(threshold_loss(domain, 0, pending_x));
            pending = true;
            bulk_left -= 1;
        }
        if (!is_halving[i] && !pending) bulk_left -= 1;
    }
    if (details) *details = HalvingDetails{opt, n_halve, m - n_halve, depth};
    return losses;
}

std::vector<PerturbedRound> robust_lb_sequence(int m, double beta, double beta_a,
                                               const Interval& domain, Rng& rng) {
    if (!(beta > 0.0) || !(beta_a > 0.0))
        throw std::invalid_argument("robust_lb_sequence: exponents must be positive");

    if (beta <= beta_a) {
        std::vector<PiecewiseConstant> losses =
            halving_losses(m, beta, domain.width(), domain.lo, domain, rng);
        std::vector<PerturbedRound> rounds;
        rounds.reserve(losses.size());
        for (PiecewiseConstant& l : losses)
            rounds.push_back(make_perturbed_round(std::move(l), Attack::none(domain)));
        return rounds;
    }

    const double md = static_cast<double>(m);
    const double radius = std::pow(md, -beta);
    const double vol = domain.width();
    Interval opt(domain.lo, domain.lo + vol / 3.0);

    // Phase 1: paired rounds shrink the optimum interval below m^-beta while
    // adding the same total loss everywhere.
    int n_shrink = std::max(0, static_cast<int>(std::ceil(std::log2(opt.width() / radius))));
    // Phase 2: single halving rounds inside I with the perturbed loss zeroed
    // on I; depth limited by representable nesting.
    int n2 = std::max(4, static_cast<int>(std::lround(0.38 * std::pow(md, 1.0 - beta_a))));
    if (2 * n_shrink + n2 > m)
        throw std::invalid_argument("robust_lb_sequence: m too small for the construction");

    std::vector<PiecewiseConstant> head;
    head.reserve(m - n2);
    for (int j = 0; j < n_shrink; ++j) {
        double x = opt.midpoint();
        head.push_back(threshold_loss(domain, 0, x));
        head.push_back(threshold_loss(domain, 1, x));
        opt = rng.coin() ? Interval(x, opt.hi) : Interval(opt.lo, x);
    }
    // Remaining rounds are zero losses: the proof only pins the two halving
    // phases, and flat filler leaves both optima untouched.
    while (static_cast<int>(head.size()) < m - n2)
        head.push_back(PiecewiseConstant::constant(domain, 0.0));
    for (std::size_t i = head.size(); i > 1; --i)
        std::swap(head[i - 1], head[rng.uniform_index(i)]);

    const Interval attacked_region = opt;
    Interval nested = opt;
    std::vector<PerturbedRound> rounds;
    rounds.reserve(m);
    for (PiecewiseConstant& l : head)
        rounds.push_back(make_perturbed_round(std::move(l), Attack::none(domain)));
    for (int j = 0; j < n2; ++j) {
        double x = nested.midpoint();
        int b = rng.coin() ? 1 : 0;
        PiecewiseConstant loss = threshold_loss(domain, b, x);
        Attack attack{attacked_region.midpoint(), radius, negated_restriction(loss, attacked_region)};
        rounds.push_back(make_perturbed_round(std::move(loss), std::move(attack)));
        if (nested.width() > 2.0 * kWidthFloor)
            nested = (b == 0) ? Interval(nested.lo, x) : Interval(x, nested.hi);
    }
    return rounds;
}

DualRegret dual_regret(const std::vector<double>& plays,
                       const std::vector<PerturbedRound>& rounds) {
    if (plays.size() != rounds.size())
        throw std::invalid_argument("dual_regret: plays/rounds length mismatch");
    if (rounds.empty()) return DualRegret{};
    PiecewiseConstant true_sum = rounds.front().true_loss;
    PiecewiseConstant pert_sum = rounds.front().perturbed;
    double suffered_true = rounds.front().true_loss(plays.front());
    double suffered_pert = rounds.front().perturbed(plays.front());
    for (std::size_t i = 1; i < rounds.size(); ++i) {
        true_sum = pc_add(true_sum, rounds[i].true_loss);
        pert_sum = pc_add(pert_sum, rounds[i].perturbed);
        suffered_true += rounds[i].true_loss(plays[i]);
        suffered_pert += rounds[i].perturbed(plays[i]);
    }
    return DualRegret{suffered_true - pc_argmin(true_sum).value,
                      suffered_pert - pc_argmin(pert_sum).value};
}

}  // namespace dmeta
