#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dmeta/ftrl.hpp"
#include "dmeta/partition.hpp"
#include "grid_oracle.hpp"
#include "test_support.hpp"

using namespace dmeta;
using dmeta::testing::ftrl_grid_oracle;

namespace {

BallHistory random_history(Rng& rng, const Interval& domain, int t, double max_radius) {
    BallHistory h;
    for (int i = 0; i < t; ++i) {
        double c = rng.uniform(domain.lo, domain.hi);
        double r = rng.uniform(0.05, max_radius);
        h.balls.push_back(domain.clip(ball(c, r)));
    }
    return h;
}

CellPartition refined_by(const BallHistory& h, const Interval& domain) {
    CellPartition p(domain);
    for (const Interval& b : h.balls) p = refine(p, b);
    return p;
}

}  // namespace

TEST_CASE("refine: interior ball adds two cuts") {
    CellPartition p(Interval(0, 1));
    p = refine(p, Interval(0.4, 0.6));
    REQUIRE(p.cell_count() == 3);
    CHECK(p.cell(0).hi == doctest::Approx(0.4));
    CHECK(p.cell(1).hi == doctest::Approx(0.6));
}

TEST_CASE("refine: idempotent for a repeated ball") {
    CellPartition p(Interval(0, 1));
    p = refine(p, Interval(0.4, 0.6));
    CellPartition q = refine(p, Interval(0.4, 0.6));
    CHECK(q.cuts() == p.cuts());
}

TEST_CASE("refine: clips balls extending beyond the domain") {
    CellPartition p(Interval(0, 1));
    p = refine(p, Interval(-1.0, 0.5));
    REQUIRE(p.cell_count() == 2);
    CHECK(p.cuts()[0] == doctest::Approx(0.5));
    CHECK_THROWS_AS(refine(p, Interval(2.0, 3.0)), std::invalid_argument);
}

TEST_CASE("indicator_vector: membership per cell") {
    CellPartition p(Interval(0, 1));
    p = refine(p, Interval(0.4, 0.6));
    CHECK(indicator_vector(p, Interval(0.4, 0.6)) == std::vector<int>{0, 1, 0});
    CHECK(indicator_vector(p, Interval(0.0, 1.0)) == std::vector<int>{1, 1, 1});
    CHECK_THROWS_AS(indicator_vector(p, Interval(0.3, 0.5)), std::invalid_argument);
}

TEST_CASE("ftrl_update: empty history returns the reference measure exactly") {
    CellPartition p(Interval(0, 1));
    p = refine(p, Interval(0.2, 0.7));
    CellDistribution d = ftrl_update(BallHistory{}, p, 0.01, 0.01);
    CHECK(d.probs == uniform_reference(p));
}

TEST_CASE("ftrl_update: gamma = 1 pins the iterate to the reference measure") {
    Rng rng(21);
    Interval dom(0, 1);
    BallHistory h = random_history(rng, dom, 3, 0.2);
    CellPartition p = refined_by(h, dom);
    CellDistribution d = ftrl_update(h, p, 1.0, 0.5);
    CHECK(d.probs == uniform_reference(p));
    CHECK_THROWS_AS(ftrl_update(h, p, 1.5, 0.5), std::invalid_argument);
}

TEST_CASE("ftrl_update: matches the grid-search oracle on a single-ball instance") {
    BallHistory h;
    h.balls.push_back(Interval(0.4, 0.6));
    CellPartition p = refined_by(h, Interval(0, 1));
    CellDistribution d = ftrl_update(h, p, 0.0, 1.0);
    std::vector<double> oracle = ftrl_grid_oracle(h, p, 0.0, 1.0, 1e-4);
    REQUIRE(oracle.size() == d.probs.size());
    for (std::size_t k = 0; k < oracle.size(); ++k)
        CHECK(std::abs(d.probs[k] - oracle[k]) < 1e-3);
}

TEST_CASE("ftrl_update: oracle agreement across random small instances") {
    Rng rng(22);
    for (int rep = 0; rep < 10; ++rep) {
        Interval dom(0, 1);
        // One ball gives <= 3 cells automatically.
        BallHistory h;
        int t = 1 + static_cast<int>(rng.uniform_index(3));
        double c = rng.uniform(0.2, 0.8);
        double r = rng.uniform(0.05, 0.19);
        for (int i = 0; i < t; ++i) h.balls.push_back(dom.clip(ball(c, r)));
        CellPartition p = refined_by(h, dom);
        double gamma = rng.uniform(0.0, 0.5);
        double eta = rng.uniform(0.05, 1.5);
        CellDistribution d = ftrl_update(h, p, gamma, eta);
        std::vector<double> oracle = ftrl_grid_oracle(h, p, gamma, eta, 1e-3);
        for (std::size_t k = 0; k < oracle.size(); ++k)
            CHECK(std::abs(d.probs[k] - oracle[k]) < 2e-3);
    }
}

TEST_CASE("ftrl_update: floor constraint and simplex normalization hold") {
    Rng rng(23);
    Interval dom(0, 2);
    for (int rep = 0; rep < 20; ++rep) {
        BallHistory h = random_history(rng, dom, 1 + static_cast<int>(rng.uniform_index(6)), 0.4);
        CellPartition p = refined_by(h, dom);
        double gamma = rng.uniform(0.0, 0.9);
        CellDistribution d = ftrl_update(h, p, gamma, 0.3);
        std::vector<double> vhat = uniform_reference(p);
        double total = 0.0;
        for (std::size_t k = 0; k < d.probs.size(); ++k) {
            total += d.probs[k];
            CHECK(d.probs[k] - gamma * vhat[k] >= -1e-9);
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("ftrl_update: objective no worse than reference or previous iterate") {
    Rng rng(24);
    Interval dom(0, 1);
    BallHistory h = random_history(rng, dom, 5, 0.3);
    CellPartition p = refined_by(h, dom);
    const double gamma = 0.05, eta = 0.2;
    CellDistribution d = ftrl_update(h, p, gamma, eta);
    double at_solution = ftrl_objective(h, p, d.probs, eta);
    CHECK(at_solution <= ftrl_objective(h, p, uniform_reference(p), eta) + 1e-9);
    BallHistory prefix{std::vector<Interval>(h.balls.begin(), h.balls.end() - 1)};
    CellDistribution prev = ftrl_update(prefix, p, gamma, eta);
    CHECK(at_solution <= ftrl_objective(h, p, prev.probs, eta) + 1e-9);
}

TEST_CASE("ftrl_update: gradient of each task loss obeys the Lipschitz bound") {
    Rng rng(25);
    Interval dom(0, 1);
    BallHistory h = random_history(rng, dom, 4, 0.25);
    CellPartition p = refined_by(h, dom);
    const double gamma = 0.05;
    CellDistribution d = ftrl_update(h, p, gamma, 0.1);
    for (const Interval& b : h.balls) {
        double mass = 0.0;
        std::vector<int> ind = indicator_vector(p, b);
        for (std::size_t k = 0; k < ind.size(); ++k)
            if (ind[k]) mass += d.probs[k];
        double grad_inf = 1.0 / mass;
        double bound = dom.width() / (gamma * b.width());
        CHECK(grad_inf <= bound + 1e-6);
    }
}

TEST_CASE("to_density: uniform cell distribution round-trips to uniform density") {
    CellPartition p(Interval(0, 1));
    p = refine(p, Interval(0.3, 0.5));
    CellDistribution d{p, uniform_reference(p), 0.0};
    Density dens = to_density(d);
    CHECK(dens.pc().min_value() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(dens.pc().max_value() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("to_density: degenerate distribution is supported on one cell") {
    CellPartition p(Interval(0, 1));
    p = refine(p, Interval(0.3, 0.5));
    CellDistribution d{p, {1.0, 0.0, 0.0}, 0.0};
    Density dens = to_density(d);
    CHECK(dens.mass_in(Interval(0.0, 0.3)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(dens.mass_in(Interval(0.3, 1.0)) == doctest::Approx(0.0));
}

TEST_CASE("to_density: integrating over each cell recovers the probabilities") {
    Rng rng(26);
    Interval dom(0, 1);
    BallHistory h = random_history(rng, dom, 4, 0.3);
    CellPartition p = refined_by(h, dom);
    CellDistribution d = ftrl_update(h, p, 0.02, 0.3);
    Density dens = to_density(d);
    for (std::size_t k = 0; k < p.cell_count(); ++k)
        CHECK(dens.mass_in(p.cell(k)) == doctest::Approx(d.probs[k]).epsilon(1e-12));
}

TEST_CASE("coarse-solve-then-refine equals solving on the refined partition") {
    Rng rng(27);
    Interval dom(0, 1);
    for (int rep = 0; rep < 10; ++rep) {
        BallHistory h = random_history(rng, dom, 1 + static_cast<int>(rng.uniform_index(5)), 0.3);
        CellPartition coarse = refined_by(h, dom);
        CellDistribution w = ftrl_update(h, coarse, 0.01, 0.1);
        Density coarse_density = to_density(w);

        Interval fresh = dom.clip(ball(rng.uniform(0.1, 0.9), rng.uniform(0.05, 0.25)));
        CellPartition fine = refine(coarse, fresh);
        CellDistribution wf = ftrl_update(h, fine, 0.01, 0.1);
        for (std::size_t k = 0; k < fine.cell_count(); ++k) {
            double aggregated = coarse_density.mass_in(fine.cell(k));
            CHECK(std::abs(aggregated - wf.probs[k]) < 1e-6);
        }
    }
}

TEST_CASE("theory_ftrl_params: caps gamma at 0.5") {
    BallHistory h;
    h.balls.push_back(Interval(0.45, 0.55));  // 1/vol = 10, G big relative to T
    TheoryFtrlParams p = theory_ftrl_params(h, 1.0);
    CHECK(p.gamma == doctest::Approx(0.5));
    CHECK(p.gamma_capped);
    CHECK(p.eta > 0.0);
}
