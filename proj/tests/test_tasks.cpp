#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "dmeta/tasks.hpp"
#include "test_support.hpp"

using namespace dmeta;

namespace {

KnapsackInstance worked_instance() {
    // (weight, value): {(1, 0.99), (1, 0.99), (1.01, 1.01)}, cap 2.
    KnapsackInstance inst;
    inst.cap = 2.0;
    inst.items = {{1.0, 0.99}, {1.0, 0.99}, {1.01, 1.01}};
    return inst;
}

ClusterDataset small_dataset(Rng& rng, int n, int k) {
    ClusterDataset d;
    d.k = k;
    for (int i = 0; i < n; ++i) {
        d.points.push_back({rng.uniform(0.0, 4.0), rng.uniform(0.0, 4.0)});
        d.truth.push_back(static_cast<int>(rng.uniform_index(k)));
    }
    return d;
}

}  // namespace

TEST_CASE("greedy_knapsack: classic rho = 1 packs the big item, rho = 3 the optimum") {
    KnapsackInstance inst = worked_instance();
    CHECK(greedy_knapsack(inst, 1.0).value == doctest::Approx(1.01).epsilon(1e-12));
    CHECK(greedy_knapsack(inst, 3.0).value == doctest::Approx(1.98).epsilon(1e-12));
}

TEST_CASE("greedy_knapsack: unconstrained capacity selects everything") {
    Rng rng(41);
    KnapsackInstance inst;
    inst.cap = 1e9;
    for (int i = 0; i < 12; ++i)
        inst.items.push_back({rng.uniform(0.5, 3.0), rng.uniform(0.0, 2.0)});
    for (double rho : {0.0, 1.0, 7.5})
        CHECK(greedy_knapsack(inst, rho).selected.size() == inst.items.size());
}

TEST_CASE("knapsack_critical_rhos: worked-example threshold, equal weights, single item") {
    KnapsackInstance inst = worked_instance();
    std::vector<double> crits = knapsack_critical_rhos(inst, Interval(0, 10));
    REQUIRE(crits.size() == 1);  // the two equal-weight items never flip
    double expected = 1.0 + std::log(1.0 / 0.99) / std::log(1.01);
    CHECK(std::abs(crits[0] - expected) < 1e-9);

    KnapsackInstance single;
    single.cap = 1.0;
    single.items = {{0.5, 1.0}};
    CHECK(knapsack_critical_rhos(single, Interval(0, 10)).empty());
}

TEST_CASE("knapsack_loss: worked instance has its breakpoint at the flip") {
    KnapsackInstance inst = worked_instance();
    PiecewiseConstant loss = knapsack_loss(inst, Interval(0, 10));
    REQUIRE(loss.cell_count() == 2);
    double expected = 1.0 + std::log(1.0 / 0.99) / std::log(1.01);
    CHECK(std::abs(loss.breakpoints()[1] - expected) < 1e-9);
    double total = 2.99;
    CHECK(loss.cell_value(0) == doctest::Approx(1.0 - 1.01 / total).epsilon(1e-12));
    CHECK(loss.cell_value(1) == doctest::Approx(1.0 - 1.98 / total).epsilon(1e-12));
}

TEST_CASE("knapsack_loss: agrees with direct greedy evaluation everywhere") {
    Rng rng(42);
    KnapsackInstance inst = knapsack_gen(1.0, rng);
    Interval dom(0, 10);
    PiecewiseConstant loss = knapsack_loss(inst, dom);
    double total = inst.total_value();
    for (int i = 0; i < 100; ++i) {
        double rho = rng.uniform(0.0, 10.0);
        double direct = 1.0 - greedy_knapsack(inst, rho).value / total;
        CHECK(loss(rho) == direct);
    }
    // Breakpoints are a subset of the pairwise critical rhos.
    std::vector<double> crits = knapsack_critical_rhos(inst, dom);
    for (std::size_t k = 1; k + 1 < loss.breakpoints().size(); ++k) {
        double b = loss.breakpoints()[k];
        bool found = false;
        for (double c : crits)
            if (std::abs(c - b) < 1e-9) found = true;
        CHECK(found);
    }
}

TEST_CASE("knapsack_loss: single item gives a constant loss") {
    KnapsackInstance single;
    single.cap = 1.0;
    single.items = {{0.5, 1.0}};
    PiecewiseConstant loss = knapsack_loss(single, Interval(0, 10));
    CHECK(loss.cell_count() == 1);
    CHECK(loss.cell_value(0) == doctest::Approx(0.0));
}

TEST_CASE("knapsack_gen: distributional shape of the synthetic family") {
    Rng rng(43);
    double heavy_sum = 0.0;
    double light0_sum = 0.0, light2_sum = 0.0;
    const int n = 10000;
    for (int i = 0; i < n; ++i) {
        KnapsackInstance a = knapsack_gen(0.0, rng);
        REQUIRE(a.items.size() == 50);
        REQUIRE(a.cap == 100.0);
        for (int j = 0; j < 10; ++j) heavy_sum += a.items[j].weight;
        for (int j = 10; j < 50; ++j) light0_sum += a.items[j].weight;
        KnapsackInstance b = knapsack_gen(2.0, rng);
        for (int j = 10; j < 50; ++j) light2_sum += b.items[j].weight;
    }
    CHECK(std::abs(heavy_sum / (10.0 * n) - 27.0) < 0.05);
    CHECK(std::abs(light0_sum / (40.0 * n) - 19.0) < 0.05);
    CHECK(std::abs(light2_sum / (40.0 * n) - 21.0) < 0.05);
}

TEST_CASE("gaussian_mixture_gen: centers, labels, and covariance shape") {
    const double sigma = 1.0, d = 2.5;
    double mx = 0.0, my = 0.0;
    double var_x = 0.0, var_y = 0.0;
    double sep = 0.0;
    const int datasets = 100;
    for (int it = 0; it < datasets; ++it) {
        Rng rng = Rng::derive(44, it);
        ClusterDataset data = gaussian_mixture_gen(d, sigma, rng);
        REQUIRE(data.k == 2);
        REQUIRE(data.points.size() == 200);
        double c0x = 0.0, c0y = 0.0, c1x = 0.0;
        for (int i = 0; i < 100; ++i) {
            c0x += data.points[i][0];
            c0y += data.points[i][1];
            c1x += data.points[100 + i][0];
            CHECK(data.truth[i] == 0);
            CHECK(data.truth[100 + i] == 1);
        }
        c0x /= 100.0;
        c0y /= 100.0;
        c1x /= 100.0;
        mx += c0x;
        my += c0y;
        sep += c1x - c0x;
        for (int i = 0; i < 100; ++i) {
            var_x += (data.points[i][0] - c0x) * (data.points[i][0] - c0x);
            var_y += (data.points[i][1] - c0y) * (data.points[i][1] - c0y);
        }
    }
    mx /= datasets;
    my /= datasets;
    CHECK(std::abs(mx) < 3.0 * std::sqrt(sigma / 100.0));
    CHECK(std::abs(my) < 3.0 * std::sqrt(2.0 * sigma / 100.0));
    CHECK(std::abs(sep / datasets - d * sigma) < 0.1);
    var_x /= datasets * 99.0;
    var_y /= datasets * 99.0;
    CHECK(std::abs(var_x - sigma) < 0.15 * sigma);
    CHECK(std::abs(var_y - 2.0 * sigma) < 0.15 * 2.0 * sigma);
}

TEST_CASE("hamming_loss: permutation-invariant mismatch fraction") {
    CHECK(hamming_loss({0, 1, 0, 1}, {0, 1, 0, 1}, 2) == doctest::Approx(0.0));
    CHECK(hamming_loss({1, 0, 1, 0}, {0, 1, 0, 1}, 2) == doctest::Approx(0.0));
    CHECK(hamming_loss({0, 1, 1, 1}, {0, 0, 1, 1}, 2) == doctest::Approx(0.25));
    CHECK_THROWS_AS(hamming_loss({0}, {0}, 9), std::invalid_argument);
}

TEST_CASE("lloyd_seed_loss: equidistant candidates make the loss constant") {
    // Equilateral triangle: after any first center the two remaining
    // candidates are at the same distance, so the second choice cannot
    // depend on alpha.
    ClusterDataset tri;
    tri.k = 2;
    tri.points = {{0.0, 0.0}, {1.0, 0.0}, {0.5, std::sqrt(3.0) / 2.0}};
    tri.truth = {0, 0, 1};
    PiecewiseConstant loss = lloyd_seed_loss(tri, Interval(0, 10), {0.2, 0.7});
    CHECK(loss.cell_count() == 1);
}

TEST_CASE("lloyd_seed_loss: k = 1 is constant") {
    Rng rng(45);
    ClusterDataset data = small_dataset(rng, 12, 1);
    PiecewiseConstant loss = lloyd_seed_loss(data, Interval(0, 10), {0.37});
    CHECK(loss.cell_count() == 1);
}

TEST_CASE("lloyd_seed_loss: matches direct re-simulation at random alphas") {
    Rng rng(46);
    ClusterDataset data = small_dataset(rng, 30, 2);
    std::vector<double> u{rng.uniform(), rng.uniform()};
    PiecewiseConstant loss = lloyd_seed_loss(data, Interval(0, 10), u);
    for (int i = 0; i < 200; ++i) {
        double alpha = rng.uniform(0.0, 10.0);
        CHECK(loss(alpha) == lloyd_direct_loss(data, alpha, u));
    }
}

TEST_CASE("lloyd_seed_loss: deterministic in (data, u)") {
    Rng rng(47);
    ClusterDataset data = small_dataset(rng, 20, 3);
    std::vector<double> u{0.11, 0.52, 0.93};
    PiecewiseConstant a = lloyd_seed_loss(data, Interval(0, 10), u);
    PiecewiseConstant b = lloyd_seed_loss(data, Interval(0, 10), u);
    CHECK(a.breakpoints() == b.breakpoints());
    CHECK(a.values() == b.values());
}

TEST_CASE("lloyd_seed_loss: duplicate points at every candidate are an error") {
    ClusterDataset dup;
    dup.k = 2;
    dup.points = {{1.0, 1.0}, {1.0, 1.0}};
    dup.truth = {0, 1};
    CHECK_THROWS_AS(lloyd_seed_loss(dup, Interval(0, 10), {0.3, 0.6}), std::invalid_argument);
}

TEST_CASE("mwis_loss: edgeless graph selects everything, loss 0") {
    WeightedGraph g;
    g.n = 5;
    g.weights = {0.2, 0.4, 0.6, 0.8, 1.0};
    PiecewiseConstant loss = mwis_loss(g, Interval(0, 10));
    CHECK(loss.cell_count() == 1);
    CHECK(loss.cell_value(0) == doctest::Approx(0.0));
}

TEST_CASE("mwis_loss: star graph flips at ln(1.8)/ln(2)") {
    WeightedGraph g;
    g.n = 4;
    g.weights = {0.9, 0.5, 0.5, 0.5};
    g.edges = {{0, 1}, {0, 2}, {0, 3}};
    PiecewiseConstant loss = mwis_loss(g, Interval(0, 10));
    double flip = std::log(1.8) / std::log(2.0);
    REQUIRE(loss.cell_count() == 2);
    CHECK(std::abs(loss.breakpoints()[1] - flip) < 1e-6);
    CHECK(loss.cell_value(0) == doctest::Approx(1.0 - 0.9 / 2.4));
    CHECK(loss.cell_value(1) == doctest::Approx(1.0 - 1.5 / 2.4));
}

TEST_CASE("mwis_loss: agrees with direct greedy on random graphs") {
    Rng rng(48);
    WeightedGraph g = mwis_gen(8, 0.3, 0.0, rng);
    double total = 0.0;
    for (double w : g.weights) total += w;
    PiecewiseConstant loss = mwis_loss(g, Interval(0, 10));
    for (int i = 0; i < 100; ++i) {
        double rho = rng.uniform(0.0, 10.0);
        CHECK(loss(rho) == doctest::Approx(1.0 - mwis_greedy(g, rho).value / total).epsilon(1e-12));
    }
}

TEST_CASE("mwis_gen: simple graph with weights in the requested range") {
    Rng rng(49);
    WeightedGraph g = mwis_gen(15, 0.4, 0.1, rng);
    std::set<std::pair<int, int>> seen;
    for (auto [u, v] : g.edges) {
        CHECK(u != v);
        CHECK(seen.insert({u, v}).second);
    }
    for (double w : g.weights) {
        CHECK(w > 0.1);
        CHECK(w <= 1.0);
    }
}

TEST_CASE("generators emit losses in [0, 1] that match dense grid evaluation") {
    Rng rng(50);
    Interval dom(0, 10);

    KnapsackInstance inst = knapsack_gen(0.5, rng);
    PiecewiseConstant kloss = knapsack_loss(inst, dom);
    double ktotal = inst.total_value();

    ClusterDataset data = small_dataset(rng, 25, 2);
    std::vector<double> u{rng.uniform(), rng.uniform()};
    PiecewiseConstant closs = lloyd_seed_loss(data, dom, u);

    WeightedGraph g = mwis_gen(10, 0.3, 0.0, rng);
    double gtotal = 0.0;
    for (double w : g.weights) gtotal += w;
    PiecewiseConstant mloss = mwis_loss(g, dom);

    auto near_breakpoint = [](const PiecewiseConstant& f, double x) {
        for (double b : f.breakpoints())
            if (std::abs(b - x) < 1e-9) return true;
        return false;
    };
    const int grid = 10000;
    for (int i = 0; i <= grid; ++i) {
        double rho = dom.lo + dom.width() * i / grid;
        for (const PiecewiseConstant* f : {&kloss, &closs, &mloss}) {
            CHECK((*f)(rho) >= 0.0);
            CHECK((*f)(rho) <= 1.0);
        }
        if (!near_breakpoint(kloss, rho))
            CHECK(kloss(rho) == 1.0 - greedy_knapsack(inst, rho).value / ktotal);
        if (!near_breakpoint(closs, rho)) CHECK(closs(rho) == lloyd_direct_loss(data, rho, u));
        if (!near_breakpoint(mloss, rho))
            CHECK(mloss(rho) ==
                  doctest::Approx(1.0 - mwis_greedy(g, rho).value / gtotal).epsilon(1e-12));
    }
}
