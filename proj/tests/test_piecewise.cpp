#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dmeta/piecewise.hpp"
#include "dmeta/quadrature.hpp"
#include "dmeta/serialize.hpp"
#include "test_support.hpp"

using namespace dmeta;
using dmeta::testing::random_pc;
using dmeta::testing::random_density;

TEST_CASE("pc_add: zero is the additive identity") {
    Rng rng(1);
    PiecewiseConstant zero = PiecewiseConstant::constant(Interval(0, 1), 0.0);
    PiecewiseConstant g = random_pc(rng, Interval(0, 1), 6);
    PiecewiseConstant sum = pc_add(zero, g);
    for (int i = 0; i < 200; ++i) {
        double x = rng.uniform(0.0, 1.0);
        CHECK(sum(x) == doctest::Approx(g(x)).epsilon(1e-15));
    }
}

TEST_CASE("pc_add: two-step functions merge into three cells") {
    PiecewiseConstant f({0.0, 0.5, 1.0}, {1.0, 0.0});
    PiecewiseConstant g({0.0, 0.25, 1.0}, {0.0, 1.0});
    PiecewiseConstant sum = pc_add(f, g);
    REQUIRE(sum.cell_count() == 3);
    CHECK(sum.breakpoints()[1] == doctest::Approx(0.25));
    CHECK(sum.breakpoints()[2] == doctest::Approx(0.5));
    CHECK(sum.cell_value(0) == doctest::Approx(1.0));
    CHECK(sum.cell_value(1) == doctest::Approx(2.0));
    CHECK(sum.cell_value(2) == doctest::Approx(1.0));
}

TEST_CASE("pc_add: commutative and associative on random inputs") {
    Rng rng(2);
    for (int rep = 0; rep < 30; ++rep) {
        Interval dom(0, 1);
        PiecewiseConstant f = random_pc(rng, dom, 5);
        PiecewiseConstant g = random_pc(rng, dom, 7);
        PiecewiseConstant h = random_pc(rng, dom, 4);
        PiecewiseConstant fg = pc_add(f, g);
        PiecewiseConstant gf = pc_add(g, f);
        PiecewiseConstant fg_h = pc_add(fg, h);
        PiecewiseConstant f_gh = pc_add(f, pc_add(g, h));
        for (int i = 0; i < 100; ++i) {
            double x = rng.uniform(0.0, 1.0);
            CHECK(std::abs(fg(x) - gf(x)) < 1e-12);
            CHECK(std::abs(fg_h(x) - f_gh(x)) < 1e-12);
        }
    }
}

TEST_CASE("pc_argmin: constant function returns the single cell") {
    PiecewiseConstant f = PiecewiseConstant::constant(Interval(0, 1), 0.7);
    ArgminResult r = pc_argmin(f);
    CHECK(r.value == doctest::Approx(0.7));
    CHECK(r.representative == doctest::Approx(0.5));
}

TEST_CASE("pc_argmin: picks the minimum cell") {
    PiecewiseConstant f({0.0, 0.5, 1.0}, {0.3, 0.1});
    ArgminResult r = pc_argmin(f);
    CHECK(r.cell.lo == doctest::Approx(0.5));
    CHECK(r.cell.hi == doctest::Approx(1.0));
    CHECK(r.value == doctest::Approx(0.1));
    CHECK(r.representative == doctest::Approx(0.75));
}

TEST_CASE("pc_argmin: ties break to the leftmost cell") {
    PiecewiseConstant f({0.0, 0.3, 0.6, 1.0}, {0.0, 0.5, 0.0});
    ArgminResult r = pc_argmin(f);
    CHECK(r.cell.lo == doctest::Approx(0.0));
    CHECK(r.cell.hi == doctest::Approx(0.3));
}

TEST_CASE("exp_neg_masses: lambda = 0 gives cell widths for uniform base") {
    Rng rng(3);
    Density base = Density::uniform(Interval(0, 1));
    PiecewiseConstant F = random_pc(rng, Interval(0, 1), 5);
    auto masses = exp_neg_masses(F, 0.0, base);
    for (const CellMass& cm : masses)
        CHECK(cm.mass == doctest::Approx(cm.cell.width()).epsilon(1e-14));
}

TEST_CASE("exp_neg_masses: zero cumulative loss returns base masses") {
    Rng rng(4);
    Density base = random_density(rng, Interval(0, 1), 6);
    PiecewiseConstant F = PiecewiseConstant::constant(Interval(0, 1), 0.0);
    auto masses = exp_neg_masses(F, 0.7, base);
    double total = 0.0;
    for (const CellMass& cm : masses) total += cm.mass;
    CHECK(total == doctest::Approx(base.mass()).epsilon(1e-13));
}

TEST_CASE("exp_neg_masses: hand-evaluated two-cell example") {
    // F = 0 on [0, 1/2), 1 on [1/2, 1]; lambda = ln 2; uniform base.
    PiecewiseConstant F({0.0, 0.5, 1.0}, {0.0, 1.0});
    Density base = Density::uniform(Interval(0, 1));
    auto masses = exp_neg_masses(F, std::log(2.0), base);
    REQUIRE(masses.size() == 2);
    CHECK(masses[0].mass == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(masses[1].mass == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("exp_neg_masses: total matches adaptive Simpson per piece") {
    Rng rng(5);
    for (int rep = 0; rep < 20; ++rep) {
        Interval dom(0, 2);
        Density base = random_density(rng, dom, 5);
        PiecewiseConstant F = random_pc(rng, dom, 6);
        double lambda = rng.uniform(0.0, 3.0);
        auto masses = exp_neg_masses(F, lambda, base);
        double total = 0.0;
        for (const CellMass& cm : masses) total += cm.mass;
        // Integrate base * exp(-lambda F) by quadrature, split at the merged
        // breakpoints so each piece is smooth.
        auto integrand = [&](double x) { return base.pc()(x) * std::exp(-lambda * F(x)); };
        double quad = 0.0;
        for (const CellMass& cm : masses)
            quad += adaptive_simpson(integrand, cm.cell.lo, cm.cell.hi, 1e-11);
        CHECK(std::abs(total - quad) <= 1e-9 * std::max(1.0, std::abs(quad)));
    }
}

TEST_CASE("normalize: idempotent and pointwise-preserving") {
    Rng rng(6);
    for (int rep = 0; rep < 10; ++rep) {
        Interval dom(0, 1);
        // Build a function with duplicate adjacent values to exercise merging.
        std::vector<double> bps{0.0, 0.2, 0.4, 0.4 + 5e-13, 0.7, 1.0};
        std::vector<double> vals{0.3, 0.3, 0.9, 0.5, 0.5};
        PiecewiseConstant f(bps, vals);
        PiecewiseConstant n1 = f.normalized();
        PiecewiseConstant n2 = n1.normalized();
        CHECK(n1.breakpoints() == n2.breakpoints());
        CHECK(n1.values() == n2.values());
        for (int i = 0; i < 1000; ++i) {
            double x = rng.uniform(0.0, 1.0);
            CHECK(n1(x) == f(x));
        }
        // Adjacent values differ after normalization.
        for (std::size_t k = 0; k + 1 < n1.cell_count(); ++k)
            CHECK(n1.cell_value(k) != n1.cell_value(k + 1));
    }
}

TEST_CASE("evaluation follows the right-cell convention") {
    PiecewiseConstant f({0.0, 0.5, 1.0}, {1.0, 2.0});
    CHECK(f(0.5) == 2.0);
    CHECK(f(0.0) == 1.0);
    CHECK(f(1.0) == 2.0);
    CHECK_THROWS_AS(f(1.5), std::domain_error);
}

TEST_CASE("pc_add rejects mismatched domains") {
    PiecewiseConstant f = PiecewiseConstant::constant(Interval(0, 1), 0.0);
    PiecewiseConstant g = PiecewiseConstant::constant(Interval(0, 2), 0.0);
    CHECK_THROWS_AS(pc_add(f, g), std::invalid_argument);
}

TEST_CASE("json round-trip preserves breakpoints and values bitwise") {
    Rng rng(7);
    for (int rep = 0; rep < 20; ++rep) {
        PiecewiseConstant f = random_pc(rng, Interval(0, 10), 1 + (rep % 7), -3.0, 3.0);
        PiecewiseConstant back = pc_from_json(pc_to_json(f));
        CHECK(back.breakpoints() == f.breakpoints());
        CHECK(back.values() == f.values());
    }
}

TEST_CASE("density: mass accounting and normalization") {
    PiecewiseConstant pc({0.0, 0.5, 1.0}, {2.0, 1.0});
    Density d(pc);
    CHECK(d.mass() == doctest::Approx(1.5));
    Density n = d.normalized();
    CHECK(n.mass() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(n.mass_in(Interval(0.0, 0.5)) == doctest::Approx(2.0 / 1.5 * 0.5).epsilon(1e-12));
    CHECK_THROWS_AS(Density(PiecewiseConstant({0.0, 1.0}, {-0.1})), std::invalid_argument);
}
