#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "latticeperfect/dynamics.hpp"
#include "latticeperfect/generators.hpp"
#include "latticeperfect/refine.hpp"

using namespace latticeperfect;

namespace {

ValueField constant_field(PatchPtr p, double v) {
    return ValueField{p, std::vector<double>(static_cast<size_t>(p->vertex_count), v)};
}

}  // namespace

TEST_CASE("stationary residual basics") {
    auto p = build_patch(GridKind::square, {4, 4}, {true, true});
    auto f = Nonlinearity::nagumo(0.4);
    CHECK(stationary_residual(constant_field(p, 0.0), 0.7, f) == 0.0);
    CHECK(stationary_residual(constant_field(p, 0.4), 0.7, f) <= 1e-15);
    const double s = 0.77;
    CHECK(stationary_residual(constant_field(p, s), 0.7, f) == doctest::Approx(std::abs(f.f(s))));
}

TEST_CASE("lifted stationary fields stay put under integration") {
    auto four = motif_tiling(GridKind::square, Motif{2, 2, {1, 2, 3, 4}}, 8, 8);
    const auto m = *extract_matrix(four).matrix;
    auto f = Nonlinearity::nagumo(0.4);
    SolverConfig cfg;
    cfg.d = 0.005;
    auto sols = solve_all(m, f, cfg);
    REQUIRE(sols.records.size() == 81);

    // pick a genuinely four-valued solution and check the lattice residual
    const auto* rec = &sols.records[0];
    for (const auto& r : sols.records) {
        std::set<double> vals(r.v.begin(), r.v.end());
        if (vals.size() == 4) rec = &r;
    }
    auto field = lift_solution(four, m, rec->v);
    CHECK(stationary_residual(field, cfg.d, f) <= 1e-10);

    // drift from a stationary lift stays negligible at every step size
    for (double dt : {0.25, 0.125, 0.0625}) {
        auto stats = integrate(field, cfg.d, f, 50.0, dt);
        CHECK_FALSE(stats.diverged);
        CHECK(stats.max_drift <= 1e-6);
    }
}

TEST_CASE("perturbed middle state escapes") {
    auto p = build_patch(GridKind::square, {4, 4}, {true, true});
    const double a = 0.4;
    auto f = Nonlinearity::nagumo(a);
    auto field = constant_field(p, a);
    field.values[5] += 1e-3;
    auto stats = integrate(field, 0.005, f, 200.0, 0.25);
    CHECK(stats.max_drift >= 0.1);
}

TEST_CASE("nagumo invariant region") {
    auto p = build_patch(GridKind::square, {4, 4}, {true, true});
    auto f = Nonlinearity::nagumo(0.35);
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    for (int run = 0; run < 5; ++run) {
        ValueField field{p, {}};
        field.values.resize(16);
        for (auto& v : field.values) v = dist(rng);
        auto stats = integrate(field, 0.05, f, 30.0, 0.2);
        for (double v : stats.final_field.values) {
            CHECK(v >= -1e-12);
            CHECK(v <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("integrator shows fourth-order error decay") {
    auto p = build_patch(GridKind::path, {8}, {true});
    auto f = Nonlinearity::nagumo(0.3);
    ValueField start{p, {0.1, 0.9, 0.3, 0.7, 0.2, 0.8, 0.45, 0.55}};
    const double d = 0.05, T = 1.0;
    auto ref = integrate(start, d, f, T, 0.0125).final_field.values;
    auto err = [&](double dt) {
        auto got = integrate(start, d, f, T, dt).final_field.values;
        return linf_dist(got, ref);
    };
    const double e1 = err(0.2), e2 = err(0.1), e3 = err(0.05);
    CHECK(e1 / e2 > 6.0);
    CHECK(e1 / e2 < 40.0);
    CHECK(e2 / e3 > 6.0);
    CHECK(e2 / e3 < 40.0);
}

TEST_CASE("perturb_relax matches the eigenvalue verdicts for homogeneous states") {
    auto four = motif_tiling(GridKind::square, Motif{2, 2, {1, 2, 3, 4}}, 4, 4);
    const auto m = *extract_matrix(four).matrix;
    const double a = 0.4, d = 0.005;
    auto f = Nonlinearity::nagumo(a);

    auto zero = lift_solution(four, m, {0, 0, 0, 0});
    CHECK(perturb_relax(zero, d, f, 1e-3, 3, 200.0, 5).verdict == ProbeVerdict::returned);

    auto mid = lift_solution(four, m, {a, a, a, a});
    CHECK(perturb_relax(mid, d, f, 1e-3, 3, 200.0, 5).verdict == ProbeVerdict::escaped);

    auto rough = constant_field(four.patch, 0.77);
    CHECK_THROWS_AS(perturb_relax(rough, d, f, 1e-3, 2, 10.0, 1), std::invalid_argument);
}

TEST_CASE("tree counterexample: exact values and zero interior residual") {
    auto ex = tree_counterexample(0.0, 1.0, 12, 3);
    CHECK(ex.c == 2.0);
    CHECK(ex.f_values[0] == doctest::Approx(-2.0));
    CHECK(ex.f_values[1] == doctest::Approx(-1.0));
    CHECK(ex.f_values[2] == doctest::Approx(2.0));
    // interpolant s^2 - 2
    REQUIRE(ex.f.coeffs.size() == 3);
    CHECK(ex.f.coeffs[0] == doctest::Approx(-2.0));
    CHECK(ex.f.coeffs[1] == doctest::Approx(0.0));
    CHECK(ex.f.coeffs[2] == doctest::Approx(1.0));

    CHECK(stationary_residual(ex.field, 1.0, ex.f) <= 1e-12);

    CHECK_THROWS_AS(tree_counterexample(0.0, 0.0, 12), std::invalid_argument);
}

TEST_CASE("tree counterexample: refinement class counts grow with the window") {
    // windows whose spines cover the islands of length 4, 5 and 6
    std::vector<int> spans{19, 26, 34};
    std::vector<int> counts;
    for (int S : spans) {
        auto ex = tree_counterexample(0.0, 1.0, S, 2);
        auto res = refine_partition(ex.field);
        CHECK(res.stabilized);
        counts.push_back(res.interior_class_count);
    }
    CHECK(counts[0] < counts[1]);
    CHECK(counts[1] < counts[2]);
}

TEST_CASE("integration divergence is reported") {
    auto p = build_patch(GridKind::path, {4}, {true});
    // f = 5s: exponential blow-up from any nonzero state
    auto f = Nonlinearity::polynomial({0.0, 5.0});
    ValueField start{p, {1.0, 1.0, 1.0, 1.0}};
    auto stats = integrate(start, 0.01, f, 50.0, 0.1);
    CHECK(stats.diverged);
}

TEST_CASE("two-valued stationary fields extract a consistent two-color system") {
    auto four = motif_tiling(GridKind::square, Motif{2, 2, {1, 2, 3, 4}}, 8, 8);
    const auto m = *extract_matrix(four).matrix;
    const double d = 0.005;
    auto f = Nonlinearity::nagumo(0.4);
    SolverConfig cfg;
    cfg.d = d;
    auto sols = solve_all(m, f, cfg);
    int tested = 0;
    for (const auto& rec : sols.records) {
        std::set<double> vals(rec.v.begin(), rec.v.end());
        if (vals.size() != 2) continue;
        auto field = lift_solution(four, m, rec.v);
        REQUIRE(stationary_residual(field, d, f) <= 1e-10);
        auto value_coloring = coloring_from_field(field);
        REQUIRE(value_coloring.n == 2);
        auto ext = extract_matrix(value_coloring);
        REQUIRE(ext.ok());
        // the two attained values solve the extracted 2x2 system
        std::vector<double> w{0.0, 0.0};
        for (int v = 0; v < 2; ++v)
            for (int i = 0; i < field.patch->vertex_count; ++i)
                if (value_coloring.color(i) == v + 1) w[static_cast<size_t>(v)] = field.values[static_cast<size_t>(i)];
        CHECK(linf(residual(*ext.matrix, d, f, w)) <= 1e-10);
        ++tested;
    }
    CHECK(tested >= 18);  // the two-color merger solutions of the 81
}
