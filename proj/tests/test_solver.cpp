#include "cgkit/problems.hpp"
#include "cgkit/solver.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <cmath>

using namespace cgkit;

namespace {

std::shared_ptr<const Objective> half_norm(std::size_t n) { return diagonal_quadratic(std::vector<double>(n, 1.0)); }

} // namespace

TEST_CASE("config validation") {
    SolverConfig c;
    CHECK_NOTHROW(c.validate());
    c.gtol = 0.0;
    CHECK_THROWS_AS(c.validate(), InvalidArgument);
    c.step_rtol = 1e-3;
    CHECK_NOTHROW(c.validate());
    c.max_iter = 0;
    CHECK_THROWS_AS(c.validate(), InvalidArgument);
}

TEST_CASE("status names") {
    for (SolveStatus s : {SolveStatus::converged, SolveStatus::iteration_cap, SolveStatus::line_search_failure,
                          SolveStatus::error}) {
        CHECK(parse_status(status_name(s)) == s);
    }
    CHECK(status_name(SolveStatus::iteration_cap) == "iteration-cap");
    CHECK_FALSE(parse_status("done").has_value());
}

TEST_CASE("initial_alpha") {
    CHECK(initial_alpha(1, Vector{1.0, -0.5}, Vector{-1.0, 0.5}, std::nullopt) == 0.5);
    const Vector g{1.0, 0.0}, d{-2.0, 0.0};
    CHECK(initial_alpha(3, g, d, std::pair{0.7, -2.0}) == doctest::Approx(0.7));
    CHECK(initial_alpha(3, g, d, std::pair{1e-20, -2.0}) == 1e-12);
    CHECK(initial_alpha(3, g, d, std::pair{1e20, -2.0}) == 1e10);
}

TEST_CASE("half norm from (5,5) takes one step") {
    const auto obj = half_norm(2);
    for (Method m : {Method::azhs, Method::fr, Method::hz}) {
        SolverConfig c;
        c.method.kind = m;
        const auto r = minimize(*obj, Vector{5.0, 5.0}, c);
        CHECK(r.status == SolveStatus::converged);
        CHECK(r.iters == 1);
        CHECK(r.gnorm_final <= 1e-12);
        CHECK(std::abs(r.x_final[0]) <= 1e-12);
        CHECK(std::abs(r.x_final[1]) <= 1e-12);
    }
}

TEST_CASE("optimal start stops immediately") {
    const auto p = rosenbr();
    const auto r = minimize(*p.objective, Vector{1.0, 1.0}, SolverConfig{});
    CHECK(r.status == SolveStatus::converged);
    CHECK(r.iters == 0);
    CHECK(r.fevals == 1);
    CHECK(r.gevals == 1);
    CHECK(r.x_final == Vector{1.0, 1.0});
}

TEST_CASE("heat conduction") {
    const auto obj = heat_objective();
    const auto r = minimize(*obj, Vector{0.0, 0.0, 0.0, 0.0}, SolverConfig{});
    CHECK(r.status == SolveStatus::converged);
    CHECK(r.f_final <= 1e-6);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(std::abs(r.x_final[i] - kHeatReferenceSolution[i]) <= 1e-2);
    }
}

TEST_CASE("iteration bookkeeping (several problems and methods)") {
    const std::vector<ProblemEntry> problems{rosenbr(), beale(), woods(20), tridia(40), heat()};
    for (const auto& p : problems) {
        for (Method m : {Method::azhs, Method::azhs3, Method::prp_plus, Method::dl, Method::hz}) {
            CAPTURE(p.name);
            CAPTURE(method_name(m));
            testing::CountingObjective counting(*p.objective);
            SolverConfig c;
            c.method.kind = m;
            c.collect_trace = true;
            std::size_t callbacks = 0;
            bool exact = true, monotone = true;
            c.on_iteration = [&](const IterationView& v) {
                ++callbacks;
                const Vector expected = axpy(v.alpha, v.d, v.x);
                exact = exact && expected == v.x_new;
                monotone = monotone && v.f_new < v.f;
            };
            const auto r = minimize(counting, p.x0, c);
            CHECK(r.status == SolveStatus::converged);
            CHECK(r.fevals == counting.value_calls());
            CHECK(r.gevals == counting.gradient_calls());
            CHECK(callbacks == r.iters);
            CHECK(exact);
            CHECK(monotone);
            CHECK(r.trace.size() == r.iters);
            CHECK(r.gnorm_final <= c.gtol);

            double zsum = 0.0;
            for (const auto& t : r.trace) {
                CHECK(std::isfinite(t.zoutendijk_term));
                CHECK(t.zoutendijk_term >= 0.0);
                CHECK(t.gtd < 0.0);
                zsum += t.zoutendijk_term;
            }
            CHECK(r.diagnostics.zoutendijk_partial_sum == doctest::Approx(zsum).epsilon(1e-12));
        }
    }
}

TEST_CASE("iteration cap") {
    const auto p = rosenbr();
    SolverConfig c;
    c.max_iter = 3;
    const auto r = minimize(*p.objective, p.x0, c);
    CHECK(r.status == SolveStatus::iteration_cap);
    CHECK(r.iters == 3);
}

TEST_CASE("invalid starts") {
    FunctionObjective bad("log", 1, [](std::span<const double> x) { return std::log(x[0]); },
                          [](std::span<const double> x, std::span<double> g) { g[0] = 1.0 / x[0]; });
    CHECK_THROWS_AS(minimize(bad, Vector{-1.0}, SolverConfig{}), InvalidStartError);
    CHECK_THROWS_AS(minimize(bad, Vector{0.0}, SolverConfig{}), InvalidStartError);
    CHECK_THROWS_AS(minimize(*half_norm(2), Vector{1.0}, SolverConfig{}), DimensionError);
}

TEST_CASE("a lying gradient ends in line-search failure") {
    // Reports the sign-flipped gradient of 0.5 x^2: every "descent" direction goes uphill.
    FunctionObjective liar("liar", 1, [](std::span<const double> x) { return 0.5 * x[0] * x[0]; },
                           [](std::span<const double> x, std::span<double> g) { g[0] = -x[0]; });
    const auto r = minimize(liar, Vector{1.0}, SolverConfig{});
    CHECK(r.status == SolveStatus::line_search_failure);
    CHECK(r.iters == 0);
    CHECK(r.diagnostics.line_search_retries == 1);
}

TEST_CASE("relative-step stopping") {
    // Minimizer away from the origin; otherwise ||x|| shrinks with the steps.
    FunctionObjective shifted(
        "shifted", 3,
        [](std::span<const double> x) {
            double f = 0.0;
            for (std::size_t i = 0; i < 3; ++i) f += 0.5 * (i + 1.0) * (x[i] - 2.0) * (x[i] - 2.0);
            return f;
        },
        [](std::span<const double> x, std::span<double> g) {
            for (std::size_t i = 0; i < 3; ++i) g[i] = (i + 1.0) * (x[i] - 2.0);
        });
    const auto* obj = &shifted;
    SolverConfig c;
    c.gtol = 0.0;
    c.step_rtol = 1e-3;
    std::vector<double> ratios;
    c.on_iteration = [&](const IterationView& v) { ratios.push_back(norm2(sub(v.x_new, v.x)) / norm2(v.x)); };
    const auto r = minimize(*obj, Vector{3.0, -2.0, 1.0}, c);
    CHECK(r.status == SolveStatus::converged);
    REQUIRE_FALSE(ratios.empty());
    CHECK(ratios.back() < 1e-3);
    for (std::size_t i = 0; i + 1 < ratios.size(); ++i) CHECK(ratios[i] >= 1e-3);
}

TEST_CASE("weak Wolfe mode still converges") {
    const auto p = woods(8);
    SolverConfig c;
    c.wolfe.mode = WolfeMode::weak;
    c.method.kind = Method::prp_plus;
    const auto r = minimize(*p.objective, p.x0, c);
    CHECK(r.status == SolveStatus::converged);
}

TEST_CASE("sufficient descent of the azhs family") {
    const double c_theory = 1.0 - 0.1 / 0.9;
    for (const auto& p : std::vector<ProblemEntry>{rosenbr(), woods(20), dixmaana(30), cosine(30), heat()}) {
        for (Method m : {Method::azhs, Method::azhs3}) {
            SolverConfig c;
            c.method.kind = m;
            const auto r = minimize(*p.objective, p.x0, c);
            CAPTURE(p.name);
            CHECK(r.diagnostics.min_descent_ratio >= c_theory - 1e-9);
        }
    }
}
