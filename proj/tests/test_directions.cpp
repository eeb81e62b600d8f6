#include "cgkit/directions.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <cmath>

using namespace cgkit;

namespace {

DirectionState make_state(Vector g_prev, Vector d_prev, double alpha_prev = 1.0) {
    Vector s = scale(alpha_prev, d_prev);
    return DirectionState{std::move(g_prev), std::move(d_prev), std::move(s), alpha_prev, 2};
}

// g=(2,0) after g_prev=(0,1) along d_prev=(0,-1): y=(2,-1), d'y=1, g's=0.
DirectionState orthogonal_state() { return make_state(Vector{0.0, 1.0}, Vector{0.0, -1.0}); }

// g=(1,0) after g_prev=(3,0) along d_prev=(-1,0): mu=0.5, |g'g_prev|=3.
DirectionState shrinking_state() { return make_state(Vector{3.0, 0.0}, Vector{-1.0, 0.0}); }

double beta_hs_reference(const Vector& g, const DirectionState& st) {
    const Vector y = sub(g, st.g_prev);
    return dot(g, y) / dot(st.d_prev, y);
}

} // namespace

TEST_CASE("method names round trip") {
    for (Method m : {Method::azhs, Method::azhs3, Method::azprp, Method::hs, Method::hs_plus, Method::prp,
                     Method::prp_plus, Method::fr, Method::dl, Method::dl_plus, Method::hz}) {
        CHECK(parse_method(method_name(m)) == m);
    }
    CHECK(parse_method("prpplus") == Method::prp_plus);
    CHECK(parse_method("DL+") == std::nullopt);
    CHECK(parse_method("") == std::nullopt);
}

TEST_CASE("mu") {
    const auto m = mu(Vector{0.0, -1.0}, Vector{2.0, -1.0});
    REQUIRE(m.has_value());
    CHECK(*m == doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-15));
    CHECK(mu(Vector{1.0, 2.0}, Vector{1.0, 2.0}) == 1.0);
    CHECK_FALSE(mu(Vector{1.0, 2.0}, Vector{0.0, 0.0}).has_value());
}

TEST_CASE("azhs hand examples") {
    SUBCASE("first case") {
        const auto out = beta_azhs(Vector{2.0, 0.0}, orthogonal_state());
        CHECK(out.branch == Branch::azhs_case1);
        CHECK_FALSE(out.restarted);
        CHECK(out.beta == doctest::Approx(4.0).epsilon(1e-15));
    }
    SUBCASE("second case") {
        const auto out = beta_azhs(Vector{1.0, 0.0}, shrinking_state());
        CHECK(out.branch == Branch::azhs_case2);
        CHECK(out.beta == doctest::Approx(0.25).epsilon(1e-15));
    }
    SUBCASE("orthogonal gradient leaves only the first term") {
        // g orthogonal to g_prev and d_prev.
        const auto st = make_state(Vector{1.0, 0.0, 0.0}, Vector{-1.0, 0.0, 0.0}, 0.5);
        const Vector g{0.0, 0.0, 3.0};
        const auto out = beta_azhs(g, st);
        const double dty = dot(st.d_prev, sub(g, st.g_prev));
        CHECK(out.branch == Branch::azhs_case1);
        CHECK(out.beta == doctest::Approx(9.0 / dty).epsilon(1e-15));
    }
    SUBCASE("zero y restarts") {
        const auto st = make_state(Vector{1.0, 1.0}, Vector{-1.0, 0.0});
        const auto out = beta_azhs(Vector{1.0, 1.0}, st);
        CHECK(out.restarted);
        CHECK(out.beta == 0.0);
    }
    SUBCASE("vanishing d'y restarts") {
        const auto st = make_state(Vector{1.0, 0.0}, Vector{0.0, -1.0});
        const auto out = beta_azhs(Vector{2.0, 0.0}, st);  // y=(1,0) is orthogonal to d
        CHECK(out.restarted);
    }
}

TEST_CASE("azhs3 hand examples") {
    SUBCASE("case A sits below HS") {
        const auto st = make_state(Vector{2.0, 0.0}, Vector{-1.0, 0.0});
        const Vector g{0.1, 1.0};
        const auto out = beta_azhs3(g, st);
        CHECK(out.branch == Branch::azhs3_case_a);
        CHECK(out.beta == doctest::Approx(0.81 / 1.9).epsilon(1e-14));
        CHECK(out.beta == doctest::Approx(0.42632).epsilon(1e-5));
        // g'y = 0.1 * (-1.9) + 1 = 0.81, so HS coincides with case A here.
        const double hs = beta_hs_reference(g, st);
        CHECK(hs == doctest::Approx(0.81 / 1.9).epsilon(1e-14));
        CHECK(out.beta <= hs);
    }
    SUBCASE("case C") {
        const auto out = beta_azhs3(Vector{1.0, 0.0}, shrinking_state());
        CHECK(out.branch == Branch::azhs3_case_c);
        CHECK(out.beta == doctest::Approx(0.25).epsilon(1e-15));
    }
    SUBCASE("case B matches the azhs first case") {
        // |g'g_prev| = 1.2 > ||g||^2 = 1, and mu = 0.707 / 1.02 keeps mu * 1.2 below 1.
        const auto st = make_state(Vector{1.2, 1.0}, Vector{-1.0, -1.0}, 0.5);
        const Vector g{1.0, 0.0};
        const auto m = mu(st.s_prev, sub(g, st.g_prev));
        REQUIRE(m.has_value());
        REQUIRE(*m * 1.2 < 1.0);
        const auto out = beta_azhs3(g, st);
        CHECK(out.branch == Branch::azhs3_case_b);
        const auto reference = beta_azhs(g, st);
        CHECK(reference.branch == Branch::azhs_case1);
        CHECK(out.beta == reference.beta);
    }
}

TEST_CASE("classical formulas") {
    const auto st = orthogonal_state();
    const Vector g{2.0, 0.0};
    CHECK(beta_classical(Method::fr, g, st).beta == 4.0);
    CHECK(beta_classical(Method::hs, g, st).beta == 4.0);
    CHECK(beta_classical(Method::prp, g, st).beta == 4.0);

    SUBCASE("repeated gradient gives zero PRP") {
        const auto same = make_state(Vector{1.0, -2.0}, Vector{-1.0, 2.0});
        CHECK(beta_classical(Method::prp, Vector{1.0, -2.0}, same).beta == 0.0);
    }
    SUBCASE("plus variants clamp negative values") {
        // g'y = 0.3*(0.3-1) = -0.21, ||g_prev||^2 = 1 -> PRP = -0.21
        const auto st2 = make_state(Vector{1.0, 0.0}, Vector{-1.0, 0.0});
        const Vector g2{0.3, 0.0};
        CHECK(beta_classical(Method::prp, g2, st2).beta == doctest::Approx(-0.21));
        const auto plus = beta_classical(Method::prp_plus, g2, st2);
        CHECK(plus.beta == 0.0);
        CHECK(plus.branch == Branch::prp_plus);
        CHECK(beta_classical(Method::hs_plus, g2, st2).beta == 0.0);
    }
    SUBCASE("zero previous gradient restarts FR") {
        const auto st3 = make_state(Vector{0.0, 0.0}, Vector{-1.0, 0.0});
        CHECK(beta_classical(Method::fr, Vector{1.0, 1.0}, st3).restarted);
    }
}

TEST_CASE("Dai-Liao") {
    const auto st = orthogonal_state();
    const Vector g{2.0, 0.0};
    CHECK(beta_dl(g, st, 0.1, true).beta == doctest::Approx(4.0).epsilon(1e-15));

    SUBCASE("t = 0 is HS bit for bit (random)") {
        std::mt19937_64 rng(11);
        for (int i = 0; i < 200; ++i) {
            const auto s = make_state(testing::random_vector(rng, 5), testing::random_vector(rng, 5), 0.7);
            const Vector gi = testing::random_vector(rng, 5);
            const auto hs = beta_classical(Method::hs, gi, s);
            const auto dl = beta_dl(gi, s, 0.0, false);
            CHECK(hs.restarted == dl.restarted);
            CHECK(hs.beta == dl.beta);
        }
    }
    SUBCASE("negative HS with g's = 0 clamps to zero") {
        // g=(0.5,0), g_prev=(1,1), d_prev=(0,-1): y=(-0.5,-1), d'y=1, g'y=-0.25, g's=0
        const auto s = make_state(Vector{1.0, 1.0}, Vector{0.0, -1.0});
        const Vector gi{0.5, 0.0};
        CHECK(beta_classical(Method::hs, gi, s).beta == doctest::Approx(-0.25));
        CHECK(beta_dl(gi, s, 0.1, true).beta == 0.0);
        CHECK(beta_dl(gi, s, 0.1, false).beta == doctest::Approx(-0.25));
    }
    SUBCASE("conjugacy residual") {
        // d_new'y = -t g's for the unclamped formula.
        std::mt19937_64 rng(12);
        const double t = 0.3;
        for (int i = 0; i < 200; ++i) {
            const auto s = make_state(testing::random_vector(rng, 4), testing::random_vector(rng, 4), 0.4);
            const Vector gi = testing::random_vector(rng, 4);
            const Vector y = sub(gi, s.g_prev);
            if (std::abs(dot(s.d_prev, y)) < 1e-3) continue;
            const auto b = beta_dl(gi, s, t, false);
            const Vector d = axpy(b.beta, s.d_prev, negate(gi));
            const double lhs = dot(d, y);
            const double rhs = -t * dot(gi, s.s_prev);
            CHECK(std::abs(lhs - rhs) <= 1e-9 * (1.0 + std::abs(b.beta) * norm2(s.d_prev) * norm2(y)));
        }
    }
}

TEST_CASE("Hager-Zhang") {
    CHECK(beta_hz(Vector{2.0, 0.0}, orthogonal_state(), 0.01).beta == doctest::Approx(4.0).epsilon(1e-15));

    SUBCASE("orthogonal to d_prev reduces to HS") {
        const auto st = make_state(Vector{1.0, 1.0}, Vector{0.0, -1.0});
        const Vector g{0.5, 0.0};
        const auto out = beta_hz(g, st, 0.01);
        CHECK(out.beta == doctest::Approx(std::max(beta_hs_reference(g, st), -1.0 / 0.01)));
    }
    SUBCASE("truncation") {
        // beta_N strongly negative, eta_k = -1 / (||d|| min(eta, ||g_prev||)).
        const auto st = make_state(Vector{1.0, 1.0}, Vector{0.0, -1.0});
        const Vector g{0.5, 0.0};
        const double eta = 10.0;
        const double eta_k = -1.0 / (1.0 * std::min(eta, std::sqrt(2.0)));
        const auto out = beta_hz(g, st, eta);
        if (beta_hs_reference(g, st) < eta_k) {
            CHECK(out.branch == Branch::hz_truncated);
            CHECK(out.beta == doctest::Approx(eta_k));
        }
        CHECK(out.beta >= eta_k);
    }
}

TEST_CASE("azprp") {
    const auto out = beta_azprp(Vector{2.0, 0.0}, orthogonal_state());
    CHECK(out.branch == Branch::azprp_positive);
    CHECK(out.beta == doctest::Approx(4.0).epsilon(1e-15));
    const auto zero = beta_azprp(Vector{1.0, 0.0}, shrinking_state());
    CHECK(zero.branch == Branch::azprp_zero);
    CHECK(zero.beta == 0.0);
}

TEST_CASE("random-state properties") {
    std::mt19937_64 rng(99);
    int case1 = 0, case_a = 0;
    for (int i = 0; i < 2000; ++i) {
        const double alpha = std::exp(std::uniform_real_distribution<double>(-3, 1)(rng));
        const auto st = make_state(testing::random_vector(rng, 6), testing::random_vector(rng, 6), alpha);
        const Vector g = testing::random_vector(rng, 6);
        const Vector y = sub(g, st.g_prev);
        const double dty = dot(st.d_prev, y);
        if (dty <= 1e-6) continue;

        for (Method m : {Method::hs_plus, Method::prp_plus, Method::dl_plus, Method::azprp}) {
            const auto b = beta(MethodSpec{m}, g, st);
            if (m == Method::dl_plus) {
                // Only the HS part is clamped.
                const double tail = 0.1 * dot(g, st.s_prev) / dty;
                CHECK(b.beta + tail >= 0.0);
            } else {
                CHECK(b.beta >= 0.0);
            }
        }

        const auto a = beta_azhs(g, st);
        if (a.branch == Branch::azhs_case1) {
            ++case1;
            const double m = norm2(st.s_prev) / norm2(y);
            const double bound = dot(g, g) / dty - (1.0 / alpha) * m * dot(g, st.s_prev) / dty;
            CHECK(a.beta <= bound + 1e-12 * std::max(1.0, std::abs(bound)));
        }
        const auto a3 = beta_azhs3(g, st);
        if (a3.branch == Branch::azhs3_case_a) {
            ++case_a;
            const double hs = dot(g, y) / dty;
            CHECK(a3.beta <= hs + 1e-12 * std::max(1.0, std::abs(hs)));
        }
    }
    CHECK(case1 > 100);
    CHECK(case_a > 100);
}

TEST_CASE("direction") {
    const MethodSpec azhs{Method::azhs};
    SUBCASE("first iteration is steepest descent") {
        const auto r = direction(Vector{1.0, 2.0}, nullptr, azhs);
        CHECK(r.d == Vector{-1.0, -2.0});
        CHECK(r.outcome.restarted);
        CHECK(r.outcome.branch == Branch::restart);
    }
    SUBCASE("conjugate step") {
        const auto st = orthogonal_state();
        const auto r = direction(Vector{2.0, 0.0}, &st, azhs);
        CHECK(r.outcome.beta == doctest::Approx(4.0).epsilon(1e-15));
        CHECK(r.d[0] == -2.0);
        CHECK(r.d[1] == doctest::Approx(-4.0).epsilon(1e-15));
    }
    SUBCASE("formula restart gives -g") {
        const auto st = make_state(Vector{1.0, 1.0}, Vector{-1.0, 0.0});
        const auto r = direction(Vector{1.0, 1.0}, &st, azhs);
        CHECK(r.outcome.restarted);
        CHECK(r.d == Vector{-1.0, -1.0});
    }
    SUBCASE("safeguard catches an uphill direction") {
        // FR with a large beta and d_prev pointing uphill.
        const auto st = make_state(Vector{0.1, 0.0}, Vector{1.0, 0.0});
        const auto r = direction(Vector{1.0, 0.0}, &st, MethodSpec{Method::fr});
        CHECK(r.outcome.branch == Branch::safeguard_restart);
        CHECK(r.outcome.restarted);
        CHECK(r.d == Vector{-1.0, 0.0});
    }
    SUBCASE("zero gradient is rejected") {
        CHECK_THROWS_AS(direction(Vector{0.0, 0.0}, nullptr, azhs), InvalidArgument);
    }
}
