#include "gpe/error.hpp"
#include "gpe/expr.hpp"
#include "gpe/operators.hpp"
#include "gpe/zoo.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace gpe;
using gpe::test::diag2;
using gpe::test::jet1;
using gpe::test::jet2;
using gpe::test::vec;

TEST_CASE("expressions follow the coefficient grammar") {
    CHECK(Expr::parse("2*x")(vec({0.5})) == doctest::Approx(1.0));
    CHECK(Expr::parse("|x|^2")(vec({-3.0})) == doctest::Approx(9.0));
    CHECK(Expr::parse("sqrt(|x|)")(vec({-4.0})) == doctest::Approx(2.0));
    CHECK(Expr::parse("exp(x) - 1")(vec({0.0})) == doctest::Approx(0.0));
    CHECK(Expr::parse("x*y + 1/4")(vec({2.0, 3.0})) == doctest::Approx(6.25));
    CHECK(Expr::parse("-x/2")(vec({1.0})) == doctest::Approx(-0.5));
    CHECK(Expr().is_constant_zero());
    CHECK_THROWS_AS(Expr::parse("2*"), Error);
    CHECK_THROWS_AS(Expr::parse("foo(x)"), Error);
}

TEST_CASE("eval on the documented jets") {
    const Box line = unit_box(1, -1.5, 1.5);
    const Box plane = unit_box(2, -1.5, 1.5);

    SUBCASE("drift -2x u' at x = 0.5, p = 1") {
        const auto spec = make_linear("drift", 1, {"0"}, {"2*x"}, "0", line);
        CHECK(eval(spec, jet1(0.5, 0.0, 1.0, 0.0)) == doctest::Approx(-1.0));
    }
    SUBCASE("-P_1 of diag(-2, -2) is 2") {
        const auto spec = make_minus_pk(2, 1, plane);
        CHECK(eval(spec, jet2(vec({0.1, 0.2}), 0.0, vec({0, 0}), diag2(-2, -2))) == doctest::Approx(2.0));
    }
    SUBCASE("p-Laplacian, p = 3, u' = 2, u'' = 1") {
        // Expanded form -|p|^{q-2}(Tr X + (q-2) p^.X.p^) = -2 * (1 + 1) = -4; the
        // divergence form (|u'| u')' = 2|u'| u'' gives the same -4.
        const auto spec = make_p_laplacian(1, 3.0, line);
        CHECK(eval(spec, jet1(0.3, 0.0, 2.0, 1.0)) == doctest::Approx(-4.0));
        const double u1 = 2.0, u2 = 1.0;
        const double divergence = 2.0 * std::abs(u1) * u2;
        CHECK(eval(spec, jet1(0.3, 0.0, u1, u2)) == doctest::Approx(-divergence));
    }
    SUBCASE("infinity Laplacian at p = 0 uses the envelopes") {
        const auto spec = make_infinity_laplacian(2, plane);
        const Jet j = jet2(vec({0, 0}), 0.0, vec({0, 0}), diag2(-1, 3));
        CHECK(eval(spec, j, Side::sub) == doctest::Approx(-3.0));
        CHECK(eval(spec, j, Side::super) == doctest::Approx(1.0));
    }
    SUBCASE("dimension mismatch") {
        const auto spec = make_minus_pk(2, 1, plane);
        CHECK_THROWS_AS(eval(spec, jet1(0.0, 0.0, 0.0, 0.0)), Error);
    }
}

TEST_CASE("zoo operators vanish on the zero jet") {
    for (const auto& e : zoo()) {
        Jet j;
        j.x = (e.spec.sample_region.lo + e.spec.sample_region.hi) / 2.0;
        j.r = 0.0;
        j.p = Vec::Zero(e.spec.dim);
        j.X = Mat::Zero(e.spec.dim, e.spec.dim);
        CHECK_MESSAGE(eval(e.spec, j) == doctest::Approx(0.0), e.name);
    }
}

TEST_CASE("structural hypotheses hold on every zoo operator") {
    for (const auto& e : zoo()) {
        const auto er = check_degenerate_ellipticity(e.spec, 10000, 11);
        CHECK_MESSAGE(er.violation_count == 0, e.name);
        const auto hr = check_homogeneity(e.spec, 10000, 12);
        CHECK_MESSAGE(hr.max_relative_error <= 1e-8, e.name);
    }
}

TEST_CASE("structural checks catch broken operators") {
    const auto er = check_degenerate_ellipticity(anti_laplacian(1), 10000, 3);
    CHECK(er.violation_count > 0);
    CHECK_FALSE(er.violations.empty());

    auto eik = make_eikonal("eikonal", 1, "1", "-1", unit_box(1, -1.5, 1.5));
    CHECK(check_homogeneity(eik, 1000, 4).max_relative_error <= 1e-12);
    eik.alpha = 2.0;
    CHECK(check_homogeneity(eik, 1000, 4).max_relative_error > 1e-3);

    const auto lin = make_linear("lin", 2, {"1", "x", "x", "1 + x^2"}, {"y", "1"}, "-1", unit_box(2, -0.5, 0.5));
    CHECK(check_homogeneity(lin, 1000, 5).max_relative_error <= 1e-12);
}

TEST_CASE("shift adds lambda0 sign(r)|r|^alpha") {
    const auto& lap = zoo_entry("laplacian").spec;
    CHECK(eval(shift(lap, 1.0), jet1(0.3, 2.0, 0.0, 0.0)) == doctest::Approx(2.0));

    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> U(-3.0, 3.0);
    const auto& pl = zoo_entry("p_laplacian").spec;
    const auto same = shift(pl, 0.0);
    const auto moved = shift(pl, 1.5);
    for (int t = 0; t < 200; ++t) {
        const Jet j = jet1(U(rng) / 2.0, U(rng), U(rng), U(rng));
        CHECK(eval(same, j) == eval(pl, j));
        CHECK(eval(moved, j) == doctest::Approx(eval(pl, j) + 1.5 * signed_pow(j.r, 2.0)));
    }
    CHECK(moved.alpha == pl.alpha);
}

TEST_CASE("linear evaluation matches -Tr(AX) - b.p - c r") {
    const auto spec = make_linear("lin", 2, {"1", "x", "x", "1 + x^2"}, {"y", "1"}, "-1", unit_box(2, -0.5, 0.5));
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int t = 0; t < 1000; ++t) {
        const Vec x = vec({U(rng) / 2.0, U(rng) / 2.0});
        Mat X(2, 2);
        X << U(rng), U(rng), 0.0, U(rng);
        X(1, 0) = X(0, 1);
        const Jet j = jet2(x, U(rng), vec({U(rng), U(rng)}), X);
        const double a11 = 1.0, a12 = x[0], a22 = 1.0 + x[0] * x[0];
        const double expected = -(a11 * X(0, 0) + 2.0 * a12 * X(0, 1) + a22 * X(1, 1)) - x[1] * j.p[0] - j.p[1] + j.r;
        CHECK(eval(spec, j) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("-P_N is minus the trace") {
    const auto spec = make_minus_pk(2, 2, unit_box(2, -1, 1));
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> U(-4.0, 4.0);
    for (int t = 0; t < 500; ++t) {
        Mat X(2, 2);
        X << U(rng), U(rng), 0.0, U(rng);
        X(1, 0) = X(0, 1);
        CHECK(eval(spec, jet2(vec({0, 0}), 0.0, vec({0, 0}), X)) ==
              doctest::Approx(-X.trace()).epsilon(1e-10).scale(1.0));
    }
}

TEST_CASE("degenerate Pucci operator is minus the sum of positive eigenvalues") {
    const auto spec = make_minus_pucci_max(2, unit_box(2, -1, 1));
    CHECK(eval(spec, jet2(vec({0, 0}), 0.0, vec({0, 0}), diag2(3, -2))) == doctest::Approx(-3.0));
    CHECK(eval(spec, jet2(vec({0, 0}), 0.0, vec({0, 0}), diag2(-1, -2))) == doctest::Approx(0.0));
}
