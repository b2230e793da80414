#include "gpe/eigen.hpp"
#include "gpe/error.hpp"
#include "gpe/zoo.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace gpe;

namespace {

constexpr double kPi2 = std::numbers::pi * std::numbers::pi;
const std::vector<double> kEps{0.2, 0.1, 0.05};

DiscreteScheme scheme_on(const char* zoo_name, double h, const Domain* domain = nullptr) {
    const auto& e = zoo_entry(zoo_name);
    return DiscreteScheme(e.spec, build_grid(domain ? *domain : e.domain, h));
}

void check_bracket(const EigenEstimate& e) {
    CHECK(e.lambda_lo <= e.value);
    CHECK(e.value <= e.lambda_hi);
}

}  // namespace

TEST_CASE("blowup eigenvalue of -u'' matches pi^2 and the dense oracle") {
    const auto s = scheme_on("laplacian", 1.0 / 400.0);
    const auto e = blowup_eigenvalue(s, 50.0, 1e-3);
    check_bracket(e);
    CHECK(e.width() <= 1e-3);
    CHECK(e.method == EigenMethod::blowup);
    CHECK(e.diagnostics.spot_check_ok);
    CHECK(std::abs(e.value - kPi2) <= 0.02 * kPi2);
    // Discrete eigenvalue (4/h^2) sin^2(pi h / 2) of the second difference.
    const double h = 1.0 / 400.0;
    const double discrete = 4.0 / (h * h) * std::pow(std::sin(std::numbers::pi * h / 2.0), 2);
    CHECK(std::abs(e.value - discrete) <= 1e-3);
    // The boundary nodes sit on the lattice but carry their own rows, so the
    // matrix is not exactly the Dirichlet second difference.
    const double dense = dense_principal_eigenvalue(s);
    CHECK(dense == doctest::Approx(discrete).epsilon(1e-4));
    CHECK(std::abs(e.value - dense) <= 1e-3);
}

TEST_CASE("blowup eigenvalue of -2xu' is not positive") {
    const auto e = blowup_eigenvalue(scheme_on("drift_2x", 1.0 / 400.0), 50.0, 1e-3);
    check_bracket(e);
    CHECK(e.value <= 0.02);
}

TEST_CASE("(x/2)u' - u away from 0 grows like 1/h and reaches the cap") {
    // The upwind matrix is triangular with diagonal x_i / (2h) - 1, so the
    // discrete value is at least 0.1 / (2h) - 1 on (0.1, 0.9). The dense
    // oracle is useless here: the matrix is far from normal.
    const Domain sub = Domain::interval(0.1, 0.9);
    BlowupOptions opts;
    opts.divergence_threshold = 1e300;
    const auto coarse = scheme_on("drift_half_minus_one", 1.0 / 400.0, &sub);
    const auto e = blowup_eigenvalue(coarse, 50.0, 1e-3, opts);
    CHECK(e.value >= 0.1 * 400.0 / 2.0 - 1.0 - 1e-2);
    CHECK(e.value < 50.0);
    const auto fine = blowup_eigenvalue(scheme_on("drift_half_minus_one", 1.0 / 1200.0, &sub), 50.0, 1e-3, opts);
    CHECK(fine.diagnostics.capped);
    CHECK(fine.value == doctest::Approx(50.0));
}

TEST_CASE("2D calibration") {
    const auto e = blowup_eigenvalue(scheme_on("laplacian_2d", 1.0 / 80.0), 50.0, 1e-3);
    CHECK(std::abs(e.value - 2.0 * kPi2) <= 0.03 * 2.0 * kPi2);
}

TEST_CASE("Newton and Perron trial solvers agree") {
    const auto s = scheme_on("laplacian", 1.0 / 50.0);
    BlowupOptions newton, perron;
    newton.solver = TrialSolver::newton;
    perron.solver = TrialSolver::perron;
    const auto a = blowup_eigenvalue(s, 50.0, 1e-3, newton);
    const auto b = blowup_eigenvalue(s, 50.0, 1e-3, perron);
    CHECK(std::abs(a.value - b.value) <= 2e-3);

    const auto t = perron_trial(s, 5.0, perron);
    CHECK(t.feasible);
    CHECK(t.used == TrialSolver::perron);
    CHECK_FALSE(perron_trial(s, 12.0, perron).feasible);
}

TEST_CASE("shift equivariance") {
    const double tol = 0.05;
    const auto& e = zoo_entry("laplacian");
    const auto grid = build_grid(e.domain, 1.0 / 400.0);
    const auto a = blowup_eigenvalue(DiscreteScheme(e.spec, grid), 50.0, tol);
    const auto b = blowup_eigenvalue(DiscreteScheme(shift(e.spec, 5.0), grid), 50.0, tol);
    CHECK(std::abs(b.value - a.value - 5.0) <= 2.0 * tol);
}

TEST_CASE("blowup values are antitone in the domain") {
    const Domain big = inflate(Domain::interval(0, 1), 0.1);
    const auto small = blowup_eigenvalue(scheme_on("laplacian", 0.01), 50.0, 1e-3);
    const auto large = blowup_eigenvalue(scheme_on("laplacian", 0.01, &big), 50.0, 1e-3);
    CHECK(large.value <= small.value + small.width() + large.width());
}

TEST_CASE("mu1 by inflation") {
    SUBCASE("-u''") {
        const auto& e = zoo_entry("laplacian");
        const auto m = mu1_estimate(e.spec, e.domain, 1.0 / 400.0, kEps, 50.0, 1e-3);
        check_bracket(m);
        CHECK(m.method == EigenMethod::inflated_blowup);
        CHECK(std::abs(m.value - kPi2) <= 0.03 * kPi2);
        REQUIRE(m.diagnostics.per_eps.size() == 3);
        for (const auto& p : m.diagnostics.per_eps) {
            const double oracle = kPi2 / std::pow(1.0 + 2.0 * p.eps, 2);
            CHECK(std::abs(p.value - oracle) <= 0.01 * oracle);
        }
        CHECK(m.diagnostics.monotone_in_eps);
    }
    SUBCASE("knife edges -xu' and x^2 u'") {
        for (const char* name : {"drift_x", "drift_x2"}) {
            const auto& e = zoo_entry(name);
            const auto m = mu1_estimate(e.spec, e.domain, 1.0 / 400.0, kEps, 50.0, 1e-3);
            CHECK_MESSAGE(std::abs(m.value) <= 0.05, name);
        }
    }
    SUBCASE("eikonal and the negative example") {
        const auto& eik = zoo_entry("eikonal");
        CHECK(mu1_estimate(eik.spec, eik.domain, 1.0 / 400.0, kEps, 50.0, 1e-3).value ==
              doctest::Approx(1.0).epsilon(0.01));
        const auto& neg = zoo_entry("drift_half_minus_one");
        CHECK(mu1_estimate(neg.spec, neg.domain, 1.0 / 400.0, kEps, 50.0, 1e-3).value ==
              doctest::Approx(-1.0).epsilon(0.01));
    }
    SUBCASE("operators with mu1 = +inf return the cap") {
        // Trial solutions grow like exp(lambda x), beyond the default threshold.
        BlowupOptions opts;
        opts.divergence_threshold = 1e300;
        const auto& e = zoo_entry("pure_drift");
        const auto m = mu1_estimate(e.spec, e.domain, 1.0 / 100.0, kEps, 50.0, 1e-3, opts);
        CHECK(m.value == doctest::Approx(50.0));
        CHECK(m.diagnostics.capped);
    }
    SUBCASE("preconditions") {
        const auto& e = zoo_entry("laplacian");
        CHECK_THROWS_AS(mu1_estimate(e.spec, e.domain, 0.05, kEps, 50.0, 1e-3), Error);
        CHECK_THROWS_AS(mu1_estimate(e.spec, e.domain, 0.01, {0.05, 0.1, 0.2}, 50.0, 1e-3), Error);
    }
}

TEST_CASE("viscous eigenvalues") {
    const Domain unit = Domain::interval(0, 1);
    SUBCASE("-2xu' stays above 0.9") {
        const auto& e = zoo_entry("drift_2x");
        const auto v = viscous_eigenvalue(e.spec, unit, 1.0 / 400.0, 0.05, 50.0, 1e-3);
        CHECK(v.method == EigenMethod::viscous);
        CHECK(v.value >= 0.9);
        REQUIRE(v.diagnostics.dense_oracle.has_value());
        CHECK(std::abs(*v.diagnostics.dense_oracle - v.value) <= 5e-3);
    }
    SUBCASE("zero operator with eps = 1 is the Laplacian") {
        const auto zero = make_linear("zero", 1, {"0"}, {"0"}, "0", unit_box(1, -1.5, 1.5));
        const auto v = viscous_eigenvalue(zero, unit, 1.0 / 400.0, 1.0, 50.0, 1e-3);
        CHECK(std::abs(v.value - kPi2) <= 0.02 * kPi2);
    }
    SUBCASE("-u'' with eps = 1 doubles") {
        const auto& e = zoo_entry("laplacian");
        const auto v = viscous_eigenvalue(e.spec, unit, 1.0 / 400.0, 1.0, 50.0, 1e-3);
        CHECK(std::abs(v.value - 2.0 * kPi2) <= 0.02 * 2.0 * kPi2);
        REQUIRE(v.diagnostics.dense_oracle.has_value());
        CHECK(std::abs(*v.diagnostics.dense_oracle - v.value) <= 5e-3);
    }
}

TEST_CASE("lambda-star") {
    SUBCASE("-2xu' disagrees in sign with mu1") {
        const auto& e = zoo_entry("drift_2x");
        const auto l = lambda_star_estimate(e.spec, e.domain, 1.0 / 400.0, kEps, 50.0, 1e-3);
        CHECK(l.method == EigenMethod::extrapolated);
        CHECK(l.value >= 0.9);
        CHECK(l.diagnostics.per_eps.size() == 3);
        CHECK(mu1_estimate(e.spec, e.domain, 1.0 / 400.0, kEps, 50.0, 1e-3).value <= 0.05);
    }
    SUBCASE("-u'' coincides with pi^2 for small eps") {
        const auto& e = zoo_entry("laplacian");
        const auto l = lambda_star_estimate(e.spec, e.domain, 1.0 / 500.0, {0.04, 0.02, 0.01}, 50.0, 1e-3);
        CHECK(std::abs(l.value - kPi2) <= 0.03 * kPi2);
    }
    SUBCASE("-u'' + u is at least 1") {
        const auto& e = zoo_entry("laplacian_plus_one");
        const auto l = lambda_star_estimate(e.spec, e.domain, 1.0 / 400.0, kEps, 50.0, 1e-3);
        CHECK(l.value >= 1.0 - 1e-3);
    }
    SUBCASE("boundary layers must be resolved") {
        const auto& e = zoo_entry("laplacian");
        CHECK_THROWS_AS(lambda_star_estimate(e.spec, e.domain, 0.02, kEps, 50.0, 1e-3), Error);
    }
}

TEST_CASE("nonlinear operators") {
    SUBCASE("-P_1 on the unit disk is near pi^2/4") {
        const auto e = blowup_eigenvalue(scheme_on("minus_p1", 1.0 / 20.0), 50.0, 1e-3);
        CHECK(e.value == doctest::Approx(kPi2 / 4.0).epsilon(0.03));
    }
    SUBCASE("1D infinity Laplacian equals -u''") {
        const auto a = blowup_eigenvalue(scheme_on("infinity_laplacian", 1.0 / 100.0), 50.0, 1e-3);
        const auto b = blowup_eigenvalue(scheme_on("laplacian", 1.0 / 100.0), 50.0, 1e-3);
        CHECK(std::abs(a.value - b.value) <= 2e-3);
    }
}

TEST_CASE("method names") {
    CHECK(std::string(to_string(EigenMethod::inflated_blowup)) == "inflated-blowup");
    CHECK(std::string(to_string(EigenMethod::extrapolated)) == "extrapolated");
}
