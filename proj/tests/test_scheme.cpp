#include "gpe/error.hpp"
#include "gpe/scheme.hpp"
#include "gpe/zoo.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace gpe;
using gpe::test::vec;

namespace {

const double kPi = std::numbers::pi;

DiscreteScheme unit_scheme(const char* zoo_name, double h, SchemeOptions opts = {}) {
    const auto& e = zoo_entry(zoo_name);
    return DiscreteScheme(e.spec, build_grid(e.domain, h), opts);
}

template <class F>
Field sample(const DiscreteScheme& s, F&& f) {
    return sample_field(s.grid_ptr(), std::forward<F>(f));
}

}  // namespace

TEST_CASE("residuals on the documented fields") {
    SUBCASE("-u'' on x(1-x) is exactly 2") {
        const auto s = unit_scheme("laplacian", 0.01);
        const auto r = residual(s, sample(s, [](const Vec& x) { return x[0] * (1.0 - x[0]); }));
        std::size_t checked = 0;
        for (std::size_t n : s.grid().active_nodes()) {
            if (s.grid().node_class(n) != NodeClass::interior) continue;
            CHECK(r.values[n] == doctest::Approx(2.0).epsilon(1e-9));
            ++checked;
        }
        CHECK(checked == 99);
    }
    SUBCASE("(x/2)u' - u on x(1-x) is -x/2 up to O(h)") {
        const double h = 0.001;
        const auto s = unit_scheme("drift_half_minus_one", h);
        const auto r = residual(s, sample(s, [](const Vec& x) { return x[0] * (1.0 - x[0]); }));
        double worst = 0.0;
        for (std::size_t n : s.grid().active_nodes())
            if (s.grid().node_class(n) == NodeClass::interior)
                worst = std::max(worst, std::abs(r.values[n] + s.grid().point(n)[0] / 2.0));
        CHECK(worst <= h);
    }
    SUBCASE("-2xu' on a constant is 0") {
        const auto s = unit_scheme("drift_2x", 0.01);
        const auto r = residual(s, sample(s, [](const Vec&) { return 1.0; }));
        for (std::size_t n : s.grid().active_nodes())
            if (s.grid().node_class(n) == NodeClass::interior) CHECK(r.values[n] == 0.0);
    }
    SUBCASE("exterior nodes report u") {
        const auto s = unit_scheme("laplacian", 0.05);
        const Field one(s.grid_ptr(), 1.0);
        const auto r = residual(s, one);
        for (std::size_t n = 0; n < s.grid().size(); ++n)
            if (!s.grid().active(n)) CHECK(r.values[n] == 1.0);
    }
}

TEST_CASE("second differences are exact on quadratics in 2D") {
    const auto& g = zoo_entry("grushin");
    const DiscreteScheme s(g.spec, build_grid(g.domain, 0.05));
    const auto r = residual(s, sample(s, [](const Vec& x) { return x[0] * x[0] + 3.0 * x[1] * x[1]; }));
    for (std::size_t n : s.grid().active_nodes()) {
        if (s.grid().node_class(n) != NodeClass::interior || s.grid().distance(n) < 0.1) continue;
        const double x = s.grid().point(n)[0];
        CHECK(r.values[n] == doctest::Approx(-2.0 - 6.0 * x * x).epsilon(1e-8));
    }
}

TEST_CASE("subsolution checks") {
    SUBCASE("x(1-x) for (x/2)u' - u") {
        const double h = 0.01;
        const auto s = unit_scheme("drift_half_minus_one", h);
        CHECK(is_subsolution(s, sample(s, [](const Vec& x) { return x[0] * (1.0 - x[0]); }), 10.0 * h).ok);
    }
    SUBCASE("indicator of {0} for -2xu'") {
        const auto s = unit_scheme("drift_2x", 0.01);
        Field u(s.grid_ptr());
        const std::size_t origin = s.grid().nearest(vec({0.0}));
        u[origin] = 1.0;
        CHECK(is_subsolution(s, u, 0.1).ok);
        CHECK(residual(s, u).values[origin] == 0.0);
    }
    SUBCASE("constant 1 fails through the exterior pin") {
        const auto s = unit_scheme("laplacian", 0.01);
        const auto v = is_subsolution(s, Field(s.grid_ptr(), 1.0), 0.1);
        CHECK_FALSE(v.ok);
        CHECK_FALSE(s.grid().active(v.worst_node));
    }
    SUBCASE("strict clause rejects a positive boundary value") {
        SchemeOptions opts;
        opts.clause = BoundaryClause::strict_max;
        const auto s = unit_scheme("drift_2x", 0.01, opts);
        Field u(s.grid_ptr());
        u[s.grid().nearest(vec({0.0}))] = 1.0;
        CHECK_FALSE(is_subsolution(s, u, 0.1).ok);
        CHECK(std::string(to_string(BoundaryClause::strict_max)) == "strict-max");
    }
}

TEST_CASE("supersolution checks") {
    SUBCASE("sin(pi x) + 0.05 for -u''") {
        const auto s = unit_scheme("laplacian", 0.01);
        const Field phi = sample(s, [](const Vec& x) { return std::sin(kPi * x[0]) + 0.05; });
        const double tol = s.default_tolerance();
        CHECK_FALSE(is_supersolution(s, phi, 8.0, tol).ok);
        CHECK(is_supersolution(s, phi, 5.0, tol).ok);
    }
    SUBCASE("2 - sqrt(x) for -sqrt(x) u'") {
        const auto s = unit_scheme("sqrt_drift", 0.01);
        const Field phi = sample(s, [](const Vec& x) { return 2.0 - std::sqrt(std::abs(x[0])); });
        CHECK(is_supersolution(s, phi, 0.25, s.default_tolerance()).ok);
    }
    SUBCASE("1 + sqrt(x) for -x u''") {
        const auto s = unit_scheme("x_diffusion", 0.01);
        const Field phi = sample(s, [](const Vec& x) { return 1.0 + std::sqrt(std::abs(x[0])); });
        CHECK(is_supersolution(s, phi, 0.125, s.default_tolerance()).ok);
    }
    SUBCASE("non-positive phi is rejected") {
        const auto s = unit_scheme("laplacian", 0.01);
        const Field phi = sample(s, [](const Vec& x) { return x[0] - 0.5; });
        CHECK_THROWS_AS(is_supersolution(s, phi, 1.0, 0.1), Error);
    }
}

TEST_CASE("schemes are monotone on every zoo operator") {
    for (const auto& e : zoo()) {
        const DiscreteScheme s(e.spec, build_grid(e.domain, e.h));
        const auto m = check_monotonicity(s, 1000, 77);
        CHECK_MESSAGE(m.violations == 0, e.name);
    }
    const auto& lap = zoo_entry("laplacian");
    SchemeOptions opts;
    opts.viscous_eps = 0.1;
    CHECK(check_monotonicity(DiscreteScheme(lap.spec, build_grid(lap.domain, 0.02), opts), 1000, 3).violations == 0);
}

TEST_CASE("default tolerance is 10 h (1 + coefficient scale)") {
    const auto s = unit_scheme("drift_2x", 0.01);
    CHECK(s.coefficient_scale() == doctest::Approx(2.0).epsilon(0.05));
    CHECK(s.default_tolerance() == doctest::Approx(10.0 * 0.01 * (1.0 + s.coefficient_scale())));
}

TEST_CASE("unsupported operators are refused") {
    const auto pl2 = make_p_laplacian(2, 3.0, unit_box(2, -1, 1));
    CHECK_THROWS_AS(DiscreteScheme(pl2, build_grid(Domain::rectangle(0, 1, 0, 1), 0.1)), Error);
}
