#include "gpe/certify.hpp"
#include "gpe/eigen.hpp"
#include "gpe/error.hpp"
#include "gpe/zoo.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace gpe;
using gpe::test::vec;

namespace {

const Domain kUnit = Domain::interval(0, 1);

}  // namespace

TEST_CASE("documented certificates") {
    SUBCASE("2 - sqrt(x) for -sqrt(x) u'") {
        const auto& e = zoo_entry("sqrt_drift");
        const auto c = make_certificate(cert::TwoMinusSqrt{}, kUnit);
        const auto r = verify(c, e.spec, kUnit, 0.25, 10000);
        CHECK(r.ok);
        CHECK(r.margin >= 0.0);
        CHECK(r.margin <= 1e-6);  // sqrt(x)/4 at the sample closest to 0
        CHECK(r.classification == CertClass::bounds_lambda_bar1);
        CHECK(r.infimum == doctest::Approx(1.0));
        CHECK(r.shifted_samples > 0);
        CHECK(best_lambda(c, e.spec, kUnit, 10000) == doctest::Approx(0.25).epsilon(4e-6));
    }
    SUBCASE("1 + sqrt(x) for -x u''") {
        const auto& e = zoo_entry("x_diffusion");
        const auto r = verify(make_certificate(cert::OnePlusSqrt{}, kUnit), e.spec, kUnit, 0.125, 10000);
        CHECK(r.ok);
        CHECK(r.margin >= -1e-10);
        CHECK(r.classification == CertClass::bounds_lambda_bar1);
    }
    SUBCASE("x^22 for (x/2)u' - u bounds only lambda1") {
        const auto& e = zoo_entry("drift_half_minus_one");
        const auto r = verify(make_certificate(cert::Power{22}, kUnit), e.spec, kUnit, 10.0, 10000);
        CHECK(r.ok);
        CHECK(std::abs(r.margin) <= 1e-12);
        CHECK(r.classification == CertClass::bounds_lambda1);
        CHECK(r.infimum == 0.0);
    }
    SUBCASE("paraboloid for -P_2") {
        const auto& e = zoo_entry("minus_p2");
        const auto target = Domain::disk(0, 0, 1);
        const auto c = make_certificate(cert::Paraboloid{2.0}, Domain::disk(0, 0, 1.2));
        const auto r = verify(c, e.spec, target, 0.5, 10000);
        CHECK(r.ok);
        CHECK(r.margin >= 3.0 - 1e-9);
        CHECK(r.classification == CertClass::bounds_mu1);
        // Without the enlarged region only lambda-bar1 is bounded.
        const auto plain = verify(make_certificate(cert::Paraboloid{2.0}, target), e.spec, target, 0.5, 10000);
        CHECK(plain.classification == CertClass::bounds_lambda_bar1);
    }
}

TEST_CASE("best lambda") {
    const auto& e = zoo_entry("drift_half_minus_one");
    for (int n : {4, 22}) {
        const double best = best_lambda(make_certificate(cert::Power{n}, kUnit), e.spec, kUnit, 10000);
        CHECK(std::abs(best - (n / 2.0 - 1.0)) <= 1e-9);
    }
    const auto& lp1 = zoo_entry("laplacian_plus_one");
    for (const Domain& d : {kUnit, Domain::interval(-2, 3)})
        CHECK(best_lambda(make_certificate(cert::Constant{1.0}, d), lp1.spec, d, 1000) == doctest::Approx(1.0));
}

TEST_CASE("analytic derivatives match finite differences") {
    cert::ExpTilt tilt;
    tilt.eps = 0.1;
    tilt.sigma = 1.3;
    tilt.xi = vec({0.6, 0.8});
    const Domain plane = Domain::rectangle(-1, 1, -1, 1);
    const std::vector<Certificate> certs = {
        make_certificate(cert::Paraboloid{3.0}, plane),
        make_certificate(tilt, plane),
        make_certificate(cert::Constant{2.0}, plane),
    };
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> U(-0.9, 0.9);
    const double step = 1e-4;
    for (const auto& c : certs) {
        for (int t = 0; t < 100; ++t) {
            const Vec x = vec({U(rng), U(rng)});
            const Vec g = c.gradient(x);
            const Mat H = c.hessian(x);
            for (int k = 0; k < 2; ++k) {
                Vec d = Vec::Zero(2);
                d[k] = step;
                const double fd = (c.value(x + d) - c.value(x - d)) / (2.0 * step);
                CHECK(g[k] == doctest::Approx(fd).epsilon(1e-6).scale(1.0));
                const Vec gd = (c.gradient(x + d) - c.gradient(x - d)) / (2.0 * step);
                for (int l = 0; l < 2; ++l) CHECK(H(l, k) == doctest::Approx(gd[l]).epsilon(1e-6).scale(1.0));
            }
        }
    }
    const std::vector<Certificate> line = {make_certificate(cert::Power{5}, kUnit),
                                           make_certificate(cert::TwoMinusSqrt{}, kUnit),
                                           make_certificate(cert::OnePlusSqrt{}, kUnit)};
    std::uniform_real_distribution<double> V(0.05, 0.95);
    for (const auto& c : line) {
        for (int t = 0; t < 100; ++t) {
            const Vec x = vec({V(rng)});
            const Vec d = vec({step});
            CHECK(c.gradient(x)[0] ==
                  doctest::Approx((c.value(x + d) - c.value(x - d)) / (2.0 * step)).epsilon(1e-6));
            CHECK(c.hessian(x)(0, 0) ==
                  doctest::Approx((c.gradient(x + d)[0] - c.gradient(x - d)[0]) / (2.0 * step)).epsilon(1e-5));
        }
    }
}

TEST_CASE("verdicts are invariant under scaling the certificate") {
    const auto& e = zoo_entry("sqrt_drift");
    for (double lambda : {0.2, 0.25, 0.3}) {
        const bool base = verify(make_certificate(cert::TwoMinusSqrt{}, kUnit), e.spec, kUnit, lambda, 2000).ok;
        for (double t : {0.1, 10.0})
            CHECK(verify(make_certificate(cert::TwoMinusSqrt{}, kUnit, t), e.spec, kUnit, lambda, 2000).ok == base);
    }
}

TEST_CASE("best lambda is antitone under enlarging the target") {
    const auto& e = zoo_entry("minus_p2");
    const auto c = make_certificate(cert::Paraboloid{2.0}, Domain::disk(0, 0, 1.3));
    const double small = best_lambda(c, e.spec, Domain::disk(0, 0, 0.8), 4000);
    const double large = best_lambda(c, e.spec, Domain::disk(0, 0, 1.0), 4000);
    CHECK(large <= small);
}

TEST_CASE("certificate bounds stay below solver estimates") {
    const auto& g = zoo_entry("grushin");
    cert::ExpTilt tilt;
    tilt.eps = 0.1;
    tilt.sigma = 1.0;
    tilt.xi = vec({1.0, 0.0});
    const auto c = make_certificate(tilt, inflate(g.domain, 0.1));
    const double best = best_lambda(c, g.spec, g.domain, 10000);
    CHECK(best > 0.0);
    CHECK(verify(c, g.spec, g.domain, best, 10000).classification == CertClass::bounds_mu1);
    const double h = 1.0 / 20.0;
    const auto mu = mu1_estimate(g.spec, g.domain, h, {0.3, 0.2, 0.1}, 50.0, 1e-2);
    CHECK(best <= mu.value + mu.width() + 10.0 * h);

    const auto& p2 = zoo_entry("minus_p2");
    const auto par = make_certificate(cert::Paraboloid{2.0}, Domain::disk(0, 0, 1.2));
    const auto mu2 = mu1_estimate(p2.spec, p2.domain, h, {0.3, 0.2, 0.1}, 50.0, 1e-2);
    CHECK(best_lambda(par, p2.spec, p2.domain, 4000) <= mu2.value + mu2.width() + 10.0 * h);
}

TEST_CASE("errors") {
    const auto& e = zoo_entry("laplacian");
    CHECK_THROWS_AS(verify(make_certificate(cert::Constant{-1.0}, kUnit), e.spec, kUnit, 0.0, 200), Error);
    CHECK_THROWS_AS(verify(make_certificate(cert::Constant{1.0}, kUnit), e.spec, kUnit, 0.0, 10), Error);
    // x^n vanishes at the left end; the open region keeps samples positive.
    CHECK_NOTHROW(verify(make_certificate(cert::Power{3}, kUnit), zoo_entry("drift_half_minus_one").spec, kUnit,
                         0.0, 200));
    CHECK(std::string(to_string(CertClass::bounds_lambda_bar1)) == "bounds-lambda-bar1");
}
