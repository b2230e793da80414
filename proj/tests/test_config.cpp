#include "gpe/config.hpp"
#include "gpe/error.hpp"
#include "gpe/zoo.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace gpe;
using gpe::test::jet1;

namespace {

Errc config_error(const std::string& text, bool json = false) {
    try {
        json ? parse_config_json(text) : parse_config_ini(text);
    } catch (const Error& e) {
        return e.code();
    }
    return Errc::io;  // sentinel: nothing thrown
}

}  // namespace

TEST_CASE("defaults") {
    const RunConfig c = default_config();
    CHECK(c.zoo_name == "laplacian");
    CHECK(c.lambda_cap == 50.0);
    CHECK(c.eigen_tol == 1e-3);
    CHECK(c.eps_list == std::vector<double>{0.2, 0.1, 0.05});
    CHECK(c.clause == BoundaryClause::relaxed_min);
    CHECK(c.format == "json");
    CHECK(c.seed == 1);
}

TEST_CASE("INI with a custom linear operator") {
    const RunConfig c = parse_config_ini(R"(
; comment
[operator]
type = linear
A = 0
b = x
c = 0

[domain]
shape = interval
a = 0
b = 1

[grid]
h = 1/400

[eigen]
eps = 0.2, 0.1, 0.05
)");
    CHECK_FALSE(c.zoo_name.has_value());
    CHECK(c.h == doctest::Approx(0.0025));
    CHECK(c.domain.dim() == 1);
    CHECK(c.eps_list.size() == 3);
    // F = -x p at x = 0.5, p = 2.
    CHECK(eval(c.op, jet1(0.5, 0.0, 2.0, 0.0)) == doctest::Approx(-1.0));
}

TEST_CASE("zoo operator keeps its domain and grid unless overridden") {
    const RunConfig c = parse_config_ini("[operator]\nzoo = drift_2x\n[mp]\nboundary_clause = strict-max\n");
    CHECK(c.zoo_name == "drift_2x");
    CHECK(c.h == zoo_entry("drift_2x").h);
    CHECK(c.clause == BoundaryClause::strict_max);
    const RunConfig d = parse_config_ini("[operator]\nzoo = drift_2x\nshift = 2\n[grid]\nh = 0.01\n");
    CHECK(d.h == 0.01);
    CHECK(eval(d.op, jet1(0.5, 1.0, 0.0, 0.0)) == doctest::Approx(2.0));
}

TEST_CASE("JSON matches INI") {
    const RunConfig a = parse_config_json(R"({"operator": {"zoo": "laplacian"}, "grid": {"h": 0.0025},
        "eigen": {"lambda_cap": 40, "eps": [0.3, 0.1]}, "output": {"format": "csv", "seed": 3}})");
    const RunConfig b = parse_config_ini(
        "[operator]\nzoo = laplacian\n[grid]\nh = 0.0025\n[eigen]\nlambda_cap = 40\neps = 0.3, 0.1\n"
        "[output]\nformat = csv\nseed = 3\n");
    CHECK(a.h == b.h);
    CHECK(a.lambda_cap == b.lambda_cap);
    CHECK(a.eps_list == b.eps_list);
    CHECK(a.format == b.format);
    CHECK(a.seed == b.seed);
}

TEST_CASE("certificate section") {
    const RunConfig c = parse_config_ini(R"(
[operator]
zoo = drift_half_minus_one
[certify]
family = power
n = 4
lambda = 1
declared_inflation = 0.1
)");
    REQUIRE(c.certificate.has_value());
    CHECK(std::holds_alternative<cert::Power>(c.certificate->family));
    CHECK(std::get<cert::Power>(c.certificate->family).n == 4);
    CHECK(c.cert_lambda == 1.0);
    CHECK(c.certificate->value(gpe::test::vec({0.5})) == doctest::Approx(0.0625));
}

TEST_CASE("errors are config errors") {
    CHECK(config_error("[operator]\nzoo = laplacian\ncolour = blue\n") == Errc::config);
    CHECK(config_error("[colours]\nred = 1\n") == Errc::config);
    CHECK(config_error("[grid]\nh = -1\n") == Errc::config);
    CHECK(config_error("[grid]\nh = abc\n") == Errc::config);
    CHECK(config_error("[operator]\nzoo = nothing\n") == Errc::config);
    CHECK(config_error("[operator]\ntype = linear\nA = 1\n") == Errc::config);  // no domain
    CHECK(config_error("[operator]\nzoo = laplacian\ntype = linear\n") == Errc::config);
    CHECK(config_error("[output]\nformat = xml\n") == Errc::config);
    CHECK(config_error("[certify]\nfamily = spline\n") == Errc::config);
    CHECK(config_error("[operator]\nzoo = laplacian\n[domain]\nshape = disk\n") == Errc::config);
    CHECK(config_error(R"({"grid": {"h": 0.1}, "extra": {}})", true) == Errc::config);
    CHECK(config_error("not json", true) == Errc::config);
    CHECK_THROWS_AS(load_config("/nonexistent/file.ini"), Error);
}
