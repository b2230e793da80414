#include "gpe/fixtures.hpp"

#include "gpe/boundary.hpp"
#include "gpe/certify.hpp"
#include "gpe/eigen.hpp"
#include "gpe/error.hpp"
#include "gpe/mp.hpp"
#include "gpe/zoo.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <thread>

namespace gpe {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::boundary_case: return "boundary case";
        case Verdict::recorded: return "recorded, not asserted";
    }
    return "?";
}

namespace {

constexpr double kPi2 = std::numbers::pi * std::numbers::pi;
constexpr double kCap = 50.0;
constexpr double kEigenTol = 1e-3;
constexpr double kMpTol = 1e-6;
const std::vector<double> kEps{0.2, 0.1, 0.05};
const double kFine = 1.0 / 400.0;

std::string fmt(double x) { return format_number(x); }

Verdict verdict(bool ok) { return ok ? Verdict::pass : Verdict::fail; }

FixtureRow make_row(std::string fixture, std::string claim, std::string citation) {
    FixtureRow r;
    r.fixture = std::move(fixture);
    r.claim = std::move(claim);
    r.citation = std::move(citation);
    return r;
}

const char* kCiteI = "instability example (x/2)u' - u on (0,1): lambda1 = +inf, MP fails";
const char* kCiteII = "instability example -2xu' on (0,1): lambda-star >= 1 > 0 >= mu1";
const char* kCiteIII = "degenerate examples -sqrt(x)u' and -xu'' on (0,1): lambda-bar1 > 0 = mu1";
const char* kCiteKnife = "knife-edge examples -xu' on (0,1) and x^2 u' on (-1,1): mu1 = 0";
const char* kCiteThm = "characterization: MP holds if and only if mu1 > 0";
const char* kCiteShift = "shift identity: lambda(F + lambda0 u^alpha) = lambda(F) + lambda0";
const char* kCiteFichera = "Fichera condition is constant on each boundary component; log-distance barrier";

DiscreteScheme fine_scheme(const ZooEntry& e, double h) { return DiscreteScheme(e.spec, build_grid(e.domain, h)); }

FixtureRow power_row(int n) {
    const auto& e = zoo_entry("drift_half_minus_one");
    auto row = make_row("drift_half_power_n" + std::to_string(n),
                        "F[x^n] = (n/2 - 1) x^n for every n, so lambda1 = +inf", kCiteI);
    const Certificate c = make_certificate(cert::Power{n}, e.domain);
    const double best = best_lambda(c, e.spec, e.domain, 10000);
    const double expected = n / 2.0 - 1.0;
    row.computed = "best lambda " + fmt(best) + " (expected " + fmt(expected) + ")";
    row.verdict = verdict(std::abs(best - expected) <= 1e-9);
    row.detail["best_lambda"] = num(best);
    row.detail["expected"] = num(expected);
    return row;
}

FixtureRow drift_half_mp() {
    const auto& e = zoo_entry("drift_half_minus_one");
    auto row = make_row("drift_half_mp_fails", "x(1-x) is a positive subsolution: MP fails", kCiteI);
    const DiscreteScheme s = fine_scheme(e, kFine);
    const double cap = 1.0;
    const MPVerdict v = mp_test(s, cap, kMpTol);
    const double tol = s.default_tolerance();
    bool ok = !v.holds && v.witness && v.max_positive_part > 0.1 * cap;
    WitnessVerdict wv, xv;
    double dominance = HUGE_VAL;
    if (ok) {
        wv = witness_check(s, *v.witness, tol);
        const Field bump = sample_field(s.grid_ptr(), [](const Vec& x) { return x[0] * (1.0 - x[0]); });
        xv = witness_check(s, bump, tol);
        for (std::size_t n : s.grid().active_nodes())
            dominance = std::min(dominance, (*v.witness)[n] - bump[n] * cap / 0.25);
        ok = wv.ok && xv.ok && dominance >= -tol;
    }
    row.computed = std::string("MP ") + (v.holds ? "holds" : "fails") + ", witness max " + fmt(v.max_positive_part) +
                   ", x(1-x) check " + (xv.ok ? "ok" : "not ok");
    row.verdict = verdict(ok);
    row.detail["mp"] = to_json(v);
    row.detail["witness_check"] = to_json(wv);
    row.detail["x1mx_check"] = to_json(xv);
    row.detail["min_witness_minus_scaled_x1mx"] = num(dominance);
    return row;
}

FixtureRow mu1_bound_row(const std::string& fixture, const std::string& zoo_name, const std::string& claim,
                         const char* cite, double lo, double hi) {
    const auto& e = zoo_entry(zoo_name);
    auto row = make_row(fixture, claim, cite);
    const EigenEstimate m = mu1_estimate(e.spec, e.domain, kFine, kEps, kCap, kEigenTol);
    row.computed = "mu1 " + fmt(m.value) + " in [" + fmt(m.lambda_lo) + ", " + fmt(m.lambda_hi) + "]";
    row.verdict = verdict(m.value >= lo && m.value <= hi);
    row.detail["mu1"] = to_json(m);
    return row;
}

FixtureRow drift_2x_viscous() {
    const auto& e = zoo_entry("drift_2x");
    auto row = make_row("drift_2x_viscous", "lambda-star >= 1 (viscous eigenvalues stay above 0.9)", kCiteII);
    bool ok = true;
    std::string computed;
    ordered_json list = ordered_json::array();
    for (double eps : kEps) {
        const EigenEstimate v = viscous_eigenvalue(e.spec, e.domain, kFine, eps, kCap, kEigenTol);
        ok = ok && v.value >= 0.9;
        computed += (computed.empty() ? "" : ", ") + ("eps " + fmt(eps) + ": " + fmt(v.value));
        list.push_back(to_json(v));
    }
    row.computed = computed;
    row.verdict = verdict(ok);
    row.detail["viscous"] = list;
    return row;
}

FixtureRow drift_2x_mp() {
    const auto& e = zoo_entry("drift_2x");
    auto row = make_row("drift_2x_mp_witness", "the indicator of {0} is a subsolution: MP fails", kCiteII);
    const DiscreteScheme s = fine_scheme(e, kFine);
    const MPVerdict v = mp_test(s, 1.0, kMpTol);
    bool ok = !v.holds && v.witness.has_value();
    double at_zero = 0.0, elsewhere = 0.0;
    if (ok) {
        const std::size_t origin = s.grid().nearest(Vec::Zero(1));
        for (std::size_t n : s.grid().active_nodes()) {
            if (n == origin)
                at_zero = (*v.witness)[n];
            else
                elsewhere = std::max(elsewhere, (*v.witness)[n]);
        }
        ok = at_zero > 0.1 && elsewhere <= 10.0 * kMpTol;
    }
    row.computed = "witness at x = 0: " + fmt(at_zero) + ", elsewhere max " + fmt(elsewhere);
    row.verdict = verdict(ok);
    row.detail["mp"] = to_json(v);
    row.detail["witness_at_zero"] = num(at_zero);
    row.detail["witness_elsewhere"] = num(elsewhere);
    return row;
}

FixtureRow certificate_row(const std::string& fixture, const std::string& zoo_name, CertFamily family,
                           double lambda, std::optional<double> expected_best, const std::string& claim) {
    const auto& e = zoo_entry(zoo_name);
    auto row = make_row(fixture, claim, kCiteIII);
    const Certificate c = make_certificate(std::move(family), e.domain);
    const CertReport rep = verify(c, e.spec, e.domain, lambda, 10000);
    bool ok = rep.ok && rep.margin >= 0.0;
    row.computed = c.describe() + ": margin " + fmt(rep.margin) + " at lambda " + fmt(lambda);
    if (expected_best) {
        const double best = best_lambda(c, e.spec, e.domain, 10000);
        ok = ok && std::abs(best - *expected_best) <= 1e-6;
        row.computed += ", best lambda " + fmt(best);
        row.detail["best_lambda"] = num(best);
    }
    row.verdict = verdict(ok);
    row.detail["certificate"] = to_json(rep);
    return row;
}

FixtureRow degenerate_mu1_row(const std::string& zoo_name) {
    const auto& e = zoo_entry(zoo_name);
    auto row = make_row(zoo_name + "_mu1_zero", "mu1 = 0 and MP fails although lambda-bar1 > 0", kCiteIII);
    const EigenEstimate m = mu1_estimate(e.spec, e.domain, kFine, kEps, kCap, kEigenTol);
    const MPVerdict v = mp_test(fine_scheme(e, e.h), 1.0, kMpTol);
    row.computed = "mu1 " + fmt(m.value) + ", MP " + (v.holds ? "holds" : "fails");
    row.verdict = verdict(std::abs(m.value) <= 0.05 && !v.holds);
    row.detail["mu1"] = to_json(m);
    row.detail["mp"] = to_json(v);
    return row;
}

FixtureRow calibration_1d() {
    const auto& e = zoo_entry("laplacian");
    auto row = make_row("calibration_1d", "-u'' on (0,1): principal eigenvalue pi^2", "Dirichlet Laplacian calibration");
    const EigenEstimate b = blowup_eigenvalue(fine_scheme(e, kFine), kCap, kEigenTol);
    const EigenEstimate m = mu1_estimate(e.spec, e.domain, kFine, kEps, kCap, kEigenTol);
    const double rel_b = std::abs(b.value - kPi2) / kPi2;
    const double rel_m = std::abs(m.value - kPi2) / kPi2;
    ordered_json per = ordered_json::array();
    for (const auto& p : m.diagnostics.per_eps) {
        const double oracle = kPi2 / ((1.0 + 2.0 * p.eps) * (1.0 + 2.0 * p.eps));
        ordered_json q;
        q["eps"] = num(p.eps);
        q["value"] = num(p.value);
        q["oracle"] = num(oracle);
        q["relative_error"] = num((p.value - oracle) / oracle);
        per.push_back(q);
    }
    row.computed = "blowup " + fmt(b.value) + ", mu1 " + fmt(m.value) + " (pi^2 = " + fmt(kPi2) + ")";
    row.verdict = verdict(rel_b <= 0.02 && rel_m <= 0.03);
    row.detail["blowup"] = to_json(b);
    row.detail["mu1"] = to_json(m);
    row.detail["per_eps_oracle"] = per;
    return row;
}

FixtureRow calibration_2d() {
    const auto& e = zoo_entry("laplacian_2d");
    auto row = make_row("calibration_2d", "-Laplacian on (0,1)^2: principal eigenvalue 2 pi^2",
                        "Dirichlet Laplacian calibration");
    const EigenEstimate b = blowup_eigenvalue(fine_scheme(e, 1.0 / 80.0), kCap, kEigenTol);
    row.computed = "blowup " + fmt(b.value) + " (2 pi^2 = " + fmt(2.0 * kPi2) + ")";
    row.verdict = verdict(std::abs(b.value - 2.0 * kPi2) <= 0.03 * 2.0 * kPi2);
    row.detail["blowup"] = to_json(b);
    return row;
}

FixtureRow shift_row() {
    const auto& e = zoo_entry("laplacian");
    auto row = make_row("shift_identity", "shifting F by 5 u shifts the eigenvalue by 5", kCiteShift);
    const double tol = 0.05;
    const auto grid = build_grid(e.domain, kFine);
    const EigenEstimate base = blowup_eigenvalue(DiscreteScheme(e.spec, grid), kCap, tol);
    const EigenEstimate shifted = blowup_eigenvalue(DiscreteScheme(shift(e.spec, 5.0), grid), kCap, tol);
    const double gap = std::abs(shifted.value - (base.value + 5.0));
    row.computed = fmt(shifted.value) + " - " + fmt(base.value) + " = " + fmt(shifted.value - base.value);
    row.verdict = verdict(gap <= 2.0 * tol);
    row.detail["base"] = to_json(base);
    row.detail["shifted"] = to_json(shifted);
    return row;
}

FixtureRow consistency_row(const std::string& zoo_name, double h, const std::vector<double>& eps) {
    const auto& e = zoo_entry(zoo_name);
    auto row = make_row("consistency_" + zoo_name, "MP holds iff mu1 > 0 (" + e.formula + ")", kCiteThm);
    const EigenEstimate m = mu1_estimate(e.spec, e.domain, h, eps, kCap, kEigenTol);
    const MPVerdict v = mp_test(fine_scheme(e, e.h), 1.0, kMpTol);
    row.computed = "mu1 in [" + fmt(m.lambda_lo) + ", " + fmt(m.lambda_hi) + "], MP " + (v.holds ? "holds" : "fails");
    if (m.lambda_lo > 0.0)
        row.verdict = verdict(v.holds);
    else if (m.lambda_hi < 0.0)
        row.verdict = verdict(!v.holds);
    else
        row.verdict = Verdict::boundary_case;
    row.detail["mu1"] = to_json(m);
    row.detail["mp"] = to_json(v);
    return row;
}

struct ExpectedComponent {
    const char* name;
    ComponentVerdict verdict;
};

FixtureRow fichera_row(const std::string& fixture, const OperatorSpec& spec, const Domain& domain,
                       const std::vector<ExpectedComponent>& expected, std::size_t n_samples,
                       const ZooEntry* mp_entry) {
    auto row = make_row(fixture, "component verdicts match the hand table; barriers exist at satisfied points",
                        kCiteFichera);
    const FicheraReport rep = fichera_classify(spec, domain, n_samples);
    bool ok = rep.components.size() == expected.size();
    std::string computed;
    for (std::size_t i = 0; ok && i < expected.size(); ++i) {
        ok = rep.components[i].verdict == expected[i].verdict;
        computed += (i ? ", " : "") + std::string(expected[i].name) + " " + to_string(rep.components[i].verdict);
    }
    const double band = std::min(0.1, domain.inradius() / 2.0);
    ordered_json barriers = ordered_json::array();
    std::size_t verified = 0, attempted = 0;
    std::vector<Vec> verified_points;
    for (const auto& s : rep.samples) {
        if (s.status != FicheraStatus::satisfied) continue;
        ++attempted;
        const BarrierReport b = find_log_barrier(spec, domain, s.point.xi, band, 400);
        if (b.verified) {
            ++verified;
            verified_points.push_back(s.point.xi);
        }
        barriers.push_back(to_json(b));
    }
    ok = ok && verified == attempted;
    const Advisory adv = equivalence_advisory(rep);
    ok = ok && adv == Advisory::mu1_equals_lambda_bar;
    computed += "; barriers " + std::to_string(verified) + "/" + std::to_string(attempted) + "; " + to_string(adv);

    if (mp_entry) {
        // A subsolution must vanish where a barrier exists.
        const DiscreteScheme s = fine_scheme(*mp_entry, kFine);
        const MPVerdict v = mp_test(s, 1.0, kMpTol);
        double worst = 0.0;
        if (v.witness)
            for (const Vec& xi : verified_points) worst = std::max(worst, (*v.witness)[s.grid().nearest(xi)]);
        ok = ok && worst <= 10.0 * kMpTol;
        computed += "; witness at barrier points " + fmt(worst);
        row.detail["witness_at_barrier_points"] = num(worst);
    }
    row.computed = computed;
    row.verdict = verdict(ok);
    row.detail["fichera"] = to_json(rep);
    row.detail["barriers"] = barriers;
    row.detail["advisory"] = to_string(adv);
    return row;
}

FixtureRow paraboloid_row() {
    const auto& e = zoo_entry("minus_p2");
    auto row = make_row("minus_p2_paraboloid", "k - |x|^2 certifies a positive eigenvalue for -P_2",
                        "paraboloid test function for P_k operators");
    const Certificate c = make_certificate(cert::Paraboloid{2.0}, Domain::disk(0.0, 0.0, 1.2));
    const CertReport rep = verify(c, e.spec, e.domain, 0.5, 10000);
    row.computed = "margin " + fmt(rep.margin) + ", " + to_string(rep.classification);
    row.verdict = verdict(rep.ok && rep.margin >= 3.0 - 1e-9 && rep.classification == CertClass::bounds_mu1);
    row.detail["certificate"] = to_json(rep);
    return row;
}

FixtureRow grushin_tilt_row() {
    const auto& e = zoo_entry("grushin");
    auto row = make_row("grushin_exp_tilt", "1 - eps exp(sigma x) certifies mu1 > 0 for the Grushin operator",
                        "subelliptic example with exponential test function");
    cert::ExpTilt t;
    t.eps = 0.1;
    t.sigma = 1.0;
    t.xi = Vec::Zero(2);
    t.xi[0] = 1.0;
    const Certificate c = make_certificate(t, inflate(e.domain, 0.1));
    const double best = best_lambda(c, e.spec, e.domain, 10000);
    const CertReport rep = verify(c, e.spec, e.domain, best - 1e-6, 10000);
    row.computed = "best lambda " + fmt(best) + ", " + to_string(rep.classification);
    row.verdict = verdict(best > 0.0 && rep.ok && rep.classification == CertClass::bounds_mu1);
    row.detail["best_lambda"] = num(best);
    row.detail["certificate"] = to_json(rep);
    return row;
}

FixtureRow pucci_row() {
    const auto& e = zoo_entry("pucci_max");
    auto row = make_row("pucci_mu1", "degenerate maximal Pucci operator has mu1 > 0 (unverified claim)",
                        "degenerate maximal Pucci example");
    const EigenEstimate m = mu1_estimate(e.spec, e.domain, e.h, {0.3, 0.2, 0.1}, kCap, kEigenTol);
    const MPVerdict v = mp_test(fine_scheme(e, e.h), 1.0, kMpTol);
    row.computed = "mu1 " + fmt(m.value) + " in [" + fmt(m.lambda_lo) + ", " + fmt(m.lambda_hi) + "], MP " +
                   (v.holds ? "holds" : "fails");
    row.verdict = Verdict::recorded;
    row.detail["mu1"] = to_json(m);
    row.detail["mp"] = to_json(v);
    return row;
}

FixtureRow structural_row(std::uint64_t seed) {
    auto row = make_row("structural_properties",
                        "degenerate ellipticity, homogeneity and scheme monotonicity on every zoo operator",
                        "standing hypotheses on F");
    std::size_t ell = 0, mono = 0;
    double homog = 0.0;
    ordered_json per = ordered_json::array();
    for (const auto& e : zoo()) {
        const auto er = check_degenerate_ellipticity(e.spec, 10000, seed);
        const auto hr = check_homogeneity(e.spec, 10000, seed + 1);
        const auto mr = check_monotonicity(DiscreteScheme(e.spec, build_grid(e.domain, e.h)), 1000, seed + 2);
        ell += er.violation_count;
        homog = std::max(homog, hr.max_relative_error);
        mono += mr.violations;
        ordered_json j;
        j["operator"] = e.name;
        j["ellipticity_violations"] = er.violation_count;
        j["homogeneity_error"] = num(hr.max_relative_error);
        j["monotonicity_violations"] = mr.violations;
        per.push_back(j);
    }
    row.computed = "ellipticity violations " + std::to_string(ell) + ", homogeneity error " + fmt(homog) +
                   ", monotonicity violations " + std::to_string(mono);
    row.verdict = verdict(ell == 0 && homog <= 1e-8 && mono == 0);
    row.detail["operators"] = per;
    return row;
}

FixtureRow cap_invariance_row() {
    auto row = make_row("mp_cap_invariance", "MP verdict does not depend on the cap (homogeneity)",
                        "subsolutions scale under homogeneity");
    std::size_t agree = 0, total = 0;
    ordered_json per = ordered_json::array();
    for (const auto& e : zoo()) {
        const DiscreteScheme s = fine_scheme(e, e.h);
        const MPVerdict a = mp_test(s, 1.0, kMpTol);
        const MPVerdict b = mp_test(s, 7.0, 7.0 * kMpTol);
        ++total;
        if (a.holds == b.holds) ++agree;
        ordered_json j;
        j["operator"] = e.name;
        j["holds_cap1"] = a.holds;
        j["holds_cap7"] = b.holds;
        per.push_back(j);
    }
    row.computed = std::to_string(agree) + "/" + std::to_string(total) + " operators agree";
    row.verdict = verdict(agree == total);
    row.detail["operators"] = per;
    return row;
}

Fixture fx(std::string name, std::function<FixtureRow()> f) {
    return {std::move(name), [f = std::move(f)](std::uint64_t) { return f(); }};
}

}  // namespace

std::vector<Fixture> paper_fixtures() {
    std::vector<Fixture> out;
    out.push_back(fx("drift_half_power_n4", [] { return power_row(4); }));
    out.push_back(fx("drift_half_power_n22", [] { return power_row(22); }));
    out.push_back(fx("drift_half_mp_fails", drift_half_mp));
    out.push_back(fx("drift_half_mu1", [] {
        return mu1_bound_row("drift_half_mu1", "drift_half_minus_one", "MP fails, so mu1 <= 0", kCiteI, -HUGE_VAL,
                             0.0);
    }));
    out.push_back(fx("drift_2x_viscous", drift_2x_viscous));
    out.push_back(fx("drift_2x_mu1", [] {
        return mu1_bound_row("drift_2x_mu1", "drift_2x", "mu1 <= 0 (estimate at most 0.05)", kCiteII, -HUGE_VAL, 0.05);
    }));
    out.push_back(fx("drift_2x_mp_witness", drift_2x_mp));
    out.push_back(fx("sqrt_drift_certificate", [] {
        return certificate_row("sqrt_drift_certificate", "sqrt_drift", cert::TwoMinusSqrt{}, 0.25, 0.25,
                               "2 - sqrt(x) gives lambda-bar1 >= 1/4");
    }));
    out.push_back(fx("x_diffusion_certificate", [] {
        return certificate_row("x_diffusion_certificate", "x_diffusion", cert::OnePlusSqrt{}, 0.125, std::nullopt,
                               "1 + sqrt(x) gives lambda-bar1 >= 1/8");
    }));
    out.push_back(fx("sqrt_drift_mu1_zero", [] { return degenerate_mu1_row("sqrt_drift"); }));
    out.push_back(fx("x_diffusion_mu1_zero", [] { return degenerate_mu1_row("x_diffusion"); }));
    out.push_back(fx("knife_edge_drift_x", [] {
        return mu1_bound_row("knife_edge_drift_x", "drift_x", "mu1 = 0 for -xu' on (0,1)", kCiteKnife, -0.05, 0.05);
    }));
    out.push_back(fx("knife_edge_drift_x2", [] {
        return mu1_bound_row("knife_edge_drift_x2", "drift_x2", "mu1 = 0 for x^2 u' on (-1,1)", kCiteKnife, -0.05,
                             0.05);
    }));
    out.push_back(fx("calibration_1d", calibration_1d));
    out.push_back(fx("calibration_2d", calibration_2d));
    out.push_back(fx("shift_identity", shift_row));
    for (const char* name : {"laplacian", "laplacian_plus_one", "drift_half_minus_one", "drift_2x", "eikonal",
                             "drift_x", "drift_x2"})
        out.push_back(fx(std::string("consistency_") + name, [name] { return consistency_row(name, kFine, kEps); }));
    out.push_back(fx("consistency_grushin", [] { return consistency_row("grushin", 1.0 / 40.0, kEps); }));
    out.push_back(fx("consistency_minus_p1", [] { return consistency_row("minus_p1", 1.0 / 20.0, {0.3, 0.2, 0.1}); }));
    out.push_back(fx("fichera_drift_2x", [] {
        const auto& e = zoo_entry("drift_2x");
        return fichera_row("fichera_drift_2x", e.spec, e.domain,
                           {{"x=0", ComponentVerdict::all_violated}, {"x=1", ComponentVerdict::all_satisfied}}, 2, &e);
    }));
    out.push_back(fx("fichera_drift_x", [] {
        const auto& e = zoo_entry("drift_x");
        return fichera_row("fichera_drift_x", e.spec, e.domain,
                           {{"x=0", ComponentVerdict::all_violated}, {"x=1", ComponentVerdict::all_satisfied}}, 2, &e);
    }));
    out.push_back(fx("fichera_laplacian", [] {
        const auto& e = zoo_entry("laplacian");
        return fichera_row("fichera_laplacian", e.spec, e.domain,
                           {{"x=0", ComponentVerdict::all_satisfied}, {"x=1", ComponentVerdict::all_satisfied}}, 2,
                           nullptr);
    }));
    out.push_back(fx("fichera_diag_1_y", [] {
        const OperatorSpec spec =
            make_linear("diag(1, y)", 2, {"1", "0", "0", "|y|"}, {"0", "0"}, "0", unit_box(2, -1.5, 1.5));
        return fichera_row("fichera_diag_1_y", spec, Domain::rectangle(0.0, 1.0, 0.0, 1.0),
                           {{"bottom", ComponentVerdict::all_violated},
                            {"right", ComponentVerdict::all_satisfied},
                            {"top", ComponentVerdict::all_satisfied},
                            {"left", ComponentVerdict::all_satisfied}},
                           64, nullptr);
    }));
    out.push_back(fx("minus_p2_paraboloid", paraboloid_row));
    out.push_back(fx("grushin_exp_tilt", grushin_tilt_row));
    out.push_back(fx("pucci_mu1", pucci_row));
    out.push_back({"structural_properties", structural_row});
    out.push_back(fx("mp_cap_invariance", cap_invariance_row));
    return out;
}

std::vector<FixtureRow> run_suite(const std::vector<Fixture>& fixtures, const SuiteOptions& options) {
    unsigned workers = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    std::vector<FixtureRow> rows(fixtures.size());
    auto run_one = [&](std::size_t i) {
        const Fixture& f = fixtures[i];
        try {
            FixtureRow r = f.run(options.seed + i);
            r.fixture = f.name;
            return r;
        } catch (const std::exception& ex) {
            FixtureRow r;
            r.fixture = f.name;
            r.computed = std::string("error: ") + ex.what();
            r.verdict = Verdict::fail;
            return r;
        }
    };
    for (std::size_t start = 0; start < fixtures.size(); start += workers) {
        const std::size_t end = std::min(fixtures.size(), start + workers);
        std::vector<std::future<FixtureRow>> batch;
        for (std::size_t i = start; i < end; ++i) batch.push_back(std::async(std::launch::async, run_one, i));
        for (std::size_t i = start; i < end; ++i) rows[i] = batch[i - start].get();
    }
    return rows;
}

Report suite_report(const std::vector<FixtureRow>& rows, const SuiteOptions& options) {
    Report rep;
    rep.command = "paper";
    rep.meta["tool"] = "gpelab";
    rep.meta["version"] = kVersion;
    rep.meta["seed"] = options.seed;
    rep.meta["fixtures"] = rows.size();
    std::size_t failed = 0;
    for (const auto& r : rows)
        if (r.verdict == Verdict::fail) ++failed;
    rep.meta["failed"] = failed;
    Table t{"paper", {"fixture", "claim", "citation", "computed", "verdict"}, {}};
    for (const auto& r : rows) {
        ordered_json j;
        j["type"] = "fixture";
        j["fixture"] = r.fixture;
        j["claim"] = r.claim;
        j["citation"] = r.citation;
        j["computed"] = r.computed;
        j["verdict"] = to_string(r.verdict);
        j["detail"] = r.detail;
        rep.records.push_back(std::move(j));
        t.rows.push_back({r.fixture, r.claim, r.citation, r.computed, to_string(r.verdict)});
    }
    rep.tables.push_back(std::move(t));
    return rep;
}

std::string format_table(const std::vector<FixtureRow>& rows) {
    std::size_t wf = 7, wv = 7;
    for (const auto& r : rows) {
        wf = std::max(wf, r.fixture.size());
        wv = std::max(wv, std::string(to_string(r.verdict)).size());
    }
    std::ostringstream os;
    os << std::left << std::setw(static_cast<int>(wv)) << "verdict" << "  " << std::setw(static_cast<int>(wf))
       << "fixture" << "  claim [citation] -> computed\n";
    for (const auto& r : rows)
        os << std::setw(static_cast<int>(wv)) << to_string(r.verdict) << "  " << std::setw(static_cast<int>(wf))
           << r.fixture << "  " << r.claim << " [" << r.citation << "] -> " << r.computed << "\n";
    return os.str();
}

bool any_failed(const std::vector<FixtureRow>& rows) {
    return std::any_of(rows.begin(), rows.end(), [](const FixtureRow& r) { return r.verdict == Verdict::fail; });
}

}  // namespace gpe
