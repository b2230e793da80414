// gpelab: command-line front end for the eigenvalue, certificate, maximum
// principle and boundary analyses.

#include "gpe/config.hpp"
#include "gpe/error.hpp"
#include "gpe/fixtures.hpp"
#include "gpe/report.hpp"
#include "gpe/zoo.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <iostream>

namespace {

using namespace gpe;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kConfigError = 2;

struct Outcome {
    Report report;
    bool failed = false;
};

Report base_report(const std::string& command, const RunConfig& cfg) {
    Report r;
    r.command = command;
    r.meta["tool"] = "gpelab";
    r.meta["version"] = kVersion;
    r.meta["seed"] = cfg.seed;
    r.meta["operator"] = cfg.operator_label;
    r.meta["coefficients"] = describe_coefficients(cfg.op);
    r.meta["domain"] = cfg.domain.describe();
    r.meta["h"] = num(cfg.h);
    return r;
}

DiscreteScheme make_scheme(const RunConfig& cfg) {
    SchemeOptions opts;
    opts.clause = cfg.clause;
    return DiscreteScheme(cfg.op, build_grid(cfg.domain, cfg.h), opts);
}

Outcome cmd_validate(const RunConfig& cfg) {
    Outcome o{base_report("validate", cfg)};
    const auto er = check_degenerate_ellipticity(cfg.op, cfg.validate_samples, cfg.seed);
    const auto hr = check_homogeneity(cfg.op, cfg.validate_samples, cfg.seed + 1);
    const auto mr = check_monotonicity(make_scheme(cfg), cfg.monotonicity_trials, cfg.seed + 2);

    ordered_json j;
    j["type"] = "validate";
    j["ellipticity_samples"] = er.samples;
    j["ellipticity_violations"] = er.violation_count;
    ordered_json list = ordered_json::array();
    for (const auto& v : er.violations) {
        ordered_json item;
        item["x"] = to_json(v.jet.x);
        item["r"] = num(v.jet.r);
        item["p"] = to_json(v.jet.p);
        item["increase"] = num(v.increase);
        list.push_back(item);
    }
    j["violations"] = list;
    j["homogeneity_samples"] = hr.samples;
    j["homogeneity_max_relative_error"] = num(hr.max_relative_error);
    j["monotonicity_trials"] = mr.trials;
    j["monotonicity_violations"] = mr.violations;
    j["monotonicity_worst_increase"] = num(mr.worst_increase);
    o.report.records.push_back(j);

    std::cout << "degenerate ellipticity: " << er.violation_count << " violations in " << er.samples << " samples\n";
    for (const auto& v : er.violations)
        std::cout << "  x = " << format_number(v.jet.x[0]) << (v.jet.x.size() > 1 ? " ..." : "")
                  << ": F(X + Y) - F(X) = " << format_number(v.increase) << "\n";
    std::cout << "homogeneity: max relative error " << format_number(hr.max_relative_error) << "\n";
    std::cout << "scheme monotonicity: " << mr.violations << " violations in " << mr.trials << " trials\n";
    o.failed = er.violation_count > 0 || hr.max_relative_error > 1e-8 || mr.violations > 0;
    return o;
}

void print_estimate(const char* label, const EigenEstimate& e) {
    std::cout << label << " = " << format_number(e.value) << "  bracket [" << format_number(e.lambda_lo) << ", "
              << format_number(e.lambda_hi) << "]  method " << to_string(e.method) << "\n";
    for (const auto& p : e.diagnostics.per_eps)
        std::cout << "  eps " << format_number(p.eps) << ": " << format_number(p.value) << (p.capped ? " (capped)" : "")
                  << "\n";
    if (!e.diagnostics.note.empty()) std::cout << "  note: " << e.diagnostics.note << "\n";
}

Outcome cmd_eigen(const RunConfig& cfg, const std::string& which) {
    Outcome o{base_report(which, cfg)};
    EigenEstimate e;
    if (which == "eigen")
        e = blowup_eigenvalue(make_scheme(cfg), cfg.lambda_cap, cfg.eigen_tol, cfg.blowup);
    else if (which == "mu1")
        e = mu1_estimate(cfg.op, cfg.domain, cfg.h, cfg.eps_list, cfg.lambda_cap, cfg.eigen_tol, cfg.blowup);
    else
        e = lambda_star_estimate(cfg.op, cfg.domain, cfg.h, cfg.eps_list, cfg.lambda_cap, cfg.eigen_tol, cfg.blowup);
    print_estimate(which == "eigen" ? "lambda" : which == "mu1" ? "mu1" : "lambda-star", e);
    o.report.records.push_back(to_json(e));
    o.report.tables.push_back(eigen_table({e}, cfg.domain.describe()));
    return o;
}

Outcome cmd_mp(const RunConfig& cfg) {
    Outcome o{base_report("mp", cfg)};
    o.report.meta["boundary_clause"] = to_string(cfg.clause);
    const DiscreteScheme s = make_scheme(cfg);
    const MPVerdict v = mp_test(s, cfg.mp_cap, cfg.mp_tol, cfg.mp);
    std::cout << "MP " << (v.holds ? "holds" : "fails") << ": max positive part " << format_number(v.max_positive_part)
              << " after " << v.iterations << " sweeps\n";
    o.report.records.push_back(to_json(v));
    if (v.witness) {
        const WitnessVerdict w = witness_check(s, *v.witness, s.default_tolerance());
        std::cout << "witness re-check: " << (w.ok ? "ok" : "not ok") << "\n";
        o.report.records.push_back(to_json(w));
        o.report.tables.push_back(field_table("witness", *v.witness));
        o.failed = !w.ok;
    }
    return o;
}

Outcome cmd_certify(const RunConfig& cfg) {
    if (!cfg.certificate) throw Error(Errc::config, "[certify] section with a family is required");
    Outcome o{base_report("certify", cfg)};
    const Certificate& c = *cfg.certificate;
    const double best = best_lambda(c, cfg.op, cfg.domain, cfg.cert_samples, cfg.sampling);
    const double lambda = cfg.cert_lambda.value_or(best - 1e-6);
    const CertReport rep = verify(c, cfg.op, cfg.domain, lambda, cfg.cert_samples, cfg.sampling);
    std::cout << c.describe() << ": best lambda " << format_number(best) << "\n"
              << "verify at lambda " << format_number(lambda) << ": margin " << format_number(rep.margin) << ", "
              << (rep.ok ? "ok" : "not ok") << ", " << to_string(rep.classification) << "\n";
    if (!rep.note.empty()) std::cout << "  note: " << rep.note << "\n";
    ordered_json j = to_json(rep);
    j["certificate"] = c.describe();
    j["best_lambda"] = num(best);
    o.report.records.push_back(j);
    Table t{"certificate", {"certificate", "lambda", "margin", "ok", "classification", "best_lambda"}, {}};
    t.rows.push_back({c.describe(), format_number(lambda), format_number(rep.margin), rep.ok ? "true" : "false",
                      to_string(rep.classification), format_number(best)});
    o.report.tables.push_back(t);
    o.failed = !rep.ok;
    return o;
}

Outcome cmd_fichera(const RunConfig& cfg) {
    Outcome o{base_report("fichera", cfg)};
    const FicheraReport rep = fichera_classify(cfg.op, cfg.domain, cfg.fichera_samples, cfg.fichera);
    for (const auto& c : rep.components)
        std::cout << "component " << c.id << " (" << c.name << "): " << to_string(c.verdict) << " (" << c.satisfied
                  << " satisfied, " << c.violated << " violated)\n";
    const Advisory adv = equivalence_advisory(rep);
    std::cout << "advisory: " << to_string(adv) << "\n";
    if (!rep.note.empty()) std::cout << "note: " << rep.note << "\n";
    ordered_json j = to_json(rep);
    j["advisory"] = to_string(adv);
    o.report.records.push_back(j);
    o.report.tables.push_back(fichera_table(rep));
    return o;
}

Outcome cmd_barrier(const RunConfig& cfg) {
    Outcome o{base_report("barrier", cfg)};
    std::vector<Vec> points = cfg.barrier_points;
    if (points.empty()) {
        const FicheraReport rep = fichera_classify(cfg.op, cfg.domain, cfg.fichera_samples, cfg.fichera);
        for (const auto& s : rep.samples)
            if (s.status == FicheraStatus::satisfied) points.push_back(s.point.xi);
    }
    const std::size_t n = 400;
    Table t{"barrier", {"xi", "delta", "raw_min", "scale", "min_residual", "verified"}, {}};
    for (const Vec& xi : points) {
        const BarrierReport b = cfg.barrier_delta
                                    ? verify_log_barrier(cfg.op, cfg.domain, xi, *cfg.barrier_delta, cfg.barrier_band, n,
                                                         cfg.fichera)
                                    : find_log_barrier(cfg.op, cfg.domain, xi, cfg.barrier_band, n, cfg.fichera);
        std::string x;
        for (Eigen::Index k = 0; k < xi.size(); ++k) x += (k ? " " : "") + format_number(xi[k]);
        std::cout << "xi = (" << x << "): delta " << format_number(b.delta) << ", min F[w] " << format_number(b.raw_min)
                  << ", " << (b.verified ? "verified" : "not verified") << "\n";
        o.report.records.push_back(to_json(b));
        t.rows.push_back({x, format_number(b.delta), format_number(b.raw_min), format_number(b.scale),
                          format_number(b.min_residual), b.verified ? "true" : "false"});
        o.failed = o.failed || !b.verified;
    }
    o.report.tables.push_back(t);
    return o;
}

Outcome cmd_paper(const RunConfig& cfg) {
    const SuiteOptions opts{cfg.seed, cfg.threads};
    const auto rows = run_suite(paper_fixtures(), opts);
    std::cout << format_table(rows);
    return {suite_report(rows, opts), any_failed(rows)};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Principal eigenvalues and maximum principles for degenerate elliptic operators"};
    app.require_subcommand(1);
    std::string config_path, out_dir, format;
    long long seed = -1;
    unsigned threads = 0;
    const std::vector<std::pair<std::string, std::string>> commands = {
        {"validate", "check degenerate ellipticity, homogeneity and scheme monotonicity"},
        {"eigen", "blowup eigenvalue on the configured domain"},
        {"mu1", "mu1 by extrapolating blowup values on inflated domains"},
        {"lambda-star", "lambda-star from vanishing-viscosity eigenvalues"},
        {"mp", "discrete maximum principle test with witness"},
        {"certify", "verify a test-function certificate"},
        {"fichera", "classify boundary points by the Fichera condition"},
        {"barrier", "verify log-distance barriers at boundary points"},
        {"paper", "run the full fixture suite"},
        {"catalog", "list the operator zoo"},
    };
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--config", config_path, "INI or JSON config file");
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--format", format, "json, csv or both")->check(CLI::IsMember({"json", "csv", "both"}));
        sub->add_option("--seed", seed, "random seed")->check(CLI::NonNegativeNumber);
        if (name == "paper") sub->add_option("--threads", threads, "concurrent fixtures (0 = all cores)");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    if (command == "catalog") {
        std::cout << catalog_text();
        return kOk;
    }

    RunConfig cfg;
    try {
        cfg = config_path.empty() ? default_config() : load_config(config_path);
    } catch (const Error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    }
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (!format.empty()) cfg.format = format;
    if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
    if (threads) cfg.threads = threads;

    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
        if (command == "validate")
            outcome = cmd_validate(cfg);
        else if (command == "eigen" || command == "mu1" || command == "lambda-star")
            outcome = cmd_eigen(cfg, command);
        else if (command == "mp")
            outcome = cmd_mp(cfg);
        else if (command == "certify")
            outcome = cmd_certify(cfg);
        else if (command == "fichera")
            outcome = cmd_fichera(cfg);
        else if (command == "barrier")
            outcome = cmd_barrier(cfg);
        else
            outcome = cmd_paper(cfg);
    } catch (const Error& e) {
        std::cerr << command << ": " << e.what() << "\n";
        return e.code() == Errc::config ? kConfigError : kFailed;
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    try {
        for (const auto& path : emit(outcome.report, cfg.out_dir, cfg.format)) std::cerr << "wrote " << path << "\n";
    } catch (const Error& e) {
        std::cerr << "output error: " << e.what() << "\n";
        return kFailed;
    }
    std::cerr << command << " finished in " << format_number(std::round(seconds * 100.0) / 100.0) << " s\n";
    return outcome.failed ? kFailed : kOk;
}
