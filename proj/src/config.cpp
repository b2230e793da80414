#include "gpe/config.hpp"

#include "gpe/error.hpp"
#include "gpe/zoo.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace gpe {

namespace {

using Section = std::map<std::string, std::string>;
using Sections = std::map<std::string, Section>;

const std::map<std::string, std::set<std::string>>& schema() {
    static const std::map<std::string, std::set<std::string>> s = {
        {"operator", {"zoo", "type", "dim", "A", "b", "c", "k", "q", "shift", "alpha"}},
        {"domain", {"shape", "a", "b", "c", "d", "cx", "cy", "radius"}},
        {"grid", {"h"}},
        {"eigen",
         {"lambda_cap", "tol", "eps", "viscous_eps", "divergence_threshold", "max_sweeps", "max_newton", "solver"}},
        {"mp", {"cap", "tol", "boundary_clause", "max_sweeps"}},
        {"certify",
         {"family", "n", "k", "eps", "sigma", "xi", "c", "scale", "lambda", "samples", "declared_inflation",
          "boundary_shift"}},
        {"boundary", {"samples", "tol_pos", "corner_exclusion", "xi", "delta", "band"}},
        {"validate", {"samples", "trials"}},
        {"output", {"dir", "format", "seed", "threads"}},
    };
    return s;
}

std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void bad(const std::string& where, const std::string& what) {
    throw Error(Errc::config, where + ": " + what);
}

double to_double(const std::string& where, const std::string& text) {
    const std::string t = trim(text);
    double v = 0.0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size()) {
        // Allow constant expressions such as 1/400 or pi.
        try {
            const Expr e = Expr::parse(t);
            Vec zero = Vec::Zero(3);
            v = e(zero);
        } catch (const Error&) {
            bad(where, "expected a number, got '" + text + "'");
        }
    }
    if (!std::isfinite(v)) bad(where, "value is not finite");
    return v;
}

long long to_int(const std::string& where, const std::string& text) {
    const std::string t = trim(text);
    long long v = 0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size()) bad(where, "expected an integer, got '" + text + "'");
    return v;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(trim(item));
    if (out.empty()) out.push_back("");
    return out;
}

class Reader {
public:
    explicit Reader(Sections s) : s_(std::move(s)) {
        for (const auto& [name, keys] : s_) {
            const auto it = schema().find(name);
            if (it == schema().end()) bad("[" + name + "]", "unknown section");
            for (const auto& [key, value] : keys)
                if (!it->second.count(key)) bad("[" + name + "] " + key, "unknown key");
        }
    }

    bool has(const std::string& sec, const std::string& key) const {
        const auto it = s_.find(sec);
        return it != s_.end() && it->second.count(key);
    }
    bool has_section(const std::string& sec) const { return s_.count(sec) > 0; }

    std::string str(const std::string& sec, const std::string& key) const { return trim(s_.at(sec).at(key)); }

    std::string where(const std::string& sec, const std::string& key) const { return "[" + sec + "] " + key; }

    double num(const std::string& sec, const std::string& key, double fallback) const {
        return has(sec, key) ? to_double(where(sec, key), str(sec, key)) : fallback;
    }
    double positive(const std::string& sec, const std::string& key, double fallback) const {
        const double v = num(sec, key, fallback);
        if (!(v > 0.0)) bad(where(sec, key), "must be > 0");
        return v;
    }
    std::size_t count(const std::string& sec, const std::string& key, std::size_t fallback) const {
        if (!has(sec, key)) return fallback;
        const long long v = to_int(where(sec, key), str(sec, key));
        if (v <= 0) bad(where(sec, key), "must be a positive integer");
        return static_cast<std::size_t>(v);
    }
    std::vector<double> nums(const std::string& sec, const std::string& key) const {
        std::vector<double> out;
        for (const auto& item : split_list(str(sec, key))) out.push_back(to_double(where(sec, key), item));
        return out;
    }
    std::string required(const std::string& sec, const std::string& key) const {
        if (!has(sec, key)) bad(where(sec, key), "missing");
        return str(sec, key);
    }

private:
    Sections s_;
};

Domain read_domain(const Reader& r) {
    const std::string shape = r.required("domain", "shape");
    try {
        if (shape == "interval") return Domain::interval(r.num("domain", "a", 0.0), r.num("domain", "b", 1.0));
        if (shape == "rectangle")
            return Domain::rectangle(r.num("domain", "a", 0.0), r.num("domain", "b", 1.0), r.num("domain", "c", 0.0),
                                     r.num("domain", "d", 1.0));
        if (shape == "disk")
            return Domain::disk(r.num("domain", "cx", 0.0), r.num("domain", "cy", 0.0), r.num("domain", "radius", 1.0));
    } catch (const Error& e) {
        if (e.code() == Errc::config) throw;
        bad("[domain]", e.what());
    }
    bad("[domain] shape", "expected interval, rectangle or disk, got '" + shape + "'");
}

OperatorSpec read_operator(const Reader& r, const Domain* domain, std::string& label) {
    const int dim = r.has("operator", "dim") ? static_cast<int>(to_int("[operator] dim", r.str("operator", "dim")))
                    : domain                 ? domain->dim()
                                             : 1;
    const std::string type = r.required("operator", "type");
    label = type;
    const Box box = unit_box(dim, -10.0, 10.0);
    try {
        if (type == "linear") {
            std::vector<std::string> A = split_list(r.required("operator", "A"));
            std::vector<std::string> b = r.has("operator", "b") ? split_list(r.str("operator", "b"))
                                                                : std::vector<std::string>(static_cast<std::size_t>(dim), "0");
            const std::string c = r.has("operator", "c") ? r.str("operator", "c") : "0";
            return make_linear("linear", dim, A, b, c, box);
        }
        if (type == "eikonal")
            return make_eikonal("eikonal", dim, r.required("operator", "b"),
                                r.has("operator", "c") ? r.str("operator", "c") : "0", box);
        if (type == "minus_pk")
            return make_minus_pk(dim, static_cast<int>(to_int("[operator] k", r.required("operator", "k"))), box);
        if (type == "pucci_max") return make_minus_pucci_max(dim, box);
        if (type == "p_laplacian") return make_p_laplacian(dim, r.positive("operator", "q", 3.0), box);
        if (type == "infinity_laplacian") return make_infinity_laplacian(dim, box);
        if (type == "anti_laplacian") return anti_laplacian(dim);
    } catch (const Error& e) {
        if (e.code() == Errc::config) throw;
        bad("[operator]", e.what());
    }
    bad("[operator] type", "unknown operator type '" + type + "'");
}

Certificate read_certificate(const Reader& r, const Domain& domain) {
    const std::string family = r.required("certify", "family");
    const std::string sec = "certify";
    CertFamily fam;
    if (family == "power") {
        fam = cert::Power{static_cast<int>(to_int(r.where(sec, "n"), r.required(sec, "n")))};
    } else if (family == "two_minus_sqrt") {
        fam = cert::TwoMinusSqrt{};
    } else if (family == "one_plus_sqrt") {
        fam = cert::OnePlusSqrt{};
    } else if (family == "paraboloid") {
        fam = cert::Paraboloid{r.num(sec, "k", 1.0)};
    } else if (family == "exp_tilt") {
        cert::ExpTilt t;
        t.eps = r.positive(sec, "eps", 0.1);
        t.sigma = r.num(sec, "sigma", 1.0);
        const auto xi = r.nums(sec, "xi");
        t.xi = Vec::Zero(static_cast<Eigen::Index>(xi.size()));
        for (std::size_t i = 0; i < xi.size(); ++i) t.xi[static_cast<Eigen::Index>(i)] = xi[i];
        fam = t;
    } else if (family == "constant") {
        fam = cert::Constant{r.num(sec, "c", 1.0)};
    } else {
        bad("[certify] family", "unknown certificate family '" + family + "'");
    }
    const double infl = r.num(sec, "declared_inflation", 0.0);
    if (infl < 0.0) bad("[certify] declared_inflation", "must be >= 0");
    try {
        return make_certificate(fam, inflate(domain, infl), r.positive(sec, "scale", 1.0));
    } catch (const Error& e) {
        if (e.code() == Errc::config) throw;
        bad("[certify]", e.what());
    }
}

RunConfig build(const Sections& sections) {
    const Reader r(sections);
    RunConfig cfg = default_config();

    std::optional<Domain> domain;
    if (r.has_section("domain")) domain = read_domain(r);
    if (r.has("operator", "zoo")) {
        for (const char* key : {"type", "A", "b", "c", "k", "q", "dim"})
            if (r.has("operator", key))
                bad(std::string("[operator] ") + key, "cannot be combined with a zoo operator");
        const ZooEntry& e = zoo_entry(r.str("operator", "zoo"));
        cfg.zoo_name = e.name;
        cfg.operator_label = e.name;
        cfg.op = e.spec;
        cfg.domain = domain.value_or(e.domain);
        cfg.h = e.h;
    } else if (r.has_section("operator")) {
        cfg.zoo_name.reset();
        cfg.op = read_operator(r, domain ? &*domain : nullptr, cfg.operator_label);
        if (!domain) bad("[domain]", "required for a custom operator");
        cfg.domain = *domain;
    } else if (domain) {
        cfg.domain = *domain;
    }
    if (r.has("operator", "alpha")) cfg.op.alpha = r.positive("operator", "alpha", 1.0);
    if (r.has("operator", "shift")) cfg.op = shift(cfg.op, r.num("operator", "shift", 0.0));
    if (cfg.op.dim != cfg.domain.dim()) bad("[operator]", "operator and domain dimensions differ");

    cfg.h = r.positive("grid", "h", cfg.h);

    cfg.lambda_cap = r.positive("eigen", "lambda_cap", cfg.lambda_cap);
    cfg.eigen_tol = r.positive("eigen", "tol", cfg.eigen_tol);
    if (r.has("eigen", "eps")) {
        cfg.eps_list = r.nums("eigen", "eps");
        for (double e : cfg.eps_list)
            if (!(e > 0.0)) bad("[eigen] eps", "entries must be > 0");
    }
    cfg.viscous_eps = r.positive("eigen", "viscous_eps", cfg.viscous_eps);
    cfg.blowup.divergence_threshold = r.positive("eigen", "divergence_threshold", cfg.blowup.divergence_threshold);
    cfg.blowup.max_sweeps = r.count("eigen", "max_sweeps", cfg.blowup.max_sweeps);
    cfg.blowup.max_newton = r.count("eigen", "max_newton", cfg.blowup.max_newton);
    if (r.has("eigen", "solver")) {
        const std::string s = r.str("eigen", "solver");
        if (s == "automatic")
            cfg.blowup.solver = TrialSolver::automatic;
        else if (s == "newton")
            cfg.blowup.solver = TrialSolver::newton;
        else if (s == "perron")
            cfg.blowup.solver = TrialSolver::perron;
        else
            bad("[eigen] solver", "expected automatic, newton or perron");
    }

    cfg.mp_cap = r.positive("mp", "cap", cfg.mp_cap);
    cfg.mp_tol = r.positive("mp", "tol", cfg.mp_tol);
    cfg.mp.max_sweeps = r.count("mp", "max_sweeps", cfg.mp.max_sweeps);
    if (r.has("mp", "boundary_clause")) {
        const std::string s = r.str("mp", "boundary_clause");
        if (s == "relaxed-min")
            cfg.clause = BoundaryClause::relaxed_min;
        else if (s == "strict-max")
            cfg.clause = BoundaryClause::strict_max;
        else
            bad("[mp] boundary_clause", "expected relaxed-min or strict-max");
    }

    if (r.has_section("certify")) {
        cfg.certificate = read_certificate(r, cfg.domain);
        if (r.has("certify", "lambda")) cfg.cert_lambda = r.num("certify", "lambda", 0.0);
        cfg.cert_samples = r.count("certify", "samples", cfg.cert_samples);
        cfg.sampling.boundary_shift = r.positive("certify", "boundary_shift", cfg.sampling.boundary_shift);
    }

    cfg.fichera_samples = r.count("boundary", "samples", cfg.fichera_samples);
    cfg.fichera.tol_pos = r.positive("boundary", "tol_pos", cfg.fichera.tol_pos);
    cfg.fichera.corner_exclusion = r.positive("boundary", "corner_exclusion", cfg.fichera.corner_exclusion);
    if (r.has("boundary", "xi")) {
        const auto xs = r.nums("boundary", "xi");
        const auto dim = static_cast<std::size_t>(cfg.domain.dim());
        if (xs.size() % dim != 0) bad("[boundary] xi", "coordinate count is not a multiple of the dimension");
        for (std::size_t i = 0; i < xs.size(); i += dim) {
            Vec p(static_cast<Eigen::Index>(dim));
            for (std::size_t j = 0; j < dim; ++j) p[static_cast<Eigen::Index>(j)] = xs[i + j];
            cfg.barrier_points.push_back(p);
        }
    }
    if (r.has("boundary", "delta")) cfg.barrier_delta = r.positive("boundary", "delta", 0.1);
    cfg.barrier_band = r.positive("boundary", "band", cfg.barrier_band);

    cfg.validate_samples = r.count("validate", "samples", cfg.validate_samples);
    cfg.monotonicity_trials = r.count("validate", "trials", cfg.monotonicity_trials);

    if (r.has("output", "dir")) cfg.out_dir = r.str("output", "dir");
    if (r.has("output", "format")) {
        cfg.format = r.str("output", "format");
        if (cfg.format != "json" && cfg.format != "csv" && cfg.format != "both")
            bad("[output] format", "expected json, csv or both");
    }
    if (r.has("output", "seed")) {
        const long long s = to_int("[output] seed", r.str("output", "seed"));
        if (s < 0) bad("[output] seed", "must be >= 0");
        cfg.seed = static_cast<std::uint64_t>(s);
    }
    if (r.has("output", "threads"))
        cfg.threads = static_cast<unsigned>(to_int("[output] threads", r.str("output", "threads")));
    return cfg;
}

}  // namespace

RunConfig default_config() {
    RunConfig cfg;
    const ZooEntry& e = zoo_entry("laplacian");
    cfg.zoo_name = e.name;
    cfg.operator_label = e.name;
    cfg.op = e.spec;
    cfg.domain = e.domain;
    cfg.h = e.h;
    return cfg;
}

RunConfig parse_config_ini(std::string_view text) {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    std::istringstream in{std::string(text)};
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw Error(Errc::config, std::string("ini: ") + e.what());
    }
    Sections sections;
    for (const auto& [name, child] : tree) {
        if (child.empty() && !child.data().empty()) bad(name, "key outside a section");
        auto& sec = sections[name];
        for (const auto& [key, value] : child) sec[key] = value.data();
    }
    return build(sections);
}

RunConfig parse_config_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(Errc::config, std::string("json: ") + e.what());
    }
    if (!j.is_object()) bad("json", "top level must be an object");
    Sections sections;
    for (const auto& [name, child] : j.items()) {
        if (!child.is_object()) bad(name, "section must be an object");
        auto& sec = sections[name];
        for (const auto& [key, value] : child.items()) {
            auto scalar = [&](const nlohmann::json& v) -> std::string {
                if (v.is_string()) return v.get<std::string>();
                if (v.is_number_integer()) return std::to_string(v.get<long long>());
                if (v.is_number()) {
                    std::ostringstream os;
                    os.precision(17);
                    os << v.get<double>();
                    return os.str();
                }
                if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
                bad("[" + name + "] " + key, "unsupported value type");
            };
            if (value.is_array()) {
                std::string joined;
                for (std::size_t i = 0; i < value.size(); ++i) joined += (i ? "," : "") + scalar(value[i]);
                sec[key] = joined;
            } else {
                sec[key] = scalar(value);
            }
        }
    }
    return build(sections);
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::config, "cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    const bool json = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
    return json ? parse_config_json(ss.str()) : parse_config_ini(ss.str());
}

}  // namespace gpe
