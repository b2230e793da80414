#include "gpe/report.hpp"

#include "gpe/error.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

namespace gpe {

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    std::string s(buf);
    if (s == "-0") s = "0";
    return s;
}

ordered_json num(double x) {
    if (!std::isfinite(x)) return format_number(x);
    const double r = std::stod(format_number(x));
    return r;
}

double num_from_json(const ordered_json& j) {
    if (j.is_number()) return j.get<double>();
    const std::string s = j.get<std::string>();
    if (s == "inf") return HUGE_VAL;
    if (s == "-inf") return -HUGE_VAL;
    if (s == "nan") return std::nan("");
    return std::stod(s);
}

ordered_json to_json(const Vec& v) {
    ordered_json a = ordered_json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(num(v[i]));
    return a;
}

namespace {

Vec vec_from_json(const ordered_json& j) {
    Vec v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = num_from_json(j[i]);
    return v;
}

EigenMethod method_from_string(const std::string& s) {
    for (EigenMethod m :
         {EigenMethod::blowup, EigenMethod::inflated_blowup, EigenMethod::viscous, EigenMethod::extrapolated})
        if (s == to_string(m)) return m;
    throw Error(Errc::invalid_argument, "unknown eigen method '" + s + "'");
}

CertClass class_from_string(const std::string& s) {
    for (CertClass c : {CertClass::bounds_lambda1, CertClass::bounds_lambda_bar1, CertClass::bounds_mu1})
        if (s == to_string(c)) return c;
    throw Error(Errc::invalid_argument, "unknown certificate class '" + s + "'");
}

std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

ordered_json to_json(const EigenEstimate& e) {
    const auto& d = e.diagnostics;
    ordered_json j;
    j["type"] = "eigen";
    j["method"] = to_string(e.method);
    j["value"] = num(e.value);
    j["lambda_lo"] = num(e.lambda_lo);
    j["lambda_hi"] = num(e.lambda_hi);
    ordered_json diag;
    diag["iterations"] = d.iterations;
    diag["trials"] = d.trials;
    diag["h"] = num(d.h);
    diag["eps"] = num(d.eps);
    diag["diverged"] = d.diverged;
    diag["capped"] = d.capped;
    diag["floored"] = d.floored;
    diag["spot_check_ok"] = d.spot_check_ok;
    diag["monotone_in_eps"] = d.monotone_in_eps;
    ordered_json per = ordered_json::array();
    for (const auto& p : d.per_eps) {
        ordered_json q;
        q["eps"] = num(p.eps);
        q["value"] = num(p.value);
        q["lambda_lo"] = num(p.lambda_lo);
        q["lambda_hi"] = num(p.lambda_hi);
        q["capped"] = p.capped;
        per.push_back(q);
    }
    diag["per_eps"] = per;
    diag["dense_oracle"] = d.dense_oracle ? num(*d.dense_oracle) : ordered_json(nullptr);
    diag["note"] = d.note;
    j["diagnostics"] = diag;
    return j;
}

EigenEstimate eigen_from_json(const ordered_json& j) {
    EigenEstimate e;
    e.method = method_from_string(j.at("method").get<std::string>());
    e.value = num_from_json(j.at("value"));
    e.lambda_lo = num_from_json(j.at("lambda_lo"));
    e.lambda_hi = num_from_json(j.at("lambda_hi"));
    const auto& diag = j.at("diagnostics");
    auto& d = e.diagnostics;
    d.iterations = diag.at("iterations").get<std::size_t>();
    d.trials = diag.at("trials").get<std::size_t>();
    d.h = num_from_json(diag.at("h"));
    d.eps = num_from_json(diag.at("eps"));
    d.diverged = diag.at("diverged").get<bool>();
    d.capped = diag.at("capped").get<bool>();
    d.floored = diag.at("floored").get<bool>();
    d.spot_check_ok = diag.at("spot_check_ok").get<bool>();
    d.monotone_in_eps = diag.at("monotone_in_eps").get<bool>();
    for (const auto& q : diag.at("per_eps"))
        d.per_eps.push_back({num_from_json(q.at("eps")), num_from_json(q.at("value")),
                             num_from_json(q.at("lambda_lo")), num_from_json(q.at("lambda_hi")),
                             q.at("capped").get<bool>()});
    if (!diag.at("dense_oracle").is_null()) d.dense_oracle = num_from_json(diag.at("dense_oracle"));
    d.note = diag.at("note").get<std::string>();
    return e;
}

ordered_json to_json(const MPVerdict& v) {
    ordered_json j;
    j["type"] = "mp";
    j["holds"] = v.holds;
    j["max_positive_part"] = num(v.max_positive_part);
    j["iterations"] = v.iterations;
    if (v.witness) {
        const Field& w = *v.witness;
        std::size_t argmax = 0;
        for (std::size_t n = 0; n < w.values.size(); ++n)
            if (w.values[n] > w.values[argmax]) argmax = n;
        ordered_json wj;
        wj["nodes"] = w.values.size();
        wj["max"] = num(w.max());
        wj["argmax"] = to_json(w.grid->point(argmax));
        std::size_t positive = 0;
        for (double x : w.values)
            if (x > 0.0) ++positive;
        wj["positive_nodes"] = positive;
        j["witness"] = wj;
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

ordered_json to_json(const WitnessVerdict& v) {
    ordered_json j;
    j["type"] = "witness";
    j["ok"] = v.ok;
    j["subsolution"] = v.subsolution.ok;
    j["max_value"] = num(v.max_value);
    return j;
}

ordered_json to_json(const CertReport& r) {
    ordered_json j;
    j["type"] = "certificate";
    j["lambda"] = num(r.lambda);
    j["margin"] = num(r.margin);
    j["ok"] = r.ok;
    j["classification"] = to_string(r.classification);
    j["sample_count"] = r.sample_count;
    j["shifted_samples"] = r.shifted_samples;
    j["positivity"] = num(r.positivity);
    j["infimum"] = num(r.infimum);
    j["worst_point"] = to_json(r.worst_point);
    j["note"] = r.note;
    return j;
}

CertReport cert_from_json(const ordered_json& j) {
    CertReport r;
    r.lambda = num_from_json(j.at("lambda"));
    r.margin = num_from_json(j.at("margin"));
    r.ok = j.at("ok").get<bool>();
    r.classification = class_from_string(j.at("classification").get<std::string>());
    r.sample_count = j.at("sample_count").get<std::size_t>();
    r.shifted_samples = j.at("shifted_samples").get<std::size_t>();
    r.positivity = num_from_json(j.at("positivity"));
    r.infimum = num_from_json(j.at("infimum"));
    r.worst_point = vec_from_json(j.at("worst_point"));
    r.note = j.at("note").get<std::string>();
    return r;
}

ordered_json to_json(const FicheraReport& r) {
    ordered_json j;
    j["type"] = "fichera";
    ordered_json comps = ordered_json::array();
    for (const auto& c : r.components) {
        ordered_json cj;
        cj["id"] = c.id;
        cj["name"] = c.name;
        cj["satisfied"] = c.satisfied;
        cj["violated"] = c.violated;
        cj["verdict"] = to_string(c.verdict);
        comps.push_back(cj);
    }
    j["components"] = comps;
    ordered_json samples = ordered_json::array();
    for (const auto& s : r.samples) {
        ordered_json sj;
        sj["xi"] = to_json(s.point.xi);
        sj["component"] = s.point.component;
        sj["dAd"] = num(s.dAd);
        sj["drift"] = num(s.drift);
        sj["status"] = to_string(s.status);
        samples.push_back(sj);
    }
    j["samples"] = samples;
    j["note"] = r.note;
    return j;
}

FicheraReport fichera_from_json(const ordered_json& j) {
    FicheraReport r;
    for (const auto& cj : j.at("components")) {
        FicheraComponent c;
        c.id = cj.at("id").get<int>();
        c.name = cj.at("name").get<std::string>();
        c.satisfied = cj.at("satisfied").get<std::size_t>();
        c.violated = cj.at("violated").get<std::size_t>();
        const std::string v = cj.at("verdict").get<std::string>();
        c.verdict = v == to_string(ComponentVerdict::all_satisfied)  ? ComponentVerdict::all_satisfied
                    : v == to_string(ComponentVerdict::all_violated) ? ComponentVerdict::all_violated
                                                                      : ComponentVerdict::mixed;
        r.components.push_back(c);
    }
    for (const auto& sj : j.at("samples")) {
        FicheraSample s;
        s.point.xi = vec_from_json(sj.at("xi"));
        s.point.component = sj.at("component").get<int>();
        s.dAd = num_from_json(sj.at("dAd"));
        s.drift = num_from_json(sj.at("drift"));
        s.status = sj.at("status").get<std::string>() == to_string(FicheraStatus::satisfied) ? FicheraStatus::satisfied
                                                                                            : FicheraStatus::violated;
        r.samples.push_back(s);
    }
    r.note = j.at("note").get<std::string>();
    return r;
}

ordered_json to_json(const BarrierReport& r) {
    ordered_json j;
    j["type"] = "barrier";
    j["xi"] = to_json(r.xi);
    j["delta"] = num(r.delta);
    j["band_width"] = num(r.band_width);
    j["raw_min"] = num(r.raw_min);
    j["scale"] = num(r.scale);
    j["min_residual"] = num(r.min_residual);
    j["w_at_xi"] = num(r.w_at_xi);
    j["min_w"] = num(r.min_w);
    j["samples"] = r.samples;
    j["verified"] = r.verified;
    return j;
}

BarrierReport barrier_from_json(const ordered_json& j) {
    BarrierReport r;
    r.xi = vec_from_json(j.at("xi"));
    r.delta = num_from_json(j.at("delta"));
    r.band_width = num_from_json(j.at("band_width"));
    r.raw_min = num_from_json(j.at("raw_min"));
    r.scale = num_from_json(j.at("scale"));
    r.min_residual = num_from_json(j.at("min_residual"));
    r.w_at_xi = num_from_json(j.at("w_at_xi"));
    r.min_w = num_from_json(j.at("min_w"));
    r.samples = j.at("samples").get<std::size_t>();
    r.verified = j.at("verified").get<bool>();
    return r;
}

std::string Table::to_csv() const {
    std::string out;
    auto line = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += csv_cell(cells[i]);
        }
        out += '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return out;
}

Table field_table(const std::string& name, const Field& f) {
    Table t;
    t.name = name;
    const int dim = f.grid->dim();
    const char* axes[] = {"x", "y", "z"};
    for (int k = 0; k < dim; ++k) t.header.push_back(k < 3 ? axes[k] : "x" + std::to_string(k));
    t.header.push_back("value");
    for (std::size_t n = 0; n < f.values.size(); ++n) {
        const Vec p = f.grid->point(n);
        std::vector<std::string> row;
        for (int k = 0; k < dim; ++k) row.push_back(format_number(p[k]));
        row.push_back(format_number(f.values[n]));
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table fichera_table(const FicheraReport& r) {
    Table t{"fichera", {"component", "xi", "dAd", "drift", "status"}, {}};
    for (const auto& s : r.samples) {
        std::string xi;
        for (Eigen::Index k = 0; k < s.point.xi.size(); ++k) xi += (k ? " " : "") + format_number(s.point.xi[k]);
        t.rows.push_back({std::to_string(s.point.component), xi, format_number(s.dAd), format_number(s.drift),
                          to_string(s.status)});
    }
    return t;
}

Table eigen_table(const std::vector<EigenEstimate>& estimates, const std::string& domain) {
    Table t{"eigen", {"method", "domain", "h", "eps", "lambda_lo", "lambda_hi", "iterations"}, {}};
    for (const auto& e : estimates) {
        const auto& d = e.diagnostics;
        if (d.per_eps.empty()) {
            t.rows.push_back({to_string(e.method), domain, format_number(d.h), format_number(d.eps),
                              format_number(e.lambda_lo), format_number(e.lambda_hi), std::to_string(d.iterations)});
            continue;
        }
        for (const auto& p : d.per_eps)
            t.rows.push_back({"per-eps", domain, format_number(d.h), format_number(p.eps), format_number(p.lambda_lo),
                              format_number(p.lambda_hi), ""});
        t.rows.push_back({to_string(e.method), domain, format_number(d.h), "0", format_number(e.lambda_lo),
                          format_number(e.lambda_hi), std::to_string(d.iterations)});
    }
    return t;
}

ordered_json Report::to_json() const {
    ordered_json j;
    j["command"] = command;
    j["meta"] = meta;
    j["records"] = records;
    return j;
}

std::string Report::dump() const { return to_json().dump(2) + "\n"; }

std::vector<std::string> emit(const Report& report, const std::string& dir, const std::string& format) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(Errc::io, "cannot create output directory '" + dir + "': " + ec.message());
    std::vector<std::string> written;
    auto write = [&](const std::string& name, const std::string& body) {
        const std::string path = (fs::path(dir) / name).string();
        std::ofstream out(path, std::ios::binary);
        if (!out) throw Error(Errc::io, "cannot write '" + path + "'");
        out << body;
        if (!out) throw Error(Errc::io, "write failed for '" + path + "'");
        written.push_back(path);
    };
    if (format == "json" || format == "both") write("report.json", report.dump());
    if (format == "csv" || format == "both")
        for (const auto& t : report.tables) write(t.name + ".csv", t.to_csv());
    return written;
}

}  // namespace gpe
