// Acceptance criteria 1-10. Runs the fixture suite twice with the same
// seed, maps fixture rows to criteria and prints one line per criterion.

#include "gpe/fixtures.hpp"

#include <cstdio>
#include <map>
#include <string>
#include <vector>

using namespace gpe;

namespace {

struct Criterion {
    int id;
    std::string title;
    std::vector<std::string> must_pass;
    std::vector<std::string> must_be_boundary_case;
    // Pass, or boundary case when the mu1 bracket straddles zero.
    std::vector<std::string> pass_unless_straddling;
};

}  // namespace

int main() {
    const SuiteOptions options{7, 0};
    const auto fixtures = paper_fixtures();
    const auto first = run_suite(fixtures, options);
    const auto second = run_suite(fixtures, options);

    std::map<std::string, const FixtureRow*> rows;
    for (const auto& r : first) rows[r.fixture] = &r;

    const std::vector<Criterion> criteria = {
        {1, "lambda1 = +inf yet MP fails for (x/2)u' - u",
         {"drift_half_power_n4", "drift_half_power_n22", "drift_half_mp_fails"}, {}, {}},
        {2, "viscous eigenvalues of -2xu' stay >= 0.9, mu1 <= 0.05, witness at x = 0",
         {"drift_2x_viscous", "drift_2x_mu1", "drift_2x_mp_witness"}, {}, {}},
        {3, "2 - sqrt(x) and 1 + sqrt(x) certificates",
         {"sqrt_drift_certificate", "x_diffusion_certificate"}, {}, {}},
        {4, "knife-edge mu1 in [-0.05, 0.05], recorded as boundary cases",
         {"knife_edge_drift_x", "knife_edge_drift_x2"}, {"consistency_drift_x", "consistency_drift_x2"}, {}},
        {5, "calibration against pi^2 and 2 pi^2", {"calibration_1d", "calibration_2d"}, {}, {}},
        {6, "MP verdict agrees with the sign of the mu1 bracket",
         {},
         {},
         {"consistency_laplacian", "consistency_laplacian_plus_one", "consistency_drift_half_minus_one",
          "consistency_drift_2x", "consistency_grushin", "consistency_minus_p1", "consistency_eikonal"}},
        {7, "shift identity within 2 tol", {"shift_identity"}, {}, {}},
        {8, "Fichera tables, log barriers and advisories",
         {"fichera_drift_2x", "fichera_drift_x", "fichera_laplacian"}, {}, {}},
        {9, "structural samplers, scheme monotonicity, MP cap invariance",
         {"structural_properties", "mp_cap_invariance"}, {}, {}},
    };

    bool all_ok = true;
    for (const auto& c : criteria) {
        bool ok = true;
        std::string why;
        auto check = [&](const std::string& name, auto accept) {
            const auto it = rows.find(name);
            if (it == rows.end()) {
                ok = false;
                why += " missing " + name + ";";
                return;
            }
            if (!accept(it->second->verdict)) {
                ok = false;
                why += " " + name + " -> " + to_string(it->second->verdict) + " (" + it->second->computed + ");";
            }
        };
        for (const auto& n : c.must_pass) check(n, [](Verdict v) { return v == Verdict::pass; });
        for (const auto& n : c.must_be_boundary_case) check(n, [](Verdict v) { return v == Verdict::boundary_case; });
        for (const auto& n : c.pass_unless_straddling)
            check(n, [](Verdict v) { return v == Verdict::pass || v == Verdict::boundary_case; });
        std::printf("%s criterion %d: %s%s\n", ok ? "PASS" : "FAIL", c.id, c.title.c_str(), why.c_str());
        all_ok = all_ok && ok;
    }

    const std::string a = suite_report(first, options).dump();
    const std::string b = suite_report(second, options).dump();
    const bool same = a == b;
    std::printf("%s criterion 10: two suite runs with seed %llu give byte-identical reports (%zu bytes)\n",
                same ? "PASS" : "FAIL", static_cast<unsigned long long>(options.seed), a.size());
    all_ok = all_ok && same;
    std::fflush(stdout);
    return all_ok ? 0 : 1;
}
