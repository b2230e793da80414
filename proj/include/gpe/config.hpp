#pragma once

#include "gpe/boundary.hpp"
#include "gpe/certify.hpp"
#include "gpe/domains.hpp"
#include "gpe/eigen.hpp"
#include "gpe/mp.hpp"
#include "gpe/operators.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gpe {

/// Everything a CLI run needs. Sections and keys are documented in the
/// README; unknown sections or keys are rejected with Error{config}.
struct RunConfig {
    std::string operator_label;
    std::optional<std::string> zoo_name;
    OperatorSpec op;
    Domain domain;
    double h = 0.02;

    double lambda_cap = 50.0;
    double eigen_tol = 1e-3;
    std::vector<double> eps_list{0.2, 0.1, 0.05};
    double viscous_eps = 0.05;
    BlowupOptions blowup;

    double mp_cap = 1.0;
    double mp_tol = 1e-6;
    BoundaryClause clause = BoundaryClause::relaxed_min;
    MPOptions mp;

    std::optional<Certificate> certificate;
    std::optional<double> cert_lambda;  // absent: report the best lambda only
    std::size_t cert_samples = 10000;
    SampleOptions sampling;

    std::size_t fichera_samples = 64;
    FicheraOptions fichera;
    std::vector<Vec> barrier_points;  // empty: every satisfied Fichera sample
    std::optional<double> barrier_delta;
    double barrier_band = 0.1;

    std::size_t validate_samples = 10000;
    std::size_t monotonicity_trials = 1000;

    std::string out_dir = ".";
    std::string format = "json";  // json | csv | both
    std::uint64_t seed = 1;
    unsigned threads = 0;  // paper suite workers; 0 = hardware concurrency
};

RunConfig parse_config_ini(std::string_view text);
RunConfig parse_config_json(std::string_view text);

/// Reads a file; `.json` selects the JSON encoding, anything else INI.
RunConfig load_config(const std::string& path);

/// Config with every default (used when no file is given).
RunConfig default_config();

}  // namespace gpe
