#pragma once

#include "gpe/domains.hpp"
#include "gpe/operators.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace gpe {

/// Where a recorded value comes from: the literature, an elementary hand
/// computation, or a numerical computation with an independent oracle.
enum class Provenance { literature, elementary, computed };
enum class Relation { eq, approx, ge, le, gt, lt };

const char* to_string(Provenance p);
const char* to_string(Relation r);

struct KnownFact {
    std::string quantity;  // mu1, lambda1, lambda-bar1, lambda-star, mp
    Relation relation = Relation::eq;
    double value = 0.0;    // for mp: 1 = holds, 0 = fails
    Provenance provenance = Provenance::elementary;
    bool asserted = true;  // false: recorded only, never checked as a claim
    std::string citation;
};

/// Hand-checked flags for the structural hypotheses. Only (H1) and (H2)
/// are sampled numerically; the rest quantify over coupled matrix pairs
/// and moduli of continuity.
struct Hypotheses {
    bool h1 = true, h2 = true, h3 = true, h4 = true, h5 = true, h6 = true;
    std::string note;
};

struct ZooEntry {
    std::string name;
    std::string formula;
    OperatorSpec spec;
    Domain domain;
    double h = 0.02;
    Hypotheses hypotheses;
    std::vector<KnownFact> facts;
};

const std::vector<ZooEntry>& zoo();

/// Throws Error{config} for unknown names.
const ZooEntry& zoo_entry(std::string_view name);

/// +Laplacian; breaks degenerate ellipticity (not a zoo member).
OperatorSpec anti_laplacian(int dim);

/// One record per operator: name, dim, alpha, kind, coefficients,
/// hypothesis flags and known facts with provenance.
std::string catalog_text();

/// Coefficient expressions of a spec, e.g. "A = [1]; b = [2*x]; c = 0".
std::string describe_coefficients(const OperatorSpec& spec);

}  // namespace gpe
