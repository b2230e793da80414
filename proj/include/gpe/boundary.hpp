#pragma once

#include "gpe/domains.hpp"
#include "gpe/operators.hpp"

#include <string>
#include <vector>

namespace gpe {

enum class FicheraStatus { satisfied, violated };
enum class ComponentVerdict { all_satisfied, all_violated, mixed };
enum class Advisory { mu1_equals_lambda_bar, inconclusive };

const char* to_string(FicheraStatus s);
const char* to_string(ComponentVerdict v);
const char* to_string(Advisory a);

/// Closed-form distance data of one smooth boundary piece near a point.
struct BoundaryPoint {
    Vec xi;
    int component = 0;
    Vec Dd;  // inward unit normal
    Mat D2d;
};

struct FicheraSample {
    BoundaryPoint point;
    double dAd = 0.0;
    double drift = 0.0;
    FicheraStatus status = FicheraStatus::satisfied;
};

struct FicheraComponent {
    int id = 0;
    std::string name;
    std::size_t satisfied = 0;
    std::size_t violated = 0;
    ComponentVerdict verdict = ComponentVerdict::all_satisfied;
};

struct FicheraReport {
    std::vector<FicheraSample> samples;
    std::vector<FicheraComponent> components;
    std::string note;
};

struct FicheraOptions {
    double tol_pos = 1e-9;
    /// Rectangle samples stay this far from corners (non-smooth points).
    double corner_exclusion = 0.02;
};

/// Boundary points of an uninflated domain: the two endpoints of an
/// interval, n points per rectangle edge (each edge its own component,
/// corners excluded) or n points on a circle.
std::vector<BoundaryPoint> boundary_points(const Domain& domain, std::size_t n, double corner_exclusion);

/// Local distance data for the boundary piece nearest to xi.
BoundaryPoint locate_boundary_point(const Domain& domain, const Vec& xi);

FicheraStatus fichera_status(double dAd, double drift, double tol_pos);

FicheraSample fichera_at(const OperatorSpec& spec, const BoundaryPoint& point, double tol_pos);

/// Throws Error{unsupported} for non-linear specs or inflated domains and
/// Error{invalid_argument} if Dd.A.Dd < -tol_pos (A not semidefinite).
FicheraReport fichera_classify(const OperatorSpec& spec, const Domain& domain, std::size_t n_samples,
                               const FicheraOptions& options = {});

struct BarrierReport {
    Vec xi;
    double delta = 0.0;
    double band_width = 0.0;
    double raw_min = 0.0;        // min F[w] over the band before rescaling
    double scale = 1.0;          // w is replaced by scale * w
    double min_residual = 0.0;   // min F[scale * w]
    double w_at_xi = 0.0;
    double min_w = 0.0;
    std::size_t samples = 0;
    bool verified = false;
};

/// w = log(delta + d) - log(delta) near xi, with d the distance to the
/// boundary piece through xi; verified iff min F[w] > 0 on the band
/// samples, after which w is rescaled so that F[w] >= 1. Throws
/// Error{invalid_argument} if the Fichera condition fails at xi.
BarrierReport verify_log_barrier(const OperatorSpec& spec, const Domain& domain, const Vec& xi, double delta,
                                 double band, std::size_t n_samples, const FicheraOptions& options = {});

/// Tries delta = 1e-1, ..., 1e-6 and returns the first verified report,
/// or the one with the largest raw minimum.
BarrierReport find_log_barrier(const OperatorSpec& spec, const Domain& domain, const Vec& xi, double band,
                               std::size_t n_samples, const FicheraOptions& options = {});

Advisory equivalence_advisory(const FicheraReport& report);

}  // namespace gpe
