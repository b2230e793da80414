#pragma once

#include "gpe/domains.hpp"
#include "gpe/operators.hpp"
#include "gpe/scheme.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gpe {

enum class EigenMethod { blowup, inflated_blowup, viscous, extrapolated };

const char* to_string(EigenMethod method);

/// Solver used for one trial problem S(u) - lambda u^alpha = 1.
///   newton:    Newton/Howard iteration with a sparse LU solve per step.
///   perron:    monotone Gauss-Seidel from u = 0 with pointwise root solves.
///   automatic: newton, falling back to perron if newton stalls; perron
///              directly when alpha != 1.
enum class TrialSolver { automatic, newton, perron };

const char* to_string(TrialSolver solver);

struct BlowupOptions {
    double divergence_threshold = 1e8;
    std::size_t max_sweeps = 100000;  // perron sweeps per trial
    std::size_t max_newton = 100;
    TrialSolver solver = TrialSolver::automatic;
};

struct TrialResult {
    bool feasible = false;
    bool diverged = false;
    std::size_t iterations = 0;
    double max_value = 0.0;
    TrialSolver used = TrialSolver::newton;
    Field solution;
};

/// One Newton/Howard solve of S(u) - lambda u^alpha = 1 from u = 0.
/// Infeasible when the solve leaves the positive cone, breaks down,
/// exceeds the divergence threshold or fails to converge.
TrialResult newton_trial(const DiscreteScheme& scheme, double lambda, const BlowupOptions& options);

/// Discrete Perron iteration for the same problem: Gauss-Seidel sweeps
/// (alternating order) taking at each node the smallest root r >= 0 of
/// S_i(r) - lambda r^alpha = 1. Iterates are non-decreasing; a decrease
/// throws Error{nonmonotone}. Diverged when no root exists below the
/// threshold, or when the sweep increments settle at a ratio whose
/// geometric extrapolation exceeds it.
TrialResult perron_trial(const DiscreteScheme& scheme, double lambda, const BlowupOptions& options);

TrialResult run_trial(const DiscreteScheme& scheme, double lambda, const BlowupOptions& options);

struct PerEpsValue {
    double eps = 0.0;
    double value = 0.0;
    double lambda_lo = 0.0;
    double lambda_hi = 0.0;
    bool capped = false;
};

struct EigenDiagnostics {
    std::size_t iterations = 0;  // total solver iterations over all trials
    std::size_t trials = 0;
    double h = 0.0;
    double eps = 0.0;       // inflation or viscous eps; 0 for plain blowup
    bool diverged = false;  // the trial at lambda_hi diverged
    bool capped = false;    // lambda_cap was feasible
    bool floored = false;   // -lambda_cap was infeasible
    bool spot_check_ok = true;
    bool monotone_in_eps = true;
    std::vector<PerEpsValue> per_eps;
    std::optional<double> dense_oracle;
    std::string note;
};

struct EigenEstimate {
    double value = 0.0;
    double lambda_lo = 0.0;
    double lambda_hi = 0.0;
    EigenMethod method = EigenMethod::blowup;
    EigenDiagnostics diagnostics;

    double width() const { return lambda_hi - lambda_lo; }
};

/// Supremum of the lambdas in [-cap, cap] for which the trial problem has
/// a bounded positive solution, bracketed to width tol.
EigenEstimate blowup_eigenvalue(const DiscreteScheme& scheme, double lambda_cap, double tol,
                                const BlowupOptions& options = {});

/// Blowup values on inflate(domain, eps) for each eps on one shared
/// lattice, extrapolated to eps = 0 by the polynomial through the last
/// three (or two) points. The bracket propagates the per-eps brackets
/// through the interpolation weights and is widened by the difference
/// to the next lower-order extrapolant.
EigenEstimate mu1_estimate(const OperatorSpec& spec, const Domain& domain, double h,
                           const std::vector<double>& eps_list, double lambda_cap, double tol,
                           const BlowupOptions& options = {});

/// Blowup value of F - eps Laplacian on the domain itself; linear specs
/// also get a dense eigenvalue of the assembled matrix (n <= 2000).
EigenEstimate viscous_eigenvalue(const OperatorSpec& spec, const Domain& domain, double h, double eps,
                                 double lambda_cap, double tol, const BlowupOptions& options = {});

/// Minimum of the viscous values over the eps list.
EigenEstimate lambda_star_estimate(const OperatorSpec& spec, const Domain& domain, double h,
                                   const std::vector<double>& eps_list, double lambda_cap, double tol,
                                   const BlowupOptions& options = {});

/// Eigenvalue with smallest real part of the matrix of a linear scheme
/// restricted to active nodes.
double dense_principal_eigenvalue(const DiscreteScheme& scheme);

}  // namespace gpe
