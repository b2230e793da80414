#include "gpe/eigen.hpp"

#include "gpe/error.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace gpe {

const char* to_string(EigenMethod method) {
    switch (method) {
        case EigenMethod::blowup: return "blowup";
        case EigenMethod::inflated_blowup: return "inflated-blowup";
        case EigenMethod::viscous: return "viscous";
        case EigenMethod::extrapolated: return "extrapolated";
    }
    return "?";
}

const char* to_string(TrialSolver solver) {
    switch (solver) {
        case TrialSolver::automatic: return "automatic";
        case TrialSolver::newton: return "newton";
        case TrialSolver::perron: return "perron";
    }
    return "?";
}

namespace {

double power_derivative(double r, double alpha) {
    if (alpha == 1.0) return 1.0;
    return alpha * std::pow(std::abs(r), alpha - 1.0);
}

}  // namespace

TrialResult newton_trial(const DiscreteScheme& scheme, double lambda, const BlowupOptions& options) {
    const Grid& g = scheme.grid();
    const auto& active = g.active_nodes();
    const auto n = static_cast<Eigen::Index>(active.size());
    const double alpha = scheme.spec().alpha;
    const int slots = scheme.stencil_size();

    TrialResult out;
    out.used = TrialSolver::newton;
    out.solution = Field(scheme.grid_ptr());
    auto& u = out.solution.values;

    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(active.size() * static_cast<std::size_t>(slots));
    Eigen::VectorXd rhs(n);
    Eigen::SparseMatrix<double> J(n, n);
    Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;

    for (std::size_t it = 0; it < options.max_newton; ++it) {
        out.iterations = it + 1;
        triplets.clear();
        bool converged = true;
        for (Eigen::Index k = 0; k < n; ++k) {
            const std::size_t node = active[static_cast<std::size_t>(k)];
            const NodeLinearization lin = scheme.linearize(node, u[node], u);
            const double G = lin.value - lambda * signed_pow(u[node], alpha) - 1.0;
            double row_scale = 1.0;
            for (int s = 0; s < slots; ++s) {
                const std::size_t m = s == 0 ? node : scheme.neighbor(node, s);
                row_scale += std::abs(lin.grad[static_cast<std::size_t>(s)] * u[m]);
                if (s > 0 && !g.active(m)) continue;
                const int col = s == 0 ? static_cast<int>(k) : scheme.active_index(m);
                double entry = lin.grad[static_cast<std::size_t>(s)];
                if (s == 0) entry -= lambda * power_derivative(u[node], alpha);
                if (entry != 0.0) triplets.emplace_back(static_cast<int>(k), col, entry);
            }
            if (triplets.empty() || triplets.back().row() != static_cast<int>(k)) {
                // Zero row: the linearization is singular at this lambda.
                out.diverged = true;
                return out;
            }
            if (std::abs(G) > 1e-10 * row_scale) converged = false;
            rhs[k] = -G;
        }
        if (converged && it > 0) break;
        J.setFromTriplets(triplets.begin(), triplets.end());
        lu.analyzePattern(J);
        lu.factorize(J);
        if (lu.info() != Eigen::Success) {
            out.diverged = true;
            return out;
        }
        const Eigen::VectorXd delta = lu.solve(rhs);
        if (lu.info() != Eigen::Success || !delta.allFinite()) {
            out.diverged = true;
            return out;
        }
        double max_abs = 0.0, step = 0.0, min_value = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) {
            double& v = u[active[static_cast<std::size_t>(k)]];
            v += delta[k];
            max_abs = std::max(max_abs, std::abs(v));
            min_value = std::min(min_value, v);
            step = std::max(step, std::abs(delta[k]));
        }
        out.max_value = max_abs;
        if (max_abs > options.divergence_threshold) {
            out.diverged = true;
            return out;
        }
        // For operators concave in u the iterates increase from the first
        // one when a positive solution exists, so leaving the positive
        // cone settles the trial.
        if (min_value < -1e-12 * (1.0 + max_abs)) return out;
        if (it + 1 == options.max_newton) return out;  // not converged
        if (step <= 1e-14 * (1.0 + max_abs) && it > 0) {
            converged = true;
            break;
        }
    }
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (std::size_t node : active) {
        lo = std::min(lo, u[node]);
        hi = std::max(hi, u[node]);
    }
    out.max_value = hi;
    out.feasible = lo >= -1e-12 * (1.0 + hi) && hi <= options.divergence_threshold;
    return out;
}

TrialResult perron_trial(const DiscreteScheme& scheme, double lambda, const BlowupOptions& options) {
    using boost::math::tools::toms748_solve;
    const Grid& g = scheme.grid();
    const auto& active = g.active_nodes();
    const double alpha = scheme.spec().alpha;
    const double threshold = options.divergence_threshold;

    TrialResult out;
    out.used = TrialSolver::perron;
    out.solution = Field(scheme.grid_ptr());
    auto& u = out.solution.values;

    double last_change = 0.0, last_ratio = -1.0;
    int settled = 0;
    for (std::size_t sweep = 0; sweep < options.max_sweeps; ++sweep) {
        out.iterations = sweep + 1;
        double change = 0.0, top = 0.0;
        for (std::size_t t = 0; t < active.size(); ++t) {
            const std::size_t node = sweep % 2 == 0 ? active[t] : active[active.size() - 1 - t];
            const double old = u[node];
            auto G = [&](double r) { return scheme.node_value(node, r, u) - lambda * signed_pow(r, alpha) - 1.0; };
            double lo = old;
            double r = old;
            if (G(lo) < 0.0) {
                double step = 1e-3 * std::max(1.0, old);
                double hi = old + step;
                double g_hi = G(hi);
                while (g_hi < 0.0) {
                    lo = hi;
                    step *= 2.0;
                    hi = old + step;
                    if (hi > threshold) {
                        out.diverged = true;
                        out.max_value = hi;
                        return out;
                    }
                    g_hi = G(hi);
                }
                std::uintmax_t max_iter = 200;
                const auto root = toms748_solve(G, lo, hi, G(lo), g_hi,
                                                boost::math::tools::eps_tolerance<double>(50), max_iter);
                r = root.first;  // G(r) <= 0 side
            }
            if (r < old - 1e-12 * (1.0 + std::abs(old))) {
                std::ostringstream os;
                os << "perron iterate decreased at node " << node << " (" << old << " -> " << r << ")";
                throw Error(Errc::nonmonotone, os.str());
            }
            r = std::max(r, old);
            u[node] = r;
            change = std::max(change, r - old);
            top = std::max(top, r);
        }
        out.max_value = top;
        if (top > threshold) {
            out.diverged = true;
            return out;
        }
        if (change <= 1e-12 * (1.0 + top)) break;
        // Once the sweep increments shrink or grow by a settled ratio rho,
        // the limit is top + change * rho / (1 - rho) (or unbounded).
        const double ratio = last_change > 0.0 ? change / last_change : 0.0;
        settled = std::abs(ratio - last_ratio) <= 1e-8 ? settled + 1 : 0;
        last_change = change;
        last_ratio = ratio;
        if (settled >= 20) {
            if (ratio >= 1.0 || top + change * ratio / (1.0 - ratio) > threshold) {
                out.diverged = true;
                return out;
            }
            break;
        }
    }
    out.feasible = out.max_value <= threshold;
    return out;
}

TrialResult run_trial(const DiscreteScheme& scheme, double lambda, const BlowupOptions& options) {
    switch (options.solver) {
        case TrialSolver::newton: return newton_trial(scheme, lambda, options);
        case TrialSolver::perron: return perron_trial(scheme, lambda, options);
        case TrialSolver::automatic: break;
    }
    if (scheme.spec().alpha != 1.0) return perron_trial(scheme, lambda, options);
    TrialResult res = newton_trial(scheme, lambda, options);
    if (!res.feasible && !res.diverged && res.iterations >= options.max_newton)
        return perron_trial(scheme, lambda, options);
    return res;
}

EigenEstimate blowup_eigenvalue(const DiscreteScheme& scheme, double lambda_cap, double tol,
                                const BlowupOptions& options) {
    if (!(lambda_cap > 0.0)) throw Error(Errc::invalid_argument, "lambda_cap must be > 0");
    if (!(tol > 0.0)) throw Error(Errc::invalid_argument, "tol must be > 0");

    EigenEstimate est;
    est.method = EigenMethod::blowup;
    auto& diag = est.diagnostics;
    diag.h = scheme.grid().h();
    diag.eps = scheme.viscous_eps();

    auto trial = [&](double lambda) {
        TrialResult res = run_trial(scheme, lambda, options);
        diag.iterations += res.iterations;
        ++diag.trials;
        return res;
    };

    if (trial(lambda_cap).feasible) {
        est.value = est.lambda_lo = est.lambda_hi = lambda_cap;
        diag.capped = true;
        return est;
    }
    if (!trial(-lambda_cap).feasible) {
        est.value = est.lambda_lo = est.lambda_hi = -lambda_cap;
        diag.floored = true;
        diag.diverged = true;
        return est;
    }
    double lo = -lambda_cap, hi = lambda_cap;
    bool hi_diverged = true;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const TrialResult res = trial(mid);
        if (res.feasible) {
            lo = mid;
        } else {
            hi = mid;
            hi_diverged = res.diverged;
        }
    }
    est.lambda_lo = lo;
    est.lambda_hi = hi;
    est.value = 0.5 * (lo + hi);
    diag.diverged = hi_diverged;
    if (lo - 0.5 >= -lambda_cap) diag.spot_check_ok = trial(lo - 0.5).feasible;
    return est;
}

namespace {

void check_eps_list(const std::vector<double>& eps_list, double h, double min_ratio, const char* what) {
    if (eps_list.empty()) throw Error(Errc::invalid_argument, std::string(what) + ": eps list is empty");
    for (std::size_t k = 0; k < eps_list.size(); ++k) {
        if (!(eps_list[k] > 0.0)) throw Error(Errc::invalid_argument, std::string(what) + ": eps must be > 0");
        if (k > 0 && !(eps_list[k] < eps_list[k - 1]))
            throw Error(Errc::invalid_argument, std::string(what) + ": eps list must be strictly decreasing");
    }
    if (eps_list.back() < min_ratio * h * (1.0 - 1e-12)) {
        std::ostringstream os;
        os << what << ": smallest eps " << eps_list.back() << " is below " << min_ratio << " h = " << min_ratio * h;
        throw Error(Errc::grid_too_coarse, os.str());
    }
}

// Lagrange weights at 0 for the nodes t.
std::vector<double> weights_at_zero(const std::vector<double>& t) {
    std::vector<double> w(t.size(), 1.0);
    for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t j = 0; j < t.size(); ++j)
            if (i != j) w[i] *= (0.0 - t[j]) / (t[i] - t[j]);
    return w;
}

}  // namespace

EigenEstimate mu1_estimate(const OperatorSpec& spec, const Domain& domain, double h,
                           const std::vector<double>& eps_list, double lambda_cap, double tol,
                           const BlowupOptions& options) {
    check_eps_list(eps_list, h, 2.0, "mu1");
    EigenEstimate est;
    est.method = EigenMethod::inflated_blowup;
    auto& diag = est.diagnostics;
    diag.h = h;
    diag.eps = eps_list.back();

    bool any_capped = false;
    for (double eps : eps_list) {
        auto grid = build_grid(inflate(domain, eps), h);
        DiscreteScheme scheme(spec, grid);
        const EigenEstimate e = blowup_eigenvalue(scheme, lambda_cap, tol, options);
        diag.iterations += e.diagnostics.iterations;
        diag.trials += e.diagnostics.trials;
        diag.spot_check_ok = diag.spot_check_ok && e.diagnostics.spot_check_ok;
        diag.per_eps.push_back({eps, e.value, e.lambda_lo, e.lambda_hi, e.diagnostics.capped});
        any_capped = any_capped || e.diagnostics.capped;
    }
    const auto& pe = diag.per_eps;
    for (std::size_t k = 1; k < pe.size(); ++k) {
        // Smaller domains have larger eigenvalues.
        if (pe[k].lambda_hi < pe[k - 1].lambda_lo) diag.monotone_in_eps = false;
    }
    if (any_capped) {
        est.value = est.lambda_lo = est.lambda_hi = lambda_cap;
        diag.capped = true;
        diag.note = "capped at some eps";
        return est;
    }

    auto extrapolate = [&](std::size_t m, double& lo, double& hi) {
        std::vector<double> t;
        for (std::size_t k = pe.size() - m; k < pe.size(); ++k) t.push_back(pe[k].eps);
        const auto w = weights_at_zero(t);
        double v = 0.0;
        lo = hi = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const auto& p = pe[pe.size() - m + i];
            v += w[i] * p.value;
            lo += std::min(w[i] * p.lambda_lo, w[i] * p.lambda_hi);
            hi += std::max(w[i] * p.lambda_lo, w[i] * p.lambda_hi);
        }
        return v;
    };

    const std::size_t m = std::min<std::size_t>(3, pe.size());
    double lo = 0.0, hi = 0.0;
    est.value = extrapolate(m, lo, hi);
    if (m > 1) {
        double lo2 = 0.0, hi2 = 0.0;
        const double lower_order = extrapolate(m - 1, lo2, hi2);
        const double spread = std::abs(est.value - lower_order);
        lo -= spread;
        hi += spread;
    }
    est.lambda_lo = std::min(lo, est.value);
    est.lambda_hi = std::max(hi, est.value);
    return est;
}

double dense_principal_eigenvalue(const DiscreteScheme& scheme) {
    if (scheme.spec().kind != OperatorKind::linear)
        throw Error(Errc::unsupported, "dense oracle needs a linear operator");
    const Grid& g = scheme.grid();
    const auto& active = g.active_nodes();
    const auto n = static_cast<Eigen::Index>(active.size());
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
    std::vector<double> zero(g.size(), 0.0);
    for (Eigen::Index k = 0; k < n; ++k) {
        const std::size_t node = active[static_cast<std::size_t>(k)];
        const NodeLinearization lin = scheme.linearize(node, 0.0, zero);
        for (int s = 0; s < scheme.stencil_size(); ++s) {
            const std::size_t m = s == 0 ? node : scheme.neighbor(node, s);
            if (!g.active(m)) continue;
            M(k, scheme.active_index(m)) += lin.grad[static_cast<std::size_t>(s)];
        }
    }
    Eigen::EigenSolver<Eigen::MatrixXd> solver(M, false);
    if (solver.info() != Eigen::Success) throw Error(Errc::no_convergence, "dense eigensolver failed");
    return solver.eigenvalues().real().minCoeff();
}

EigenEstimate viscous_eigenvalue(const OperatorSpec& spec, const Domain& domain, double h, double eps,
                                 double lambda_cap, double tol, const BlowupOptions& options) {
    if (!(eps > 0.0)) throw Error(Errc::invalid_argument, "viscous eps must be > 0");
    SchemeOptions so;
    so.viscous_eps = eps;
    DiscreteScheme scheme(spec, build_grid(domain, h), so);
    EigenEstimate est = blowup_eigenvalue(scheme, lambda_cap, tol, options);
    est.method = EigenMethod::viscous;
    est.diagnostics.eps = eps;
    if (spec.kind == OperatorKind::linear && scheme.grid().active_nodes().size() <= 2000)
        est.diagnostics.dense_oracle = dense_principal_eigenvalue(scheme);
    return est;
}

EigenEstimate lambda_star_estimate(const OperatorSpec& spec, const Domain& domain, double h,
                                   const std::vector<double>& eps_list, double lambda_cap, double tol,
                                   const BlowupOptions& options) {
    check_eps_list(eps_list, h, 5.0, "lambda-star");
    EigenEstimate est;
    est.method = EigenMethod::extrapolated;
    auto& diag = est.diagnostics;
    diag.h = h;
    diag.eps = eps_list.back();
    bool first = true;
    for (double eps : eps_list) {
        const EigenEstimate e = viscous_eigenvalue(spec, domain, h, eps, lambda_cap, tol, options);
        diag.iterations += e.diagnostics.iterations;
        diag.trials += e.diagnostics.trials;
        diag.spot_check_ok = diag.spot_check_ok && e.diagnostics.spot_check_ok;
        diag.per_eps.push_back({eps, e.value, e.lambda_lo, e.lambda_hi, e.diagnostics.capped});
        if (first || e.value < est.value) {
            est.value = e.value;
            est.lambda_lo = e.lambda_lo;
            est.lambda_hi = e.lambda_hi;
            diag.capped = e.diagnostics.capped;
            diag.diverged = e.diagnostics.diverged;
            diag.dense_oracle = e.diagnostics.dense_oracle;
            first = false;
        }
    }
    return est;
}

}  // namespace gpe
