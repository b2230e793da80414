#include "gpe/mp.hpp"

#include "gpe/error.hpp"

#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gpe {

MPVerdict mp_test(const DiscreteScheme& scheme, double cap, double tol, const MPOptions& options) {
    using boost::math::tools::toms748_solve;
    if (!(cap > 0.0)) throw Error(Errc::invalid_argument, "mp cap must be > 0");
    if (!(tol >= 0.0)) throw Error(Errc::invalid_argument, "mp tolerance must be >= 0");

    const Grid& g = scheme.grid();
    const auto& active = g.active_nodes();
    const bool strict = scheme.options().clause == BoundaryClause::strict_max;

    Field u(scheme.grid_ptr());
    for (std::size_t n : active) u[n] = cap;

    MPVerdict verdict;
    for (std::size_t sweep = 0; sweep < options.max_sweeps; ++sweep) {
        verdict.iterations = sweep + 1;
        double change = 0.0;
        for (std::size_t t = 0; t < active.size(); ++t) {
            const std::size_t node = sweep % 2 == 0 ? active[t] : active[active.size() - 1 - t];
            const double old = u[node];
            double r = old;
            if (strict && g.node_class(node) == NodeClass::boundary) {
                r = std::min(old, 0.0);
            } else {
                auto S = [&](double x) { return scheme.node_value(node, x, u.values); };
                const double s_old = S(old);
                if (s_old > 0.0) {
                    // Neighbours are >= 0, so S(0) <= 0 and a root lies in [0, old].
                    const double s_zero = S(0.0);
                    if (s_zero >= 0.0) {
                        r = 0.0;
                    } else {
                        std::uintmax_t max_iter = 200;
                        r = toms748_solve(S, 0.0, old, s_zero, s_old,
                                          boost::math::tools::eps_tolerance<double>(52), max_iter)
                                .first;
                    }
                }
            }
            u[node] = r;
            change = std::max(change, old - r);
        }
        const double top = u.max_active();
        verdict.max_positive_part = std::max(top, 0.0);
        if (verdict.max_positive_part <= 10.0 * tol) {
            verdict.holds = true;
            return verdict;
        }
        if (change <= 1e-14 * (1.0 + top)) {
            verdict.holds = false;
            verdict.witness = std::move(u);
            return verdict;
        }
    }
    std::ostringstream os;
    os << "maximal subsolution did not stabilize in " << options.max_sweeps << " sweeps (max "
       << verdict.max_positive_part << ")";
    throw Error(Errc::no_convergence, os.str());
}

WitnessVerdict witness_check(const DiscreteScheme& scheme, const Field& u, double tol) {
    WitnessVerdict v;
    v.subsolution = is_subsolution(scheme, u, tol);
    v.max_value = u.max_active();
    v.ok = v.subsolution.ok && v.max_value > tol;
    return v;
}

}  // namespace gpe
