#include "gpe/scheme.hpp"

#include "gpe/error.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace gpe {

const char* to_string(BoundaryClause clause) {
    return clause == BoundaryClause::relaxed_min ? "relaxed-min" : "strict-max";
}

namespace {

constexpr int kOffsets[kStencilSize][2] = {{0, 0},  {1, 0},   {-1, 0}, {0, 1}, {0, -1},
                                           {1, 1},  {-1, -1}, {1, -1}, {-1, 1}};

constexpr int plus_slot(int dir) { return 1 + 2 * dir; }
constexpr int minus_slot(int dir) { return 2 + 2 * dir; }

// Arm length, in units of the full step, of the segment from node (distance
// di) to a neighbour (distance dj), and whether the neighbour value is
// replaced by the zero boundary value at the crossing.
struct Arm {
    double theta = 1.0;
    bool cut = false;
};

Arm make_arm(double di, double dj, bool neighbor_active, double pin_fraction) {
    if (di >= 0.0 && dj < 0.0) return {std::max(pin_fraction, di / (di - dj)), true};
    if (!neighbor_active) return {pin_fraction, true};
    return {1.0, false};
}

// Coefficients of the second difference along a direction of squared
// length len2 (in units of h^2) with possibly shortened arms.
SchemeOptions check_options(SchemeOptions o) {
    if (!(o.viscous_eps >= 0.0)) throw Error(Errc::invalid_argument, "viscous_eps must be >= 0");
    if (!(o.pin_fraction > 0.0 && o.pin_fraction <= 1.0))
        throw Error(Errc::invalid_argument, "pin_fraction must lie in (0, 1]");
    return o;
}

DiscreteScheme::DirectionArms second_difference(Arm plus, Arm minus, double len2h2) {
    const double denom = 0.5 * (plus.theta + minus.theta) * len2h2;
    DiscreteScheme::DirectionArms arms;
    arms.plus = plus.cut ? 0.0 : 1.0 / (plus.theta * denom);
    arms.minus = minus.cut ? 0.0 : 1.0 / (minus.theta * denom);
    arms.self = -(1.0 / plus.theta + 1.0 / minus.theta) / denom;
    return arms;
}

// Accumulates weight * D_dir into (value, grad).
inline void add_second(NodeLinearization& out, const DiscreteScheme::NodeData& nd, int dir, double weight,
                       const double* v) {
    const auto& a = nd.arms[static_cast<std::size_t>(dir)];
    out.value += weight * (a.plus * v[plus_slot(dir)] + a.minus * v[minus_slot(dir)] + a.self * v[0]);
    out.grad[static_cast<std::size_t>(plus_slot(dir))] += weight * a.plus;
    out.grad[static_cast<std::size_t>(minus_slot(dir))] += weight * a.minus;
    out.grad[0] += weight * a.self;
}

inline double second_value(const DiscreteScheme::NodeData& nd, int dir, const double* v) {
    const auto& a = nd.arms[static_cast<std::size_t>(dir)];
    return a.plus * v[plus_slot(dir)] + a.minus * v[minus_slot(dir)] + a.self * v[0];
}

struct SchemeSupport {
    int dim;
    bool operator()(const LinearTerms&) const { return dim <= 2; }
    bool operator()(const EikonalTerms&) const { return dim <= 2; }
    bool operator()(const HessianEigenTerms&) const { return dim <= 2; }
    bool operator()(const PLaplacianTerms&) const { return dim == 1; }
    bool operator()(const InfinityLaplacianTerms&) const { return dim == 1; }
    bool operator()(const CustomTerms&) const { return false; }
};

}  // namespace

DiscreteScheme::DiscreteScheme(OperatorSpec spec, std::shared_ptr<const Grid> grid, SchemeOptions options)
    : spec_(std::move(spec)), grid_(std::move(grid)), options_(check_options(options)) {
    if (!grid_) throw Error(Errc::invalid_argument, "scheme needs a grid");
    if (spec_.dim != grid_->dim()) {
        std::ostringstream os;
        os << "operator '" << spec_.name << "' is " << spec_.dim << "D, grid is " << grid_->dim() << "D";
        throw Error(Errc::dimension_mismatch, os.str());
    }
    if (!std::visit(SchemeSupport{spec_.dim}, spec_.family))
        throw Error(Errc::unsupported, "no monotone discretization of '" + spec_.name + "' in " +
                                           std::to_string(spec_.dim) + "D");

    const Grid& g = *grid_;
    const double h = g.h();
    const int dim = g.dim();
    const int slots = stencil_size();
    const int dirs = dim == 1 ? 1 : 4;
    active_index_.assign(g.size(), -1);
    data_.resize(g.active_nodes().size());
    scale_ = 0.0;
    for (std::size_t k = 0; k < g.active_nodes().size(); ++k) {
        const std::size_t n = g.active_nodes()[k];
        active_index_[n] = static_cast<int>(k);
        NodeData& nd = data_[k];
        nd.nbr[0] = n;
        for (int s = 1; s < slots; ++s) nd.nbr[static_cast<std::size_t>(s)] = g.offset(n, kOffsets[s][0], kOffsets[s][1]);
        const double di = g.distance(n);
        for (int d = 0; d < dirs; ++d) {
            const std::size_t p = nd.nbr[static_cast<std::size_t>(plus_slot(d))];
            const std::size_t m = nd.nbr[static_cast<std::size_t>(minus_slot(d))];
            const Arm ap = make_arm(di, g.distance(p), g.active(p), options_.pin_fraction);
            const Arm am = make_arm(di, g.distance(m), g.active(m), options_.pin_fraction);
            const double len2 = d < 2 ? 1.0 : 2.0;
            nd.arms[static_cast<std::size_t>(d)] = second_difference(ap, am, len2 * h * h);
            if (d == 0) {
                nd.theta_plus = ap.theta;
                nd.theta_minus = am.theta;
                nd.cut_plus = ap.cut;
                nd.cut_minus = am.cut;
            }
        }
        const Vec x = g.point(n);
        double local = 0.0;
        if (const auto* lin = std::get_if<LinearTerms>(&spec_.family)) {
            const auto part = spec_.linear_part(x);
            if (!part) throw Error(Errc::invalid_argument, "linear family declared with non-linear kind");
            nd.a11 = part->A(0, 0);
            nd.b1 = part->b[0];
            if (dim == 2) {
                nd.a22 = part->A(1, 1);
                nd.a12 = part->A(0, 1);
                nd.b2 = part->b[1];
            }
            // linear_part folds the shift into c; the shift is added
            // separately below for every family.
            nd.c = lin->c(x);
            local = part->A.cwiseAbs().maxCoeff() + part->b.cwiseAbs().maxCoeff() + std::abs(nd.c);
        } else if (const auto* eik = std::get_if<EikonalTerms>(&spec_.family)) {
            nd.b1 = eik->b(x);
            nd.c = eik->c(x);
            local = std::abs(nd.b1) + std::abs(nd.c);
        } else {
            local = 1.0;
        }
        if (!std::isfinite(local))
            throw Error(Errc::invalid_argument, "coefficient of '" + spec_.name + "' is not finite on the grid");
        scale_ = std::max(scale_, local + options_.viscous_eps + std::abs(spec_.zero_order_shift));
    }
}

std::size_t DiscreteScheme::neighbor(std::size_t node, int slot) const {
    return data_[static_cast<std::size_t>(active_index_[node])].nbr[static_cast<std::size_t>(slot)];
}

double DiscreteScheme::default_tolerance() const { return 10.0 * grid_->h() * (1.0 + scale_); }

NodeLinearization DiscreteScheme::evaluate(std::size_t node, double r, std::span<const double> u) const {
    const int k = active_index_[node];
    if (k < 0) throw Error(Errc::invalid_argument, "node_value called on an exterior node");
    const NodeData& nd = data_[static_cast<std::size_t>(k)];
    const int dim = grid_->dim();
    const int slots = stencil_size();
    const double h = grid_->h();

    double v[kStencilSize];
    v[0] = r;
    for (int s = 1; s < slots; ++s) v[s] = u[nd.nbr[static_cast<std::size_t>(s)]];

    NodeLinearization out;

    struct Visitor {
        NodeLinearization& out;
        const NodeData& nd;
        const double* v;
        int dim;
        double h;

        void drift(int axis, double b) {
            // -b * upwind derivative; forward difference when b > 0.
            const int ps = plus_slot(axis), ms = minus_slot(axis);
            if (b > 0.0) {
                out.value += -b * (v[ps] - v[0]) / h;
                out.grad[static_cast<std::size_t>(ps)] += -b / h;
                out.grad[0] += b / h;
            } else if (b < 0.0) {
                out.value += -b * (v[0] - v[ms]) / h;
                out.grad[0] += -b / h;
                out.grad[static_cast<std::size_t>(ms)] += b / h;
            }
        }

        void operator()(const LinearTerms&) {
            if (dim == 1) {
                add_second(out, nd, 0, -nd.a11, v);
                drift(0, nd.b1);
            } else {
                const double off = std::abs(nd.a12);
                add_second(out, nd, 0, -(nd.a11 - off), v);
                add_second(out, nd, 1, -(nd.a22 - off), v);
                if (off > 0.0) add_second(out, nd, nd.a12 > 0.0 ? 2 : 3, -2.0 * off, v);
                drift(0, nd.b1);
                drift(1, nd.b2);
            }
            out.value += -nd.c * v[0];
            out.grad[0] += -nd.c;
        }

        void operator()(const EikonalTerms&) {
            // -b|Du| with b >= 0 needs |Du| non-decreasing in neighbours:
            // m_k = max(D+ u, -D- u, 0); for b < 0 the mirrored choice.
            const double sgn = nd.b1 >= 0.0 ? 1.0 : -1.0;
            double m[2] = {0.0, 0.0};
            int arg[2] = {-1, -1};
            double norm2 = 0.0;
            for (int axis = 0; axis < dim; ++axis) {
                const double fwd = sgn * (v[plus_slot(axis)] - v[0]) / h;
                const double bwd = sgn * (v[minus_slot(axis)] - v[0]) / h;
                if (fwd >= bwd && fwd > 0.0) {
                    m[axis] = fwd;
                    arg[axis] = plus_slot(axis);
                } else if (bwd > fwd && bwd > 0.0) {
                    m[axis] = bwd;
                    arg[axis] = minus_slot(axis);
                }
                norm2 += m[axis] * m[axis];
            }
            const double norm = std::sqrt(norm2);
            out.value += -nd.b1 * norm;
            if (norm > 0.0) {
                for (int axis = 0; axis < dim; ++axis) {
                    if (arg[axis] < 0) continue;
                    const double dn = m[axis] / norm * sgn / h;
                    out.grad[static_cast<std::size_t>(arg[axis])] += -nd.b1 * dn;
                    out.grad[0] -= -nd.b1 * dn;
                }
            }
            out.value += -nd.c * v[0];
            out.grad[0] += -nd.c;
        }

        void operator()(const HessianEigenTerms& t) {
            if (dim == 1) {
                const double d = second_value(nd, 0, v);
                if (t.type == HessianEigenTerms::Type::positive_part && d <= 0.0) return;
                add_second(out, nd, 0, -1.0, v);
                return;
            }
            const bool trace_only = t.type == HessianEigenTerms::Type::largest_sum && t.k >= 2;
            if (trace_only) {
                add_second(out, nd, 0, -1.0, v);
                add_second(out, nd, 1, -1.0, v);
                return;
            }
            int best = 0;
            double best_value = second_value(nd, 0, v);
            for (int d = 1; d < 4; ++d) {
                const double val = second_value(nd, d, v);
                if (val > best_value) {
                    best_value = val;
                    best = d;
                }
            }
            if (t.type == HessianEigenTerms::Type::largest_sum) {
                add_second(out, nd, best, -1.0, v);
                return;
            }
            const double trace = second_value(nd, 0, v) + second_value(nd, 1, v);
            if (trace > best_value && trace > 0.0) {
                add_second(out, nd, 0, -1.0, v);
                add_second(out, nd, 1, -1.0, v);
            } else if (best_value > 0.0) {
                add_second(out, nd, best, -1.0, v);
            }
        }

        void operator()(const PLaplacianTerms& t) {
            // Flux form -(phi(D+ u) - phi(D- u)) / hbar, phi(s) = |s|^{q-2} s,
            // with arms shortened where the boundary cuts them.
            const double lp = nd.theta_plus * h, lm = nd.theta_minus * h;
            const double hbar = 0.5 * (lp + lm);
            const double up = nd.cut_plus ? 0.0 : v[1];
            const double um = nd.cut_minus ? 0.0 : v[2];
            const double dp = (up - v[0]) / lp;
            const double dm = (v[0] - um) / lm;
            const double q = t.q;
            auto phi = [q](double s) { return std::pow(std::abs(s), q - 2.0) * s; };
            auto dphi = [q](double s) { return (q - 1.0) * std::pow(std::abs(s), q - 2.0); };
            out.value += -(phi(dp) - phi(dm)) / hbar;
            if (!nd.cut_plus) out.grad[1] += -dphi(dp) / (lp * hbar);
            if (!nd.cut_minus) out.grad[2] += -dphi(dm) / (lm * hbar);
            out.grad[0] += (dphi(dp) / lp + dphi(dm) / lm) / hbar;
        }

        void operator()(const InfinityLaplacianTerms&) { add_second(out, nd, 0, -1.0, v); }

        void operator()(const CustomTerms&) {}
    };

    std::visit(Visitor{out, nd, v, dim, h}, spec_.family);

    if (options_.viscous_eps > 0.0) {
        for (int d = 0; d < dim; ++d) add_second(out, nd, d, -options_.viscous_eps, v);
    }
    if (spec_.zero_order_shift != 0.0) {
        const double a = spec_.alpha;
        out.value += spec_.zero_order_shift * signed_pow(r, a);
        out.grad[0] += spec_.zero_order_shift * (a == 1.0 ? 1.0 : a * std::pow(std::abs(r), a - 1.0));
    }
    return out;
}

double DiscreteScheme::node_value(std::size_t node, double r, std::span<const double> u) const {
    return evaluate(node, r, u).value;
}

NodeLinearization DiscreteScheme::linearize(std::size_t node, double r, std::span<const double> u) const {
    return evaluate(node, r, u);
}

Residual residual(const DiscreteScheme& scheme, const Field& u) {
    const Grid& g = scheme.grid();
    if (u.grid.get() != &g && (!u.grid || u.grid->size() != g.size()))
        throw Error(Errc::dimension_mismatch, "field does not live on the scheme grid");
    Residual res{scheme.grid_ptr(), std::vector<double>(g.size(), 0.0)};
    for (std::size_t n = 0; n < g.size(); ++n)
        res.values[n] = g.active(n) ? scheme.node_value(n, u[n], u.values) : u[n];
    return res;
}

NodeVerdict is_subsolution(const DiscreteScheme& scheme, const Field& u, double tol) {
    if (!(tol >= 0.0)) throw Error(Errc::invalid_argument, "tolerance must be >= 0");
    const Residual res = residual(scheme, u);
    const Grid& g = scheme.grid();
    NodeVerdict verdict;
    verdict.worst_value = -std::numeric_limits<double>::infinity();
    for (std::size_t n = 0; n < g.size(); ++n) {
        double q = 0.0;
        switch (g.node_class(n)) {
            case NodeClass::interior: q = res.values[n]; break;
            case NodeClass::boundary:
                q = scheme.options().clause == BoundaryClause::relaxed_min ? std::min(u[n], res.values[n])
                                                                           : std::max(u[n], res.values[n]);
                break;
            case NodeClass::exterior: q = u[n]; break;
        }
        if (q > verdict.worst_value) {
            verdict.worst_value = q;
            verdict.worst_node = n;
        }
    }
    verdict.ok = verdict.worst_value <= tol;
    return verdict;
}

NodeVerdict is_supersolution(const DiscreteScheme& scheme, const Field& phi, double lambda, double tol) {
    if (!(tol >= 0.0)) throw Error(Errc::invalid_argument, "tolerance must be >= 0");
    const Grid& g = scheme.grid();
    NodeVerdict verdict;
    verdict.worst_value = std::numeric_limits<double>::infinity();
    for (std::size_t n : g.active_nodes()) {
        if (g.node_class(n) != NodeClass::interior) continue;
        if (!(phi[n] > 0.0)) {
            std::ostringstream os;
            os << "candidate supersolution is " << phi[n] << " at interior node " << n;
            throw Error(Errc::not_positive, os.str());
        }
        const double margin =
            scheme.node_value(n, phi[n], phi.values) - lambda * signed_pow(phi[n], scheme.spec().alpha);
        if (margin < verdict.worst_value) {
            verdict.worst_value = margin;
            verdict.worst_node = n;
        }
    }
    verdict.ok = verdict.worst_value >= -tol;
    return verdict;
}

MonotonicityReport check_monotonicity(const DiscreteScheme& scheme, std::size_t trials, std::uint64_t rng_seed) {
    const Grid& g = scheme.grid();
    const auto& active = g.active_nodes();
    std::mt19937_64 rng(rng_seed);
    std::uniform_real_distribution<double> val(-1.0, 1.0);
    std::uniform_real_distribution<double> step(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> pick(0, active.size() - 1);
    std::uniform_int_distribution<int> slot_pick(1, scheme.stencil_size() - 1);

    MonotonicityReport report;
    report.trials = trials;
    std::vector<double> u(g.size(), 0.0);
    for (std::size_t t = 0; t < trials; ++t) {
        for (std::size_t n : active) u[n] = val(rng);
        const std::size_t i = active[pick(rng)];
        const std::size_t j = scheme.neighbor(i, slot_pick(rng));
        const double delta = step(rng) + 1e-3;
        const double before = scheme.node_value(i, u[i], u);
        const double saved = u[j];
        u[j] += delta;
        const double after = scheme.node_value(i, u[i], u);
        u[j] = saved;
        const double tol = 1e-9 * (1.0 + std::abs(before) + std::abs(after));
        if (after > before + tol) {
            ++report.violations;
            report.worst_increase = std::max(report.worst_increase, after - before);
        }
    }
    return report;
}

}  // namespace gpe
