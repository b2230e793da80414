#include "gpe/boundary.hpp"

#include "gpe/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace gpe {

const char* to_string(FicheraStatus s) { return s == FicheraStatus::satisfied ? "satisfied" : "violated"; }

const char* to_string(ComponentVerdict v) {
    switch (v) {
        case ComponentVerdict::all_satisfied: return "all-satisfied";
        case ComponentVerdict::all_violated: return "all-violated";
        case ComponentVerdict::mixed: return "mixed";
    }
    return "?";
}

const char* to_string(Advisory a) {
    return a == Advisory::mu1_equals_lambda_bar ? "mu1-equals-lambda-bar" : "inconclusive";
}

namespace {

Vec vec1(double x) {
    Vec v(1);
    v << x;
    return v;
}

Vec vec2(double x, double y) {
    Vec v(2);
    v << x, y;
    return v;
}

const char* const kEdgeNames[4] = {"bottom edge", "right edge", "top edge", "left edge"};

void require_smooth_pieces(const Domain& domain) {
    if (std::holds_alternative<Rectangle>(domain.shape()) && domain.inflation() > 0.0)
        throw Error(Errc::unsupported, "boundary analysis of an inflated rectangle (rounded corners)");
}

BoundaryPoint disk_point(const Disk& k, double radius, const Vec& x, int component) {
    BoundaryPoint bp;
    bp.component = component;
    Vec c = vec2(k.cx, k.cy);
    Vec rel = x - c;
    const double rho = rel.norm();
    if (rho == 0.0) throw Error(Errc::invalid_argument, "distance to a circle is not smooth at its centre");
    const Vec n = rel / rho;
    bp.xi = c + radius * n;
    bp.Dd = -n;
    bp.D2d = -(Mat::Identity(2, 2) - n * n.transpose()) / rho;
    return bp;
}

BoundaryPoint edge_point(const Rectangle& r, int edge, double t) {
    BoundaryPoint bp;
    bp.component = edge;
    bp.D2d = Mat::Zero(2, 2);
    switch (edge) {
        case 0: bp.xi = vec2(t, r.c), bp.Dd = vec2(0.0, 1.0); break;
        case 1: bp.xi = vec2(r.b, t), bp.Dd = vec2(-1.0, 0.0); break;
        case 2: bp.xi = vec2(t, r.d), bp.Dd = vec2(0.0, -1.0); break;
        default: bp.xi = vec2(r.a, t), bp.Dd = vec2(1.0, 0.0); break;
    }
    return bp;
}

// Distance data at x for the smooth piece `piece` (half-line, half-plane or
// circle) containing the boundary point.
struct LocalDistance {
    double d;
    Vec Dd;
    Mat D2d;
};

LocalDistance local_distance(const Domain& domain, const BoundaryPoint& piece, const Vec& x) {
    if (const auto* k = std::get_if<Disk>(&domain.shape())) {
        const double radius = k->radius + domain.inflation();
        const BoundaryPoint at = disk_point(*k, radius, x, piece.component);
        return {radius - (x - vec2(k->cx, k->cy)).norm(), at.Dd, at.D2d};
    }
    return {(x - piece.xi).dot(piece.Dd), piece.Dd, Mat::Zero(x.size(), x.size())};
}

}  // namespace

std::vector<BoundaryPoint> boundary_points(const Domain& domain, std::size_t n, double corner_exclusion) {
    require_smooth_pieces(domain);
    std::vector<BoundaryPoint> pts;
    const double e = domain.inflation();
    if (const auto* iv = std::get_if<Interval>(&domain.shape())) {
        pts.push_back({vec1(iv->a - e), 0, vec1(1.0), Mat::Zero(1, 1)});
        pts.push_back({vec1(iv->b + e), 1, vec1(-1.0), Mat::Zero(1, 1)});
    } else if (const auto* r = std::get_if<Rectangle>(&domain.shape())) {
        if (n < 4) throw Error(Errc::invalid_argument, "rectangle needs at least 4 boundary samples");
        const std::size_t per_edge = n / 4;
        for (int edge = 0; edge < 4; ++edge) {
            const bool horizontal = edge % 2 == 0;
            const double lo = (horizontal ? r->a : r->c) + corner_exclusion;
            const double hi = (horizontal ? r->b : r->d) - corner_exclusion;
            if (!(hi > lo)) throw Error(Errc::invalid_argument, "corner exclusion covers a whole edge");
            for (std::size_t k = 0; k < per_edge; ++k) {
                const double t =
                    per_edge == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(per_edge - 1);
                pts.push_back(edge_point(*r, edge, t));
            }
        }
    } else {
        const auto& k = std::get<Disk>(domain.shape());
        if (n < 1) throw Error(Errc::invalid_argument, "disk needs at least 1 boundary sample");
        for (std::size_t q = 0; q < n; ++q) {
            const double th = 2.0 * std::numbers::pi * static_cast<double>(q) / static_cast<double>(n);
            const Vec x = vec2(k.cx + std::cos(th), k.cy + std::sin(th));
            pts.push_back(disk_point(k, k.radius + e, x, 0));
        }
    }
    return pts;
}

BoundaryPoint locate_boundary_point(const Domain& domain, const Vec& xi) {
    require_smooth_pieces(domain);
    if (xi.size() != domain.dim()) throw Error(Errc::dimension_mismatch, "boundary point dimension");
    const double e = domain.inflation();
    if (const auto* iv = std::get_if<Interval>(&domain.shape())) {
        const bool left = std::abs(xi[0] - (iv->a - e)) <= std::abs(xi[0] - (iv->b + e));
        return left ? BoundaryPoint{vec1(iv->a - e), 0, vec1(1.0), Mat::Zero(1, 1)}
                    : BoundaryPoint{vec1(iv->b + e), 1, vec1(-1.0), Mat::Zero(1, 1)};
    }
    if (const auto* r = std::get_if<Rectangle>(&domain.shape())) {
        const double dist[4] = {std::abs(xi[1] - r->c), std::abs(xi[0] - r->b), std::abs(xi[1] - r->d),
                                std::abs(xi[0] - r->a)};
        const int edge = static_cast<int>(std::min_element(dist, dist + 4) - dist);
        return edge_point(*r, edge, edge % 2 == 0 ? xi[0] : xi[1]);
    }
    const auto& k = std::get<Disk>(domain.shape());
    return disk_point(k, k.radius + e, xi, 0);
}

FicheraStatus fichera_status(double dAd, double drift, double tol_pos) {
    if (dAd > tol_pos) return FicheraStatus::satisfied;
    return drift < -tol_pos ? FicheraStatus::satisfied : FicheraStatus::violated;
}

FicheraSample fichera_at(const OperatorSpec& spec, const BoundaryPoint& point, double tol_pos) {
    const auto part = spec.linear_part(point.xi);
    if (!part) throw Error(Errc::unsupported, "Fichera condition needs a linear operator, got " + spec.name);
    FicheraSample s;
    s.point = point;
    s.dAd = point.Dd.dot(part->A * point.Dd);
    s.drift = (part->A * point.D2d).trace() + part->b.dot(point.Dd);
    if (s.dAd < -tol_pos) {
        std::ostringstream os;
        os << "Dd.A.Dd = " << s.dAd << " < 0: diffusion matrix of " << spec.name << " is not semidefinite";
        throw Error(Errc::invalid_argument, os.str());
    }
    s.status = fichera_status(s.dAd, s.drift, tol_pos);
    return s;
}

FicheraReport fichera_classify(const OperatorSpec& spec, const Domain& domain, std::size_t n_samples,
                               const FicheraOptions& options) {
    if (spec.kind != OperatorKind::linear)
        throw Error(Errc::unsupported, "Fichera classification needs a linear operator, got " + spec.name);
    if (spec.dim != domain.dim()) throw Error(Errc::dimension_mismatch, "operator and domain dimensions differ");
    FicheraReport rep;
    for (const auto& bp : boundary_points(domain, n_samples, options.corner_exclusion))
        rep.samples.push_back(fichera_at(spec, bp, options.tol_pos));

    int n_components = 1;
    if (std::holds_alternative<Interval>(domain.shape())) n_components = 2;
    if (std::holds_alternative<Rectangle>(domain.shape())) n_components = 4;
    for (int c = 0; c < n_components; ++c) {
        FicheraComponent comp;
        comp.id = c;
        if (const auto* iv = std::get_if<Interval>(&domain.shape())) {
            std::ostringstream os;
            os << "x = " << (c == 0 ? iv->a - domain.inflation() : iv->b + domain.inflation());
            comp.name = os.str();
        } else if (n_components == 4) {
            comp.name = kEdgeNames[c];
        } else {
            comp.name = "circle";
        }
        for (const auto& s : rep.samples) {
            if (s.point.component != c) continue;
            (s.status == FicheraStatus::satisfied ? comp.satisfied : comp.violated) += 1;
        }
        if (comp.satisfied > 0 && comp.violated > 0)
            comp.verdict = ComponentVerdict::mixed;
        else
            comp.verdict = comp.violated > 0 ? ComponentVerdict::all_violated : ComponentVerdict::all_satisfied;
        rep.components.push_back(comp);
    }
    if (n_components == 4) {
        std::ostringstream os;
        os << "corners excluded within " << options.corner_exclusion
           << "; the four edges meet at non-smooth points, so the boundary is treated as four pieces";
        rep.note = os.str();
    }
    return rep;
}

BarrierReport verify_log_barrier(const OperatorSpec& spec, const Domain& domain, const Vec& xi, double delta,
                                 double band, std::size_t n_samples, const FicheraOptions& options) {
    if (spec.kind != OperatorKind::linear)
        throw Error(Errc::unsupported, "log barrier check needs a linear operator, got " + spec.name);
    if (!(delta > 0.0)) throw Error(Errc::invalid_argument, "barrier delta must be > 0");
    if (!(band > 0.0) || band > 0.5 * domain.inradius() * (1.0 + 1e-12))
        throw Error(Errc::invalid_argument, "barrier band must lie in (0, inradius / 2]");
    if (n_samples < 1) throw Error(Errc::invalid_argument, "barrier needs samples");

    const BoundaryPoint piece = locate_boundary_point(domain, xi);
    const FicheraSample fs = fichera_at(spec, piece, options.tol_pos);
    if (fs.status != FicheraStatus::satisfied) {
        std::ostringstream os;
        os << "Fichera condition violated at the boundary point (Dd.A.Dd = " << fs.dAd << ", drift = " << fs.drift
           << "); no barrier is expected";
        throw Error(Errc::invalid_argument, os.str());
    }

    std::vector<Vec> pts;
    if (domain.dim() == 1) {
        for (std::size_t k = 1; k <= n_samples; ++k)
            pts.push_back(piece.xi + band * static_cast<double>(k) / static_cast<double>(n_samples) * piece.Dd);
    } else {
        const auto m = std::max<std::size_t>(2, static_cast<std::size_t>(std::sqrt(static_cast<double>(n_samples))));
        for (std::size_t i = 1; i <= m; ++i)
            for (std::size_t j = 0; j < 2 * m; ++j) {
                const double rho = band * static_cast<double>(i) / static_cast<double>(m);
                const double th = std::numbers::pi * static_cast<double>(j) / static_cast<double>(m);
                const Vec x = piece.xi + rho * vec2(std::cos(th), std::sin(th));
                if (domain.signed_distance(x) > 0.0 && local_distance(domain, piece, x).d > 0.0) pts.push_back(x);
            }
    }

    BarrierReport rep;
    rep.xi = piece.xi;
    rep.delta = delta;
    rep.band_width = band;
    rep.raw_min = std::numeric_limits<double>::infinity();
    rep.min_w = std::numeric_limits<double>::infinity();
    rep.w_at_xi = std::log(delta + local_distance(domain, piece, piece.xi).d) - std::log(delta);
    for (const auto& x : pts) {
        const LocalDistance ld = local_distance(domain, piece, x);
        const double s = delta + ld.d;
        Jet jet;
        jet.x = x;
        jet.r = std::log(s) - std::log(delta);
        jet.p = ld.Dd / s;
        jet.X = ld.D2d / s - ld.Dd * ld.Dd.transpose() / (s * s);
        rep.raw_min = std::min(rep.raw_min, eval(spec, jet, Side::super));
        rep.min_w = std::min(rep.min_w, jet.r);
    }
    rep.samples = pts.size();
    rep.verified = !pts.empty() && rep.raw_min > options.tol_pos;
    rep.scale = rep.verified && rep.raw_min < 1.0 ? 1.0 / rep.raw_min : 1.0;
    rep.min_residual = rep.scale * rep.raw_min;
    return rep;
}

BarrierReport find_log_barrier(const OperatorSpec& spec, const Domain& domain, const Vec& xi, double band,
                               std::size_t n_samples, const FicheraOptions& options) {
    BarrierReport best;
    bool have = false;
    for (double delta : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
        BarrierReport rep = verify_log_barrier(spec, domain, xi, delta, band, n_samples, options);
        if (rep.verified) return rep;
        if (!have || rep.raw_min > best.raw_min) {
            best = rep;
            have = true;
        }
    }
    return best;
}

Advisory equivalence_advisory(const FicheraReport& report) {
    for (const auto& c : report.components)
        if (c.verdict == ComponentVerdict::mixed) return Advisory::inconclusive;
    return Advisory::mu1_equals_lambda_bar;
}

}  // namespace gpe
