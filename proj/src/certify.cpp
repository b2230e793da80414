#include "gpe/certify.hpp"

#include "gpe/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace gpe {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Closure of an inflated shape as the union of balls of `radius` around
// `points` (interval endpoints, rectangle corners, disk centre) plus the
// convex hull; enough to take maxima of convex functions exactly.
struct Support {
    std::vector<Vec> points;
    double radius = 0.0;
};

Support support(const Domain& d) {
    Support s;
    s.radius = d.inflation();
    std::visit(Overloaded{
                   [&](const Interval& iv) {
                       Vec a(1), b(1);
                       a << iv.a;
                       b << iv.b;
                       s.points = {a, b};
                   },
                   [&](const Rectangle& r) {
                       for (double x : {r.a, r.b})
                           for (double y : {r.c, r.d}) {
                               Vec p(2);
                               p << x, y;
                               s.points.push_back(p);
                           }
                   },
                   [&](const Disk& k) {
                       Vec c(2);
                       c << k.cx, k.cy;
                       s.points = {c};
                       s.radius += k.radius;
                   },
               },
               d.shape());
    return s;
}

double first_coordinate_min(const Support& s) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& p : s.points) m = std::min(m, p[0]);
    return m - s.radius;
}

double first_coordinate_max(const Support& s) {
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& p : s.points) m = std::max(m, p[0]);
    return m + s.radius;
}

double sqrt_arg(const Vec& x) {
    if (x[0] < 0.0) throw Error(Errc::invalid_argument, "sqrt certificate evaluated at x < 0");
    return x[0];
}

double diameter(const Domain& d) { return (d.upper() - d.lower()).norm(); }

}  // namespace

double Certificate::value(const Vec& x) const {
    const double v = std::visit(Overloaded{
                                    [&](const cert::Power& c) { return std::pow(x[0], c.n); },
                                    [&](const cert::TwoMinusSqrt&) { return 2.0 - std::sqrt(sqrt_arg(x)); },
                                    [&](const cert::OnePlusSqrt&) { return 1.0 + std::sqrt(sqrt_arg(x)); },
                                    [&](const cert::Paraboloid& c) { return c.k - x.squaredNorm(); },
                                    [&](const cert::ExpTilt& c) { return 1.0 - c.eps * std::exp(c.sigma * c.xi.dot(x)); },
                                    [&](const cert::Constant& c) { return c.c; },
                                },
                                family);
    return scale * v;
}

Vec Certificate::gradient(const Vec& x) const {
    Vec g = Vec::Zero(x.size());
    std::visit(Overloaded{
                   [&](const cert::Power& c) { g[0] = c.n * std::pow(x[0], c.n - 1); },
                   [&](const cert::TwoMinusSqrt&) { g[0] = -0.5 / std::sqrt(sqrt_arg(x)); },
                   [&](const cert::OnePlusSqrt&) { g[0] = 0.5 / std::sqrt(sqrt_arg(x)); },
                   [&](const cert::Paraboloid&) { g = -2.0 * x; },
                   [&](const cert::ExpTilt& c) { g = -c.eps * c.sigma * std::exp(c.sigma * c.xi.dot(x)) * c.xi; },
                   [&](const cert::Constant&) {},
               },
               family);
    return scale * g;
}

Mat Certificate::hessian(const Vec& x) const {
    const auto n = x.size();
    Mat H = Mat::Zero(n, n);
    std::visit(Overloaded{
                   [&](const cert::Power& c) {
                       H(0, 0) = c.n == 1 ? 0.0 : c.n * (c.n - 1) * std::pow(x[0], c.n - 2);
                   },
                   [&](const cert::TwoMinusSqrt&) { H(0, 0) = 0.25 * std::pow(sqrt_arg(x), -1.5); },
                   [&](const cert::OnePlusSqrt&) { H(0, 0) = -0.25 * std::pow(sqrt_arg(x), -1.5); },
                   [&](const cert::Paraboloid&) { H = -2.0 * Mat::Identity(n, n); },
                   [&](const cert::ExpTilt& c) {
                       H = -c.eps * c.sigma * c.sigma * std::exp(c.sigma * c.xi.dot(x)) * (c.xi * c.xi.transpose());
                   },
                   [&](const cert::Constant&) {},
               },
               family);
    return scale * H;
}

bool Certificate::singular_at(const Vec& x) const {
    const bool sqrt_family =
        std::holds_alternative<cert::TwoMinusSqrt>(family) || std::holds_alternative<cert::OnePlusSqrt>(family);
    return sqrt_family && x[0] <= 0.0;
}

double Certificate::infimum(const Domain& domain) const {
    const Support s = support(domain);
    const double lo = first_coordinate_min(s), hi = first_coordinate_max(s);
    const double v = std::visit(
        Overloaded{
            [&](const cert::Power& c) {
                if (c.n % 2 == 1) return std::pow(lo, c.n);
                if (lo <= 0.0 && hi >= 0.0) return 0.0;
                return std::min(std::pow(lo, c.n), std::pow(hi, c.n));
            },
            [&](const cert::TwoMinusSqrt&) {
                if (lo < 0.0) throw Error(Errc::invalid_argument, "2 - sqrt(x) is undefined for x < 0");
                return 2.0 - std::sqrt(hi);
            },
            [&](const cert::OnePlusSqrt&) {
                if (lo < 0.0) throw Error(Errc::invalid_argument, "1 + sqrt(x) is undefined for x < 0");
                return 1.0 + std::sqrt(lo);
            },
            [&](const cert::Paraboloid& c) {
                double m = 0.0;
                for (const auto& p : s.points) m = std::max(m, std::pow(p.norm() + s.radius, 2));
                return c.k - m;
            },
            [&](const cert::ExpTilt& c) {
                double m = -std::numeric_limits<double>::infinity();
                for (const auto& p : s.points) m = std::max(m, c.xi.dot(p) + c.xi.norm() * s.radius);
                return 1.0 - c.eps * std::exp(c.sigma * m);
            },
            [&](const cert::Constant& c) { return c.c; },
        },
        family);
    return scale * v;
}

std::string Certificate::describe() const {
    std::ostringstream os;
    if (scale != 1.0) os << scale << " * ";
    std::visit(Overloaded{
                   [&](const cert::Power& c) { os << "x^" << c.n; },
                   [&](const cert::TwoMinusSqrt&) { os << "2 - sqrt(x)"; },
                   [&](const cert::OnePlusSqrt&) { os << "1 + sqrt(x)"; },
                   [&](const cert::Paraboloid& c) { os << c.k << " - |x|^2"; },
                   [&](const cert::ExpTilt& c) {
                       os << "1 - " << c.eps << " exp(" << c.sigma << " (";
                       for (int i = 0; i < c.xi.size(); ++i) os << (i ? ", " : "") << c.xi[i];
                       os << ").x)";
                   },
                   [&](const cert::Constant& c) { os << c.c; },
               },
               family);
    return os.str();
}

Certificate make_certificate(CertFamily family, Domain declared_region, double scale) {
    if (!(scale > 0.0)) throw Error(Errc::invalid_argument, "certificate scale must be > 0");
    if (const auto* p = std::get_if<cert::Power>(&family); p && p->n < 0)
        throw Error(Errc::invalid_argument, "power certificate needs n >= 0");
    if (const auto* e = std::get_if<cert::ExpTilt>(&family); e && e->xi.size() != declared_region.dim())
        throw Error(Errc::dimension_mismatch, "exp tilt direction dimension differs from region");
    return Certificate{std::move(family), scale, std::move(declared_region)};
}

const char* to_string(CertClass c) {
    switch (c) {
        case CertClass::bounds_lambda1: return "bounds-lambda1";
        case CertClass::bounds_lambda_bar1: return "bounds-lambda-bar1";
        case CertClass::bounds_mu1: return "bounds-mu1";
    }
    return "?";
}

std::vector<Vec> sample_region(const Domain& domain, std::size_t samples, const SampleOptions& options,
                               std::size_t* shifted) {
    if (samples < 2) throw Error(Errc::invalid_argument, "need at least 2 samples");
    const double inward = options.boundary_shift * diameter(domain);
    const double e = domain.inflation();
    std::vector<Vec> pts;
    std::size_t moved = 0;
    auto push2 = [&](double x, double y) {
        Vec p(2);
        p << x, y;
        pts.push_back(p);
    };
    if (domain.dim() == 1) {
        const double a = domain.lower()[0], b = domain.upper()[0];
        for (std::size_t k = 0; k < samples; ++k) {
            Vec p(1);
            p[0] = a + (b - a) * static_cast<double>(k) / static_cast<double>(samples - 1);
            if (k == 0) p[0] += inward;
            if (k + 1 == samples) p[0] -= inward;
            pts.push_back(p);
        }
        moved = 2;
    } else {
        const auto m = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(samples))));
        const Vec lo = domain.lower(), hi = domain.upper();
        for (std::size_t i = 0; i <= m; ++i)
            for (std::size_t j = 0; j <= m; ++j) {
                Vec p(2);
                p << lo[0] + (hi[0] - lo[0]) * static_cast<double>(i) / static_cast<double>(m),
                    lo[1] + (hi[1] - lo[1]) * static_cast<double>(j) / static_cast<double>(m);
                if (domain.signed_distance(p) > inward) pts.push_back(p);
            }
        const std::size_t nb = 4 * m;
        std::visit(Overloaded{
                       [&](const Interval&) {},
                       [&](const Rectangle& r) {
                           const double o = e - inward;  // offset of the sampled edge from the base edge
                           for (std::size_t k = 0; k < nb / 4; ++k) {
                               const double t = (static_cast<double>(k) + 0.5) / static_cast<double>(nb / 4);
                               push2(r.a + t * (r.b - r.a), r.c - o);
                               push2(r.a + t * (r.b - r.a), r.d + o);
                               push2(r.a - o, r.c + t * (r.d - r.c));
                               push2(r.b + o, r.c + t * (r.d - r.c));
                           }
                           if (e > 0.0) {
                               const double cx[4] = {r.a, r.b, r.b, r.a};
                               const double cy[4] = {r.c, r.c, r.d, r.d};
                               for (int q = 0; q < 4; ++q)
                                   for (std::size_t k = 0; k <= 8; ++k) {
                                       const double th = std::numbers::pi * (q + 2) / 2.0 +
                                                         std::numbers::pi / 2.0 * static_cast<double>(k) / 8.0;
                                       push2(cx[q] + o * std::cos(th), cy[q] + o * std::sin(th));
                                   }
                               moved += 36;
                           } else {
                               for (int q = 0; q < 4; ++q) {
                                   const double cx[4] = {r.a, r.b, r.b, r.a};
                                   const double cy[4] = {r.c, r.c, r.d, r.d};
                                   push2(cx[q] + (q == 0 || q == 3 ? inward : -inward),
                                         cy[q] + (q < 2 ? inward : -inward));
                               }
                               moved += 4;
                           }
                           moved += nb;
                       },
                       [&](const Disk& k) {
                           const double rho = k.radius + e - inward;
                           for (std::size_t q = 0; q < nb; ++q) {
                               const double th = 2.0 * std::numbers::pi * static_cast<double>(q) / static_cast<double>(nb);
                               push2(k.cx + rho * std::cos(th), k.cy + rho * std::sin(th));
                           }
                           moved += nb;
                       },
                   },
                   domain.shape());
    }
    if (shifted) *shifted = moved;
    return pts;
}

namespace {

struct Sampled {
    Domain region;
    bool inflated_witness = false;
    std::vector<Vec> points;
    std::size_t shifted = 0;
};

Sampled sample_for(const Certificate& cert, const OperatorSpec& spec, const Domain& target, std::size_t samples,
                   const SampleOptions& options) {
    if (samples < 100) throw Error(Errc::invalid_argument, "certificate checks need at least 100 samples");
    if (spec.dim != target.dim()) throw Error(Errc::dimension_mismatch, "operator and target dimensions differ");
    Sampled s;
    s.inflated_witness = cert.declared_region.dim() == target.dim() && cert.declared_region.strictly_contains(target);
    s.region = s.inflated_witness ? cert.declared_region : target;
    s.points = sample_region(s.region, samples, options, &s.shifted);
    const double inward = options.boundary_shift * diameter(s.region);
    for (auto& p : s.points) {
        if (cert.singular_at(p)) {
            p[0] += inward;
            ++s.shifted;
        }
    }
    return s;
}

Jet certificate_jet(const Certificate& cert, const Vec& x) {
    Jet jet;
    jet.x = x;
    jet.r = cert.value(x);
    jet.p = cert.gradient(x);
    jet.X = cert.hessian(x);
    if (!(jet.r > 0.0)) {
        std::ostringstream os;
        os << "certificate " << cert.describe() << " is " << jet.r << " at x = (";
        for (int i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
        os << ")";
        throw Error(Errc::not_positive, os.str());
    }
    return jet;
}

}  // namespace

CertReport verify(const Certificate& cert, const OperatorSpec& spec, const Domain& target, double lambda,
                  std::size_t samples, const SampleOptions& options) {
    const Sampled s = sample_for(cert, spec, target, samples, options);
    CertReport rep;
    rep.lambda = lambda;
    rep.sample_count = s.points.size();
    rep.shifted_samples = s.shifted;
    rep.margin = std::numeric_limits<double>::infinity();
    rep.positivity = std::numeric_limits<double>::infinity();
    for (const auto& x : s.points) {
        const Jet jet = certificate_jet(cert, x);
        const double m = eval(spec, jet, Side::super) - lambda * signed_pow(jet.r, spec.alpha);
        if (m < rep.margin) {
            rep.margin = m;
            rep.worst_point = x;
        }
        rep.positivity = std::min(rep.positivity, jet.r);
    }
    rep.ok = rep.margin >= -1e-10;
    rep.infimum = cert.infimum(s.region);
    if (s.inflated_witness) {
        rep.classification = CertClass::bounds_mu1;
        rep.note = "sampled on declared region " + s.region.describe();
    } else if (rep.infimum > 0.0) {
        rep.classification = CertClass::bounds_lambda_bar1;
    } else {
        rep.classification = CertClass::bounds_lambda1;
    }
    if (s.shifted > 0) {
        std::ostringstream os;
        if (!rep.note.empty()) os << rep.note << "; ";
        os << s.shifted << " samples moved inward by " << options.boundary_shift << " x diameter";
        rep.note = os.str();
    }
    return rep;
}

double best_lambda(const Certificate& cert, const OperatorSpec& spec, const Domain& target, std::size_t samples,
                   const SampleOptions& options) {
    const Sampled s = sample_for(cert, spec, target, samples, options);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& x : s.points) {
        const Jet jet = certificate_jet(cert, x);
        best = std::min(best, eval(spec, jet, Side::super) / signed_pow(jet.r, spec.alpha));
    }
    const CertReport check = verify(cert, spec, target, best - 1e-6, samples, options);
    if (!check.ok) {
        std::ostringstream os;
        os << "verify fails just below the best lambda " << best << " (margin " << check.margin << ")";
        throw Error(Errc::no_convergence, os.str());
    }
    return best;
}

}  // namespace gpe
