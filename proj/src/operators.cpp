#include "gpe/operators.hpp"

#include "gpe/error.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace gpe {

const char* to_string(Errc code) {
    switch (code) {
        case Errc::invalid_argument: return "invalid argument";
        case Errc::dimension_mismatch: return "dimension mismatch";
        case Errc::grid_too_coarse: return "grid too coarse";
        case Errc::not_positive: return "not positive";
        case Errc::infeasible_solve: return "infeasible pointwise solve";
        case Errc::nonmonotone: return "non-monotone scheme";
        case Errc::no_convergence: return "no convergence";
        case Errc::unsupported: return "unsupported";
        case Errc::config: return "config error";
        case Errc::io: return "i/o error";
    }
    return "error";
}

const char* to_string(OperatorKind kind) {
    switch (kind) {
        case OperatorKind::linear: return "linear";
        case OperatorKind::first_order: return "first-order";
        case OperatorKind::fully_nonlinear: return "fully-nonlinear";
    }
    return "?";
}

namespace {

constexpr double kSingularGradient = 1e-12;

std::vector<Expr> parse_all(const std::vector<std::string>& texts) {
    std::vector<Expr> out;
    out.reserve(texts.size());
    for (const auto& t : texts) out.push_back(Expr::parse(t));
    return out;
}

Mat eval_matrix(const std::vector<Expr>& entries, int dim, const Vec& x) {
    Mat A(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) A(i, j) = entries[static_cast<std::size_t>(i * dim + j)](x);
    return A;
}

Vec eval_vector(const std::vector<Expr>& entries, int dim, const Vec& x) {
    Vec b(dim);
    for (int i = 0; i < dim; ++i) b[i] = entries[static_cast<std::size_t>(i)](x);
    return b;
}

struct FamilyEvaluator {
    const OperatorSpec& spec;
    const Jet& jet;
    Side side;

    double operator()(const LinearTerms& t) const {
        const Mat A = eval_matrix(t.A, spec.dim, jet.x);
        const Vec b = eval_vector(t.b, spec.dim, jet.x);
        return -(A.cwiseProduct(jet.X)).sum() - b.dot(jet.p) - t.c(jet.x) * jet.r;
    }

    double operator()(const EikonalTerms& t) const {
        return -t.b(jet.x) * jet.p.norm() - t.c(jet.x) * jet.r;
    }

    double operator()(const HessianEigenTerms& t) const {
        const Vec eta = sym_eigenvalues(jet.X);
        const int n = static_cast<int>(eta.size());
        double sum = 0.0;
        if (t.type == HessianEigenTerms::Type::largest_sum) {
            for (int i = std::max(0, n - t.k); i < n; ++i) sum += eta[i];
        } else {
            for (int i = 0; i < n; ++i) sum += std::max(eta[i], 0.0);
        }
        return -sum;
    }

    double operator()(const PLaplacianTerms& t) const {
        const double norm = jet.p.norm();
        if (norm < kSingularGradient) return t.q == 2.0 ? -jet.X.trace() : 0.0;
        const Vec unit = jet.p / norm;
        const double directional = unit.dot(jet.X * unit);
        return -std::pow(norm, t.q - 2.0) * (jet.X.trace() + (t.q - 2.0) * directional);
    }

    double operator()(const InfinityLaplacianTerms&) const {
        const double norm = jet.p.norm();
        if (norm < kSingularGradient) {
            const Vec eta = sym_eigenvalues(jet.X);
            return side == Side::sub ? -eta[eta.size() - 1] : -eta[0];
        }
        const Vec unit = jet.p / norm;
        return -unit.dot(jet.X * unit);
    }

    double operator()(const CustomTerms& t) const { return t.fn(jet, side); }
};

OperatorSpec base_spec(std::string name, int dim, double alpha, OperatorKind kind, OperatorFamily family,
                       Box region) {
    if (dim < 1 || dim > kMaxDim)
        throw Error(Errc::invalid_argument, "operator dimension must be in [1, 3]");
    if (!(alpha > 0.0)) throw Error(Errc::invalid_argument, "homogeneity degree must be positive");
    if (region.lo.size() != dim || region.hi.size() != dim)
        throw Error(Errc::dimension_mismatch, "sample region dimension differs from operator dimension");
    OperatorSpec spec;
    spec.name = std::move(name);
    spec.dim = dim;
    spec.alpha = alpha;
    spec.kind = kind;
    spec.family = std::move(family);
    spec.sample_region = std::move(region);
    return spec;
}

// Random jet with x in the sample region and moderate (r, p, X).
Jet random_jet(const OperatorSpec& spec, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> sym(-2.0, 2.0);
    Jet jet;
    jet.x.resize(spec.dim);
    jet.p.resize(spec.dim);
    jet.X.resize(spec.dim, spec.dim);
    for (int i = 0; i < spec.dim; ++i) {
        const double lo = spec.sample_region.lo[i];
        const double hi = spec.sample_region.hi[i];
        jet.x[i] = lo + (hi - lo) * unit(rng);
        jet.p[i] = sym(rng);
    }
    jet.r = sym(rng);
    for (int i = 0; i < spec.dim; ++i)
        for (int j = i; j < spec.dim; ++j) jet.X(i, j) = jet.X(j, i) = sym(rng);
    return jet;
}

}  // namespace

std::optional<LinearPart> OperatorSpec::linear_part(const Vec& x) const {
    if (kind != OperatorKind::linear) return std::nullopt;
    const auto* terms = std::get_if<LinearTerms>(&family);
    if (terms == nullptr) return std::nullopt;
    LinearPart part;
    part.A = eval_matrix(terms->A, dim, x);
    part.b = eval_vector(terms->b, dim, x);
    part.c = terms->c(x) - zero_order_shift;
    return part;
}

Box unit_box(int dim, double lo, double hi) {
    Box box;
    box.lo = Vec::Constant(dim, lo);
    box.hi = Vec::Constant(dim, hi);
    return box;
}

OperatorSpec make_linear(std::string name, int dim, const std::vector<std::string>& A,
                         const std::vector<std::string>& b, const std::string& c, Box region) {
    if (A.size() != static_cast<std::size_t>(dim * dim) || b.size() != static_cast<std::size_t>(dim))
        throw Error(Errc::dimension_mismatch, "linear coefficients do not match the dimension");
    LinearTerms terms{parse_all(A), parse_all(b), Expr::parse(c)};
    for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j)
            if (A[static_cast<std::size_t>(i * dim + j)] != A[static_cast<std::size_t>(j * dim + i)])
                throw Error(Errc::invalid_argument, "diffusion matrix must be symmetric");
    return base_spec(std::move(name), dim, 1.0, OperatorKind::linear, std::move(terms), std::move(region));
}

OperatorSpec make_eikonal(std::string name, int dim, const std::string& b, const std::string& c,
                          Box region) {
    return base_spec(std::move(name), dim, 1.0, OperatorKind::first_order,
                     EikonalTerms{Expr::parse(b), Expr::parse(c)}, std::move(region));
}

OperatorSpec make_minus_pk(int dim, int k, Box region) {
    if (k < 1 || k > dim) throw Error(Errc::invalid_argument, "P_k needs 1 <= k <= dim");
    std::ostringstream name;
    name << "-P_" << k;
    return base_spec(name.str(), dim, 1.0, OperatorKind::fully_nonlinear,
                     HessianEigenTerms{HessianEigenTerms::Type::largest_sum, k}, std::move(region));
}

OperatorSpec make_minus_pucci_max(int dim, Box region) {
    return base_spec("-M+_{0,1}", dim, 1.0, OperatorKind::fully_nonlinear,
                     HessianEigenTerms{HessianEigenTerms::Type::positive_part, dim}, std::move(region));
}

OperatorSpec make_p_laplacian(int dim, double q, Box region) {
    if (!(q >= 2.0)) throw Error(Errc::invalid_argument, "p-Laplacian requires p >= 2");
    std::ostringstream name;
    name << "-Delta_" << q;
    return base_spec(name.str(), dim, q - 1.0, OperatorKind::fully_nonlinear, PLaplacianTerms{q},
                     std::move(region));
}

OperatorSpec make_infinity_laplacian(int dim, Box region) {
    return base_spec("-Delta_inf", dim, 1.0, OperatorKind::fully_nonlinear, InfinityLaplacianTerms{},
                     std::move(region));
}

OperatorSpec make_custom(std::string name, int dim, double alpha, OperatorKind kind,
                         std::function<double(const Jet&, Side)> fn, Box region) {
    return base_spec(std::move(name), dim, alpha, kind, CustomTerms{std::move(fn)}, std::move(region));
}

double eval(const OperatorSpec& spec, const Jet& jet, Side side) {
    if (jet.x.size() != spec.dim || jet.p.size() != spec.dim || jet.X.rows() != spec.dim ||
        jet.X.cols() != spec.dim) {
        std::ostringstream os;
        os << "operator '" << spec.name << "' has dimension " << spec.dim << ", jet has dimension "
           << jet.x.size();
        throw Error(Errc::dimension_mismatch, os.str());
    }
    double value = std::visit(FamilyEvaluator{spec, jet, side}, spec.family);
    if (spec.zero_order_shift != 0.0) value += spec.zero_order_shift * signed_pow(jet.r, spec.alpha);
    return value;
}

EllipticityReport check_degenerate_ellipticity(const OperatorSpec& spec, std::size_t samples,
                                               std::uint64_t rng_seed) {
    if (samples == 0) throw Error(Errc::invalid_argument, "samples must be >= 1");
    std::mt19937_64 rng(rng_seed);
    std::uniform_real_distribution<double> sym(-1.0, 1.0);
    EllipticityReport report;
    report.samples = samples;
    for (std::size_t s = 0; s < samples; ++s) {
        Jet jet = random_jet(spec, rng);
        Mat M(spec.dim, spec.dim);
        for (int i = 0; i < spec.dim; ++i)
            for (int j = 0; j < spec.dim; ++j) M(i, j) = sym(rng);
        const Mat Y = M.transpose() * M;
        const double before = eval(spec, jet);
        Jet bumped = jet;
        bumped.X += Y;
        const double after = eval(spec, bumped);
        const double tol = 1e-9 * (1.0 + std::abs(before) + std::abs(after));
        if (after > before + tol) {
            ++report.violation_count;
            if (report.violations.size() < 8) report.violations.push_back({jet, Y, after - before});
        }
    }
    return report;
}

HomogeneityReport check_homogeneity(const OperatorSpec& spec, std::size_t samples,
                                    std::uint64_t rng_seed) {
    if (samples == 0) throw Error(Errc::invalid_argument, "samples must be >= 1");
    std::mt19937_64 rng(rng_seed);
    std::uniform_real_distribution<double> tau_dist(0.0, 10.0);
    HomogeneityReport report;
    report.samples = samples;
    for (std::size_t s = 0; s < samples; ++s) {
        const Jet jet = random_jet(spec, rng);
        double tau = tau_dist(rng);
        if (tau == 0.0) tau = 10.0;
        Jet scaled = jet;
        scaled.r *= tau;
        scaled.p *= tau;
        scaled.X *= tau;
        const double base = eval(spec, jet);
        const double expected = std::pow(tau, spec.alpha) * base;
        const double err = std::abs(eval(spec, scaled) - expected) / (1.0 + std::abs(expected));
        report.max_relative_error = std::max(report.max_relative_error, err);
    }
    return report;
}

OperatorSpec shift(const OperatorSpec& spec, double lambda0) {
    OperatorSpec out = spec;
    out.zero_order_shift += lambda0;
    if (lambda0 != 0.0) {
        std::ostringstream os;
        os << spec.name << (lambda0 >= 0 ? " + " : " - ") << std::abs(lambda0) << "u";
        out.name = os.str();
    }
    return out;
}

}  // namespace gpe
