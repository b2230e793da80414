#pragma once

#include "gpe/expr.hpp"
#include "gpe/linalg.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace gpe {

/// Arguments (x, r, p, X) of F.
struct Jet {
    Vec x;
    double r = 0.0;
    Vec p;
    Mat X;  // symmetric

    int dim() const { return static_cast<int>(x.size()); }
};

enum class OperatorKind { linear, first_order, fully_nonlinear };

/// Which semicontinuous envelope to use where an operator is singular.
/// Subsolution tests use the lower envelope, supersolution tests the upper.
enum class Side { sub, super };

const char* to_string(OperatorKind kind);

/// Axis-aligned region where coefficients are defined; random jets for the
/// structural checks draw x from here.
struct Box {
    Vec lo;
    Vec hi;
};

/// -Tr(A(x)X) - b(x).p - c(x) r. `A` holds dim*dim row-major entries.
struct LinearTerms {
    std::vector<Expr> A;
    std::vector<Expr> b;
    Expr c;
};

/// -b(x)|p| - c(x) r.
struct EikonalTerms {
    Expr b;
    Expr c;
};

/// -P_k(X) (negated sum of the k largest Hessian eigenvalues) or the
/// degenerate maximal Pucci operator -sum_i max(eta_i, 0).
struct HessianEigenTerms {
    enum class Type { largest_sum, positive_part };
    Type type = Type::largest_sum;
    int k = 1;
};

/// -|p|^{q-2}(Tr X + (q-2) p^.X.p^), q >= 2, expanded non-divergence form.
struct PLaplacianTerms {
    double q = 2.0;
};

/// -p^.X.p^ with p^ = p/|p|; at p = 0 the envelope -eta_max (sub) or
/// -eta_min (super).
struct InfinityLaplacianTerms {};

/// Arbitrary evaluator without a discretization.
struct CustomTerms {
    std::function<double(const Jet&, Side)> fn;
};

using OperatorFamily = std::variant<LinearTerms, EikonalTerms, HessianEigenTerms, PLaplacianTerms,
                                    InfinityLaplacianTerms, CustomTerms>;

struct LinearPart {
    Mat A;
    Vec b;
    double c = 0.0;
};

/// F(x, r, p, X) together with the metadata the solvers need. Immutable
/// after construction in practice; copying is cheap (expressions share
/// their trees).
struct OperatorSpec {
    std::string name;
    int dim = 1;
    double alpha = 1.0;
    OperatorKind kind = OperatorKind::linear;
    OperatorFamily family;
    /// lambda0 in F + lambda0 sign(r)|r|^alpha.
    double zero_order_shift = 0.0;
    Box sample_region;

    /// Coefficients at x; engaged iff kind == linear. Includes the shift.
    std::optional<LinearPart> linear_part(const Vec& x) const;
};

OperatorSpec make_linear(std::string name, int dim, const std::vector<std::string>& A,
                         const std::vector<std::string>& b, const std::string& c, Box region);
OperatorSpec make_eikonal(std::string name, int dim, const std::string& b, const std::string& c,
                          Box region);
OperatorSpec make_minus_pk(int dim, int k, Box region);
OperatorSpec make_minus_pucci_max(int dim, Box region);
OperatorSpec make_p_laplacian(int dim, double q, Box region);
OperatorSpec make_infinity_laplacian(int dim, Box region);
OperatorSpec make_custom(std::string name, int dim, double alpha, OperatorKind kind,
                         std::function<double(const Jet&, Side)> fn, Box region);

Box unit_box(int dim, double lo, double hi);

/// F(x, r, p, X). Throws Error{dimension_mismatch} if the jet does not
/// match spec.dim.
double eval(const OperatorSpec& spec, const Jet& jet, Side side = Side::sub);

struct EllipticityViolation {
    Jet jet;
    Mat Y;
    double increase = 0.0;  // F(X+Y) - F(X) > 0
};

struct EllipticityReport {
    std::size_t samples = 0;
    std::vector<EllipticityViolation> violations;  // first few only
    std::size_t violation_count = 0;
};

/// Samples jets and Y = M^T M >= 0; flags F(X+Y) > F(X) + tol.
EllipticityReport check_degenerate_ellipticity(const OperatorSpec& spec, std::size_t samples,
                                               std::uint64_t rng_seed);

struct HomogeneityReport {
    std::size_t samples = 0;
    double max_relative_error = 0.0;
};

/// Samples jets and tau in (0, 10]; relative error of F(tau jet) against
/// tau^alpha F(jet), normalized by 1 + |F(jet)| tau^alpha.
HomogeneityReport check_homogeneity(const OperatorSpec& spec, std::size_t samples,
                                    std::uint64_t rng_seed);

/// F + lambda0 sign(r)|r|^alpha.
OperatorSpec shift(const OperatorSpec& spec, double lambda0);

}  // namespace gpe
