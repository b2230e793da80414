#pragma once

#include "gpe/domains.hpp"
#include "gpe/operators.hpp"

#include <string>
#include <variant>
#include <vector>

namespace gpe {

namespace cert {

struct Power {  // x^n in the first coordinate
    int n = 1;
};
struct TwoMinusSqrt {};  // 2 - sqrt(x)
struct OnePlusSqrt {};   // 1 + sqrt(x)
struct Paraboloid {      // k - |x|^2
    double k = 1.0;
};
struct ExpTilt {  // 1 - eps exp(sigma xi.x)
    double eps = 0.1;
    double sigma = 1.0;
    Vec xi;
};
struct Constant {
    double c = 1.0;
};

}  // namespace cert

using CertFamily = std::variant<cert::Power, cert::TwoMinusSqrt, cert::OnePlusSqrt, cert::Paraboloid,
                                cert::ExpTilt, cert::Constant>;

/// Closed-form positive test function t * phi(x) with analytic derivatives,
/// claimed to be a supersolution on `declared_region`.
struct Certificate {
    CertFamily family;
    double scale = 1.0;
    Domain declared_region;

    double value(const Vec& x) const;
    Vec gradient(const Vec& x) const;
    Mat hessian(const Vec& x) const;
    /// Derivatives blow up here (sqrt families at x1 = 0).
    bool singular_at(const Vec& x) const;
    /// Exact infimum of the value over the closure of `domain`.
    double infimum(const Domain& domain) const;
    std::string describe() const;
};

Certificate make_certificate(CertFamily family, Domain declared_region, double scale = 1.0);

enum class CertClass { bounds_lambda1, bounds_lambda_bar1, bounds_mu1 };

const char* to_string(CertClass c);

struct CertReport {
    double lambda = 0.0;
    double margin = 0.0;  // min over samples of F[phi] - lambda phi^alpha
    bool ok = false;      // margin >= -1e-10
    CertClass classification = CertClass::bounds_lambda1;
    std::size_t sample_count = 0;
    std::size_t shifted_samples = 0;  // moved off the boundary or a singular point
    double positivity = 0.0;          // min phi over samples
    double infimum = 0.0;             // exact inf of phi over the sampled closure
    Vec worst_point;
    std::string note;
};

struct SampleOptions {
    /// Boundary samples are moved inward by this fraction of the region's
    /// diameter (the region is open); singular samples likewise.
    double boundary_shift = 1e-12;
};

/// Points covering the open region: a uniform lattice of about `samples`
/// points plus boundary points moved inward. Returns the number of moved
/// points through `shifted`.
std::vector<Vec> sample_region(const Domain& domain, std::size_t samples, const SampleOptions& options,
                               std::size_t* shifted = nullptr);

/// Margin of F[phi] - lambda phi^alpha over samples of the target, or of
/// the declared region when that strictly contains the closed target
/// (then the report bounds mu1). Throws Error{not_positive} if phi <= 0 at
/// a sample.
CertReport verify(const Certificate& cert, const OperatorSpec& spec, const Domain& target, double lambda,
                  std::size_t samples, const SampleOptions& options = {});

/// min over target samples of F[phi] / phi^alpha; verify at the result
/// minus 1e-6 is checked to pass.
double best_lambda(const Certificate& cert, const OperatorSpec& spec, const Domain& target, std::size_t samples,
                   const SampleOptions& options = {});

}  // namespace gpe
