#include "gpe/zoo.hpp"

#include "gpe/error.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace gpe {

const char* to_string(Provenance p) {
    switch (p) {
        case Provenance::literature: return "literature";
        case Provenance::elementary: return "elementary";
        case Provenance::computed: return "computed";
    }
    return "?";
}

const char* to_string(Relation r) {
    switch (r) {
        case Relation::eq: return "=";
        case Relation::approx: return "~";
        case Relation::ge: return ">=";
        case Relation::le: return "<=";
        case Relation::gt: return ">";
        case Relation::lt: return "<";
    }
    return "?";
}

namespace {

constexpr double kPi2 = std::numbers::pi * std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Principal eigenvalue of -(|u'|u')' = lambda |u| u on (0,1):
// (p-1) pi_p^p with pi_p = 2 pi / (p sin(pi/p)), p = 3.
double p_laplacian_eigenvalue() {
    const double p = 3.0;
    const double pi_p = 2.0 * std::numbers::pi / (p * std::sin(std::numbers::pi / p));
    return (p - 1.0) * std::pow(pi_p, p);
}

KnownFact fact(std::string q, Relation r, double v, Provenance p, std::string cite, bool asserted = true) {
    return KnownFact{std::move(q), r, v, p, asserted, std::move(cite)};
}

Hypotheses all_hold(std::string note = {}) {
    Hypotheses h;
    h.note = std::move(note);
    return h;
}

std::vector<ZooEntry> build_zoo() {
    const Domain unit = Domain::interval(0.0, 1.0);
    const Domain sym = Domain::interval(-1.0, 1.0);
    const Domain square = Domain::rectangle(0.0, 1.0, 0.0, 1.0);
    const Domain disk = Domain::disk(0.0, 0.0, 1.0);
    const Box line = unit_box(1, -1.5, 1.5);
    const Box plane = unit_box(2, -1.5, 1.5);
    const double h1 = 1.0 / 50.0, h2 = 1.0 / 20.0;

    std::vector<ZooEntry> z;
    z.push_back({"laplacian", "-u''", make_linear("laplacian", 1, {"1"}, {"0"}, "0", line), unit, h1, all_hold(),
                 {fact("mu1", Relation::eq, kPi2, Provenance::elementary, "Dirichlet eigenvalue sin(pi x)"),
                  fact("lambda-star", Relation::eq, kPi2, Provenance::elementary,
                       "uniformly elliptic: all notions coincide"),
                  fact("mp", Relation::eq, 1, Provenance::elementary, "mu1 > 0")}});
    z.push_back({"laplacian_2d", "-(u_xx + u_yy)",
                 make_linear("laplacian_2d", 2, {"1", "0", "0", "1"}, {"0", "0"}, "0", plane), square, h2, all_hold(),
                 {fact("mu1", Relation::eq, 2.0 * kPi2, Provenance::elementary, "sin(pi x) sin(pi y)"),
                  fact("mp", Relation::eq, 1, Provenance::elementary, "mu1 > 0")}});
    z.push_back({"laplacian_plus_one", "-u'' + u", make_linear("laplacian_plus_one", 1, {"1"}, {"0"}, "-1", line), unit,
                 h1, all_hold(),
                 {fact("mu1", Relation::eq, kPi2 + 1.0, Provenance::elementary, "shift of the Laplacian by 1"),
                  fact("mp", Relation::eq, 1, Provenance::literature,
                       "standard sufficient condition min F(x, r, 0, 0) > 0")}});
    z.push_back({"drift_half_minus_one", "(x/2) u' - u",
                 make_linear("drift_half_minus_one", 1, {"0"}, {"-x/2"}, "1", line), unit, h1, all_hold(),
                 {fact("lambda1", Relation::eq, kInf, Provenance::literature, "x^n test functions, n to infinity"),
                  fact("mu1", Relation::le, 0.0, Provenance::literature, "MP fails, so mu1 <= 0"),
                  fact("mp", Relation::eq, 0, Provenance::literature, "x(1-x) is a positive subsolution")}});
    z.push_back({"drift_2x", "-2x u'", make_linear("drift_2x", 1, {"0"}, {"2*x"}, "0", line), unit, h1, all_hold(),
                 {fact("lambda-star", Relation::ge, 1.0, Provenance::literature,
                       "conjugation to -eps u'' + (x^2/eps + 1) u"),
                  fact("mu1", Relation::le, 0.0, Provenance::literature, "MP fails, so mu1 <= 0"),
                  fact("mp", Relation::eq, 0, Provenance::literature, "indicator of {0} is a subsolution")}});
    z.push_back({"drift_x", "-x u'", make_linear("drift_x", 1, {"0"}, {"x"}, "0", line), unit, h1, all_hold(),
                 {fact("mu1", Relation::eq, 0.0, Provenance::literature, "lambda1 = lambda-bar1 = mu1 = 0"),
                  fact("lambda1", Relation::eq, 0.0, Provenance::literature, "lambda1 = lambda-bar1 = mu1 = 0")}});
    z.push_back({"drift_x2", "x^2 u'", make_linear("drift_x2", 1, {"0"}, {"-x^2"}, "0", line), sym, h1, all_hold(),
                 {fact("mu1", Relation::eq, 0.0, Provenance::literature,
                       "no positive eigenfunction although mu1 is attained at 0")}});
    z.push_back({"sqrt_drift", "-sqrt(x) u'  (extended by sqrt|x|)",
                 make_linear("sqrt_drift", 1, {"0"}, {"sqrt(|x|)"}, "0", line), unit, h1,
                 Hypotheses{true, true, true, false, true, false, "sqrt is not Lipschitz at 0"},
                 {fact("lambda-bar1", Relation::ge, 0.25, Provenance::literature, "test function 2 - sqrt(x)"),
                  fact("mu1", Relation::eq, 0.0, Provenance::literature, "independent of the extension"),
                  fact("mp", Relation::eq, 0, Provenance::literature, "indicator of {0} is a subsolution")}});
    z.push_back({"x_diffusion", "-x u''  (extended by |x|)",
                 make_linear("x_diffusion", 1, {"|x|"}, {"0"}, "0", line), unit, h1,
                 Hypotheses{true, true, true, false, true, false, "sqrt(|x|) diffusion root is not Lipschitz"},
                 {fact("lambda-bar1", Relation::ge, 0.125, Provenance::literature, "test function 1 + sqrt(x)"),
                  fact("mu1", Relation::eq, 0.0, Provenance::literature, "independent of the extension"),
                  fact("mp", Relation::eq, 0, Provenance::literature, "indicator of {0} is a subsolution")}});
    z.push_back({"grushin", "-u_xx - |x|^2 u_yy",
                 make_linear("grushin", 2, {"1", "0", "0", "|x|^2"}, {"0", "0"}, "0", plane),
                 Domain::rectangle(-1.0, 1.0, 0.0, 1.0), h2, all_hold("Sigma = diag(1, |x|) is Lipschitz"),
                 {fact("mu1", Relation::gt, 0.0, Provenance::literature, "test function 1 - eps exp(sigma x)"),
                  fact("mp", Relation::eq, 1, Provenance::literature, "mu1 > 0")}});
    z.push_back({"minus_p1", "-P_1(D^2 u)", make_minus_pk(2, 1, plane), disk, h2, all_hold(),
                 {fact("mu1", Relation::gt, 0.0, Provenance::literature, "P_k operators have positive mu1"),
                  fact("mp", Relation::eq, 1, Provenance::literature, "P_k operators satisfy MP")}});
    z.push_back({"minus_p2", "-P_2(D^2 u) = -Laplacian in 2D", make_minus_pk(2, 2, plane), disk, h2, all_hold(),
                 {fact("mu1", Relation::gt, 0.0, Provenance::literature, "paraboloid k - |x|^2 test function"),
                  fact("mp", Relation::eq, 1, Provenance::literature, "P_k operators satisfy MP")}});
    z.push_back({"pucci_max", "-sum max(eta_i, 0)", make_minus_pucci_max(2, plane), disk, h2, all_hold(),
                 {fact("mu1", Relation::gt, 0.0, Provenance::literature,
                       "claimed positive; every smooth phi has F[phi] <= 0, so unverified", false)}});
    z.push_back({"eikonal", "-|u'| + u", make_eikonal("eikonal", 1, "1", "-1", line), unit, h1, all_hold(),
                 {fact("lambda-bar1", Relation::ge, 1.0, Provenance::elementary, "constant test function"),
                  fact("mu1", Relation::approx, 1.0, Provenance::computed, "blowup threshold on inflated intervals"),
                  fact("mp", Relation::eq, 1, Provenance::literature,
                       "standard sufficient condition min F(x, r, 0, 0) > 0")}});
    z.push_back({"p_laplacian", "-(|u'| u')'  (p = 3)", make_p_laplacian(1, 3.0, line), unit, h1,
                 Hypotheses{true, true, true, true, false, false, "alpha = 2 > 1 rules out (H5)"},
                 {fact("mu1", Relation::eq, p_laplacian_eigenvalue(), Provenance::elementary,
                       "(p-1) pi_p^p with pi_p = 2 pi / (p sin(pi/p))")}});
    z.push_back({"infinity_laplacian", "-u'' (1D infinity Laplacian)", make_infinity_laplacian(1, line), unit, h1,
                 Hypotheses{true, true, true, true, false, false, "discontinuous at p = 0"},
                 {fact("mu1", Relation::eq, kPi2, Provenance::elementary, "coincides with -u'' in 1D")}});
    z.push_back({"pure_drift", "u'", make_linear("pure_drift", 1, {"0"}, {"-1"}, "0", line), unit, h1, all_hold(),
                 {fact("mu1", Relation::eq, kInf, Provenance::elementary, "exp(lambda x) for every lambda"),
                  fact("mp", Relation::eq, 1, Provenance::elementary, "mu1 > 0")}});
    return z;
}

}  // namespace

const std::vector<ZooEntry>& zoo() {
    static const std::vector<ZooEntry> entries = build_zoo();
    return entries;
}

const ZooEntry& zoo_entry(std::string_view name) {
    for (const auto& e : zoo())
        if (e.name == name) return e;
    throw Error(Errc::config, "unknown zoo operator '" + std::string(name) + "'");
}

OperatorSpec anti_laplacian(int dim) {
    std::vector<std::string> A(static_cast<std::size_t>(dim * dim), "0");
    for (int i = 0; i < dim; ++i) A[static_cast<std::size_t>(i * dim + i)] = "-1";
    return make_linear("anti_laplacian", dim, A, std::vector<std::string>(static_cast<std::size_t>(dim), "0"), "0",
                       unit_box(dim, -1.5, 1.5));
}

std::string describe_coefficients(const OperatorSpec& spec) {
    std::ostringstream os;
    struct V {
        std::ostringstream& os;
        void operator()(const LinearTerms& t) const {
            os << "A = [";
            for (std::size_t i = 0; i < t.A.size(); ++i) os << (i ? ", " : "") << t.A[i].text();
            os << "]; b = [";
            for (std::size_t i = 0; i < t.b.size(); ++i) os << (i ? ", " : "") << t.b[i].text();
            os << "]; c = " << t.c.text();
        }
        void operator()(const EikonalTerms& t) const { os << "b = " << t.b.text() << "; c = " << t.c.text(); }
        void operator()(const HessianEigenTerms& t) const {
            if (t.type == HessianEigenTerms::Type::largest_sum)
                os << "k = " << t.k;
            else
                os << "positive part";
        }
        void operator()(const PLaplacianTerms& t) const { os << "p = " << t.q; }
        void operator()(const InfinityLaplacianTerms&) const { os << "-"; }
        void operator()(const CustomTerms&) const { os << "custom"; }
    };
    std::visit(V{os}, spec.family);
    if (spec.zero_order_shift != 0.0) os << "; shift = " << spec.zero_order_shift;
    return os.str();
}

std::string catalog_text() {
    std::ostringstream os;
    os.precision(12);
    for (const auto& e : zoo()) {
        const auto& h = e.hypotheses;
        os << "[operator " << e.name << "]\n";
        os << "formula = " << e.formula << "\n";
        os << "dim = " << e.spec.dim << "\n";
        os << "alpha = " << e.spec.alpha << "\n";
        os << "kind = " << to_string(e.spec.kind) << "\n";
        os << "coefficients = " << describe_coefficients(e.spec) << "\n";
        os << "domain = " << e.domain.describe() << "\n";
        os << "h = " << e.h << "\n";
        os << "hypotheses = H1:" << h.h1 << " H2:" << h.h2 << " H3:" << h.h3 << " H4:" << h.h4 << " H5:" << h.h5
           << " H6:" << h.h6 << "\n";
        if (!h.note.empty()) os << "hypotheses_note = " << h.note << "\n";
        for (const auto& f : e.facts) {
            os << "fact = " << f.quantity << " " << to_string(f.relation) << " " << f.value << " ["
               << to_string(f.provenance) << (f.asserted ? "" : ", unverified") << "] " << f.citation << "\n";
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace gpe
