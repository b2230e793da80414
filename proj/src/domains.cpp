#include "gpe/domains.hpp"

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

Vec vec1(double x) {
    Vec v(1);
    v[0] = x;
    return v;
}

Vec vec2(double x, double y) {
    Vec v(2);
    v << x, y;
    return v;
}

// Boundary points of the closure of a domain; used for containment.
std::vector<Vec> boundary_samples(const Domain& dom, int n) {
    std::vector<Vec> pts;
    const double e = dom.inflation();
    std::visit(Overloaded{
                   [&](const Interval& s) {
                       pts.push_back(vec1(s.a - e));
                       pts.push_back(vec1(s.b + e));
                   },
                   [&](const Rectangle& s) {
                       // Corners of the inflated rectangle are quarter circles.
                       const double cxs[2] = {s.a, s.b};
                       const double cys[2] = {s.c, s.d};
                       for (int k = 0; k < n; ++k) {
                           const double t = (k + 0.5) / n;
                           pts.push_back(vec2(s.a + t * (s.b - s.a), s.c - e));
                           pts.push_back(vec2(s.a + t * (s.b - s.a), s.d + e));
                           pts.push_back(vec2(s.a - e, s.c + t * (s.d - s.c)));
                           pts.push_back(vec2(s.b + e, s.c + t * (s.d - s.c)));
                       }
                       for (double cx : cxs)
                           for (double cy : cys)
                               for (int k = 0; k <= 16; ++k) {
                                   const double th = 2.0 * std::numbers::pi * k / 16.0;
                                   pts.push_back(vec2(cx + e * std::cos(th), cy + e * std::sin(th)));
                               }
                   },
                   [&](const Disk& s) {
                       for (int k = 0; k < n; ++k) {
                           const double th = 2.0 * std::numbers::pi * k / n;
                           pts.push_back(vec2(s.cx + (s.radius + e) * std::cos(th),
                                              s.cy + (s.radius + e) * std::sin(th)));
                       }
                   },
               },
               dom.shape());
    return pts;
}

}  // namespace

Domain::Domain(Shape shape, double inflation) : shape_(shape), inflation_(inflation) {
    if (inflation < 0.0) throw Error(Errc::invalid_argument, "inflation must be >= 0");
    std::visit(Overloaded{
                   [](const Interval& s) {
                       if (!(s.b > s.a)) throw Error(Errc::invalid_argument, "interval needs a < b");
                   },
                   [](const Rectangle& s) {
                       if (!(s.b > s.a && s.d > s.c))
                           throw Error(Errc::invalid_argument, "rectangle needs a < b and c < d");
                   },
                   [](const Disk& s) {
                       if (!(s.radius > 0.0)) throw Error(Errc::invalid_argument, "disk radius must be > 0");
                   },
               },
               shape_);
}

Domain Domain::interval(double a, double b) { return Domain(Interval{a, b}); }
Domain Domain::rectangle(double a, double b, double c, double d) { return Domain(Rectangle{a, b, c, d}); }
Domain Domain::disk(double cx, double cy, double radius) { return Domain(Disk{cx, cy, radius}); }

int Domain::dim() const { return std::holds_alternative<Interval>(shape_) ? 1 : 2; }

double Domain::base_signed_distance(const Vec& x) const {
    if (x.size() != dim()) throw Error(Errc::dimension_mismatch, "point dimension differs from domain");
    return std::visit(Overloaded{
                          [&](const Interval& s) { return std::min(x[0] - s.a, s.b - x[0]); },
                          [&](const Rectangle& s) {
                              const double dx = std::max({s.a - x[0], 0.0, x[0] - s.b});
                              const double dy = std::max({s.c - x[1], 0.0, x[1] - s.d});
                              if (dx > 0.0 || dy > 0.0) return -std::hypot(dx, dy);
                              return std::min({x[0] - s.a, s.b - x[0], x[1] - s.c, s.d - x[1]});
                          },
                          [&](const Disk& s) { return s.radius - std::hypot(x[0] - s.cx, x[1] - s.cy); },
                      },
                      shape_);
}

double Domain::signed_distance(const Vec& x) const { return base_signed_distance(x) + inflation_; }

Vec Domain::lower() const {
    const double e = inflation_;
    return std::visit(Overloaded{
                          [&](const Interval& s) { return vec1(s.a - e); },
                          [&](const Rectangle& s) { return vec2(s.a - e, s.c - e); },
                          [&](const Disk& s) { return vec2(s.cx - s.radius - e, s.cy - s.radius - e); },
                      },
                      shape_);
}

Vec Domain::upper() const {
    const double e = inflation_;
    return std::visit(Overloaded{
                          [&](const Interval& s) { return vec1(s.b + e); },
                          [&](const Rectangle& s) { return vec2(s.b + e, s.d + e); },
                          [&](const Disk& s) { return vec2(s.cx + s.radius + e, s.cy + s.radius + e); },
                      },
                      shape_);
}

Vec Domain::centroid() const { return 0.5 * (lower() + upper()); }

double Domain::inradius() const {
    const double e = inflation_;
    return std::visit(Overloaded{
                          [&](const Interval& s) { return 0.5 * (s.b - s.a) + e; },
                          [&](const Rectangle& s) { return 0.5 * std::min(s.b - s.a, s.d - s.c) + e; },
                          [&](const Disk& s) { return s.radius + e; },
                      },
                      shape_);
}

Vec Domain::lattice_anchor() const {
    return std::visit(Overloaded{
                          [](const Interval& s) { return vec1(s.a); },
                          [](const Rectangle& s) { return vec2(s.a, s.c); },
                          [](const Disk& s) { return vec2(s.cx, s.cy); },
                      },
                      shape_);
}

bool Domain::strictly_contains(const Domain& inner) const {
    if (inner.dim() != dim()) return false;
    // Both domains are convex, so the minimum of this domain's (concave)
    // distance over the inner closure sits on the inner boundary.
    for (const Vec& p : boundary_samples(inner, 512))
        if (!(signed_distance(p) > 1e-12)) return false;
    return true;
}

std::string Domain::describe() const {
    std::ostringstream os;
    os.precision(12);
    std::visit(Overloaded{
                   [&](const Interval& s) { os << "interval(" << s.a << "," << s.b << ")"; },
                   [&](const Rectangle& s) {
                       os << "rectangle(" << s.a << "," << s.b << "," << s.c << "," << s.d << ")";
                   },
                   [&](const Disk& s) { os << "disk(" << s.cx << "," << s.cy << "," << s.radius << ")"; },
               },
               shape_);
    if (inflation_ > 0.0) os << "+B(" << inflation_ << ")";
    return os.str();
}

Domain inflate(const Domain& domain, double eps) {
    if (!(eps >= 0.0)) throw Error(Errc::invalid_argument, "inflation radius must be >= 0");
    return Domain(domain.shape(), domain.inflation() + eps);
}

Grid::Grid(Domain domain, double h) : domain_(std::move(domain)), h_(h), dim_(domain_.dim()) {
    const Vec anchor = domain_.lattice_anchor();
    const Vec lo = domain_.lower();
    const Vec hi = domain_.upper();
    int i_lo[2] = {0, 0};
    int count[2] = {1, 1};
    for (int k = 0; k < dim_; ++k) {
        i_lo[k] = static_cast<int>(std::floor((lo[k] - anchor[k]) / h_ + 1e-9)) - kMargin;
        const int i_hi = static_cast<int>(std::ceil((hi[k] - anchor[k]) / h_ - 1e-9)) + kMargin;
        count[k] = i_hi - i_lo[k] + 1;
    }
    nx_ = count[0];
    ny_ = dim_ == 2 ? count[1] : 1;
    origin_.resize(dim_);
    for (int k = 0; k < dim_; ++k) origin_[k] = static_cast<double>(i_lo[k]);
    const std::size_t total = static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_);
    dist_.resize(total);
    cls_.assign(total, NodeClass::exterior);

    anchor_ = anchor;
    for (std::size_t n = 0; n < total; ++n) dist_[n] = domain_.signed_distance(point(n));

    const double half = 0.5 * h_;
    for (std::size_t n = 0; n < total; ++n)
        if (dist_[n] >= half - 1e-9 * h_) cls_[n] = NodeClass::interior;
    for (std::size_t n = 0; n < total; ++n) {
        if (cls_[n] == NodeClass::interior) {
            const int i = ix(n), j = iy(n);
            const int jr = dim_ == 2 ? 1 : 0;
            for (int dj = -jr; dj <= jr; ++dj)
                for (int di = -1; di <= 1; ++di) {
                    const std::size_t m = index(i + di, j + dj);
                    if (cls_[m] != NodeClass::interior) cls_[m] = NodeClass::boundary;
                }
        } else if (std::abs(dist_[n]) < half) {
            cls_[n] = NodeClass::boundary;
        }
    }
    for (std::size_t n = 0; n < total; ++n)
        if (cls_[n] != NodeClass::exterior) active_.push_back(n);
}

Vec Grid::point(std::size_t n) const {
    Vec x(dim_);
    x[0] = anchor_[0] + (origin_[0] + ix(n)) * h_;
    if (dim_ == 2) x[1] = anchor_[1] + (origin_[1] + iy(n)) * h_;
    return x;
}

std::size_t Grid::offset(std::size_t n, int di, int dj) const {
    return index(ix(n) + di, iy(n) + dj);
}

std::size_t Grid::count(NodeClass c) const {
    return static_cast<std::size_t>(std::count(cls_.begin(), cls_.end(), c));
}

std::size_t Grid::nearest(const Vec& x) const {
    int i = static_cast<int>(std::lround((x[0] - anchor_[0]) / h_ - origin_[0]));
    int j = 0;
    if (dim_ == 2) j = static_cast<int>(std::lround((x[1] - anchor_[1]) / h_ - origin_[1]));
    i = std::clamp(i, 0, nx_ - 1);
    j = std::clamp(j, 0, ny_ - 1);
    return index(i, j);
}

std::shared_ptr<const Grid> build_grid(const Domain& domain, double h) {
    if (!(h > 0.0)) throw Error(Errc::invalid_argument, "mesh width must be > 0");
    const double inradius = domain.inradius();
    if (h > inradius) {
        std::ostringstream os;
        os << "mesh width " << h << " exceeds the inradius " << inradius << " of " << domain.describe()
           << "; no interior node would survive";
        throw Error(Errc::grid_too_coarse, os.str());
    }
    auto grid = std::make_shared<const Grid>(domain, h);
    if (grid->count(NodeClass::interior) == 0)
        throw Error(Errc::grid_too_coarse, "no interior node at mesh width for " + domain.describe());
    return grid;
}

Field::Field(std::shared_ptr<const Grid> g, double fill) : grid(std::move(g)), values(grid->size(), fill) {}

double Field::max() const { return *std::max_element(values.begin(), values.end()); }

double Field::max_active() const {
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t n : grid->active_nodes()) m = std::max(m, values[n]);
    return m;
}

bool Field::all_finite() const {
    return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

}  // namespace gpe
