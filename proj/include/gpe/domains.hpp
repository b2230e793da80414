#pragma once

#include "gpe/linalg.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace gpe {

struct Interval {
    double a = 0.0;
    double b = 1.0;
};

struct Rectangle {
    double a = 0.0, b = 1.0;  // x-range
    double c = 0.0, d = 1.0;  // y-range
};

struct Disk {
    double cx = 0.0, cy = 0.0;
    double radius = 1.0;
};

using Shape = std::variant<Interval, Rectangle, Disk>;

/// Bounded domain given by a base shape and an inflation radius; the
/// signed distance (positive inside) of the inflated domain is d + eps,
/// which is exact for the epsilon-neighbourhood.
class Domain {
public:
    Domain() = default;
    explicit Domain(Shape shape, double inflation = 0.0);

    static Domain interval(double a, double b);
    static Domain rectangle(double a, double b, double c, double d);
    static Domain disk(double cx, double cy, double radius);

    int dim() const;
    const Shape& shape() const { return shape_; }
    double inflation() const { return inflation_; }

    double signed_distance(const Vec& x) const;
    /// Signed distance of the base (uninflated) shape.
    double base_signed_distance(const Vec& x) const;

    /// Bounding box of the inflated domain.
    Vec lower() const;
    Vec upper() const;
    Vec centroid() const;
    double inradius() const;

    /// Point the lattice is anchored at (base lower corner for intervals
    /// and rectangles, the centre for disks), so inflated copies of a
    /// domain share one lattice.
    Vec lattice_anchor() const;

    /// Whether the closure of `inner` lies in this open domain, checked on
    /// the base geometry plus inflation margins.
    bool strictly_contains(const Domain& inner) const;

    std::string describe() const;

private:
    Shape shape_ = Interval{};
    double inflation_ = 0.0;
};

/// Omega + B_eps. Throws on eps < 0.
Domain inflate(const Domain& domain, double eps);

enum class NodeClass : std::uint8_t { interior, boundary, exterior };

/// Uniform lattice over the domain's bounding box plus a margin, with
/// each node classified as interior (d >= h/2), boundary band (|d| < h/2
/// or a stencil neighbour of an interior node) or exterior.
class Grid {
public:
    static constexpr int kMargin = 3;

    Grid(Domain domain, double h);

    const Domain& domain() const { return domain_; }
    double h() const { return h_; }
    int dim() const { return dim_; }
    int nx() const { return nx_; }
    int ny() const { return ny_; }
    std::size_t size() const { return cls_.size(); }

    std::size_t index(int i, int j = 0) const { return static_cast<std::size_t>(j) * nx_ + i; }
    int ix(std::size_t n) const { return static_cast<int>(n % static_cast<std::size_t>(nx_)); }
    int iy(std::size_t n) const { return static_cast<int>(n / static_cast<std::size_t>(nx_)); }

    Vec point(std::size_t n) const;
    double distance(std::size_t n) const { return dist_[n]; }
    NodeClass node_class(std::size_t n) const { return cls_[n]; }
    bool active(std::size_t n) const { return cls_[n] != NodeClass::exterior; }

    /// Lattice offset of node n by (di, dj); the margin guarantees this is
    /// in range for every active node and |di|, |dj| <= 2.
    std::size_t offset(std::size_t n, int di, int dj = 0) const;

    /// Interior and boundary nodes in lattice order.
    const std::vector<std::size_t>& active_nodes() const { return active_; }
    std::size_t count(NodeClass c) const;

    /// Node nearest to x (lattice rounding).
    std::size_t nearest(const Vec& x) const;

private:
    Domain domain_;
    double h_;
    int dim_;
    int nx_ = 1, ny_ = 1;
    Vec anchor_;
    Vec origin_;  // lattice index of node (0, 0) relative to the anchor
    std::vector<double> dist_;
    std::vector<NodeClass> cls_;
    std::vector<std::size_t> active_;
};

/// Throws Error{grid_too_coarse} when h exceeds the inradius.
std::shared_ptr<const Grid> build_grid(const Domain& domain, double h);

/// Grid function. `diverged` marks fields produced by a blown-up iteration.
struct Field {
    std::shared_ptr<const Grid> grid;
    std::vector<double> values;
    bool diverged = false;

    Field() = default;
    explicit Field(std::shared_ptr<const Grid> g, double fill = 0.0);

    double& operator[](std::size_t n) { return values[n]; }
    double operator[](std::size_t n) const { return values[n]; }

    double max() const;
    double max_active() const;
    bool all_finite() const;
};

/// Samples f at every node; exterior nodes get 0 when `zero_exterior`.
template <class F>
Field sample_field(std::shared_ptr<const Grid> grid, F&& f, bool zero_exterior = true) {
    Field field(grid);
    for (std::size_t n = 0; n < grid->size(); ++n) {
        if (zero_exterior && !grid->active(n)) continue;
        field[n] = f(grid->point(n));
    }
    return field;
}

}  // namespace gpe
