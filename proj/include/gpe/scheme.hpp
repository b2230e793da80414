#pragma once

#include "gpe/domains.hpp"
#include "gpe/operators.hpp"

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace gpe {

/// Boundary-band clause of the subsolution test: the relaxed viscosity
/// condition min(u, F) <= 0 or the strict reading max(u, F) <= 0.
enum class BoundaryClause { relaxed_min, strict_max };

const char* to_string(BoundaryClause clause);

struct SchemeOptions {
    double viscous_eps = 0.0;  // coefficient of an added -eps * Laplacian
    Side side = Side::sub;
    BoundaryClause clause = BoundaryClause::relaxed_min;
    /// Smallest arm fraction for second differences cut by the boundary;
    /// a node sitting on the boundary with diffusion across it is pinned
    /// with stiffness ~ 1/(pin_fraction h^2).
    double pin_fraction = 1e-3;
};

/// Stencil slot 0 is the node itself; slots 1..8 are E, W, N, S, NE, SW,
/// SE, NW (1D uses E, W only).
constexpr int kStencilSize = 9;

struct NodeLinearization {
    double value = 0.0;
    std::array<double, kStencilSize> grad{};  // d value / d u(slot)
};

/// Monotone finite-difference discretization S_i(u) of an operator on a
/// grid. Interior and boundary-band nodes carry the operator; exterior
/// nodes are pinned (S_i = u_i).
///
/// Second-order terms use centred second differences along the lattice
/// directions e1, e2, (1,1), (1,-1). When an arm of a difference leaves
/// the domain, the zero boundary value is placed at the crossing of the
/// zero level set of the signed distance (Shortley-Weller), so
/// diffusion across the boundary enforces the Dirichlet condition while
/// purely first-order boundary nodes keep their own equation. First-order
/// terms are upwinded by drift sign; |Du| uses the Godunov-type norm of
/// the one-sided differences. Hessian-eigenvalue operators take the
/// maximum of directional second differences, which is monotone but only
/// resolves Hessians whose eigenvectors align with those directions.
class DiscreteScheme {
public:
    DiscreteScheme(OperatorSpec spec, std::shared_ptr<const Grid> grid, SchemeOptions options = {});

    const OperatorSpec& spec() const { return spec_; }
    const Grid& grid() const { return *grid_; }
    const std::shared_ptr<const Grid>& grid_ptr() const { return grid_; }
    const SchemeOptions& options() const { return options_; }
    double viscous_eps() const { return options_.viscous_eps; }

    /// Neighbour node ids for stencil slots 1..stencil_size()-1.
    int stencil_size() const { return grid_->dim() == 1 ? 3 : kStencilSize; }
    std::size_t neighbor(std::size_t node, int slot) const;

    /// S_i with the node's own value replaced by r. Only valid for active
    /// nodes.
    double node_value(std::size_t node, double r, std::span<const double> u) const;
    NodeLinearization linearize(std::size_t node, double r, std::span<const double> u) const;

    /// Largest coefficient magnitude over active nodes (used for the
    /// default tolerance 10 h (1 + scale)).
    double coefficient_scale() const { return scale_; }
    double default_tolerance() const;

    /// Index of the node in grid().active_nodes(), or -1.
    int active_index(std::size_t node) const { return active_index_[node]; }

    struct DirectionArms {
        double plus = 0.0, minus = 0.0, self = 0.0;  // D = plus*u+ + minus*u- + self*u
    };
    struct NodeData {
        std::array<std::size_t, kStencilSize> nbr{};
        std::array<DirectionArms, 4> arms{};
        double a11 = 0.0, a22 = 0.0, a12 = 0.0;
        double b1 = 0.0, b2 = 0.0, c = 0.0;
        // Arm fractions along e1, used by the 1D flux-form operators.
        double theta_plus = 1.0, theta_minus = 1.0;
        bool cut_plus = false, cut_minus = false;
    };

private:
    OperatorSpec spec_;
    std::shared_ptr<const Grid> grid_;
    SchemeOptions options_;
    std::vector<int> active_index_;
    std::vector<NodeData> data_;
    double scale_ = 0.0;

    NodeLinearization evaluate(std::size_t node, double r, std::span<const double> u) const;
};

/// Per-node values: S_i(u) at active nodes, u_i at exterior nodes.
struct Residual {
    std::shared_ptr<const Grid> grid;
    std::vector<double> values;
};

Residual residual(const DiscreteScheme& scheme, const Field& u);

struct NodeVerdict {
    bool ok = true;
    std::size_t worst_node = 0;
    double worst_value = 0.0;
};

/// ok iff S_i(u) <= tol at interior nodes, clause(u_i, S_i(u)) <= tol at
/// boundary nodes and u_i <= tol at exterior nodes. worst_value is the
/// largest constrained quantity.
NodeVerdict is_subsolution(const DiscreteScheme& scheme, const Field& u, double tol);

/// ok iff S_i(phi) - lambda phi_i^alpha >= -tol at interior nodes;
/// worst_value is the smallest such margin. Throws Error{not_positive} if
/// phi <= 0 at an interior node.
NodeVerdict is_supersolution(const DiscreteScheme& scheme, const Field& phi, double lambda, double tol);

struct MonotonicityReport {
    std::size_t trials = 0;
    std::size_t violations = 0;
    double worst_increase = 0.0;
};

/// Randomized check that S_i is non-increasing in every neighbour value:
/// S_i(u + delta e_j) <= S_i(u) + tol for all i != j in j's stencil.
MonotonicityReport check_monotonicity(const DiscreteScheme& scheme, std::size_t trials,
                                      std::uint64_t rng_seed);

}  // namespace gpe
