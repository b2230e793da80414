#pragma once

#include "gpe/scheme.hpp"

#include <optional>

namespace gpe {

struct MPOptions {
    std::size_t max_sweeps = 1000000;
};

struct MPVerdict {
    bool holds = false;
    std::optional<Field> witness;  // engaged iff !holds
    double max_positive_part = 0.0;
    std::size_t iterations = 0;
};

/// Descends from u = cap (0 on exterior nodes) to the maximal discrete
/// subsolution below the cap. Each Gauss-Seidel update lowers u_i to the
/// largest r in [0, u_i] meeting the node's subsolution constraint; under
/// the strict-max clause boundary nodes go to 0. The maximum principle
/// holds iff the limit is <= 10 tol. Throws Error{no_convergence} at the
/// sweep cap.
MPVerdict mp_test(const DiscreteScheme& scheme, double cap, double tol, const MPOptions& options = {});

struct WitnessVerdict {
    bool ok = false;
    NodeVerdict subsolution;
    double max_value = 0.0;
};

/// ok iff u passes is_subsolution at tol and max(u) > tol.
WitnessVerdict witness_check(const DiscreteScheme& scheme, const Field& u, double tol);

}  // namespace gpe
