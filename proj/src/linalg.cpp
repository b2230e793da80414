#include "gpe/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>

namespace gpe {

Vec sym_eigenvalues(const Mat& X) {
    const auto n = X.rows();
    Vec eta(n);
    if (n == 1) {
        eta[0] = X(0, 0);
    } else if (n == 2) {
        const double mean = 0.5 * (X(0, 0) + X(1, 1));
        const double half_diff = 0.5 * (X(0, 0) - X(1, 1));
        const double radius = std::hypot(half_diff, X(0, 1));
        eta[0] = mean - radius;
        eta[1] = mean + radius;
    } else if (n > 2) {
        Eigen::SelfAdjointEigenSolver<Mat> solver(X, Eigen::EigenvaluesOnly);
        eta = solver.eigenvalues();
        std::sort(eta.data(), eta.data() + n);
    }
    return eta;
}

}  // namespace gpe
