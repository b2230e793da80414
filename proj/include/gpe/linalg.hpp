#pragma once

#include <Eigen/Dense>

#include <cmath>

namespace gpe {

// Small fixed-capacity types: operators are evaluated in up to three
// dimensions, so nothing here touches the heap.
constexpr int kMaxDim = 3;
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxDim, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim, kMaxDim>;

/// Eigenvalues of a symmetric matrix, ascending.
Vec sym_eigenvalues(const Mat& X);

/// sign(r)|r|^a, odd extension of the power map.
inline double signed_pow(double r, double a) {
    if (a == 1.0) return r;
    return std::copysign(std::pow(std::abs(r), a), r);
}

}  // namespace gpe
