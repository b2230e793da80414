#pragma once

#include "gpe/operators.hpp"

#include <initializer_list>

namespace gpe::test {

inline Vec vec(std::initializer_list<double> v) {
    Vec out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) out[i++] = x;
    return out;
}

inline Jet jet1(double x, double r, double p, double X) {
    Jet j;
    j.x = vec({x});
    j.r = r;
    j.p = vec({p});
    j.X = Mat::Constant(1, 1, X);
    return j;
}

inline Jet jet2(Vec x, double r, Vec p, Mat X) {
    Jet j;
    j.x = std::move(x);
    j.r = r;
    j.p = std::move(p);
    j.X = std::move(X);
    return j;
}

inline Mat diag2(double a, double b) {
    Mat m = Mat::Zero(2, 2);
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

}  // namespace gpe::test
