#pragma once

#include <Eigen/Dense>
#include <initializer_list>
#include <vector>

#include "mz/geometry.hpp"

namespace mz::test {

inline Eigen::VectorXd vec(std::initializer_list<double> xs) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) v[i++] = x;
    return v;
}

inline PointSet point_set(std::initializer_list<std::initializer_list<double>> pts) {
    PointSet ps;
    for (const auto& p : pts) {
        ps.points.push_back(vec(p));
        ps.dim = ps.points.back().size() ? static_cast<int>(ps.points.back().size()) : 1;
    }
    if (!ps.points.empty()) ps.dim = static_cast<int>(ps.points.front().size());
    return ps;
}

inline Window window(std::initializer_list<double> center, double half) {
    Window w;
    w.center = vec(center);
    w.half_side = half;
    return w;
}

}  // namespace mz::test
