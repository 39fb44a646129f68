#pragma once

// Exact dense linear algebra over Scalar, on Eigen containers.

#include <Eigen/Core>

#include <optional>
#include <vector>

#include "plforge/scalar.hpp"

namespace plforge {

using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

Vec zero_vec(Eigen::Index n, Backend b = Backend::Rational);
Vec with_backend(const Vec& v, Backend b);
bool all_rational(const Vec& v);
Scalar dot(const Vec& a, const Vec& b);

/// Reduced row echelon form in place; returns pivot columns.
std::vector<Eigen::Index> row_reduce(Mat& m);
Eigen::Index rank(Mat m);
Scalar determinant(Mat m);
/// Basis of {x : m x = 0}.
std::vector<Vec> nullspace(Mat m);

/// Rank of the difference vectors equals count - 1.
bool affinely_independent(const std::vector<Vec>& points);
Eigen::Index affine_dimension(const std::vector<Vec>& points);

/// Barycentric coordinates of p with respect to affinely independent
/// vertices, or nullopt when p is outside their affine hull.
std::optional<std::vector<Scalar>> barycentric(const std::vector<Vec>& vertices, const Vec& p);

/// Barycenter of a nonempty point list.
Vec barycenter(const std::vector<Vec>& points);

/// Exact LP: maximize c.x subject to a x = b, x >= 0 (two-phase simplex, Bland's rule).
struct LpResult {
    enum class Status { Optimal, Infeasible, Unbounded };
    Status status = Status::Infeasible;
    Scalar value;
    std::vector<Scalar> x;
};
LpResult lp_maximize(const Mat& a, const Vec& b, const Vec& c);

}  // namespace plforge
