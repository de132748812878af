#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace sgcircuit {

/// Composite Simpson rule over uniformly sampled values.
/// Requires an odd number of points (even interval count).
double simpson(std::span<const double> values, double spacing);

/// Second-order finite-difference derivative of uniformly sampled values:
/// central stencil in the interior, one-sided three-point stencils at the ends.
std::vector<double> gradient_uniform(std::span<const double> values, double spacing);

/// Solve a tridiagonal system in place (Thomas algorithm).
/// `lower` and `upper` have size n-1, `diag` and `rhs` size n.
/// Throws std::runtime_error on a vanishing pivot.
std::vector<double> solve_tridiagonal(std::vector<double> lower, std::vector<double> diag,
                                      std::vector<double> upper, std::vector<double> rhs);

/// Piecewise-linear interpolation of (xs, ys) at x; xs must be increasing.
/// Clamps outside the tabulated range.
double linear_interp(std::span<const double> xs, std::span<const double> ys, double x);

/// Uniform grid of n points on [0, length] with exact endpoints.
std::vector<double> uniform_grid(double length, std::size_t n);

}  // namespace sgcircuit
