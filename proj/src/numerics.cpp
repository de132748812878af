#include "sgcircuit/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace sgcircuit {

double simpson(std::span<const double> values, double spacing) {
    const std::size_t n = values.size();
    if (n < 3 || n % 2 == 0)
        throw std::invalid_argument("simpson: need an odd number of points (>= 3)");
    double odd = 0.0, even = 0.0;
    for (std::size_t i = 1; i + 1 < n; i += 2) odd += values[i];
    for (std::size_t i = 2; i + 1 < n; i += 2) even += values[i];
    return spacing / 3.0 * (values.front() + values.back() + 4.0 * odd + 2.0 * even);
}

std::vector<double> gradient_uniform(std::span<const double> values, double spacing) {
    const std::size_t n = values.size();
    if (n < 3) throw std::invalid_argument("gradient_uniform: need at least 3 points");
    std::vector<double> d(n);
    const double inv2h = 1.0 / (2.0 * spacing);
    d[0] = (-3.0 * values[0] + 4.0 * values[1] - values[2]) * inv2h;
    for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (values[i + 1] - values[i - 1]) * inv2h;
    d[n - 1] = (3.0 * values[n - 1] - 4.0 * values[n - 2] + values[n - 3]) * inv2h;
    return d;
}

std::vector<double> solve_tridiagonal(std::vector<double> lower, std::vector<double> diag,
                                      std::vector<double> upper, std::vector<double> rhs) {
    const std::size_t n = diag.size();
    if (n == 0 || lower.size() != n - 1 || upper.size() != n - 1 || rhs.size() != n)
        throw std::invalid_argument("solve_tridiagonal: inconsistent sizes");
    for (std::size_t i = 1; i < n; ++i) {
        if (diag[i - 1] == 0.0) throw std::runtime_error("solve_tridiagonal: zero pivot");
        const double w = lower[i - 1] / diag[i - 1];
        diag[i] -= w * upper[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    if (diag[n - 1] == 0.0) throw std::runtime_error("solve_tridiagonal: zero pivot");
    std::vector<double> x(n);
    x[n - 1] = rhs[n - 1] / diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) x[i] = (rhs[i] - upper[i] * x[i + 1]) / diag[i];
    return x;
}

double linear_interp(std::span<const double> xs, std::span<const double> ys, double x) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw std::invalid_argument("linear_interp: need matching tables with >= 2 points");
    if (x <= xs.front()) return ys.front();
    if (x >= xs.back()) return ys.back();
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const std::size_t hi = static_cast<std::size_t>(it - xs.begin());
    const std::size_t lo = hi - 1;
    const double t = (x - xs[lo]) / (xs[hi] - xs[lo]);
    return ys[lo] + t * (ys[hi] - ys[lo]);
}

std::vector<double> uniform_grid(double length, std::size_t n) {
    if (n < 2) throw std::invalid_argument("uniform_grid: need at least 2 points");
    std::vector<double> xs(n);
    const double h = length / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) xs[i] = static_cast<double>(i) * h;
    xs.back() = length;
    return xs;
}

}  // namespace sgcircuit
