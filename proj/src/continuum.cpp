#include "sgcircuit/continuum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "sgcircuit/numerics.hpp"

namespace sgcircuit {

namespace {

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

double analytic_kink(double x, double scale_over_u) {
    const double s = scale_over_u * x;
    const double angle = s > 0.0 ? 0.5 * std::numbers::pi - std::atan(std::exp(-s))
                                 : std::atan(std::exp(s));
    return -std::numbers::pi + 4.0 * angle;
}

BvpSolution solve_continuum_kink(const SgParams& sg, KinkBranch branch,
                                 const ContinuumGridSpec& grid, double tol_rel) {
    BvpSolution sol;
    sol.sg = sg;

    const double lambda = sg.lambda;
    const double stiff = sg.u / (4.0 * std::numbers::pi * sg.stiffness_k);  // coefficient of Phi''

    if (lambda >= 0.0) {
        // Trivial phase: cos Phi - 1 is maximized at Phi = 0, which also
        // matches the boundary pins; Phi == 0 is the unique minimum.
        const std::size_t n = 1025;
        sol.grid = uniform_grid(sg.length, n);
        sol.phi.assign(n, 0.0);
        sol.branch = KinkBranch::trivial;
        sol.energy = 0.0;
        sol.converged = true;
        sol.residual = 0.0;
        return sol;
    }
    if (branch == KinkBranch::trivial)
        throw std::invalid_argument("solve_continuum_kink: trivial branch is only an output");

    const double scale = std::sqrt(4.0 * std::numbers::pi * sg.stiffness_k * sg.u * std::abs(lambda));
    const double decay = sg.u / scale;

    std::size_t intervals = static_cast<std::size_t>(std::ceil(
        sg.length / decay * static_cast<double>(grid.points_per_decay_length)));
    intervals = std::clamp<std::size_t>(intervals, 8, grid.max_points - 1);
    sol.grid = uniform_grid(sg.length, intervals + 1);
    const std::size_t n = sol.grid.size();
    const double h = sol.grid[1] - sol.grid[0];

    // Smooth-bump initialization pinned at both ends, steering descent into
    // the requested basin.
    const double bump_sign = branch == KinkBranch::plus_pi ? 1.0 : -1.0;
    sol.phi.assign(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double x = sol.grid[i];
        sol.phi[i] = bump_sign * std::numbers::pi * std::tanh(x / decay) *
                     std::tanh((sg.length - x) / decay);
    }

    const std::size_t m = n - 2;  // interior unknowns
    // The second-difference term amplifies rounding by stiff/h^2; do not ask
    // Newton for residuals below that evaluation noise floor.
    const double eps = std::numeric_limits<double>::epsilon();
    const double noise_floor =
        64.0 * eps * (stiff * std::numbers::pi / (h * h) + std::abs(lambda));
    const double tol = std::max(tol_rel * std::abs(lambda), noise_floor);

    const auto residual_vec = [&](const std::vector<double>& phi) {
        std::vector<double> f(m);
        for (std::size_t i = 0; i < m; ++i) {
            const std::size_t k = i + 1;
            f[i] = stiff * (phi[k + 1] - 2.0 * phi[k] + phi[k - 1]) / (h * h) -
                   lambda * std::sin(phi[k]);
        }
        return f;
    };

    std::vector<double> f = residual_vec(sol.phi);
    double fnorm = max_abs(f);
    const int max_iter = 100;
    int iter = 0;
    for (; iter < max_iter && fnorm > tol; ++iter) {
        std::vector<double> lower(m - 1, stiff / (h * h));
        std::vector<double> upper(m - 1, stiff / (h * h));
        std::vector<double> diag(m), rhs(m);
        for (std::size_t i = 0; i < m; ++i) {
            diag[i] = -2.0 * stiff / (h * h) - lambda * std::cos(sol.phi[i + 1]);
            rhs[i] = -f[i];
        }
        std::vector<double> step = solve_tridiagonal(std::move(lower), std::move(diag),
                                                     std::move(upper), std::move(rhs));

        // Backtracking on the residual norm.
        double alpha = 1.0;
        std::vector<double> trial = sol.phi;
        bool accepted = false;
        for (int bt = 0; bt < 30; ++bt) {
            for (std::size_t i = 0; i < m; ++i) trial[i + 1] = sol.phi[i + 1] + alpha * step[i];
            const auto ftrial = residual_vec(trial);
            const double fnorm_trial = max_abs(ftrial);
            if (fnorm_trial < fnorm) {
                sol.phi = trial;
                f = ftrial;
                fnorm = fnorm_trial;
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!accepted) break;
    }
    sol.iterations = iter;
    sol.residual = fnorm;
    sol.converged = fnorm <= tol;
    if (!sol.converged)
        throw std::runtime_error("solve_continuum_kink: Newton did not converge, residual " +
                                 std::to_string(fnorm));
    sol.branch = branch;

    // Static energy: midpoint gradient term plus trapezoid potential term.
    double energy = 0.0;
    const double grad_coeff = sg.u / (8.0 * std::numbers::pi * sg.stiffness_k);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double dphi = (sol.phi[i + 1] - sol.phi[i]) / h;
        const double pot_left = -lambda * (std::cos(sol.phi[i]) - 1.0);
        const double pot_right = -lambda * (std::cos(sol.phi[i + 1]) - 1.0);
        energy += h * (grad_coeff * dphi * dphi + 0.5 * (pot_left + pot_right));
    }
    sol.energy = energy;
    return sol;
}

}  // namespace sgcircuit
