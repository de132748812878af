#pragma once

#include <vector>

#include "sgcircuit/circuit.hpp"

namespace sgcircuit {

enum class KinkBranch { plus_pi, minus_pi, trivial };

struct ContinuumGridSpec {
    int points_per_decay_length = 256;
    std::size_t max_points = (1u << 22);
};

struct BvpSolution {
    SgParams sg;
    std::vector<double> grid;  ///< [a0 units], Dirichlet ends pinned to 0
    std::vector<double> phi;   ///< [rad]
    KinkBranch branch = KinkBranch::trivial;
    double energy = 0.0;       ///< int [ u/(8 pi K) Phi'^2 - lambda (cos Phi - 1) ] dx  [GHz]
    bool converged = false;
    double residual = 0.0;     ///< max norm of the discrete Euler-Lagrange equation [GHz/a0]
    int iterations = 0;

    double spacing() const { return grid.size() > 1 ? grid[1] - grid[0] : 0.0; }
};

/// Damped-Newton solution of the static sine-Gordon equation
///   u/(4 pi K) Phi'' = lambda sin Phi,  Phi(0) = Phi(L) = 0,
/// on a uniform grid, with the branch selected by a +-pi smooth-bump
/// initialization. For lambda > 0 only Phi == 0 exists and is returned with
/// branch = trivial. Throws std::runtime_error on non-convergence.
BvpSolution solve_continuum_kink(const SgParams& sg, KinkBranch branch,
                                 const ContinuumGridSpec& grid = {}, double tol_rel = 1e-12);

/// Analytic left-edge kink Phi_pi(x) = -pi + 4 atan(exp(M x / u)); the
/// oracle the solver is validated against.
double analytic_kink(double x, double scale_over_u);

}  // namespace sgcircuit
