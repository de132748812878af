#include "sgcircuit/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "sgcircuit/numerics.hpp"

namespace sgcircuit {

namespace {

std::size_t theta_count(const CircuitParams& p, LatticeMode mode) {
    if (mode == LatticeMode::effective) return 0;
    return static_cast<std::size_t>(p.m_squids) * static_cast<std::size_t>(p.n_junctions - 1);
}

void check_sizes(const CircuitParams& p, LatticeMode mode, std::span<const double> phi,
                 std::span<const double> theta) {
    if (phi.size() != static_cast<std::size_t>(p.m_squids) + 1)
        throw std::invalid_argument("lattice: phi must have M+1 entries");
    if (theta.size() != theta_count(p, mode))
        throw std::invalid_argument("lattice: theta size does not match the mode");
}

// Phase drop across the loop-rule junction of coupler l (1-based).
double loop_phase(const CircuitParams& p, std::span<const double> phi,
                  std::span<const double> theta, std::size_t l) {
    const std::size_t nm1 = static_cast<std::size_t>(p.n_junctions - 1);
    double sum = 0.0;
    for (std::size_t i = 0; i < nm1; ++i) sum += theta[(l - 1) * nm1 + i];
    return phi[l] - phi[l - 1] - sum;
}

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

struct NewtonWork {
    std::vector<double> grad_phi, grad_theta;
    double grad_norm = 0.0;
    double energy = 0.0;
    void eval(const CircuitParams& p, LatticeMode mode, std::span<const double> phi,
              std::span<const double> theta) {
        lattice_gradient(p, mode, phi, theta, grad_phi, grad_theta);
        grad_norm = std::max(max_abs(grad_phi), max_abs(grad_theta));
        energy = lattice_energy(p, mode, phi, theta);
    }
};

// Thomas factorization that rejects non-positive pivots, so a successful
// solve certifies the (shifted) Hessian was positive definite and the Newton
// step is a descent direction.
bool solve_tridiagonal_pd(std::vector<double> lower, std::vector<double> diag,
                          std::vector<double> upper, std::vector<double> rhs,
                          std::vector<double>& out, double pivot_floor) {
    const std::size_t n = diag.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) {
            const double w = lower[i - 1] / diag[i - 1];
            diag[i] -= w * upper[i - 1];
            rhs[i] -= w * rhs[i - 1];
        }
        if (!(diag[i] > pivot_floor)) return false;
    }
    out.assign(n, 0.0);
    out[n - 1] = rhs[n - 1] / diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) out[i] = (rhs[i] - upper[i] * out[i + 1]) / diag[i];
    return true;
}

}  // namespace

std::vector<double> kink_initialization(const CircuitParams& params, double bulk_value) {
    params.validate();
    const std::size_t m = static_cast<std::size_t>(params.m_squids);
    // Inverse decay length M/u = sqrt(N |ej_b| / ej_a) / a0 sites^-1.
    const double abs_ejb = std::abs(params.ej_b);
    const double rate = abs_ejb > 0.0
                            ? std::sqrt(static_cast<double>(params.n_junctions) * abs_ejb / params.ej_a)
                            : 1.0;
    std::vector<double> phi(m + 1, 0.0);
    for (std::size_t k = 1; k < m; ++k) {
        const double x = static_cast<double>(k);
        phi[k] = bulk_value * std::tanh(x * rate) * std::tanh((static_cast<double>(m) - x) * rate);
    }
    return phi;
}

double lattice_energy(const CircuitParams& params, LatticeMode mode,
                      std::span<const double> phi, std::span<const double> theta) {
    check_sizes(params, mode, phi, theta);
    const std::size_t m = static_cast<std::size_t>(params.m_squids);
    double energy = 0.0;
    for (std::size_t k = 0; k <= m; ++k) energy += params.ej_b * (1.0 - std::cos(phi[k]));

    if (mode == LatticeMode::effective) {
        const double stiff = params.ej_a / (2.0 * static_cast<double>(params.n_junctions));
        for (std::size_t k = 0; k < m; ++k) {
            const double d = phi[k + 1] - phi[k];
            energy += stiff * d * d;
        }
        return energy;
    }

    const std::size_t nm1 = static_cast<std::size_t>(params.n_junctions - 1);
    for (std::size_t l = 1; l <= m; ++l) {
        for (std::size_t i = 0; i < nm1; ++i)
            energy += params.ej_a * (1.0 - std::cos(theta[(l - 1) * nm1 + i]));
        energy += params.ej_a * (1.0 - std::cos(loop_phase(params, phi, theta, l)));
    }
    return energy;
}

void lattice_gradient(const CircuitParams& params, LatticeMode mode,
                      std::span<const double> phi, std::span<const double> theta,
                      std::vector<double>& grad_phi, std::vector<double>& grad_theta) {
    check_sizes(params, mode, phi, theta);
    const std::size_t m = static_cast<std::size_t>(params.m_squids);
    grad_phi.assign(m + 1, 0.0);
    grad_theta.assign(theta.size(), 0.0);

    if (mode == LatticeMode::effective) {
        const double stiff = params.ej_a / static_cast<double>(params.n_junctions);
        for (std::size_t k = 1; k < m; ++k)
            grad_phi[k] = -stiff * (phi[k + 1] - 2.0 * phi[k] + phi[k - 1]) +
                          params.ej_b * std::sin(phi[k]);
        return;
    }

    const std::size_t nm1 = static_cast<std::size_t>(params.n_junctions - 1);
    std::vector<double> sin_loop(m + 1, 0.0);
    for (std::size_t l = 1; l <= m; ++l) sin_loop[l] = std::sin(loop_phase(params, phi, theta, l));

    for (std::size_t k = 1; k < m; ++k)
        grad_phi[k] = params.ej_b * std::sin(phi[k]) +
                      params.ej_a * (sin_loop[k] - sin_loop[k + 1]);
    for (std::size_t l = 1; l <= m; ++l)
        for (std::size_t i = 0; i < nm1; ++i) {
            const std::size_t idx = (l - 1) * nm1 + i;
            grad_theta[idx] = params.ej_a * (std::sin(theta[idx]) - sin_loop[l]);
        }
}

namespace {

// One Newton direction for the effective mode on the interior phases, with a
// Levenberg shift mu keeping the factorization positive definite.
bool newton_direction_effective(const CircuitParams& p, std::span<const double> phi,
                                std::span<const double> grad_phi, double mu,
                                std::vector<double>& dphi) {
    const std::size_t m = static_cast<std::size_t>(p.m_squids);
    const std::size_t n = m - 1;
    const double stiff = p.ej_a / static_cast<double>(p.n_junctions);
    const double pivot_floor = 1e-12 * (stiff + std::abs(p.ej_b));
    std::vector<double> lower(n - 1, -stiff), upper(n - 1, -stiff), diag(n), rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
        diag[i] = 2.0 * stiff + p.ej_b * std::cos(phi[i + 1]) + mu;
        rhs[i] = -grad_phi[i + 1];
    }
    return solve_tridiagonal_pd(std::move(lower), std::move(diag), std::move(upper),
                                std::move(rhs), dphi, pivot_floor);
}

// Newton direction for the full array via a Schur complement onto the SQUID
// phases. Per coupler the theta-block Hessian is diag(ej_a cos theta_i) plus
// the rank-one ej_a cos(g_l) 11^T from the loop-rule junction, inverted with
// Sherman-Morrison; the reduced system on the phases stays tridiagonal.
bool newton_direction_full(const CircuitParams& p, std::span<const double> phi,
                           std::span<const double> theta, std::span<const double> grad_phi,
                           std::span<const double> grad_theta, double mu,
                           std::vector<double>& dphi, std::vector<double>& dtheta) {
    const std::size_t m = static_cast<std::size_t>(p.m_squids);
    const std::size_t nm1 = static_cast<std::size_t>(p.n_junctions - 1);
    const double guard = 1e-10 * p.ej_a;

    std::vector<double> beta(m + 1, 0.0);      // ej_a cos(g_l)
    std::vector<double> schur_w(m + 1, 0.0);   // 1^T A_l^-1 1
    std::vector<double> schur_t(m + 1, 0.0);   // 1^T A_l^-1 grad_theta_l
    std::vector<double> inv_diag(theta.size(), 0.0);
    std::vector<double> dinv_g(theta.size(), 0.0);

    for (std::size_t l = 1; l <= m; ++l) {
        const double cg = std::cos(loop_phase(p, phi, theta, l));
        beta[l] = p.ej_a * cg;
        double s = 0.0, sg = 0.0;
        for (std::size_t i = 0; i < nm1; ++i) {
            const std::size_t idx = (l - 1) * nm1 + i;
            const double d = p.ej_a * std::cos(theta[idx]) + mu;
            if (d <= guard) return false;
            inv_diag[idx] = 1.0 / d;
            dinv_g[idx] = grad_theta[idx] / d;
            s += inv_diag[idx];
            sg += dinv_g[idx];
        }
        const double denom = 1.0 + beta[l] * s;
        if (denom <= 1e-12) return false;  // theta block not positive definite
        schur_w[l] = s / denom;
        schur_t[l] = sg - beta[l] * s * sg / denom;  // 1^T A^-1 g = (1 - beta s/denom) sg
    }

    // Reduced tridiagonal system on interior phases.
    const std::size_t n = m - 1;
    std::vector<double> lower(n - 1), upper(n - 1), diag(n), rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t k = i + 1;
        diag[i] = p.ej_b * std::cos(phi[k]) + beta[k] + beta[k + 1] + mu -
                  beta[k] * beta[k] * schur_w[k] - beta[k + 1] * beta[k + 1] * schur_w[k + 1];
        // (B A^-1 g_theta)_k: coupler k enters with -beta_k, coupler k+1 with +beta_{k+1}.
        rhs[i] = -grad_phi[k] - beta[k] * schur_t[k] + beta[k + 1] * schur_t[k + 1];
        if (i + 1 < n) {
            const double off = -beta[k + 1] + beta[k + 1] * beta[k + 1] * schur_w[k + 1];
            lower[i] = off;
            upper[i] = off;
        }
    }
    if (!solve_tridiagonal_pd(std::move(lower), std::move(diag), std::move(upper),
                              std::move(rhs), dphi, 1e-12 * p.ej_a))
        return false;

    // Back-substitute the coupler phases:
    // dtheta_l = A_l^-1 (-g_theta,l - beta_l (dphi_{l-1} - dphi_l) 1).
    dtheta.assign(theta.size(), 0.0);
    const auto dphi_at = [&](std::size_t k) {
        return (k == 0 || k == m) ? 0.0 : dphi[k - 1];
    };
    for (std::size_t l = 1; l <= m; ++l) {
        const double c = beta[l] * (dphi_at(l - 1) - dphi_at(l));
        double s = 0.0, sv = 0.0;
        for (std::size_t i = 0; i < nm1; ++i) {
            const std::size_t idx = (l - 1) * nm1 + i;
            s += inv_diag[idx];
            sv += (-grad_theta[idx] - c) * inv_diag[idx];
        }
        const double denom = 1.0 + beta[l] * s;
        const double correction = beta[l] * sv / denom;
        for (std::size_t i = 0; i < nm1; ++i) {
            const std::size_t idx = (l - 1) * nm1 + i;
            dtheta[idx] = (-grad_theta[idx] - c) * inv_diag[idx] - correction * inv_diag[idx];
        }
    }
    return true;
}

void fill_currents(const CircuitParams& p, LatticeState& state) {
    const std::size_t m = static_cast<std::size_t>(p.m_squids);
    state.node_currents.assign(m + 1, {});
    std::vector<double> coupler(m + 1, 0.0);  // current through coupler l (1-based)
    if (state.mode == LatticeMode::effective) {
        const double stiff = p.ej_a / static_cast<double>(p.n_junctions);
        for (std::size_t l = 1; l <= m; ++l) coupler[l] = stiff * (state.phi[l] - state.phi[l - 1]);
    } else {
        for (std::size_t l = 1; l <= m; ++l)
            coupler[l] = p.ej_a * std::sin(loop_phase(p, state.phi, state.theta, l));
    }
    double residual = 0.0, imax = 0.0;
    for (std::size_t k = 0; k <= m; ++k) {
        auto& nc = state.node_currents[k];
        nc.coupler_in = k >= 1 ? coupler[k] : 0.0;
        nc.coupler_out = k < m ? coupler[k + 1] : 0.0;
        nc.squid = p.ej_b * std::sin(state.phi[k]);
        imax = std::max({imax, std::abs(nc.coupler_in), std::abs(nc.coupler_out),
                         std::abs(nc.squid)});
        if (k >= 1 && k < m)
            residual = std::max(residual, std::abs(nc.coupler_out - nc.coupler_in - nc.squid));
    }
    state.conservation_residual = residual;
    state.max_abs_current = imax;
}

}  // namespace

LatticeState solve_lattice_minimum(const CircuitParams& params, LatticeMode mode,
                                   std::vector<double> phi_init, const LatticeOptions& options) {
    params.validate();
    if (params.m_squids < 8)
        throw std::invalid_argument("lattice: M < 8 rejected, edge regions would overlap");
    if (mode == LatticeMode::full_array &&
        static_cast<double>(params.n_junctions) * static_cast<double>(params.m_squids) > 1e5)
        throw std::invalid_argument("lattice: full_array limited to N*M <= 1e5");

    const std::size_t m = static_cast<std::size_t>(params.m_squids);
    if (phi_init.size() != m + 1)
        throw std::invalid_argument("lattice: phi_init must have M+1 entries");
    phi_init.front() = 0.0;
    phi_init.back() = 0.0;

    LatticeState state;
    state.params = params;
    state.mode = mode;
    state.phi = std::move(phi_init);
    if (mode == LatticeMode::full_array) {
        const std::size_t nm1 = static_cast<std::size_t>(params.n_junctions - 1);
        state.theta.assign(theta_count(params, mode), 0.0);
        for (std::size_t l = 1; l <= m; ++l) {
            const double share = (state.phi[l] - state.phi[l - 1]) /
                                 static_cast<double>(params.n_junctions);
            for (std::size_t i = 0; i < nm1; ++i) state.theta[(l - 1) * nm1 + i] = share;
        }
    }

    const double force_scale =
        4.0 * params.ej_a / static_cast<double>(params.n_junctions) * std::numbers::pi +
        std::abs(params.ej_b);
    const double eps = std::numeric_limits<double>::epsilon();
    const double tol = std::max(options.tol_rel * force_scale, 64.0 * eps * force_scale);

    NewtonWork work;
    work.eval(params, mode, state.phi, state.theta);

    std::vector<double> dphi, dtheta;
    int iter = 0;
    for (; iter < options.max_iterations && work.grad_norm > tol; ++iter) {
        // Positive-definite (Levenberg-shifted) Newton direction: the shift
        // grows until the factorization certifies descent, which keeps the
        // iteration off saddle points such as the unstable pi-bump at
        // ej_b > 0.
        bool have_direction = false;
        for (double mu = 0.0;;) {
            have_direction =
                mode == LatticeMode::effective
                    ? newton_direction_effective(params, state.phi, work.grad_phi, mu, dphi)
                    : newton_direction_full(params, state.phi, state.theta, work.grad_phi,
                                            work.grad_theta, mu, dphi, dtheta);
            if (have_direction) break;
            mu = mu == 0.0 ? 1e-8 * force_scale : 4.0 * mu;
            if (mu > 1e8 * force_scale) break;
        }
        if (!have_direction) break;

        double slope = 0.0;  // g . d, negative for a descent direction
        for (std::size_t k = 1; k < m; ++k) slope += work.grad_phi[k] * dphi[k - 1];
        if (mode == LatticeMode::full_array)
            for (std::size_t i = 0; i < state.theta.size(); ++i)
                slope += work.grad_theta[i] * dtheta[i];
        if (!(slope < 0.0)) break;

        // Armijo on the energy, with a rounding-floor branch that accepts
        // gradient-norm decrease once energy differences drop below noise.
        const double noise = 256.0 * eps * (1.0 + std::abs(work.energy));
        double alpha = 1.0;
        bool accepted = false;
        LatticeState trial = state;
        NewtonWork trial_work;
        for (int bt = 0; bt < 40; ++bt) {
            for (std::size_t k = 1; k < m; ++k)
                trial.phi[k] = state.phi[k] + alpha * dphi[k - 1];
            if (mode == LatticeMode::full_array)
                for (std::size_t i = 0; i < state.theta.size(); ++i)
                    trial.theta[i] = state.theta[i] + alpha * dtheta[i];
            trial_work.eval(params, mode, trial.phi, trial.theta);
            const bool sufficient_decrease =
                trial_work.energy <= work.energy + 1e-4 * alpha * slope;
            const bool terminal_phase = std::abs(trial_work.energy - work.energy) <= noise &&
                                        trial_work.grad_norm < work.grad_norm;
            if (sufficient_decrease || terminal_phase) {
                state.phi = trial.phi;
                state.theta = trial.theta;
                work = trial_work;
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!accepted) break;  // stagnated at the evaluation noise floor
    }

    state.iterations = iter;
    state.grad_norm = work.grad_norm;
    state.converged = work.grad_norm <= tol;
    if (!state.converged)
        throw std::runtime_error("solve_lattice_minimum: descent did not converge, |grad| = " +
                                 std::to_string(work.grad_norm));
    state.energy = lattice_energy(params, mode, state.phi, state.theta);
    fill_currents(params, state);
    return state;
}

LatticePair solve_lattice_ground_states(const CircuitParams& params, LatticeMode mode,
                                        const LatticeOptions& options) {
    LatticePair pair{
        solve_lattice_minimum(params, mode, kink_initialization(params, std::numbers::pi),
                              options),
        solve_lattice_minimum(params, mode, kink_initialization(params, -std::numbers::pi),
                              options)};

    double diff = 0.0, amp = 0.0;
    for (std::size_t k = 0; k < pair.plus.phi.size(); ++k) {
        diff = std::max(diff, std::abs(pair.plus.phi[k] - pair.minus.phi[k]));
        amp = std::max(amp, std::abs(pair.plus.phi[k]));
    }
    if (diff < 1e-6 * std::max(1.0, amp))
        throw std::runtime_error(
            "solve_lattice_ground_states: degeneracy not found, both branches reached the "
            "same configuration");
    return pair;
}

LatticeContinuumReport compare_lattice_to_continuum(const LatticeState& lattice,
                                                    const BvpSolution& bvp) {
    if (lattice.mode != LatticeMode::effective)
        throw std::invalid_argument("compare_lattice_to_continuum: lattice mode must be effective");
    const SgParams sg = map_circuit_to_sg(lattice.params);
    const auto mismatched = [](double a, double b) {
        return std::abs(a - b) > 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
    };
    if (mismatched(sg.u, bvp.sg.u) || mismatched(sg.stiffness_k, bvp.sg.stiffness_k) ||
        mismatched(sg.lambda, bvp.sg.lambda) || mismatched(sg.length, bvp.sg.length))
        throw std::invalid_argument("compare_lattice_to_continuum: mismatched parameters");

    LatticeContinuumReport report;
    const std::size_t m = static_cast<std::size_t>(lattice.params.m_squids);
    const double a0 = lattice.params.a0;

    for (std::size_t k = 0; k <= m; ++k) {
        const double x = static_cast<double>(k) * a0;
        const double cont = linear_interp(bvp.grid, bvp.phi, x);
        report.phi_sup_deviation =
            std::max(report.phi_sup_deviation, std::abs(lattice.phi[k] - cont));
    }

    // Coupler currents: lattice (ej_a/N) dPhi vs the continuum (u/4piK) Phi'
    // evaluated as the matching finite difference of the interpolated field.
    const double stiff = lattice.params.ej_a / static_cast<double>(lattice.params.n_junctions);
    double dev = 0.0, imax = 0.0;
    for (std::size_t l = 1; l <= m; ++l) {
        const double lat = stiff * (lattice.phi[l] - lattice.phi[l - 1]);
        const double cont = stiff * (linear_interp(bvp.grid, bvp.phi, static_cast<double>(l) * a0) -
                                     linear_interp(bvp.grid, bvp.phi, static_cast<double>(l - 1) * a0));
        dev = std::max(dev, std::abs(lat - cont));
        imax = std::max(imax, std::abs(cont));
    }
    report.current_rel_deviation = imax > 0.0 ? dev / imax : 0.0;

    const double scale = std::sqrt(2.0 * lattice.params.ec_b * std::abs(lattice.params.ej_b));
    report.sites_per_decay_length = sg.u / (scale * a0);
    report.continuum_limit_valid = report.sites_per_decay_length >= 4.0;
    return report;
}

}  // namespace sgcircuit
