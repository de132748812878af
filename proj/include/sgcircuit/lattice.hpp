#pragma once

#include <span>
#include <vector>

#include "sgcircuit/circuit.hpp"
#include "sgcircuit/continuum.hpp"

namespace sgcircuit {

/// `effective` minimizes the integrated-out discrete energy
///   V = (ej_a / 2N) sum (Phi_{k+1} - Phi_k)^2 + ej_b sum (1 - cos Phi_k);
/// `full_array` keeps every coupler junction phase explicit and minimizes the
/// exact circuit potential, with the last junction of each coupler eliminated
/// through the loop rule Theta_{Nl} = dPhi_l - sum_i Theta_{l,i}.
enum class LatticeMode { effective, full_array };

struct LatticeOptions {
    double tol_rel = 1e-12;  ///< gradient tolerance relative to the force scale
    int max_iterations = 500;
};

struct NodeCurrents {
    double coupler_in = 0.0;   ///< current arriving through the left coupler [GHz]
    double coupler_out = 0.0;  ///< current leaving through the right coupler [GHz]
    double squid = 0.0;        ///< ej_b sin Phi_k [GHz]
};

struct LatticeState {
    CircuitParams params;
    LatticeMode mode = LatticeMode::effective;
    std::vector<double> phi;    ///< M+1 SQUID phases, phi[0] = phi[M] = 0
    std::vector<double> theta;  ///< full_array: M*(N-1) coupler phases, coupler-major
    double energy = 0.0;        ///< [GHz]
    bool converged = false;
    double grad_norm = 0.0;
    int iterations = 0;
    std::vector<NodeCurrents> node_currents;  ///< per SQUID node
    double conservation_residual = 0.0;  ///< max interior |out - in - squid| [GHz]
    double max_abs_current = 0.0;
};

struct LatticePair {
    LatticeState plus;   ///< bulk near +pi
    LatticeState minus;  ///< bulk near -pi
};

/// Static energy of a configuration. `theta` must be empty in effective mode
/// and have size M*(N-1) in full_array mode.
double lattice_energy(const CircuitParams& params, LatticeMode mode,
                      std::span<const double> phi, std::span<const double> theta);

/// Analytic gradient with respect to all free variables; the pinned boundary
/// entries of grad_phi are zero.
void lattice_gradient(const CircuitParams& params, LatticeMode mode,
                      std::span<const double> phi, std::span<const double> theta,
                      std::vector<double>& grad_phi, std::vector<double>& grad_theta);

/// Damped-Newton descent from a given initialization (boundary pins enforced).
/// Throws std::runtime_error on non-convergence.
LatticeState solve_lattice_minimum(const CircuitParams& params, LatticeMode mode,
                                   std::vector<double> phi_init,
                                   const LatticeOptions& options = {});

/// The two stationary minima reached from the +-pi smooth-bump
/// initializations. Throws std::runtime_error("degeneracy not found") when
/// both descents land on the same configuration (the expected outcome for
/// ej_b > 0, whose unique minimum is Phi == 0).
LatticePair solve_lattice_ground_states(const CircuitParams& params, LatticeMode mode,
                                        const LatticeOptions& options = {});

/// Kink-shaped initialization respecting the pins and the bulk plateau.
std::vector<double> kink_initialization(const CircuitParams& params, double bulk_value);

struct LatticeContinuumReport {
    double phi_sup_deviation = 0.0;      ///< max_k |Phi_k - Phi(k a0)| [rad]
    double current_rel_deviation = 0.0;  ///< coupler currents, sup-relative
    double sites_per_decay_length = 0.0; ///< u / (M a0); continuum quality metric
    bool continuum_limit_valid = false;  ///< false when the kink is under-resolved
};

/// Cross-validate an effective-mode lattice minimum against a continuum BVP
/// solution at the same parameters. Throws std::invalid_argument on
/// mismatched parameters or a full_array input.
LatticeContinuumReport compare_lattice_to_continuum(const LatticeState& lattice,
                                                    const BvpSolution& bvp);

}  // namespace sgcircuit
