#pragma once

#include <cstddef>
#include <vector>

#include "sgcircuit/circuit.hpp"

namespace sgcircuit {

/// Which closed form of the edge phase density is sampled: the K -> 0
/// semiclassical kink (scale M = sqrt(2 ec_b |ej_b|)) or the K = 1
/// free-fermion exponential (scale m = pi |ej_b|).
enum class ProfileRegime { semiclassical, free_fermion };

enum class GroundSel { left, right };

enum class Edge { left, right };

struct ProfileGridSpec {
    int points_per_decay_length = 64;
    std::size_t max_points = (1u << 22);  ///< hard cap on grid size
};

/// Sampled edge phase densities for one ground state on [0, L]:
///   delta_phi_l(x) = 2 scale / (pi u cosh(scale x / u))   (semiclassical)
///                  = (2 m / u) exp(-2 m x / u)            (free fermion)
///   delta_phi_r(x) = delta_phi_l(L - x)
///   phi_density    = +-(delta_phi_l - delta_phi_r) / 2.
struct EdgeProfile {
    std::vector<double> grid;          ///< positions [a0 units]
    std::vector<double> delta_phi_l;   ///< [1/a0]
    std::vector<double> delta_phi_r;   ///< [1/a0]
    std::vector<double> phi_density;   ///< signed density for the chosen ground state [1/a0]
    ProfileRegime regime = ProfileRegime::semiclassical;
    GroundSel ground_state = GroundSel::left;
    double scale = 0.0;        ///< regime energy scale (M or m) [GHz]
    double u = 0.0;            ///< [GHz a0]
    double stiffness_k = 0.0;
    double lambda = 0.0;       ///< [GHz/a0]
    double length = 0.0;       ///< [a0]
    double a0 = 1.0;
    bool edge_overlap = false;        ///< L < 10 u/scale: edges are not separated
    bool approximate_regime = false;  ///< K not at the regime's validity point

    double spacing() const;
    double decay_length() const { return u / scale; }
    /// Closed-form left-edge density at arbitrary x.
    double delta_phi_left_at(double x) const;
    /// Reconstructed phase field Phi(x) for the chosen ground state
    /// (bulk +pi for the left state, -pi for the right).
    double phi_at(double x) const;
};

/// Sample the closed-form profile. Throws std::domain_error outside the
/// topological phase.
EdgeProfile edge_profile(const SgParams& sg, ProfileRegime regime, GroundSel ground_state,
                         const ProfileGridSpec& grid = {});

struct SigmaResult {
    double value = 0.0;
    bool filter_warning = false;  ///< eta * L < 5: filter does not separate the edges
};

/// Eta-filtered phase accumulation at one edge,
///   sigma_L = int_0^L e^{-eta x} phi(x) dx,  sigma_R mirrored,
/// by composite Simpson on the profile grid. Converges to +-1/2 as
/// eta -> 0 after L -> infinity.
SigmaResult sigma_accumulation(const EdgeProfile& profile, Edge edge, double eta);

/// Ground-state supercurrents through couplers and SQUIDs.
/// i_coupler = +-(u/4K)(delta_phi_l - delta_phi_r)  [GHz, hbar/2e = 1];
/// i_squid   = a0 d(i_coupler)/dx by second-order finite differences, which
/// equals ej_b sin Phi(x) for the semiclassical kink.
struct CurrentProfile {
    std::vector<double> grid;
    std::vector<double> i_coupler;
    std::vector<double> i_squid;
    double conservation_residual = 0.0;  ///< max interior |i_squid - direct route| [GHz]
    double max_abs_squid = 0.0;          ///< normalization for relative residuals [GHz]
};

/// Throws std::invalid_argument when the grid resolves the decay length with
/// fewer than 8 points (finite differences would be meaningless).
CurrentProfile current_profile(const SgParams& sg, const EdgeProfile& profile);

}  // namespace sgcircuit
