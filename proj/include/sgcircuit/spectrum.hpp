#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sgcircuit/circuit.hpp"

namespace sgcircuit {

struct BulkBreather {
    int index = 0;        ///< p
    double mass = 0.0;    ///< m_Bp = 2 m sin(p pi xi / 2) [GHz]
    bool at_threshold = false;  ///< true when p pi xi / 2 = pi / 2 exactly (m_Bp = 2m)
};

struct BoundaryLevel {
    int index = 0;        ///< p
    double energy = 0.0;  ///< E_Bp = m sin(p pi xi) [GHz]
    bool at_threshold = false;  ///< true when E_Bp = m exactly (window-edge index)
};

enum class Tower { left, right };

/// Boundary-breather tower state |0_{L or R}>_{p,q} with energy E_Bp + E_Bq.
struct TowerState {
    Tower tower = Tower::left;
    int p = 0;
    int q = 0;
    double energy = 0.0;
};

struct StabilityReport {
    int n = 1;                  ///< commensurability order (Mott n=1, CDW n>=2)
    double dim_super = 0.0;     ///< scaling dimension of cos(Phi): K
    double dim_insulator = 0.0; ///< scaling dimension of cos(2n Theta): n^2 / 4K
    bool superconducting_stable = false;
};

struct SpectrumCatalog {
    PhaseLabel phase = PhaseLabel::trivial;
    std::vector<std::string> ground_states;  ///< "0_L","0_R" (topological) or "0" (trivial)
    double soliton_mass = 0.0;               ///< m [GHz]
    bool solitonic_states = false;  ///< |S>, |Sbar> threshold entries listed (topological, m within cap)
    std::vector<BulkBreather> bulk_breathers;    ///< within the energy cap
    std::vector<BoundaryLevel> boundary_levels;  ///< within the energy cap (topological only)
    std::vector<TowerState> tower_states;        ///< within the energy cap, sorted by (energy, tower, p, q)
    double continuum_threshold = 0.0;            ///< [GHz]
    std::optional<double> midgap_separation;     ///< m_B1 - E_B1 when boundary levels exist [GHz]
    double energy_cap = 0.0;
};

/// Exact soliton mass in circuit units,
///   m / ec_b = (|ej_b|/ec_b)^{1/(2-K)} (2 pi K)^{-(1-K)/(2-K)}
///              * 2 Gamma(xi/2) / (sqrt(pi) Gamma((1+xi)/2))
///              * (pi Gamma(1-K/2) / (2 Gamma(K/2)))^{1/(2-K)},
/// evaluated in log space. Limits: m = pi |ej_b| at K = 1, and
/// m -> sqrt(8 ec_b |ej_b|) / (pi K) as K -> 0.
/// Throws std::domain_error for K <= 0 or K > 1.95 ("K too close to 2").
double soliton_mass(double abs_ej_b, double ec_b, double stiffness_k);

/// Bulk breather masses m_Bp = 2 m sin(p pi xi / 2), p = 1..[1/xi].
/// Empty in the repulsive regime (xi >= 1). When 1/xi is an integer to
/// 1e-12 relative, the top index is included and flagged at_threshold.
std::vector<BulkBreather> bulk_breather_masses(double m, double xi);

/// Boundary breather energies E_Bp = m sin(p pi xi), p = 1..[1/(2 xi)].
/// Empty outside the window (xi >= 1/2, i.e. K >= 2/3); same threshold
/// tie rule as the bulk list.
std::vector<BoundaryLevel> boundary_breather_energies(double m, double xi);

/// Full catalog below `energy_cap`: ground state(s), solitonic threshold
/// entries, bulk breathers, boundary levels and both towers, plus the
/// continuum threshold and mid-gap separation.
/// Throws std::domain_error for gapless or free-boson inputs.
SpectrumCatalog enumerate_spectrum(const SgParams& sg, double energy_cap);

/// Delta = m_B1 - E_B1; absent when no boundary levels exist.
std::optional<double> midgap_separation(const SpectrumCatalog& catalog);

/// Scaling-dimension comparison of the superconducting cosine against the
/// order-n Mott/CDW perturbation: stable iff K < n/2.
StabilityReport mott_cdw_stability(double stiffness_k, int n);

/// Continuum dispersion E_theta = mass * cosh(theta) (plot helper; the
/// catalog itself lists continua only by their thresholds).
double breather_dispersion(double mass, double rapidity);

}  // namespace sgcircuit
