#pragma once

#include <optional>
#include <string>
#include <vector>

namespace sgcircuit {

/// Physical inputs for the Josephson-junction array: M+1 flux-tuned SQUIDs
/// (Josephson energy ej_b, charging energy ec_b) joined by M couplers of
/// n_junctions series junctions each (ej_a, ec_a). Energies are frequencies
/// in GHz (E/h); a0 is the SQUID spacing and fixes the length unit.
struct CircuitParams {
    double ej_a = 0.0;    ///< coupler junction Josephson energy, > 0 [GHz]
    double ej_b = 0.0;    ///< SQUID effective Josephson energy, signed [GHz]
    double ec_a = 0.0;    ///< coupler junction charging energy, > 0 [GHz]
    double ec_b = 0.0;    ///< SQUID charging energy, > 0 [GHz]
    int n_junctions = 0;  ///< junctions per coupler, >= 2
    int m_squids = 0;     ///< couplers (M); the array has M+1 SQUIDs, >= 2
    double a0 = 1.0;      ///< SQUID spacing [lattice units]

    /// Throws std::invalid_argument when an invariant is violated.
    void validate() const;
};

/// Sine-Gordon field-theory parameters derived from a circuit.
struct SgParams {
    double u = 0.0;            ///< velocity scale [GHz * a0]
    double stiffness_k = 0.0;  ///< phase stiffness K
    double lambda = 0.0;       ///< cosine coefficient, sign(lambda) = sign(ej_b) [GHz / a0]
    double xi = 0.0;           ///< K / (2 - K)
    std::optional<double> soliton_mass;  ///< absent when ej_b = 0 [GHz]
    double length = 0.0;       ///< M * a0
    double a0 = 1.0;
};

enum class PhaseLabel { topological, trivial, gapless, free_boson };

const char* phase_name(PhaseLabel phase);

struct RegimeMargin {
    std::string name;
    double ratio = 0.0;      ///< the "<<" left/right quotient; must be < threshold
    double threshold = 0.0;  ///< 1 / strictness
    bool pass = false;
};

struct RegimeReport {
    double ratio_ejb_eja = 0.0;
    double ratio_eca_eja = 0.0;
    double ratio_time = 0.0;   ///< (|ej_b|/ej_a) / [(N/(N-1)) (ec_a/ec_b)]
    double ratio_space = 0.0;  ///< ec_b / ((N-1) ec_a)
    double strictness = 0.0;
    std::vector<RegimeMargin> margins;
    bool valid = false;
};

/// Map circuit parameters to sine-Gordon parameters:
///   u = a0 sqrt(2 ej_a ec_b / N),  K = sqrt(2 N ec_b / ej_a) / (4 pi),
///   lambda = ej_b / a0,            xi = K / (2 - K).
/// The soliton mass is filled from the mass formula when ej_b != 0.
/// Throws std::domain_error when K >= 2 (gapless regime).
SgParams map_circuit_to_sg(const CircuitParams& params);

/// Evaluate the effective-theory inequalities as quantified margins: each
/// "a << b" passes when a/b <= 1/strictness. A failing regime is a report
/// outcome, never an error.
RegimeReport validate_regime(const CircuitParams& params, double strictness = 10.0);

/// lambda < 0 with 0 < K < 2 -> topological; lambda > 0 -> trivial;
/// K >= 2 -> gapless; lambda = 0 -> free_boson.
PhaseLabel classify_phase(const SgParams& sg);

/// Inverse of xi = K / (2 - K).
double stiffness_from_xi(double xi);

}  // namespace sgcircuit
