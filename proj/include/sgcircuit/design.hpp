#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sgcircuit/circuit.hpp"

namespace sgcircuit {

enum class SweepScale { linear, log_scale };

/// One swept circuit parameter. `name` is a CircuitParams field name:
/// ej_a, ej_b, ec_a, ec_b, n_junctions or m_squids. Integer parameters are
/// stepped on integers; log spacing acts on |value| with the sign preserved,
/// so a topological ej_b range is written as e.g. [-10, -1].
struct ParamRange {
    std::string name;
    double min = 0.0;
    double max = 0.0;
    int steps = 2;
    SweepScale scale = SweepScale::linear;
};

struct DesignConstraints {
    double strictness = 10.0;      ///< for the effective-theory margins
    double k_max = 0.5;            ///< require K < k_max (Mott/CDW rule at n = 1)
    bool require_boundary = true;  ///< require boundary breathers to exist (K < 2/3)
};

struct DesignSpace {
    std::vector<ParamRange> ranges;
    CircuitParams fixed;  ///< values of the un-swept parameters
    DesignConstraints constraints;

    void validate() const;  ///< throws std::invalid_argument
};

struct DesignCandidate {
    CircuitParams params;
    std::optional<SgParams> sg;
    std::optional<double> delta;  ///< m_B1 - E_B1 [GHz]
    RegimeReport regime;
    bool stable = false;    ///< Mott/CDW at n = 1, i.e. K < 1/2
    bool feasible = false;  ///< regime valid, stable, boundary breathers exist
    std::string infeasible_reason;  ///< first binding constraint, empty when feasible
};

struct SweepResult {
    std::vector<DesignCandidate> candidates;  ///< feasible first, delta descending
    std::map<std::string, int> binding_constraints;  ///< per-constraint failure counts
    int feasible_count = 0;
};

struct OptimizeResult {
    DesignCandidate best;
    bool improved = false;  ///< false = "no-improvement" flag (grid winner returned)
    int evaluations = 0;
};

/// Evaluate one parameter point against the constraint set.
DesignCandidate evaluate_candidate(const CircuitParams& params,
                                   const DesignConstraints& constraints);

/// Evaluate every grid point of the design space. Deterministic ordering:
/// feasible candidates sorted by delta descending with a lexicographic
/// parameter tiebreak, then the infeasible ones in parameter order. Grid
/// points are evaluated in parallel and merged by grid index.
SweepResult sweep(const DesignSpace& space);

/// Coordinate refinement of the sweep winner: golden-section line searches
/// for continuous parameters, +-20% exhaustive scans for the integer ones,
/// stopping after `budget` candidate evaluations.
/// Throws std::runtime_error when the sweep has no feasible point.
OptimizeResult optimize_delta(const DesignSpace& space, int budget);

}  // namespace sgcircuit
