#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "sgcircuit/circuit.hpp"
#include "sgcircuit/continuum.hpp"
#include "sgcircuit/design.hpp"
#include "sgcircuit/lattice.hpp"
#include "sgcircuit/profiles.hpp"

namespace sgcircuit {

/// Malformed configuration (missing fields, wrong types, unit conflicts).
/// Maps to process exit code 2; domain errors from the physics layer map to 1.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Parsed run configuration (JSON file with a top-level schema_version).
/// The circuit block supplies either charging energies (ec_a, ec_b) or
/// capacitances (ca_fF, cb_fF) -- exactly one of the two.
struct RunConfig {
    int schema_version = 1;
    CircuitParams circuit;
    bool circuit_from_capacitance = false;

    double strictness = 10.0;   // validate
    double energy_cap = 0.0;    // spectrum; <= 0 means "use 2m"

    ProfileRegime profile_regime = ProfileRegime::semiclassical;
    GroundSel ground_state = GroundSel::left;
    int profile_points_per_decay_length = 64;

    std::string solver = "both";  // solve: continuum | lattice | both
    LatticeMode lattice_mode = LatticeMode::effective;
    KinkBranch branch = KinkBranch::plus_pi;
    int continuum_points_per_decay_length = 256;
    double solve_tol_rel = 1e-12;

    DesignSpace design;  // sweep / optimize; fixed values default to `circuit`
    bool has_design = false;
    int budget = 100;

    std::filesystem::path out_dir = "out";
    bool write_json = true;
    bool write_csv = true;
};

RunConfig load_config(const std::filesystem::path& file);

/// Charging energy E_C = e^2/(2c)/h in GHz for a capacitance in fF
/// (CODATA exact constants e = 1.602176634e-19 C, h = 6.62607015e-34 J s).
double charging_energy_from_capacitance_fF(double c_fF);

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double value);

/// Execute one CLI command (map, validate, spectrum, profiles, solve, sweep,
/// optimize) and write its reports under cfg.out_dir.
/// Returns 0 on success and 1 on a domain error (message on stderr);
/// throws ConfigError for an unknown command.
int run_command(const std::string& command, const RunConfig& cfg);

}  // namespace sgcircuit
