#include "sgcircuit/io.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <system_error>

#include <json.hpp>

#include "sgcircuit/numerics.hpp"
#include "sgcircuit/spectrum.hpp"

namespace sgcircuit {

namespace {

using nlohmann::json;

// ---------------------------------------------------------------------------
// JSON serialization of the report types
// ---------------------------------------------------------------------------

json to_json(const CircuitParams& p) {
    return {{"ej_a", p.ej_a},       {"ej_b", p.ej_b},
            {"ec_a", p.ec_a},       {"ec_b", p.ec_b},
            {"n_junctions", p.n_junctions}, {"m_squids", p.m_squids},
            {"a0", p.a0}};
}

json to_json(const SgParams& sg) {
    json j{{"u", sg.u},
           {"stiffness_k", sg.stiffness_k},
           {"lambda", sg.lambda},
           {"xi", sg.xi},
           {"length", sg.length},
           {"a0", sg.a0}};
    if (sg.soliton_mass) j["soliton_mass"] = *sg.soliton_mass;
    else j["soliton_mass"] = nullptr;
    return j;
}

json to_json(const RegimeReport& r) {
    json margins = json::array();
    for (const auto& m : r.margins)
        margins.push_back({{"name", m.name},
                           {"ratio", m.ratio},
                           {"threshold", m.threshold},
                           {"pass", m.pass}});
    return {{"ratio_ejb_eja", r.ratio_ejb_eja},
            {"ratio_eca_eja", r.ratio_eca_eja},
            {"ratio_time", r.ratio_time},
            {"ratio_space", r.ratio_space},
            {"strictness", r.strictness},
            {"margins", margins},
            {"valid", r.valid}};
}

const char* tower_name(Tower t) { return t == Tower::left ? "L" : "R"; }

json to_json(const SpectrumCatalog& cat) {
    json j;
    j["phase"] = phase_name(cat.phase);
    j["ground_states"] = cat.ground_states;
    j["soliton_mass"] = cat.soliton_mass;
    j["solitonic_states"] = cat.solitonic_states;
    json bulk = json::array();
    for (const auto& b : cat.bulk_breathers)
        bulk.push_back({{"p", b.index}, {"mass", b.mass}, {"at_threshold", b.at_threshold}});
    j["bulk_breathers"] = bulk;
    json levels = json::array();
    for (const auto& lv : cat.boundary_levels)
        levels.push_back(
            {{"p", lv.index}, {"energy", lv.energy}, {"at_threshold", lv.at_threshold}});
    j["boundary_levels"] = levels;
    json towers = json::array();
    for (const auto& t : cat.tower_states)
        towers.push_back(
            {{"tower", tower_name(t.tower)}, {"p", t.p}, {"q", t.q}, {"energy", t.energy}});
    j["tower_states"] = towers;
    j["continuum_threshold"] = cat.continuum_threshold;
    if (cat.midgap_separation) j["midgap_separation"] = *cat.midgap_separation;
    else j["midgap_separation"] = nullptr;
    j["energy_cap"] = cat.energy_cap;
    return j;
}

json to_json(const DesignCandidate& c) {
    json j;
    j["params"] = to_json(c.params);
    if (c.sg) {
        j["stiffness_k"] = c.sg->stiffness_k;
        j["soliton_mass"] = c.sg->soliton_mass ? json(*c.sg->soliton_mass) : json(nullptr);
    }
    j["delta"] = c.delta ? json(*c.delta) : json(nullptr);
    j["feasible"] = c.feasible;
    j["stable"] = c.stable;
    j["regime_valid"] = c.regime.valid;
    j["infeasible_reason"] = c.infeasible_reason;
    return j;
}

// ---------------------------------------------------------------------------
// Config parsing
// ---------------------------------------------------------------------------

template <typename T>
T require(const json& j, const std::string& key, const char* where) {
    if (!j.contains(key))
        throw ConfigError(std::string(where) + ": missing required field '" + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string(where) + ": field '" + key + "' has the wrong type");
    }
}

template <typename T>
T optional_of(const json& j, const std::string& key, T fallback, const char* where) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string(where) + ": field '" + key + "' has the wrong type");
    }
}

CircuitParams parse_circuit(const json& j, bool& from_capacitance) {
    CircuitParams p;
    p.ej_a = require<double>(j, "ej_a", "circuit");
    p.ej_b = require<double>(j, "ej_b", "circuit");
    p.n_junctions = require<int>(j, "n_junctions", "circuit");
    p.m_squids = require<int>(j, "m_squids", "circuit");
    p.a0 = optional_of<double>(j, "a0", 1.0, "circuit");

    const bool has_ec = j.contains("ec_a") || j.contains("ec_b");
    const bool has_cap = j.contains("ca_fF") || j.contains("cb_fF");
    if (has_ec == has_cap)
        throw ConfigError(
            "circuit: supply exactly one of charging energies (ec_a, ec_b) or capacitances "
            "(ca_fF, cb_fF)");
    from_capacitance = has_cap;
    if (has_cap) {
        const double ca = require<double>(j, "ca_fF", "circuit");
        const double cb = require<double>(j, "cb_fF", "circuit");
        if (!(ca > 0.0) || !(cb > 0.0))
            throw ConfigError("circuit: capacitances must be > 0");
        p.ec_a = charging_energy_from_capacitance_fF(ca);
        p.ec_b = charging_energy_from_capacitance_fF(cb);
    } else {
        p.ec_a = require<double>(j, "ec_a", "circuit");
        p.ec_b = require<double>(j, "ec_b", "circuit");
    }
    return p;
}

ProfileRegime parse_regime(const std::string& s) {
    if (s == "semiclassical") return ProfileRegime::semiclassical;
    if (s == "free_fermion") return ProfileRegime::free_fermion;
    throw ConfigError("profiles: regime must be 'semiclassical' or 'free_fermion'");
}

GroundSel parse_ground(const std::string& s) {
    if (s == "left") return GroundSel::left;
    if (s == "right") return GroundSel::right;
    throw ConfigError("profiles: ground_state must be 'left' or 'right'");
}

KinkBranch parse_branch(const std::string& s) {
    if (s == "plus_pi") return KinkBranch::plus_pi;
    if (s == "minus_pi") return KinkBranch::minus_pi;
    throw ConfigError("solve: branch must be 'plus_pi' or 'minus_pi'");
}

LatticeMode parse_mode(const std::string& s) {
    if (s == "effective") return LatticeMode::effective;
    if (s == "full_array") return LatticeMode::full_array;
    throw ConfigError("solve: mode must be 'effective' or 'full_array'");
}

DesignSpace parse_design(const json& j, const CircuitParams& fixed) {
    DesignSpace space;
    space.fixed = fixed;
    if (!j.contains("ranges") || !j.at("ranges").is_array() || j.at("ranges").empty())
        throw ConfigError("sweep: 'ranges' must be a non-empty array");
    for (const auto& rj : j.at("ranges")) {
        ParamRange r;
        r.name = require<std::string>(rj, "param", "sweep.ranges");
        r.min = require<double>(rj, "min", "sweep.ranges");
        r.max = require<double>(rj, "max", "sweep.ranges");
        r.steps = require<int>(rj, "steps", "sweep.ranges");
        const std::string scale = optional_of<std::string>(rj, "scale", "linear", "sweep.ranges");
        if (scale == "linear") r.scale = SweepScale::linear;
        else if (scale == "log") r.scale = SweepScale::log_scale;
        else throw ConfigError("sweep.ranges: scale must be 'linear' or 'log'");
        space.ranges.push_back(std::move(r));
    }
    space.constraints.strictness = optional_of<double>(j, "strictness", 10.0, "sweep");
    space.constraints.k_max = optional_of<double>(j, "k_max", 0.5, "sweep");
    space.constraints.require_boundary =
        optional_of<bool>(j, "require_boundary", true, "sweep");
    try {
        space.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("sweep: ") + e.what());
    }
    return space;
}

// ---------------------------------------------------------------------------
// Writers
// ---------------------------------------------------------------------------

void write_text(const std::filesystem::path& file, const std::string& text) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file " + file.string());
    out << text;
    if (!out) throw std::runtime_error("failed writing " + file.string());
}

void write_json_file(const RunConfig& cfg, const std::string& name, const json& j) {
    if (!cfg.write_json) return;
    write_text(cfg.out_dir / name, j.dump(2) + "\n");
    std::cout << "wrote " << (cfg.out_dir / name).string() << "\n";
}

void write_csv_file(const RunConfig& cfg, const std::string& name, const std::string& body) {
    if (!cfg.write_csv) return;
    write_text(cfg.out_dir / name, body);
    std::cout << "wrote " << (cfg.out_dir / name).string() << "\n";
}

std::string csv_header(const std::string& schema, const std::string& columns) {
    return "# sg-circuit " + schema + " csv v1\n" + columns + "\n";
}

// ---------------------------------------------------------------------------
// Command handlers
// ---------------------------------------------------------------------------

int run_map(const RunConfig& cfg) {
    const SgParams sg = map_circuit_to_sg(cfg.circuit);
    json j;
    j["circuit"] = to_json(cfg.circuit);
    j["sg_params"] = to_json(sg);
    j["phase"] = phase_name(classify_phase(sg));
    write_json_file(cfg, "sg_params.json", j);
    return 0;
}

int run_validate(const RunConfig& cfg) {
    const RegimeReport report = validate_regime(cfg.circuit, cfg.strictness);
    json j;
    j["circuit"] = to_json(cfg.circuit);
    j["regime"] = to_json(report);
    write_json_file(cfg, "regime_report.json", j);
    return 0;
}

int run_spectrum(const RunConfig& cfg) {
    const SgParams sg = map_circuit_to_sg(cfg.circuit);
    double cap = cfg.energy_cap;
    if (cap <= 0.0) {
        if (!sg.soliton_mass)
            throw std::domain_error("spectrum: soliton mass undefined for ej_b = 0");
        cap = 2.0 * *sg.soliton_mass;
    }
    const SpectrumCatalog cat = enumerate_spectrum(sg, cap);

    json j;
    j["circuit"] = to_json(cfg.circuit);
    j["sg_params"] = to_json(sg);
    j["catalog"] = to_json(cat);
    write_json_file(cfg, "spectrum.json", j);

    std::ostringstream csv;
    csv << csv_header("spectrum-levels", "energy_ghz,label,tower");
    for (const auto& g : cat.ground_states)
        csv << format_double(0.0) << ",ground:" << g << ","
            << (g == "0_L" ? "L" : (g == "0_R" ? "R" : "-")) << "\n";
    if (cat.solitonic_states) {
        csv << format_double(cat.soliton_mass) << ",soliton,-\n";
        csv << format_double(cat.soliton_mass) << ",antisoliton,-\n";
    }
    for (const auto& b : cat.bulk_breathers)
        csv << format_double(b.mass) << ",bulk_breather p=" << b.index << ",-\n";
    for (const auto& t : cat.tower_states)
        csv << format_double(t.energy) << ",boundary_tower p=" << t.p << " q=" << t.q << ","
            << tower_name(t.tower) << "\n";
    write_csv_file(cfg, "spectrum_levels.csv", csv.str());
    return 0;
}

int run_profiles(const RunConfig& cfg) {
    const SgParams sg = map_circuit_to_sg(cfg.circuit);
    ProfileGridSpec grid;
    grid.points_per_decay_length = cfg.profile_points_per_decay_length;
    const EdgeProfile profile = edge_profile(sg, cfg.profile_regime, cfg.ground_state, grid);
    const CurrentProfile currents = current_profile(sg, profile);

    json j;
    j["circuit"] = to_json(cfg.circuit);
    j["sg_params"] = to_json(sg);
    j["regime"] = cfg.profile_regime == ProfileRegime::semiclassical ? "semiclassical"
                                                                     : "free_fermion";
    j["ground_state"] = cfg.ground_state == GroundSel::left ? "left" : "right";
    j["scale"] = profile.scale;
    j["edge_overlap"] = profile.edge_overlap;
    j["approximate_regime"] = profile.approximate_regime;
    j["conservation_residual"] = currents.conservation_residual;
    j["max_abs_squid"] = currents.max_abs_squid;
    write_json_file(cfg, "profile_meta.json", j);

    std::ostringstream pcsv;
    pcsv << csv_header("edge-profile", "x_a0,delta_phi_l,delta_phi_r,phi_density,phi_rad");
    for (std::size_t i = 0; i < profile.grid.size(); ++i)
        pcsv << format_double(profile.grid[i]) << ',' << format_double(profile.delta_phi_l[i])
             << ',' << format_double(profile.delta_phi_r[i]) << ','
             << format_double(profile.phi_density[i]) << ','
             << format_double(profile.phi_at(profile.grid[i])) << "\n";
    write_csv_file(cfg, "edge_profile.csv", pcsv.str());

    std::ostringstream ccsv;
    ccsv << csv_header("currents", "x_a0,i_coupler_ghz,i_squid_ghz");
    for (std::size_t i = 0; i < currents.grid.size(); ++i)
        ccsv << format_double(currents.grid[i]) << ',' << format_double(currents.i_coupler[i])
             << ',' << format_double(currents.i_squid[i]) << "\n";
    write_csv_file(cfg, "currents.csv", ccsv.str());
    return 0;
}

int run_solve(const RunConfig& cfg) {
    const bool want_continuum = cfg.solver == "continuum" || cfg.solver == "both";
    const bool want_lattice = cfg.solver == "lattice" || cfg.solver == "both";
    if (!want_continuum && !want_lattice)
        throw ConfigError("solve: solver must be 'continuum', 'lattice' or 'both'");
    json j;
    j["circuit"] = to_json(cfg.circuit);

    if (want_continuum) {
        const SgParams sg = map_circuit_to_sg(cfg.circuit);
        ContinuumGridSpec grid;
        grid.points_per_decay_length = cfg.continuum_points_per_decay_length;
        const BvpSolution sol = solve_continuum_kink(sg, cfg.branch, grid, cfg.solve_tol_rel);
        j["continuum"] = {{"branch", sol.branch == KinkBranch::plus_pi
                                         ? "plus_pi"
                                         : (sol.branch == KinkBranch::minus_pi ? "minus_pi"
                                                                               : "trivial")},
                          {"energy", sol.energy},
                          {"residual", sol.residual},
                          {"converged", sol.converged},
                          {"iterations", sol.iterations}};
        std::ostringstream csv;
        csv << csv_header("continuum-solution", "x_a0,phi_rad,i_coupler_ghz,i_squid_ghz");
        const double coupler_coeff =
            sg.u / (4.0 * std::numbers::pi * sg.stiffness_k);
        const auto dphi = gradient_uniform(sol.phi, sol.spacing());
        for (std::size_t i = 0; i < sol.grid.size(); ++i)
            csv << format_double(sol.grid[i]) << ',' << format_double(sol.phi[i]) << ','
                << format_double(coupler_coeff * dphi[i]) << ','
                << format_double(sg.lambda * sg.a0 * std::sin(sol.phi[i])) << "\n";
        write_csv_file(cfg, "continuum_solution.csv", csv.str());
    }

    if (want_lattice) {
        LatticeOptions opt;
        opt.tol_rel = cfg.solve_tol_rel;
        const LatticePair pair = solve_lattice_ground_states(cfg.circuit, cfg.lattice_mode, opt);
        const auto lattice_json = [](const LatticeState& s) {
            return json{{"energy", s.energy},
                        {"converged", s.converged},
                        {"grad_norm", s.grad_norm},
                        {"iterations", s.iterations},
                        {"conservation_residual", s.conservation_residual},
                        {"max_abs_current", s.max_abs_current}};
        };
        j["lattice"] = {{"mode", cfg.lattice_mode == LatticeMode::effective ? "effective"
                                                                            : "full_array"},
                        {"plus", lattice_json(pair.plus)},
                        {"minus", lattice_json(pair.minus)}};
        const auto write_state = [&](const LatticeState& s, const std::string& name) {
            std::ostringstream csv;
            csv << csv_header("lattice-solution",
                              "site,x_a0,phi_rad,coupler_in_ghz,coupler_out_ghz,squid_ghz");
            for (std::size_t k = 0; k < s.phi.size(); ++k)
                csv << k << ',' << format_double(static_cast<double>(k) * s.params.a0) << ','
                    << format_double(s.phi[k]) << ','
                    << format_double(s.node_currents[k].coupler_in) << ','
                    << format_double(s.node_currents[k].coupler_out) << ','
                    << format_double(s.node_currents[k].squid) << "\n";
            write_csv_file(cfg, name, csv.str());
        };
        write_state(pair.plus, "lattice_plus.csv");
        write_state(pair.minus, "lattice_minus.csv");
    }
    write_json_file(cfg, "solve_summary.json", j);
    return 0;
}

std::string candidates_csv(const std::vector<DesignCandidate>& candidates) {
    std::ostringstream csv;
    csv << csv_header("sweep-candidates",
                      "ej_a,ej_b,ec_a,ec_b,n_junctions,m_squids,stiffness_k,delta_ghz,"
                      "feasible,stable,regime_valid,infeasible_reason");
    for (const auto& c : candidates) {
        csv << format_double(c.params.ej_a) << ',' << format_double(c.params.ej_b) << ','
            << format_double(c.params.ec_a) << ',' << format_double(c.params.ec_b) << ','
            << c.params.n_junctions << ',' << c.params.m_squids << ',';
        csv << (c.sg ? format_double(c.sg->stiffness_k) : std::string()) << ',';
        csv << (c.delta ? format_double(*c.delta) : std::string()) << ',';
        csv << (c.feasible ? "1" : "0") << ',' << (c.stable ? "1" : "0") << ','
            << (c.regime.valid ? "1" : "0") << ',' << c.infeasible_reason << "\n";
    }
    return csv.str();
}

int run_sweep(const RunConfig& cfg) {
    if (!cfg.has_design) throw ConfigError("sweep: config has no 'sweep' section");
    const SweepResult result = sweep(cfg.design);
    json j;
    j["feasible_count"] = result.feasible_count;
    j["binding_constraints"] = result.binding_constraints;
    json arr = json::array();
    for (const auto& c : result.candidates) arr.push_back(to_json(c));
    j["candidates"] = arr;
    write_json_file(cfg, "sweep_candidates.json", j);
    write_csv_file(cfg, "sweep_candidates.csv", candidates_csv(result.candidates));
    return 0;
}

int run_optimize(const RunConfig& cfg) {
    if (!cfg.has_design) throw ConfigError("optimize: config has no 'sweep' section");
    const OptimizeResult result = optimize_delta(cfg.design, cfg.budget);
    json j;
    j["best"] = to_json(result.best);
    j["improved"] = result.improved;
    j["evaluations"] = result.evaluations;
    write_json_file(cfg, "optimize_best.json", j);
    write_csv_file(cfg, "optimize_best.csv", candidates_csv({result.best}));
    return 0;
}

}  // namespace

double charging_energy_from_capacitance_fF(double c_fF) {
    if (!(c_fF > 0.0)) throw std::invalid_argument("capacitance must be > 0");
    constexpr double e_charge = 1.602176634e-19;  // C
    constexpr double planck_h = 6.62607015e-34;   // J s
    const double c_farad = c_fF * 1e-15;
    return e_charge * e_charge / (2.0 * c_farad * planck_h) * 1e-9;
}

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

RunConfig load_config(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ConfigError("cannot open config file " + file.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }

    RunConfig cfg;
    cfg.schema_version = require<int>(j, "schema_version", "config");
    if (cfg.schema_version != 1)
        throw ConfigError("config: unsupported schema_version (expected 1)");
    if (!j.contains("circuit")) throw ConfigError("config: missing 'circuit' section");
    cfg.circuit = parse_circuit(j.at("circuit"), cfg.circuit_from_capacitance);

    if (j.contains("validate"))
        cfg.strictness = optional_of<double>(j.at("validate"), "strictness", 10.0, "validate");
    if (j.contains("spectrum"))
        cfg.energy_cap = optional_of<double>(j.at("spectrum"), "energy_cap", 0.0, "spectrum");
    if (j.contains("profiles")) {
        const json& p = j.at("profiles");
        cfg.profile_regime =
            parse_regime(optional_of<std::string>(p, "regime", "semiclassical", "profiles"));
        cfg.ground_state =
            parse_ground(optional_of<std::string>(p, "ground_state", "left", "profiles"));
        cfg.profile_points_per_decay_length =
            optional_of<int>(p, "points_per_decay_length", 64, "profiles");
    }
    if (j.contains("solve")) {
        const json& s = j.at("solve");
        cfg.solver = optional_of<std::string>(s, "solver", "both", "solve");
        cfg.lattice_mode = parse_mode(optional_of<std::string>(s, "mode", "effective", "solve"));
        cfg.branch = parse_branch(optional_of<std::string>(s, "branch", "plus_pi", "solve"));
        cfg.continuum_points_per_decay_length =
            optional_of<int>(s, "points_per_decay_length", 256, "solve");
        cfg.solve_tol_rel = optional_of<double>(s, "tol_rel", 1e-12, "solve");
    }
    if (j.contains("sweep")) {
        cfg.design = parse_design(j.at("sweep"), cfg.circuit);
        cfg.has_design = true;
    }
    if (j.contains("optimize"))
        cfg.budget = optional_of<int>(j.at("optimize"), "budget", 100, "optimize");
    if (j.contains("output")) {
        const json& o = j.at("output");
        cfg.out_dir = optional_of<std::string>(o, "dir", "out", "output");
        if (o.contains("formats")) {
            cfg.write_json = false;
            cfg.write_csv = false;
            for (const auto& f : o.at("formats")) {
                const std::string name = f.get<std::string>();
                if (name == "json") cfg.write_json = true;
                else if (name == "csv") cfg.write_csv = true;
                else throw ConfigError("output.formats: entries must be 'json' or 'csv'");
            }
        }
    }
    return cfg;
}

int run_command(const std::string& command, const RunConfig& cfg) {
    std::error_code ec;
    std::filesystem::create_directories(cfg.out_dir, ec);
    if (ec) throw ConfigError("cannot create output directory " + cfg.out_dir.string());

    try {
        if (command == "map") return run_map(cfg);
        if (command == "validate") return run_validate(cfg);
        if (command == "spectrum") return run_spectrum(cfg);
        if (command == "profiles") return run_profiles(cfg);
        if (command == "solve") return run_solve(cfg);
        if (command == "sweep") return run_sweep(cfg);
        if (command == "optimize") return run_optimize(cfg);
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    throw ConfigError("unknown command '" + command + "'");
}

}  // namespace sgcircuit
