#include <doctest.h>

#include <stdexcept>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "sgcircuit/io.hpp"
#include "sgcircuit/spectrum.hpp"

using namespace sgcircuit;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& tag) {
    const fs::path dir = fs::temp_directory_path() / ("sgc_test_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

fs::path write_config(const fs::path& dir, const std::string& name, const std::string& body) {
    const fs::path file = dir / name;
    std::ofstream out(file);
    out << body;
    return file;
}

std::string slurp(const fs::path& file) {
    std::ifstream in(file, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char* kReferenceConfig = R"json({
  "schema_version": 1,
  "circuit": { "ej_a": 100.0, "ej_b": -10.0, "ec_a": 1.0, "ec_b": 1.0,
               "n_junctions": 500, "m_squids": 100 },
  "spectrum": { "energy_cap": 30.0 }
})json";

}  // namespace

TEST_CASE("format_double_round_trips") {
    for (double v : {0.1, 1.0 / 3.0, 2.5e-17, -123456.789, 3.4301220086941793, 1e300}) {
        const std::string s = format_double(v);
        CHECK(std::stod(s) == v);
    }
}

TEST_CASE("capacitance_conversion_constant") {
    // E_C = e^2/(2 c h): 1 fF -> 19.370 GHz
    CHECK(charging_energy_from_capacitance_fF(1.0) ==
          doctest::Approx(19.370229324659125).epsilon(1e-12));
    CHECK(charging_energy_from_capacitance_fF(19.370229324659125) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(charging_energy_from_capacitance_fF(0.0), std::invalid_argument);
}

TEST_CASE("map_output_is_byte_identical_across_runs") {
    const fs::path dir = temp_dir("map");
    const fs::path cfg_file = write_config(dir, "cfg.json", kReferenceConfig);
    RunConfig cfg = load_config(cfg_file);
    cfg.out_dir = dir / "out1";
    REQUIRE(run_command("map", cfg) == 0);
    cfg.out_dir = dir / "out2";
    REQUIRE(run_command("map", cfg) == 0);
    CHECK(slurp(dir / "out1" / "sg_params.json") == slurp(dir / "out2" / "sg_params.json"));
    CHECK(slurp(dir / "out1" / "sg_params.json").find("\"topological\"") != std::string::npos);
}

TEST_CASE("spectrum_run_reports_the_reference_endpoints") {
    const fs::path dir = temp_dir("spectrum");
    RunConfig cfg = load_config(write_config(dir, "cfg.json", kReferenceConfig));
    cfg.out_dir = dir / "out";
    REQUIRE(run_command("spectrum", cfg) == 0);
    cfg.out_dir = dir / "out_repeat";
    REQUIRE(run_command("spectrum", cfg) == 0);
    CHECK(slurp(dir / "out" / "spectrum.json") == slurp(dir / "out_repeat" / "spectrum.json"));
    CHECK(slurp(dir / "out" / "spectrum_levels.csv") ==
          slurp(dir / "out_repeat" / "spectrum_levels.csv"));
    cfg.out_dir = dir / "out";

    // serialized numbers parse back bit-exactly
    {
        const auto j = nlohmann::json::parse(slurp(cfg.out_dir / "spectrum.json"));
        const double k_parsed = j.at("sg_params").at("stiffness_k").get<double>();
        const double m_parsed = j.at("catalog").at("soliton_mass").get<double>();
        const SgParams sg = map_circuit_to_sg(cfg.circuit);
        CHECK(k_parsed == sg.stiffness_k);
        CHECK(m_parsed == *sg.soliton_mass);
    }
    const std::string json_text = slurp(cfg.out_dir / "spectrum.json");
    // m ~ 12.80, E_B1 ~ 5.59, m_B1 ~ 5.74 at |ej_b| = 10 GHz
    CHECK(json_text.find("\"soliton_mass\": 12.8019502369") != std::string::npos);
    CHECK(json_text.find("\"continuum_threshold\": 5.73958543368") != std::string::npos);
    const std::string csv_text = slurp(cfg.out_dir / "spectrum_levels.csv");
    CHECK(csv_text.find("# sg-circuit spectrum-levels csv v1") == 0);
    CHECK(csv_text.find("soliton") != std::string::npos);
    CHECK(csv_text.find("boundary_tower p=1 q=0") != std::string::npos);
}

TEST_CASE("profiles_run_fails_cleanly_in_the_trivial_phase") {
    const fs::path dir = temp_dir("trivial");
    const std::string body = R"json({
      "schema_version": 1,
      "circuit": { "ej_a": 100.0, "ej_b": 10.0, "ec_a": 1.0, "ec_b": 1.0,
                   "n_junctions": 500, "m_squids": 100 }
    })json";
    RunConfig cfg = load_config(write_config(dir, "cfg.json", body));
    cfg.out_dir = dir / "out";
    CHECK(run_command("profiles", cfg) == 1);  // domain error -> 1
}

TEST_CASE("solve_and_profiles_runs_produce_csv") {
    const fs::path dir = temp_dir("solve");
    const std::string body = R"json({
      "schema_version": 1,
      "circuit": { "ej_a": 160.0, "ej_b": -0.1, "ec_a": 1.0, "ec_b": 1.0,
                   "n_junctions": 4, "m_squids": 240 },
      "profiles": { "regime": "semiclassical", "ground_state": "left",
                    "points_per_decay_length": 64 },
      "solve": { "solver": "both", "mode": "effective", "branch": "plus_pi",
                 "points_per_decay_length": 128 }
    })json";
    RunConfig cfg = load_config(write_config(dir, "cfg.json", body));
    cfg.out_dir = dir / "out";
    REQUIRE(run_command("profiles", cfg) == 0);
    REQUIRE(run_command("solve", cfg) == 0);
    CHECK(fs::exists(cfg.out_dir / "edge_profile.csv"));
    CHECK(fs::exists(cfg.out_dir / "currents.csv"));
    CHECK(fs::exists(cfg.out_dir / "continuum_solution.csv"));
    CHECK(fs::exists(cfg.out_dir / "lattice_plus.csv"));
    CHECK(fs::exists(cfg.out_dir / "lattice_minus.csv"));
    CHECK(fs::exists(cfg.out_dir / "solve_summary.json"));
    const std::string csv_text = slurp(cfg.out_dir / "continuum_solution.csv");
    CHECK(csv_text.find("# sg-circuit continuum-solution csv v1\nx_a0,phi_rad,i_coupler_ghz,i_squid_ghz\n") == 0);
}

TEST_CASE("sweep_run_writes_the_candidate_table") {
    const fs::path dir = temp_dir("sweep");
    const std::string body = R"json({
      "schema_version": 1,
      "circuit": { "ej_a": 100.0, "ej_b": -5.0, "ec_a": 1.0, "ec_b": 1.0,
                   "n_junctions": 500, "m_squids": 100 },
      "sweep": { "ranges": [ { "param": "ej_b", "min": -10.0, "max": -1.0,
                               "steps": 5, "scale": "log" } ] }
    })json";
    RunConfig cfg = load_config(write_config(dir, "cfg.json", body));
    cfg.out_dir = dir / "out";
    REQUIRE(run_command("sweep", cfg) == 0);
    REQUIRE(run_command("optimize", cfg) == 0);
    const std::string csv_text = slurp(cfg.out_dir / "sweep_candidates.csv");
    CHECK(csv_text.find("feasible") != std::string::npos);
    CHECK(fs::exists(cfg.out_dir / "optimize_best.json"));
}

TEST_CASE("config_errors_are_distinguished") {
    const fs::path dir = temp_dir("cfg_errors");
    // malformed JSON
    CHECK_THROWS_AS(load_config(write_config(dir, "bad.json", "{ not json")), ConfigError);
    // missing circuit
    CHECK_THROWS_AS(load_config(write_config(dir, "m.json", R"({"schema_version":1})")),
                    ConfigError);
    // both unit systems at once
    const std::string both = R"json({
      "schema_version": 1,
      "circuit": { "ej_a": 100.0, "ej_b": -5.0, "ec_a": 1.0, "ec_b": 1.0,
                   "ca_fF": 19.4, "cb_fF": 19.4, "n_junctions": 500, "m_squids": 100 }
    })json";
    CHECK_THROWS_AS(load_config(write_config(dir, "b.json", both)), ConfigError);
    // wrong schema version
    const std::string v2 = R"json({
      "schema_version": 2,
      "circuit": { "ej_a": 100.0, "ej_b": -5.0, "ec_a": 1.0, "ec_b": 1.0,
                   "n_junctions": 500, "m_squids": 100 }
    })json";
    CHECK_THROWS_AS(load_config(write_config(dir, "v2.json", v2)), ConfigError);
    // unknown command
    RunConfig cfg = load_config(write_config(dir, "ok.json", kReferenceConfig));
    cfg.out_dir = dir / "out";
    CHECK_THROWS_AS(run_command("frobnicate", cfg), ConfigError);
}

TEST_CASE("capacitance_config_path") {
    const fs::path dir = temp_dir("cap");
    const std::string body = R"json({
      "schema_version": 1,
      "circuit": { "ej_a": 100.0, "ej_b": -10.0, "ca_fF": 19.370229324659125,
                   "cb_fF": 19.370229324659125, "n_junctions": 500, "m_squids": 100 }
    })json";
    const RunConfig cfg = load_config(write_config(dir, "cfg.json", body));
    CHECK(cfg.circuit_from_capacitance);
    CHECK(cfg.circuit.ec_a == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cfg.circuit.ec_b == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("format_selection_filters_outputs") {
    const fs::path dir = temp_dir("formats");
    RunConfig cfg = load_config(write_config(dir, "cfg.json", kReferenceConfig));
    cfg.out_dir = dir / "out";
    cfg.write_csv = false;
    REQUIRE(run_command("spectrum", cfg) == 0);
    CHECK(fs::exists(cfg.out_dir / "spectrum.json"));
    CHECK_FALSE(fs::exists(cfg.out_dir / "spectrum_levels.csv"));
}
