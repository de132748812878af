#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "sgcircuit/io.hpp"

namespace {

constexpr const char* kCommands[] = {"map",   "validate", "spectrum", "profiles",
                                     "solve", "sweep",    "optimize"};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sine-Gordon circuit design and analysis"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::string format;

    for (const char* name : kCommands) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "JSON run configuration")->required();
        sub->add_option("--out", out_dir, "output directory (overrides config)");
        sub->add_option("--format", format, "csv | json | both")
            ->check(CLI::IsMember({"csv", "json", "both"}));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        sgcircuit::RunConfig cfg = sgcircuit::load_config(config_path);
        if (const char* env = std::getenv("SG_CIRCUIT_OUT"); env && *env) cfg.out_dir = env;
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (format == "csv") {
            cfg.write_csv = true;
            cfg.write_json = false;
        } else if (format == "json") {
            cfg.write_csv = false;
            cfg.write_json = true;
        }
        return sgcircuit::run_command(app.get_subcommands().front()->get_name(), cfg);
    } catch (const sgcircuit::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
