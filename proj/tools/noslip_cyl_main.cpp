#include <CLI11.hpp>

#include <iostream>

#include "noslip/scenario.hpp"

namespace {
constexpr const char* kVersion = "noslip-cyl 1.0.0";
}

int main(int argc, char** argv) {
    CLI::App app{"no-slip billiard and rolling dynamics in generalized cylinders"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    auto* run = app.add_subcommand("run", "run a scenario config");
    run->add_option("config", config_path, "scenario config file (JSON)")->required();
    run->add_option("--out", out_dir, "override the output directory");

    std::string validate_path;
    auto* validate = app.add_subcommand("validate", "parse and echo a config");
    validate->add_option("config", validate_path, "scenario config file (JSON)")->required();

    auto* version = app.add_subcommand("version", "print the version");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (version->parsed()) {
            std::cout << kVersion << "\n";
            return 0;
        }
        if (validate->parsed()) {
            const auto cfg = noslip::ScenarioConfig::parse_file(validate_path);
            std::cout << cfg.echo().dump(2) << "\n";
            return 0;
        }
        const auto cfg = noslip::ScenarioConfig::parse_file(config_path);
        const auto summary = noslip::run_scenario(
            cfg, out_dir.empty() ? std::nullopt : std::optional<std::string>(out_dir));
        std::cout << summary.dump(2) << "\n";
        return 0;
    } catch (const noslip::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
