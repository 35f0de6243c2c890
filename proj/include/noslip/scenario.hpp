#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "noslip/analysis.hpp"
#include "noslip/rolling.hpp"

namespace noslip {

/// Raised for malformed or inconsistent scenario configs (CLI exit code 2).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ScenarioKind {
    CircularRolling,
    CircularBilliard,
    Plates,
    StadiumBilliard,
    StadiumRolling,
    Period2Drift,
    Portrait,
    CompareRollBounce,
};

/// Parsed scenario configuration.  Lengths are effective (boundary already
/// offset inward by the particle radius); the enlarged radius R may be given
/// instead of rho, in which case rho = R - r.
struct ScenarioConfig {
    ScenarioKind kind;
    std::string scenario_name;

    // geometry
    double rho = 0.0;
    double half_len = 0.0;
    double gap = 0.0;

    // physics
    int dimension = 3;
    double gamma = 0.0;
    double m = 1.0;
    double r = 1.0;
    double g = 0.0;

    // initial conditions
    double arc_param = 0.0;
    int side = 0;
    double h0 = 0.0;
    double u_tau = 0.0;
    double u_nu = 0.0;
    double sigma0 = 0.0;
    double omega_e = 0.0;
    double omega_nu = 0.0;
    double omega_tau = 0.0;
    std::optional<double> defect;  ///< overrides omega_e via -r omega_e / u_tau
    double phi = 0.0;              ///< period2-drift chord/tangent angle
    std::optional<double> speed;   ///< period2-drift chord speed (default: flight time 1)
    double theta = 0.05;           ///< compare-roll-bounce incidence angle

    // run
    std::optional<long> n_collisions;
    std::optional<double> dt;
    std::optional<double> t_end;
    std::optional<double> dt_sample;  ///< emit timeseries.csv at this sampling step
    long sample_every = 1;            ///< rolling.csv stride
    long trajectories = 16;           ///< portrait sweep size

    unsigned long seed = 1;
    std::string output = "out";

    MassParams mass_params() const;
    CrossSection section() const;

    static ScenarioConfig parse(const nlohmann::json& j);
    static ScenarioConfig parse_file(const std::filesystem::path& path);
    /// Normalized echo; parsing the echo reproduces an identical config.
    nlohmann::ordered_json echo() const;
};

/// Runs the scenario and writes its output files (CSV + summary.json) into
/// the output directory.  Returns the summary document.
nlohmann::ordered_json run_scenario(const ScenarioConfig& cfg,
                                    const std::optional<std::string>& out_override = {});

/// Height at absolute time t reconstructed from the quadratic flight formula.
double height_at_time(const TrajectoryRecord& rec, double t);

/// Uniform (t, h) samples of the record on the grid t = 0, dt_sample, ...
std::vector<std::pair<double, double>> emit_timeseries(const TrajectoryRecord& rec,
                                                       double dt_sample);

}  // namespace noslip
