#include "noslip/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <random>

namespace noslip {

namespace {

constexpr double kPi = std::numbers::pi;

const std::map<std::string, ScenarioKind>& kind_table() {
    static const std::map<std::string, ScenarioKind> table = {
        {"circular-rolling", ScenarioKind::CircularRolling},
        {"circular-billiard", ScenarioKind::CircularBilliard},
        {"plates", ScenarioKind::Plates},
        {"stadium-billiard", ScenarioKind::StadiumBilliard},
        {"stadium-rolling", ScenarioKind::StadiumRolling},
        {"period2-drift", ScenarioKind::Period2Drift},
        {"portrait", ScenarioKind::Portrait},
        {"compare-roll-bounce", ScenarioKind::CompareRollBounce},
    };
    return table;
}

double require_number(const nlohmann::json& j, const char* section, const char* key) {
    if (!j.contains(key)) {
        throw ConfigError(std::string("config: missing ") + section + "." + key);
    }
    if (!j.at(key).is_number())
        throw ConfigError(std::string("config: ") + section + "." + key + " must be a number");
    return j.at(key).get<double>();
}

double number_or(const nlohmann::json& j, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    return j.at(key).get<double>();
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

class CsvWriter {
  public:
    CsvWriter(const std::filesystem::path& path, const std::string& header)
        : out_(path, std::ios::binary) {
        if (!out_) throw SimulationError("cannot open output file " + path.string());
        out_ << header << "\n";
    }
    template <typename... Args>
    void row(Args... vals) {
        bool first = true;
        ((out_ << (first ? "" : ","), first = false, write(vals)), ...);
        out_ << "\n";
    }

  private:
    void write(double v) { out_ << fmt(v); }
    void write(long v) { out_ << v; }
    std::ofstream out_;
};

void write_collisions_csv(const std::filesystem::path& path, const TrajectoryRecord& rec) {
    CsvWriter csv(path, "index,time,x,y,z,h,sigma,w_tau,w_nu,omega_e,energy,residual,defect");
    for (const auto& r : rec.rows) {
        // tau = (nu_y, -nu_x)
        const double w_tau = r.w_x * r.nu_y - r.w_y * r.nu_x;
        const double w_nu = r.w_x * r.nu_x + r.w_y * r.nu_y;
        csv.row(r.index, r.time, r.x, r.y, r.h, r.h, r.sigma, w_tau, w_nu, r.omega_e,
                r.energy, r.residual, r.defect);
    }
}

double energy_drift(const TrajectoryRecord& rec) {
    double lo = rec.rows.front().energy, hi = lo;
    for (const auto& r : rec.rows) {
        lo = std::min(lo, r.energy);
        hi = std::max(hi, r.energy);
    }
    return hi - lo;
}

double flight_time_spread(const TrajectoryRecord& rec) {
    double lo = rec.rows.front().flight_time, hi = lo;
    for (const auto& r : rec.rows) {
        lo = std::min(lo, r.flight_time);
        hi = std::max(hi, r.flight_time);
    }
    return hi - lo;
}

}  // namespace

MassParams ScenarioConfig::mass_params() const {
    return MassParams(dimension, r, m, gamma, g);
}

CrossSection ScenarioConfig::section() const {
    switch (kind) {
        case ScenarioKind::CircularRolling:
        case ScenarioKind::CircularBilliard:
        case ScenarioKind::Period2Drift:
        case ScenarioKind::CompareRollBounce:
            return CrossSection::circle(rho);
        case ScenarioKind::StadiumBilliard:
        case ScenarioKind::StadiumRolling:
            return CrossSection::stadium(rho, half_len);
        case ScenarioKind::Plates:
            return CrossSection::plates(gap, dimension - 1);
        case ScenarioKind::Portrait:
            return half_len > 0.0 ? CrossSection::stadium(rho, half_len)
                                  : CrossSection::circle(rho);
    }
    throw std::logic_error("section: unknown scenario kind");
}

ScenarioConfig ScenarioConfig::parse(const nlohmann::json& j) {
    ScenarioConfig c;
    for (const auto& [key, _] : j.items()) {
        if (key != "scenario" && key != "geometry" && key != "physics" &&
            key != "initial" && key != "run" && key != "seed" && key != "output")
            throw ConfigError("config: unknown key '" + key + "'");
    }
    if (!j.contains("scenario")) throw ConfigError("config: missing scenario");
    c.scenario_name = j.at("scenario").get<std::string>();
    const auto it = kind_table().find(c.scenario_name);
    if (it == kind_table().end())
        throw ConfigError("config: unknown scenario '" + c.scenario_name + "'");
    c.kind = it->second;

    const nlohmann::json phys = j.value("physics", nlohmann::json::object());
    c.dimension = static_cast<int>(number_or(phys, "dimension", 3));
    c.m = number_or(phys, "m", 1.0);
    c.r = number_or(phys, "r", 1.0);
    c.g = number_or(phys, "g", 0.0);
    if (phys.contains("gamma") && phys.contains("gamma2"))
        throw ConfigError("config: give physics.gamma or physics.gamma2, not both");
    if (phys.contains("gamma2"))
        c.gamma = std::sqrt(phys.at("gamma2").get<double>());
    else if (phys.contains("gamma"))
        c.gamma = phys.at("gamma").get<double>();
    else
        c.gamma = MassParams::gamma_uniform(c.dimension);

    const nlohmann::json geo = j.value("geometry", nlohmann::json::object());
    const bool needs_round = c.kind != ScenarioKind::Plates;
    if (needs_round) {
        if (geo.contains("rho"))
            c.rho = geo.at("rho").get<double>();
        else if (geo.contains("R"))
            c.rho = geo.at("R").get<double>() - c.r;
        else
            throw ConfigError("config: missing geometry.rho (or geometry.R)");
        if (!(c.rho > 0.0)) throw ConfigError("config: effective radius must be positive");
    }
    c.half_len = number_or(geo, "half_len", 0.0);
    if (c.kind == ScenarioKind::StadiumBilliard || c.kind == ScenarioKind::StadiumRolling) {
        if (!(c.half_len > 0.0)) throw ConfigError("config: missing geometry.half_len");
    }
    if (c.kind == ScenarioKind::Plates) {
        c.gap = require_number(geo, "geometry", "gap");
        if (!(c.gap > 0.0)) throw ConfigError("config: gap must be positive");
        if (c.dimension != 2 && c.dimension != 3)
            throw ConfigError("config: plates support dimension 2 or 3");
    } else if (c.dimension != 3) {
        throw ConfigError("config: this scenario requires dimension 3");
    }

    const nlohmann::json ini = j.value("initial", nlohmann::json::object());
    c.arc_param = number_or(ini, "arc_param", 0.0);
    c.side = static_cast<int>(number_or(ini, "side", 0));
    c.h0 = number_or(ini, "h0", 0.0);
    c.u_tau = number_or(ini, "u_tau", 0.0);
    c.u_nu = number_or(ini, "u_nu", 0.0);
    c.sigma0 = number_or(ini, "sigma0", 0.0);
    c.omega_e = number_or(ini, "omega_e", 0.0);
    c.omega_nu = number_or(ini, "omega_nu", 0.0);
    c.omega_tau = number_or(ini, "omega_tau", 0.0);
    if (ini.contains("defect")) {
        if (ini.contains("omega_e"))
            throw ConfigError("config: initial.defect and initial.omega_e are mutually exclusive");
        c.defect = ini.at("defect").get<double>();
    }
    c.phi = number_or(ini, "phi", 0.0);
    if (ini.contains("speed")) c.speed = ini.at("speed").get<double>();
    c.theta = number_or(ini, "theta", 0.05);

    const nlohmann::json run = j.value("run", nlohmann::json::object());
    if (run.contains("n_collisions"))
        c.n_collisions = run.at("n_collisions").get<long>();
    if (run.contains("dt")) c.dt = run.at("dt").get<double>();
    if (run.contains("t_end")) c.t_end = run.at("t_end").get<double>();
    if (run.contains("dt_sample")) c.dt_sample = run.at("dt_sample").get<double>();
    c.sample_every = static_cast<long>(number_or(run, "sample_every", 1));
    c.trajectories = static_cast<long>(number_or(run, "trajectories", 16));

    const bool wants_events = c.kind == ScenarioKind::CircularBilliard ||
                              c.kind == ScenarioKind::StadiumBilliard ||
                              c.kind == ScenarioKind::Plates ||
                              c.kind == ScenarioKind::Period2Drift ||
                              c.kind == ScenarioKind::Portrait;
    if (wants_events) {
        if (!c.n_collisions || c.dt || c.t_end)
            throw ConfigError("config: this scenario takes run.n_collisions (not dt/t_end)");
        if (*c.n_collisions < 1) throw ConfigError("config: n_collisions must be >= 1");
    } else {
        if (c.n_collisions || !c.dt || !c.t_end)
            throw ConfigError("config: this scenario takes run.dt and run.t_end");
        if (!(*c.dt > 0.0) || !(*c.t_end > *c.dt))
            throw ConfigError("config: need 0 < dt < t_end");
    }
    if (c.kind == ScenarioKind::Period2Drift) {
        if (!(c.phi > 0.0) || c.phi > kPi / 2 + 1e-15)
            throw ConfigError("config: period2-drift needs initial.phi in (0, pi/2]");
        if (c.g != 0.0)
            throw ConfigError("config: period2-drift is a free-motion scenario (g = 0)");
    }
    if (c.kind == ScenarioKind::CompareRollBounce) {
        if (c.omega_e == 0.0)
            throw ConfigError("config: compare-roll-bounce needs initial.omega_e != 0");
        if (!(c.theta > 0.0) || c.theta > kPi / 4)
            throw ConfigError("config: initial.theta must lie in (0, pi/4]");
    }

    if (j.contains("seed")) c.seed = j.at("seed").get<unsigned long>();
    c.output = j.value("output", std::string("out"));
    try {
        (void)c.mass_params();  // validate physical parameters
        (void)c.section();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return c;
}

ScenarioConfig ScenarioConfig::parse_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    try {
        return parse(j);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

nlohmann::ordered_json ScenarioConfig::echo() const {
    nlohmann::ordered_json j;
    j["scenario"] = scenario_name;
    nlohmann::ordered_json geo;
    if (kind != ScenarioKind::Plates) geo["rho"] = rho;
    if (half_len > 0.0) geo["half_len"] = half_len;
    if (kind == ScenarioKind::Plates) geo["gap"] = gap;
    j["geometry"] = geo;
    j["physics"] = {{"dimension", dimension}, {"gamma", gamma}, {"m", m}, {"r", r}, {"g", g}};
    nlohmann::ordered_json ini = {{"arc_param", arc_param}, {"side", side},
                                  {"h0", h0},               {"u_tau", u_tau},
                                  {"u_nu", u_nu},           {"sigma0", sigma0},
                                  {"omega_nu", omega_nu},   {"omega_tau", omega_tau}};
    if (defect)
        ini["defect"] = *defect;
    else
        ini["omega_e"] = omega_e;
    if (kind == ScenarioKind::Period2Drift) {
        ini["phi"] = phi;
        if (speed) ini["speed"] = *speed;
    }
    if (kind == ScenarioKind::CompareRollBounce) ini["theta"] = theta;
    j["initial"] = ini;
    nlohmann::ordered_json run;
    if (n_collisions) run["n_collisions"] = *n_collisions;
    if (dt) run["dt"] = *dt;
    if (t_end) run["t_end"] = *t_end;
    if (dt_sample) run["dt_sample"] = *dt_sample;
    run["sample_every"] = sample_every;
    if (kind == ScenarioKind::Portrait) run["trajectories"] = trajectories;
    j["run"] = run;
    j["seed"] = seed;
    j["output"] = output;
    return j;
}

double height_at_time(const TrajectoryRecord& rec, double t) {
    if (rec.rows.empty()) throw std::invalid_argument("height_at_time: empty record");
    // rows are sorted by time; find the flight containing t
    size_t lo = 0, hi = rec.rows.size();
    while (hi - lo > 1) {
        const size_t mid = (lo + hi) / 2;
        if (rec.rows[mid].time <= t)
            lo = mid;
        else
            hi = mid;
    }
    const CollisionRow& r = rec.rows[lo];
    const double tau = t - r.time;
    return r.h + r.sigma * tau - 0.5 * rec.params.g * tau * tau;
}

std::vector<std::pair<double, double>> emit_timeseries(const TrajectoryRecord& rec,
                                                       double dt_sample) {
    if (!(dt_sample > 0.0)) throw std::invalid_argument("emit_timeseries: dt_sample > 0");
    const CollisionRow& last = rec.rows.back();
    const double total = last.time + last.flight_time;
    std::vector<std::pair<double, double>> out;
    out.reserve(static_cast<size_t>(total / dt_sample) + 1);
    for (long k = 0;; ++k) {
        const double t = k * dt_sample;
        if (t > total) break;
        out.emplace_back(t, height_at_time(rec, t));
    }
    return out;
}

namespace {

/// Pre-collision state at the configured boundary point.
ReducedState billiard_initial(const ScenarioConfig& cfg, const CrossSection& sec,
                              const MassParams& p) {
    const BoundaryFrame f = frame_at(sec, cfg.arc_param, cfg.side);
    if (cfg.u_nu > 0.0)
        throw ConfigError("config: initial.u_nu must be <= 0 (approaching the boundary)");
    ReducedState st;
    const int n = p.n;
    st.a = Eigen::VectorXd::Zero(n);
    st.a.head(sec.dim) = f.a;
    st.a(n - 1) = cfg.h0;
    st.u = Eigen::VectorXd::Zero(n);
    st.u(n - 1) = cfg.sigma0;
    double omega_e = cfg.omega_e;
    if (n == 3) {
        st.u.head<2>() = cfg.u_tau * f.tau.head<2>() + cfg.u_nu * f.nu.head<2>();
        if (cfg.defect) {
            if (cfg.u_tau == 0.0)
                throw ConfigError("config: defect override needs initial.u_tau != 0");
            omega_e = -(*cfg.defect) * cfg.u_tau / p.r;
        }
        Eigen::Vector3d tau3 = Eigen::Vector3d::Zero(), nu3 = Eigen::Vector3d::Zero();
        tau3.head<2>() = f.tau.head<2>();
        nu3.head<2>() = f.nu.head<2>();
        const Eigen::Vector3d omega =
            cfg.omega_tau * tau3 + cfg.omega_nu * nu3 + omega_e * Eigen::Vector3d::UnitZ();
        st.U = omega_to_skew(omega);
    } else {
        st.u(0) = cfg.u_nu * f.nu(0);
        st.U = Eigen::MatrixXd::Zero(2, 2);
        st.U(0, 1) = -omega_e;
        st.U(1, 0) = omega_e;
    }
    return st;
}

nlohmann::ordered_json billiard_summary(const TrajectoryRecord& rec) {
    const auto h = heights_of(rec);
    const auto diag = boundedness_diagnostic(h);
    double res_max = 0.0;
    for (const auto& r : rec.rows) res_max = std::max(res_max, r.residual);
    nlohmann::ordered_json s;
    s["n_collisions"] = static_cast<long>(rec.rows.size());
    s["h_min"] = diag.min;
    s["h_max"] = diag.max;
    s["secular_slope"] = diag.secular_slope;
    s["secular_curvature"] = diag.secular_curvature;
    s["energy_drift"] = energy_drift(rec);
    s["flight_time_spread"] = flight_time_spread(rec);
    s["rolling_residual_max"] = res_max;
    s["defect_initial"] = rec.rows.front().defect;
    return s;
}

void write_portrait_csv(const std::filesystem::path& path, const TrajectoryRecord& rec,
                        const MassParams& p, nlohmann::ordered_json& summary) {
    CsvWriter csv(path, "index,x,y");
    double rmax = 0.0, rmin = 2.0;
    long idx = 0;
    for (const auto& r : rec.rows) {
        TransversalState ts;
        ts.a = {r.x, r.y};
        ts.u = {r.u_x, r.u_y};
        ts.spin = r.omega_e;
        const BoundaryFrame f = frame_at(rec.section, r.arc_param, r.side);
        const Eigen::Vector2d pt = portrait_point(ts, f, p);
        csv.row(idx++, pt.x(), pt.y());
        const double rad = pt.norm();
        rmax = std::max(rmax, rad);
        rmin = std::min(rmin, rad);
    }
    summary["portrait_radius_min"] = rmin;
    summary["portrait_radius_max"] = rmax;
}

nlohmann::ordered_json run_billiard_kind(const ScenarioConfig& cfg,
                                         const std::filesystem::path& dir) {
    const MassParams p = cfg.mass_params();
    const CrossSection sec = cfg.section();
    const ReducedState init = billiard_initial(cfg, sec, p);
    const TrajectoryRecord rec = run_trajectory(init, sec, p, *cfg.n_collisions);
    write_collisions_csv(dir / "collisions.csv", rec);
    nlohmann::ordered_json s = billiard_summary(rec);

    if (cfg.kind == ScenarioKind::StadiumBilliard) {
        write_portrait_csv(dir / "portrait.csv", rec, p, s);
        bool caps = false;
        for (const auto& r : rec.rows)
            if (std::abs(r.x) > cfg.half_len) caps = true;
        s["reached_caps"] = caps;
    }
    if (cfg.kind == ScenarioKind::CircularBilliard &&
        std::abs(rec.rows.front().defect - 1.0) < 1e-9) {
        // transversal rolling impact start: compare against the closed form
        const auto& r0 = rec.rows[0];
        const auto& r1 = rec.rows[1];
        MixedVelocity lam0{r0.sigma, Eigen::Vector2d{r0.w_x, r0.w_y}};
        double err = 0.0;
        for (const auto& r : rec.rows) {
            const double pred = circular_closed_height(
                r.index, lam0, r0.h, r0.flight_time, Eigen::Vector2d{r0.nu_x, r0.nu_y},
                Eigen::Vector2d{r1.nu_x, r1.nu_y}, p, p.g);
            err = std::max(err, std::abs(pred - r.h));
        }
        s["closed_height_max_err"] = err;
    }
    if (cfg.dt_sample) {
        CsvWriter csv(dir / "timeseries.csv", "t,h");
        for (const auto& [t, h] : emit_timeseries(rec, *cfg.dt_sample)) csv.row(t, h);
    }
    return s;
}

nlohmann::ordered_json run_plates(const ScenarioConfig& cfg,
                                  const std::filesystem::path& dir) {
    const MassParams p = cfg.mass_params();
    const CrossSection sec = cfg.section();
    const ReducedState init = billiard_initial(cfg, sec, p);
    const TrajectoryRecord rec = run_trajectory(init, sec, p, *cfg.n_collisions);
    write_collisions_csv(dir / "collisions.csv", rec);
    nlohmann::ordered_json s = billiard_summary(rec);
    const PlatesLadder lad = plates_invariants(rec, p);
    s["slope_residual_max"] = lad.slope_residual_max;
    s["ellipse_residual_max"] = lad.ellipse_residual_max;
    s["gamma"] = p.gamma;
    return s;
}

nlohmann::ordered_json run_rolling_kind(const ScenarioConfig& cfg,
                                        const std::filesystem::path& dir) {
    const MassParams p = cfg.mass_params();
    const CrossSection sec = cfg.section();
    RollingState init;
    init.s = cfg.arc_param;
    init.h = cfg.h0;
    init.sigma = cfg.sigma0;
    init.omega_nu = cfg.omega_nu;
    init.omega_e = cfg.omega_e;

    CsvWriter csv(dir / "rolling.csv", "t,h,sigma,omega_nu,s");
    double hmin = init.h, hmax = init.h, err = 0.0;
    long k = 0;
    const bool circle = sec.kind == SectionKind::Circle;
    std::optional<CircularRollingSolution> sol;
    if (circle && init.omega_e != 0.0) sol = circular_closed_form(init, cfg.rho, p);
    integrate_rolling(init, sec, p, *cfg.dt, *cfg.t_end, [&](const RollingSample& smp) {
        if (k++ % cfg.sample_every == 0) csv.row(smp.t, smp.h, smp.sigma, smp.omega_nu, smp.s);
        hmin = std::min(hmin, smp.h);
        hmax = std::max(hmax, smp.h);
        if (sol) err = std::max(err, std::abs(smp.h - sol->h(smp.t)));
    });
    nlohmann::ordered_json s;
    s["h_min"] = hmin;
    s["h_max"] = hmax;
    s["omega_e"] = init.omega_e;
    s["period_ratio_formula"] = period_ratio(p);
    if (sol) {
        s["closed_form_max_err"] = err;
        s["vertical_period"] = 2.0 * kPi / std::sqrt(sol->c0);
    }
    return s;
}

nlohmann::ordered_json run_period2_drift(const ScenarioConfig& cfg,
                                         const std::filesystem::path& dir) {
    const MassParams p = cfg.mass_params();
    const CrossSection sec = cfg.section();
    const double speed = cfg.speed.value_or(2.0 * cfg.rho * std::sin(cfg.phi));
    const TransversalState ts = period2_initials(cfg.rho, cfg.phi, speed, p);

    const BoundaryFrame f = frame_at(sec, 0.0);
    Eigen::Vector3d tau3 = Eigen::Vector3d::Zero(), nu3 = Eigen::Vector3d::Zero();
    tau3.head<2>() = f.tau.head<2>();
    nu3.head<2>() = f.nu.head<2>();
    ReducedState post;
    post.a = Eigen::Vector3d{ts.a.x(), ts.a.y(), cfg.h0};
    post.u = Eigen::Vector3d{ts.u.x(), ts.u.y(), cfg.sigma0};
    post.U = omega_to_skew(cfg.omega_tau * tau3 + cfg.omega_nu * nu3 +
                           ts.spin * Eigen::Vector3d::UnitZ());
    // run_trajectory expects the pre-collision state; C_a is an involution
    Eigen::Vector3d nu_full = Eigen::Vector3d::Zero();
    nu_full.head<2>() = f.nu.head<2>();
    const ReducedState pre = no_slip_collide(post, nu_full, p);

    const TrajectoryRecord rec = run_trajectory(pre, sec, p, *cfg.n_collisions);
    write_collisions_csv(dir / "collisions.csv", rec);
    nlohmann::ordered_json s = billiard_summary(rec);

    const auto& r0 = rec.rows[0];
    const auto& r1 = rec.rows[1];
    DriftSpec spec;
    spec.nu1 = Eigen::Vector2d{r1.nu_x, r1.nu_y};
    spec.nu2 = Eigen::Vector2d{r0.nu_x, r0.nu_y};
    spec.lambda0 = MixedVelocity{r0.sigma, Eigen::Vector2d{r0.w_x, r0.w_y}};
    spec.t = r0.flight_time;
    const double predicted = drift_general(spec, p);
    const double predicted_3d =
        (cfg.phi < kPi / 2 - 1e-12)
            ? spec.t * drift_3d(cfg.phi, cfg.sigma0, cfg.omega_nu, cfg.omega_tau, p)
            : 0.0;
    const double measured = boundedness_diagnostic(heights_of(rec)).secular_slope;
    s["flight_time"] = spec.t;
    s["drift_predicted_general"] = predicted;
    s["drift_predicted_3d"] = predicted_3d;
    s["drift_measured"] = measured;
    s["drift_measured_vs_general"] = std::abs(measured - predicted);
    s["drift_measured_vs_3d"] = std::abs(measured - predicted_3d);
    return s;
}

nlohmann::ordered_json run_portrait(const ScenarioConfig& cfg,
                                    const std::filesystem::path& dir) {
    const MassParams p = cfg.mass_params();
    const CrossSection sec = cfg.section();
    const double P = perimeter(sec);
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    CsvWriter csv(dir / "portrait.csv", "index,x,y");
    long idx = 0;
    double rmax = 0.0;
    for (long traj = 0; traj < cfg.trajectories; ++traj) {
        const double s0 = P * unit(rng);
        const double ang = 0.1 + 0.8 * kPi * unit(rng);  // away from grazing
        const double spin_frac = 2.0 * unit(rng) - 1.0;
        const BoundaryFrame f = frame_at(sec, s0);
        // unit transverse energy: |u|^2 + (gamma r spin)^2 = 1
        const double uscale = std::sqrt(1.0 - spin_frac * spin_frac);
        ReducedState pre;
        pre.a = Eigen::Vector3d::Zero();
        pre.a.head<2>() = f.a.head<2>();
        pre.u = Eigen::Vector3d::Zero();
        pre.u.head<2>() = uscale * (std::cos(ang) * f.tau.head<2>() -
                                    std::sin(ang) * f.nu.head<2>());
        pre.U = omega_to_skew({0.0, 0.0, spin_frac / (p.gamma * p.r)});
        const TrajectoryRecord rec = run_trajectory(pre, sec, p, *cfg.n_collisions);
        for (const auto& r : rec.rows) {
            TransversalState ts{{r.x, r.y}, {r.u_x, r.u_y}, r.omega_e};
            const BoundaryFrame fr = frame_at(sec, r.arc_param, r.side);
            const Eigen::Vector2d pt = portrait_point(ts, fr, p);
            csv.row(idx++, pt.x(), pt.y());
            rmax = std::max(rmax, pt.norm());
        }
    }
    nlohmann::ordered_json s;
    s["seed"] = cfg.seed;
    s["trajectories"] = cfg.trajectories;
    s["points"] = idx;
    s["portrait_radius_max"] = rmax;
    return s;
}

nlohmann::ordered_json run_compare(const ScenarioConfig& cfg,
                                   const std::filesystem::path& dir) {
    const MassParams p = cfg.mass_params();
    const CrossSection sec = cfg.section();

    RollingState roll;
    roll.s = cfg.arc_param;
    roll.h = cfg.h0;
    roll.sigma = cfg.sigma0;
    roll.omega_nu = cfg.omega_nu;
    roll.omega_e = cfg.omega_e;
    const CircularRollingSolution sol = circular_closed_form(roll, cfg.rho, p);
    {
        CsvWriter csv(dir / "rolling.csv", "t,h,sigma,omega_nu,s");
        long k = 0;
        integrate_rolling(roll, sec, p, *cfg.dt, *cfg.t_end, [&](const RollingSample& smp) {
            if (k++ % cfg.sample_every == 0)
                csv.row(smp.t, smp.h, smp.sigma, smp.omega_nu, smp.s);
        });
    }

    // matched billiard: transversal rolling impact with the same spin, grazing
    // at angle theta, and the rolling constraint's sigma = r omega_tau mirrored
    const BoundaryFrame f = frame_at(sec, cfg.arc_param);
    ReducedState pre;
    pre.a = Eigen::Vector3d::Zero();
    pre.a.head<2>() = f.a.head<2>();
    pre.a(2) = cfg.h0;
    const double ut = -p.r * cfg.omega_e;
    const double un = -std::abs(ut) * std::tan(cfg.theta);
    pre.u = Eigen::Vector3d::Zero();
    pre.u.head<2>() = ut * f.tau.head<2>() + un * f.nu.head<2>();
    pre.u(2) = cfg.sigma0;
    Eigen::Vector3d tau3 = Eigen::Vector3d::Zero(), nu3 = Eigen::Vector3d::Zero();
    tau3.head<2>() = f.tau.head<2>();
    nu3.head<2>() = f.nu.head<2>();
    pre.U = omega_to_skew((cfg.sigma0 / p.r) * tau3 + cfg.omega_nu * nu3 +
                          cfg.omega_e * Eigen::Vector3d::UnitZ());

    const double t_est = cfg.rho * std::sin(2.0 * cfg.theta) / (p.r * std::abs(cfg.omega_e));
    const long n = static_cast<long>(std::ceil(*cfg.t_end / t_est)) + 2;
    const TrajectoryRecord rec = run_trajectory(pre, sec, p, n);
    write_collisions_csv(dir / "collisions.csv", rec);
    if (cfg.dt_sample) {
        CsvWriter csv(dir / "timeseries.csv", "t,h");
        for (const auto& [t, h] : emit_timeseries(rec, *cfg.dt_sample)) csv.row(t, h);
    }

    double dev = 0.0;
    for (const auto& r : rec.rows) {
        if (r.time > *cfg.t_end) break;
        dev = std::max(dev, std::abs(r.h - sol.h(r.time)));
    }
    const double amplitude = std::sqrt(sol.z0 * sol.z0 + sol.zdot0 * sol.zdot0 / sol.c0);
    nlohmann::ordered_json s;
    s["n_billiard_collisions"] = static_cast<long>(rec.rows.size());
    s["amplitude"] = amplitude;
    s["max_deviation"] = dev;
    s["deviation_ratio"] = amplitude > 0.0 ? dev / amplitude : 0.0;
    s["flight_time"] = rec.rows.front().flight_time;
    return s;
}

}  // namespace

nlohmann::ordered_json run_scenario(const ScenarioConfig& cfg,
                                    const std::optional<std::string>& out_override) {
    const std::filesystem::path dir = out_override.value_or(cfg.output);
    std::filesystem::create_directories(dir);

    nlohmann::ordered_json summary;
    summary["scenario"] = cfg.scenario_name;
    summary["seed"] = cfg.seed;
    nlohmann::ordered_json body;
    switch (cfg.kind) {
        case ScenarioKind::CircularBilliard:
        case ScenarioKind::StadiumBilliard:
            body = run_billiard_kind(cfg, dir);
            break;
        case ScenarioKind::Plates:
            body = run_plates(cfg, dir);
            break;
        case ScenarioKind::CircularRolling:
        case ScenarioKind::StadiumRolling:
            body = run_rolling_kind(cfg, dir);
            break;
        case ScenarioKind::Period2Drift:
            body = run_period2_drift(cfg, dir);
            break;
        case ScenarioKind::Portrait:
            body = run_portrait(cfg, dir);
            break;
        case ScenarioKind::CompareRollBounce:
            body = run_compare(cfg, dir);
            break;
    }
    for (auto& [k, v] : body.items()) summary[k] = v;
    summary["config"] = cfg.echo();

    std::ofstream out(dir / "summary.json", std::ios::binary);
    out << summary.dump(2) << "\n";
    return summary;
}

}  // namespace noslip
