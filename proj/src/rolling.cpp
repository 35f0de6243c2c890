#include "noslip/rolling.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace noslip {

namespace {

constexpr double kPi = std::numbers::pi;

/// RK4 step of (h, sigma, omega_nu) with curvature held at the constant value
/// valid throughout the step.  s is linear in t and advanced exactly.
void rk4_step(RollingState& st, double dt, double lambda, const MassParams& p) {
    const double kap = p.gamma2() / (1.0 + p.gamma2());
    const double fall = p.g / (1.0 + p.gamma2());
    const double we = st.omega_e;
    struct D {
        double h, sg, on;
    };
    auto f = [&](double sg, double on) -> D {
        return {sg, -kap * p.r * p.r * lambda * we * on - fall, lambda * we * sg};
    };
    const D k1 = f(st.sigma, st.omega_nu);
    const D k2 = f(st.sigma + 0.5 * dt * k1.sg, st.omega_nu + 0.5 * dt * k1.on);
    const D k3 = f(st.sigma + 0.5 * dt * k2.sg, st.omega_nu + 0.5 * dt * k2.on);
    const D k4 = f(st.sigma + dt * k3.sg, st.omega_nu + dt * k3.on);
    st.h += dt / 6.0 * (k1.h + 2.0 * k2.h + 2.0 * k3.h + k4.h);
    st.sigma += dt / 6.0 * (k1.sg + 2.0 * k2.sg + 2.0 * k3.sg + k4.sg);
    st.omega_nu += dt / 6.0 * (k1.on + 2.0 * k2.on + 2.0 * k3.on + k4.on);
    st.s -= p.r * we * dt;
    st.t += dt;
}

/// Time until s(t) = s0 - r omega_e t next crosses a stadium junction.
double time_to_junction(const CrossSection& sec, double s, double v) {
    if (sec.kind != SectionKind::Stadium || v == 0.0)
        return std::numeric_limits<double>::infinity();
    const double L = sec.half_len, R = sec.rho;
    const double P = 2.0 * kPi * R + 4.0 * L;
    const std::array<double, 5> junctions = {L, L + kPi * R, 3.0 * L + kPi * R,
                                             3.0 * L + 2.0 * kPi * R, P};
    double sw = std::fmod(s, P);
    if (sw < 0.0) sw += P;
    double best = std::numeric_limits<double>::infinity();
    for (double j : junctions) {
        double dist;
        if (v > 0.0) {
            dist = j - sw;
            if (dist <= 1e-13 * P) dist += P;
        } else {
            dist = sw - (j - P);  // previous copies of junction j
            dist = std::fmod(dist, P);
            if (dist <= 1e-13 * P) dist += P;
        }
        best = std::min(best, dist / std::abs(v));
    }
    return best;
}

}  // namespace

RollingDerivs rolling_rhs(const RollingState& state, const CrossSection& sec,
                          const MassParams& p) {
    if (sec.kind == SectionKind::Plates)
        throw std::domain_error("rolling_rhs: unbounded section");
    const double lambda = curvature_profile(sec, state.s);
    const double k = p.gamma2() / (1.0 + p.gamma2());
    RollingDerivs d;
    d.dh = state.sigma;
    d.dsigma = -k * p.r * p.r * lambda * state.omega_e * state.omega_nu -
               p.g / (1.0 + p.gamma2());
    d.domega_nu = lambda * state.omega_e * state.sigma;
    d.ds = -p.r * state.omega_e;
    return d;
}

void integrate_rolling(const RollingState& initial, const CrossSection& sec,
                       const MassParams& p, double dt, double t_end,
                       const std::function<void(const RollingSample&)>& sink) {
    if (!(dt > 0.0)) throw std::invalid_argument("integrate_rolling: dt must be positive");
    if (sec.kind == SectionKind::Plates)
        throw std::domain_error("integrate_rolling: unbounded section");

    RollingState st = initial;
    st.t = 0.0;
    const double v = -p.r * st.omega_e;
    sink({st.t, st.h, st.sigma, st.omega_nu, st.s});
    double t_prev = 0.0;
    for (long k = 1; t_prev < t_end - 1e-12 * dt; ++k) {
        const double target = std::min(t_end, k * dt);
        double remaining = target - t_prev;
        while (remaining > 1e-15 * dt) {
            const double tj = time_to_junction(sec, st.s, v);
            const double h = std::min(remaining, tj);
            // curvature of the segment this sub-step stays in
            const double lambda = curvature_profile(sec, st.s + 0.5 * h * v);
            rk4_step(st, h, lambda, p);
            remaining -= h;
        }
        st.t = target;  // keep the grid labels exact
        sink({st.t, st.h, st.sigma, st.omega_nu, st.s});
        t_prev = target;
    }
}

std::vector<RollingSample> integrate_rolling(const RollingState& initial,
                                             const CrossSection& sec,
                                             const MassParams& p, double dt,
                                             double t_end) {
    std::vector<RollingSample> out;
    out.reserve(static_cast<size_t>(t_end / dt) + 2);
    integrate_rolling(initial, sec, p, dt, t_end,
                      [&out](const RollingSample& s) { out.push_back(s); });
    return out;
}

double CircularRollingSolution::h(double t) const {
    const double w = std::sqrt(c0);
    return z0 * std::cos(w * t) + (zdot0 / w) * std::sin(w * t) - c1 / c0;
}

double CircularRollingSolution::sigma(double t) const {
    const double w = std::sqrt(c0);
    return -z0 * w * std::sin(w * t) + zdot0 * std::cos(w * t);
}

CircularRollingSolution circular_closed_form(const RollingState& initial, double rho,
                                             const MassParams& p) {
    if (initial.omega_e == 0.0)
        throw std::domain_error("circular_closed_form: omega_e = 0 degenerates to free fall");
    const double k = p.gamma2() / (1.0 + p.gamma2());
    const double we = initial.omega_e;
    const double c0 = k * (p.r / rho) * (p.r / rho) * we * we;
    const double c1 = k * (p.r * p.r / rho) * we * (initial.omega_nu - we * initial.h / rho) +
                      p.g / (1.0 + p.gamma2());
    CircularRollingSolution sol;
    sol.c0 = c0;
    sol.c1 = c1;
    sol.z0 = initial.h + c1 / c0;
    sol.zdot0 = initial.sigma;
    return sol;
}

double period_ratio(const MassParams& p) {
    return std::sqrt((1.0 + p.gamma2()) / p.gamma2());
}

}  // namespace noslip
