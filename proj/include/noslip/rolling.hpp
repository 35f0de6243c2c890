#pragma once

#include <functional>
#include <vector>

#include "noslip/geometry.hpp"

namespace noslip {

/// Reduced state of the rolling sphere on a 3-D cylinder: contact arc-length
/// parameter s on the cross-section boundary, height h, vertical velocity
/// sigma = dh/dt, and the nu component of the angular velocity.  omega_e is a
/// constant of motion and is never integrated.
struct RollingState {
    double s = 0.0;
    double h = 0.0;
    double sigma = 0.0;
    double omega_nu = 0.0;
    double omega_e = 0.0;
    double t = 0.0;
};

struct RollingDerivs {
    double ds, dh, dsigma, domega_nu;
};

struct RollingSample {
    double t, h, sigma, omega_nu, s;
};

/// Right-hand side of the reduced rolling equations:
///   dh/dt    = sigma
///   dsigma/dt = -(gamma^2/(1+gamma^2)) r^2 lambda(s) omega_e omega_nu - g/(1+gamma^2)
///   domega_nu/dt = lambda(s) omega_e sigma
///   ds/dt    = -r omega_e
/// Bounded sections only.
RollingDerivs rolling_rhs(const RollingState& state, const CrossSection& sec,
                          const MassParams& p);

/// Classical fixed-step RK4.  For the stadium, steps are clamped at
/// cap/straight junction crossings (the contact point moves at the constant
/// rate -r omega_e, so crossing times are exact), which keeps fourth order
/// across the curvature discontinuities.  Samples are emitted on the uniform
/// grid t = 0, dt, 2 dt, ...
void integrate_rolling(const RollingState& initial, const CrossSection& sec,
                       const MassParams& p, double dt, double t_end,
                       const std::function<void(const RollingSample&)>& sink);

std::vector<RollingSample> integrate_rolling(const RollingState& initial,
                                             const CrossSection& sec,
                                             const MassParams& p, double dt,
                                             double t_end);

/// Closed-form solution for the circular cylinder: h'' + c0 h + c1 = 0 with
///   c0 = (gamma^2/(1+gamma^2)) (r/rho)^2 omega_e^2
///   c1 = (gamma^2/(1+gamma^2)) (r^2/rho) omega_e (omega_nu(0) - omega_e h(0)/rho)
///        + g/(1+gamma^2),
/// so z = h + c1/c0 oscillates harmonically with angular frequency sqrt(c0).
/// Requires omega_e != 0 (otherwise the motion degenerates to free fall).
struct CircularRollingSolution {
    double c0, c1, z0, zdot0;

    double h(double t) const;
    double sigma(double t) const;
};

CircularRollingSolution circular_closed_form(const RollingState& initial, double rho,
                                             const MassParams& p);

/// Ratio of vertical to horizontal oscillation periods,
/// T_v / T_h = sqrt((1+gamma^2)/gamma^2).
double period_ratio(const MassParams& p);

}  // namespace noslip
