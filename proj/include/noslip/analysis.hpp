#pragma once

#include <span>
#include <vector>

#include "noslip/flight.hpp"

namespace noslip {

/// Data of a transversally period-2 orbit entering the drift formula.
/// nu1 is the transverse normal at the first collision applied after the
/// initial mixed velocity Lambda0 was emitted; nu2 the other one.  t is the
/// constant flight time (the formulas of drift_general/drift_3d are stated
/// at t = 1; drift_general scales by t).
struct DriftSpec {
    Eigen::VectorXd nu1;
    Eigen::VectorXd nu2;
    MixedVelocity lambda0;
    double t = 1.0;
};

/// Q = A(nu2) A(nu1) (recursion order) or A(nu1) A(nu2) (statement order).
/// The two are inverse orthogonal involutive products and share the
/// eigenvalue-1 eigenspace, so the drift is independent of the order.
Eigen::MatrixXd drift_q_matrix(const DriftSpec& spec, const MassParams& p,
                               bool statement_order = false);

/// Orthogonal projection onto the eigenvalue-1 eigenspace of an orthogonal Q,
/// computed from the symmetric part with eigenvalue tolerance 1e-9.
Eigen::MatrixXd eigenspace_one_projection(const Eigen::MatrixXd& Q);

/// Longitudinal drift per collision of a transversally period-2 orbit:
///   t * (1/2) xi P Lambda0,  xi = (1 + c_b, -s_b nu1^T).
/// If 1 is not an eigenvalue of Q the projection vanishes and the drift is 0.
double drift_general(const DriftSpec& spec, const MassParams& p);

/// Unit eigenvector of Q for eigenvalue 1 in the 3-D case,
/// proportional to (sin(2 phi), gamma (tau1 - tau2)).  Requires nu1 != +-nu2.
Eigen::Vector3d drift_eta(const Eigen::Vector2d& nu1, const Eigen::Vector2d& nu2,
                          const MassParams& p);

/// Closed-form 3-D drift for a period-2 orbit with chord/tangent angle
/// 0 < phi < pi/2, initial vertical velocity sigma0 and angular velocity
/// components (omega_nu, omega_tau) at the first collision point:
///   cos(phi) (sigma0 cos(phi) + gamma^2 r (omega_nu sin(phi) + omega_tau cos(phi)))
///   / (cos^2(phi) + gamma^2).
double drift_3d(double phi, double sigma0, double omega_nu, double omega_tau,
                const MassParams& p);

/// Transverse state at arc parameter 0 of the disc of radius rho whose no-slip
/// orbit has period 2: the chord leaves the boundary at angle phi from the
/// tangent and the spin satisfies gamma^2 r spin = u.tau.  Validated by a
/// two-collision fixed-point check (throws SimulationError with the residual
/// on failure).
TransversalState period2_initials(double rho, double phi, double speed,
                                  const MassParams& p, double tol = 1e-10);

/// Closed-form height after ell collisions of a transversal-rolling-impact
/// orbit in the circular cylinder: equal flight times t, normals advancing by
/// the fixed rotation taking nu0 to nu1, initial mixed velocity Lambda0 and
/// height h0, constant longitudinal acceleration g.  Exact for every parity
/// of ell.  Requires nu0 != +-nu1.
double circular_closed_height(long ell, const MixedVelocity& lambda0, double h0,
                              double t, const Eigen::Vector2d& nu0,
                              const Eigen::Vector2d& nu1, const MassParams& p,
                              double g);

/// Height ladder and invariants of a parallel-plates run.
struct PlatesLadder {
    double t = 0.0;                ///< common flight time
    std::vector<double> h, k;      ///< heights and angular displacements
    std::vector<double> sigma, omega;
    double slope_residual_max = 0.0;    ///< max |dk - (-1)^j gamma dh| over pairs
    double ellipse_residual_max = 0.0;  ///< max deviation from the (h,h') ellipse
    double flight_time_spread = 0.0;
    double c_const = 0.0;
    double energy_per_mass = 0.0;
};

/// Builds the (h_j, k_j) ladder of a Plates record, checks the lines-of-contact
/// slopes (-1)^j gamma and the ellipse constraint
///   (h' - h)^2 + gamma^2 (h' + h + c)^2 + 2 lam (h' + h) = 2 t^2 E/m - lam^2,
/// lam = t^2 g / 2, with c and E taken from the first rows.
PlatesLadder plates_invariants(const TrajectoryRecord& rec, const MassParams& p);

struct BoundednessDiagnostic {
    double min = 0.0;
    double max = 0.0;
    double secular_slope = 0.0;      ///< slope of the least-squares line
    double secular_curvature = 0.0;  ///< quadratic coefficient of the LSQ parabola
};

/// Least-squares linear and quadratic fits of h against collision index.
BoundednessDiagnostic boundedness_diagnostic(std::span<const double> heights);

/// Velocity-phase-portrait point of a post-collision transverse state: the
/// energy-normalized 3-velocity (u.tau, u.nu, gamma r spin) projected to the
/// unit disc by dropping the nu coordinate.  Throws on zero transverse energy.
Eigen::Vector2d portrait_point(const TransversalState& ts, const BoundaryFrame& f,
                               const MassParams& p);

/// Heights column of a record.
std::vector<double> heights_of(const TrajectoryRecord& rec);

}  // namespace noslip
