#pragma once

#include <Eigen/Dense>

#include "noslip/algebra.hpp"
#include "noslip/geometry.hpp"

namespace noslip {

/// Point of the reduced phase space: center-of-mass position and velocity in
/// R^n plus the angular velocity matrix U in so(n).  The particle's actual
/// orientation is quotiented out.  Convention: the cylinder axis e is the
/// last coordinate axis; the cross-section lives in the first n-1.
struct ReducedState {
    Eigen::VectorXd a;
    Eigen::VectorXd u;
    Eigen::MatrixXd U;

    int n() const { return static_cast<int>(a.size()); }
    double height() const { return a(a.size() - 1); }
    double sigma() const { return u(u.size() - 1); }
    /// omega . e for n = 3 (the transverse spin).
    double omega_e() const { return U(1, 0); }
};

/// Longitudinal velocity components Lambda = (sigma, w), sigma = u.e and
/// w = gamma*r*U*e expressed in the transverse coordinates.
struct MixedVelocity {
    double sigma = 0.0;
    Eigen::VectorXd w;

    Eigen::VectorXd to_vector() const;
    static MixedVelocity from_vector(const Eigen::VectorXd& v);
};

/// Transverse state of the 3-D system: planar position, planar velocity and
/// scalar spin (theta_dot = omega . e) of the associated 2-D no-slip billiard.
struct TransversalState {
    Eigen::Vector2d a;
    Eigen::Vector2d u;
    double spin = 0.0;
};

/// No-slip collision map C_a at a boundary point with inward unit normal nu
/// (a vector in R^n orthogonal to the axis):
///   u+ = c_b u - (s_b/gamma)(u.nu) nu + s_b gamma r U nu
///   U+ = (s_b/(gamma r)) nu^u + U - (s_b/gamma) nu^(U nu)
/// The map is linear, orthogonal for the kinetic-energy metric, and an
/// involution; callers enforce the pre-collision condition u.nu <= 0.
ReducedState no_slip_collide(const ReducedState& state, const Eigen::VectorXd& nu,
                             const MassParams& p);

/// Velocity-only form of C_a.
std::pair<Eigen::VectorXd, Eigen::MatrixXd> collide_velocity(
    const Eigen::VectorXd& u, const Eigen::MatrixXd& U, const Eigen::VectorXd& nu,
    const MassParams& p);

/// Projection to the reduced phase space of the transverse billiard: drops
/// the axis components of a and u and the mixed block of U, keeping the
/// se(n-1) part.
ReducedState transverse_project(const ReducedState& state);

/// Transverse state (planar position/velocity + spin) of a 3-D state.
TransversalState transverse_state(const ReducedState& state);

/// 2-D no-slip reflection in components (u_tau, u_nu, spin) at a boundary
/// point of the planar billiard.  Independent algebraic route to the same
/// map as no_slip_collide restricted to the cross-section.
void transverse_collide(double& u_tau, double& u_nu, double& spin,
                        const MassParams& p);

/// Transverse collision applied to a TransversalState with frame `f`.
TransversalState transverse_collide(const TransversalState& ts,
                                    const BoundaryFrame& f, const MassParams& p);

/// Mixed matrix A(a) mapping pre- to post-collision mixed velocities,
/// as an (n x n) orthogonal involution acting on (sigma, w):
///   [[ c_b, -s_b nu^T ], [ -s_b nu, I - (1+c_b) nu nu^T ]]
/// where nu is the transverse inward unit normal (dimension n-1).
Eigen::MatrixXd mixed_matrix(const Eigen::VectorXd& nu_bar, const MassParams& p);

/// Mixed velocity of a state: sigma = u.e, w = gamma*r*U*e.
MixedVelocity mixed_of(const ReducedState& state, const MassParams& p);

/// One collision-to-collision step of the height/mixed-velocity recursion:
///   h' = h + t*sigma - t^2 g / 2,   Lambda' = A (Lambda + t*Phi),
/// with Phi = -g * (1, 0, ..., 0).
std::pair<MixedVelocity, double> longitudinal_step(const MixedVelocity& lambda,
                                                   double h, double t,
                                                   const Eigen::MatrixXd& A,
                                                   const MassParams& p);

/// Euclidean norm of the tangential part of the contact-point velocity
/// v = u - r U nu.  Zero iff the state is a rolling impact.
double rolling_impact_residual(const ReducedState& state, const Eigen::VectorXd& nu,
                               const MassParams& p);

/// Norm of the projection of v = u - r U nu onto the transverse tangent
/// directions (e-perp intersected with the boundary tangent space).  Zero iff
/// the state is a transversal rolling impact; in 3-D equals |u.tau + r omega_e|.
double transversal_rolling_residual(const ReducedState& state,
                                    const BoundaryFrame& f, const MassParams& p);

/// Transversal rolling defect -r(omega.e)/(u.tau); equals 1 exactly at a
/// transversal rolling impact.  3-D only; throws if u.tau = 0.
double transversal_rolling_defect(const ReducedState& state,
                                  const BoundaryFrame& f, const MassParams& p);

namespace detail {

/// Extended-precision core of the collision map (nu is renormalized inside).
std::pair<VectorXl, MatrixXl> collide_velocity_l(const VectorXl& u, const MatrixXl& U,
                                                 const VectorXl& nu,
                                                 const MassParams& p);

}  // namespace detail

}  // namespace noslip
