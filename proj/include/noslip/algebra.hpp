#pragma once

#include <Eigen/Dense>

#include <stdexcept>

namespace noslip {

/// Error raised when the dynamics cannot continue (degenerate input,
/// escaping trajectory, failed validation of a constructed state).
struct SimulationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Physical parameters of the spherical particle.
///
/// `gamma` is the mass-distribution parameter: gamma = sqrt(2*lambda)/r with
/// lambda the scalar second moment per unit mass.  A uniform ball in R^n has
/// gamma = sqrt(2/(n+2)).  The collision map divides by gamma, so gamma = 0
/// is rejected at construction.
struct MassParams {
    int n;         ///< ambient dimension (>= 2)
    double r;      ///< particle radius
    double m;      ///< total mass
    double gamma;  ///< mass-distribution parameter, 0 < gamma <= sqrt(2/n)
    double g;      ///< longitudinal acceleration (force is -g*m*e)

    MassParams(int n_, double r_, double m_, double gamma_, double g_ = 0.0);

    double gamma2() const { return gamma * gamma; }
    /// cos(beta) = (1 - gamma^2) / (1 + gamma^2)
    double c_beta() const { return (1.0 - gamma2()) / (1.0 + gamma2()); }
    /// sin(beta) = 2*gamma / (1 + gamma^2)
    double s_beta() const { return 2.0 * gamma / (1.0 + gamma2()); }
    /// lambda = (r*gamma)^2 / 2, the scalar second moment per unit mass
    double lambda_moment() const { return 0.5 * (r * gamma) * (r * gamma); }

    /// gamma of the uniform mass distribution in dimension n: sqrt(2/(n+2)).
    static double gamma_uniform(int n);
};

/// (c_beta, s_beta) for the given parameters.
std::pair<double, double> beta_constants(const MassParams& p);

/// Wedge product a ^ b in so(n): the skew matrix M with
/// M u = (a.u) b - (b.u) a for all u.
Eigen::MatrixXd wedge(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

/// Matrix-vector product with dimension check.
Eigen::VectorXd apply_skew(const Eigen::MatrixXd& U, const Eigen::VectorXd& v);

/// so(3) <-> angular velocity vector: U x = omega x x.
Eigen::Matrix3d omega_to_skew(const Eigen::Vector3d& omega);
Eigen::Vector3d skew_to_omega(const Eigen::Matrix3d& U);

/// Squared kinetic-energy norm of the state (u, U):
///   m * { (r*gamma)^2/2 * Tr(U U^T) + |u|^2 }.
/// The kinetic energy itself is half this value.
double kinetic_norm_sq(const Eigen::VectorXd& u, const Eigen::MatrixXd& U,
                       const MassParams& p);

}  // namespace noslip
