#include "noslip/algebra.hpp"

#include <cmath>

namespace noslip {

MassParams::MassParams(int n_, double r_, double m_, double gamma_, double g_)
    : n(n_), r(r_), m(m_), gamma(gamma_), g(g_) {
    if (n < 2) throw std::invalid_argument("MassParams: dimension must be >= 2");
    if (!(r > 0.0)) throw std::invalid_argument("MassParams: radius must be positive");
    if (!(m > 0.0)) throw std::invalid_argument("MassParams: mass must be positive");
    if (!(gamma > 0.0)) throw std::invalid_argument("MassParams: gamma must be positive");
    if (gamma > std::sqrt(2.0 / n) * (1.0 + 1e-12))
        throw std::invalid_argument("MassParams: gamma exceeds sqrt(2/n)");
    if (g < 0.0) throw std::invalid_argument("MassParams: g must be non-negative");
}

double MassParams::gamma_uniform(int n) {
    if (n < 2) throw std::invalid_argument("gamma_uniform: dimension must be >= 2");
    return std::sqrt(2.0 / (n + 2));
}

std::pair<double, double> beta_constants(const MassParams& p) {
    return {p.c_beta(), p.s_beta()};
}

Eigen::MatrixXd wedge(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    if (a.size() != b.size()) throw std::invalid_argument("wedge: dimension mismatch");
    return b * a.transpose() - a * b.transpose();
}

Eigen::VectorXd apply_skew(const Eigen::MatrixXd& U, const Eigen::VectorXd& v) {
    if (U.rows() != U.cols() || U.cols() != v.size())
        throw std::invalid_argument("apply_skew: dimension mismatch");
    return U * v;
}

Eigen::Matrix3d omega_to_skew(const Eigen::Vector3d& omega) {
    Eigen::Matrix3d U;
    U << 0.0, -omega.z(), omega.y(),
         omega.z(), 0.0, -omega.x(),
         -omega.y(), omega.x(), 0.0;
    return U;
}

Eigen::Vector3d skew_to_omega(const Eigen::Matrix3d& U) {
    return {U(2, 1), U(0, 2), U(1, 0)};
}

double kinetic_norm_sq(const Eigen::VectorXd& u, const Eigen::MatrixXd& U,
                       const MassParams& p) {
    // Tr(U U^T) is the squared Frobenius norm.
    return p.m * (p.lambda_moment() * U.squaredNorm() + u.squaredNorm());
}

}  // namespace noslip
