#include "noslip/collision.hpp"

#include <cmath>

namespace noslip {

Eigen::VectorXd MixedVelocity::to_vector() const {
    Eigen::VectorXd v(w.size() + 1);
    v(0) = sigma;
    v.tail(w.size()) = w;
    return v;
}

MixedVelocity MixedVelocity::from_vector(const Eigen::VectorXd& v) {
    MixedVelocity mv;
    mv.sigma = v(0);
    mv.w = v.tail(v.size() - 1);
    return mv;
}

namespace detail {

namespace {
MatrixXl wedge_l(const VectorXl& a, const VectorXl& b) {
    return b * a.transpose() - a * b.transpose();
}
}  // namespace

std::pair<VectorXl, MatrixXl> collide_velocity_l(const VectorXl& u, const MatrixXl& U,
                                                 const VectorXl& nu,
                                                 const MassParams& p) {
    const long double gamma = p.gamma;
    const long double c = (1.0L - gamma * gamma) / (1.0L + gamma * gamma);
    const long double s = 2.0L * gamma / (1.0L + gamma * gamma);
    VectorXl nl = nu / nu.norm();
    const VectorXl Unu = U * nl;
    VectorXl up = c * u - (s / gamma) * u.dot(nl) * nl + s * gamma * p.r * Unu;
    MatrixXl Up = (s / (gamma * p.r)) * wedge_l(nl, u) + U - (s / gamma) * wedge_l(nl, Unu);
    return {std::move(up), std::move(Up)};
}

}  // namespace detail

std::pair<Eigen::VectorXd, Eigen::MatrixXd> collide_velocity(
    const Eigen::VectorXd& u, const Eigen::MatrixXd& U, const Eigen::VectorXd& nu,
    const MassParams& p) {
    // Evaluated in extended precision so that the orthogonality of C_a holds
    // well below double rounding; energy then drifts by random walk only.
    auto [up, Up] = detail::collide_velocity_l(
        u.cast<long double>(), U.cast<long double>(), nu.cast<long double>(), p);
    return {up.cast<double>(), Up.cast<double>()};
}

ReducedState no_slip_collide(const ReducedState& state, const Eigen::VectorXd& nu,
                             const MassParams& p) {
    if (nu.size() != state.a.size())
        throw std::invalid_argument("no_slip_collide: dimension mismatch");
    auto [up, Up] = collide_velocity(state.u, state.U, nu, p);
    return {state.a, std::move(up), std::move(Up)};
}

ReducedState transverse_project(const ReducedState& state) {
    const int d = state.n() - 1;
    return {state.a.head(d), state.u.head(d), state.U.topLeftCorner(d, d)};
}

TransversalState transverse_state(const ReducedState& state) {
    if (state.n() != 3)
        throw std::invalid_argument("transverse_state: 3-D states only");
    return {state.a.head<2>(), state.u.head<2>(), state.U(1, 0)};
}

void transverse_collide(double& u_tau, double& u_nu, double& spin,
                        const MassParams& p) {
    const double c = p.c_beta(), s = p.s_beta();
    const double ut = u_tau, sp = spin;
    u_tau = c * ut - s * p.gamma * p.r * sp;
    u_nu = -u_nu;
    spin = -c * sp - (s / (p.gamma * p.r)) * ut;
}

TransversalState transverse_collide(const TransversalState& ts,
                                    const BoundaryFrame& f, const MassParams& p) {
    double ut = ts.u.dot(f.tau.head<2>());
    double un = ts.u.dot(f.nu.head<2>());
    double sp = ts.spin;
    transverse_collide(ut, un, sp, p);
    return {ts.a, ut * f.tau.head<2>() + un * f.nu.head<2>(), sp};
}

Eigen::MatrixXd mixed_matrix(const Eigen::VectorXd& nu_bar, const MassParams& p) {
    const int d = static_cast<int>(nu_bar.size());
    const double c = p.c_beta(), s = p.s_beta();
    Eigen::MatrixXd A(d + 1, d + 1);
    A(0, 0) = c;
    A.block(0, 1, 1, d) = -s * nu_bar.transpose();
    A.block(1, 0, d, 1) = -s * nu_bar;
    A.block(1, 1, d, d) =
        Eigen::MatrixXd::Identity(d, d) - (1.0 + c) * nu_bar * nu_bar.transpose();
    return A;
}

MixedVelocity mixed_of(const ReducedState& state, const MassParams& p) {
    const int d = state.n() - 1;
    MixedVelocity mv;
    mv.sigma = state.sigma();
    mv.w = p.gamma * p.r * state.U.col(d).head(d);
    return mv;
}

std::pair<MixedVelocity, double> longitudinal_step(const MixedVelocity& lambda,
                                                   double h, double t,
                                                   const Eigen::MatrixXd& A,
                                                   const MassParams& p) {
    if (!(t > 0.0)) throw std::invalid_argument("longitudinal_step: t must be positive");
    // arithmetic ordered exactly as in fly() so the two routes agree closely
    const double h_next = (h + t * lambda.sigma) - 0.5 * p.g * t * t;
    Eigen::VectorXd v = lambda.to_vector();
    v(0) -= t * p.g;  // Phi = -g * unit vector in the sigma slot
    return {MixedVelocity::from_vector(A * v), h_next};
}

double rolling_impact_residual(const ReducedState& state, const Eigen::VectorXd& nu,
                               const MassParams& p) {
    const Eigen::VectorXd v = state.u - p.r * (state.U * nu);
    const Eigen::VectorXd vt = v - v.dot(nu) * nu;
    return vt.norm();
}

double transversal_rolling_residual(const ReducedState& state,
                                    const BoundaryFrame& f, const MassParams& p) {
    const int d = state.n() - 1;
    if (f.tau.size() != d)
        throw std::invalid_argument("transversal_rolling_residual: frame mismatch");
    if (f.tau.squaredNorm() == 0.0) return 0.0;  // no transverse tangent (d = 1)
    Eigen::VectorXd nu_full = Eigen::VectorXd::Zero(state.n());
    nu_full.head(d) = f.nu;
    const Eigen::VectorXd v = state.u - p.r * (state.U * nu_full);
    return std::abs(v.head(d).dot(f.tau));
}

double transversal_rolling_defect(const ReducedState& state,
                                  const BoundaryFrame& f, const MassParams& p) {
    if (state.n() != 3)
        throw std::invalid_argument("transversal_rolling_defect: 3-D states only");
    const double u_tau = state.u.head<2>().dot(f.tau.head<2>());
    if (u_tau == 0.0)
        throw std::domain_error("transversal_rolling_defect: u.tau = 0");
    return -p.r * state.omega_e() / u_tau;
}

}  // namespace noslip
