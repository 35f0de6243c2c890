#include "noslip/analysis.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace noslip {

namespace {
constexpr double kHalfPi = std::numbers::pi / 2.0;
}

Eigen::MatrixXd drift_q_matrix(const DriftSpec& spec, const MassParams& p,
                               bool statement_order) {
    const Eigen::MatrixXd A1 = mixed_matrix(spec.nu1, p);
    const Eigen::MatrixXd A2 = mixed_matrix(spec.nu2, p);
    return statement_order ? Eigen::MatrixXd(A1 * A2) : Eigen::MatrixXd(A2 * A1);
}

Eigen::MatrixXd eigenspace_one_projection(const Eigen::MatrixXd& Q) {
    const Eigen::MatrixXd S = 0.5 * (Q + Q.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S);
    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(Q.rows(), Q.cols());
    for (int k = 0; k < es.eigenvalues().size(); ++k) {
        if (es.eigenvalues()(k) > 1.0 - 1e-9) {
            const Eigen::VectorXd v = es.eigenvectors().col(k);
            P += v * v.transpose();
        }
    }
    return P;
}

double drift_general(const DriftSpec& spec, const MassParams& p) {
    const Eigen::MatrixXd Q = drift_q_matrix(spec, p);
    const Eigen::MatrixXd P = eigenspace_one_projection(Q);
    const int d = static_cast<int>(spec.nu1.size());
    Eigen::VectorXd xi(d + 1);
    xi(0) = 1.0 + p.c_beta();
    xi.tail(d) = -p.s_beta() * spec.nu1;
    return spec.t * 0.5 * xi.dot(P * spec.lambda0.to_vector());
}

Eigen::Vector3d drift_eta(const Eigen::Vector2d& nu1, const Eigen::Vector2d& nu2,
                          const MassParams& p) {
    const Eigen::Vector2d tau1{nu1.y(), -nu1.x()};
    const Eigen::Vector2d tau2{nu2.y(), -nu2.x()};
    const double c_alpha = nu1.dot(nu2);
    if (std::abs(c_alpha) >= 1.0 - 1e-14)
        throw std::domain_error("drift_eta: nu1 = +-nu2 is degenerate");
    const double s_alpha = std::sqrt(1.0 - c_alpha * c_alpha);
    Eigen::Vector3d eta;
    eta(0) = s_alpha;
    eta.tail<2>() = p.gamma * (tau1 - tau2);
    return eta.normalized();
}

double drift_3d(double phi, double sigma0, double omega_nu, double omega_tau,
                const MassParams& p) {
    if (!(phi > 0.0) || !(phi < kHalfPi))
        throw std::domain_error("drift_3d: phi must lie in (0, pi/2)");
    const double c = std::cos(phi), s = std::sin(phi);
    const double g2 = p.gamma2();
    return c * (c * sigma0 + g2 * p.r * (s * omega_nu + c * omega_tau)) /
           (c * c + g2);
}

TransversalState period2_initials(double rho, double phi, double speed,
                                  const MassParams& p, double tol) {
    if (!(phi > 0.0) || phi > kHalfPi + 1e-15)
        throw std::domain_error("period2_initials: phi must lie in (0, pi/2]");
    if (!(speed > 0.0))
        throw std::invalid_argument("period2_initials: speed must be positive");
    const CrossSection disc = CrossSection::circle(rho);
    const BoundaryFrame f = frame_at(disc, 0.0);
    TransversalState ts;
    ts.a = f.a.head<2>();
    ts.u = speed * (std::cos(phi) * f.tau.head<2>() + std::sin(phi) * f.nu.head<2>());
    ts.spin = ts.u.dot(f.tau.head<2>()) / (p.gamma2() * p.r);

    // two-collision fixed-point check
    TransversalState cur = ts;
    for (int k = 0; k < 2; ++k) {
        const BoundaryHit hit = next_transverse_collision(disc, cur.a, cur.u);
        const BoundaryFrame fh = frame_at(disc, hit.arc_param, hit.side);
        cur.a = hit.point.head<2>();
        cur = transverse_collide(cur, fh, p);
    }
    const double res = std::max({(cur.a - ts.a).norm(), (cur.u - ts.u).norm(),
                                 std::abs(cur.spin - ts.spin)});
    if (!(res < tol)) {
        std::ostringstream os;
        os << "period2_initials: fixed-point validation failed, residual " << res;
        throw SimulationError(os.str());
    }
    return ts;
}

double circular_closed_height(long ell, const MixedVelocity& lambda0, double h0,
                              double t, const Eigen::Vector2d& nu0,
                              const Eigen::Vector2d& nu1, const MassParams& p,
                              double g) {
    if (ell < 0) throw std::invalid_argument("circular_closed_height: ell >= 0");
    const double dot01 = nu0.dot(nu1);
    if (std::abs(dot01) >= 1.0 - 1e-14)
        throw std::domain_error("circular_closed_height: nu0 = +-nu1 is degenerate");

    // Orthonormal eigenbasis of M = A0 R^-1 on the mixed space (sigma, w):
    // e0 has eigenvalue -1; the restriction to its complement is the planar
    // rotation with entries a = e1.(M e1), b = e2.(M e1).
    Eigen::Vector3d e0, e1, e2;
    e0 << p.gamma * (1.0 + dot01), nu0 + nu1;
    e1 << 0.0, nu0 - nu1;
    e2 << -2.0, p.gamma * (nu0 + nu1);
    e0.normalize();
    e1.normalize();
    e2.normalize();

    const Eigen::MatrixXd A0 = mixed_matrix(nu0, p);
    const double delta = std::atan2(nu0.x() * nu1.y() - nu0.y() * nu1.x(), dot01);
    Eigen::Matrix3d Rinv = Eigen::Matrix3d::Identity();
    Rinv(1, 1) = std::cos(delta);
    Rinv(1, 2) = std::sin(delta);
    Rinv(2, 1) = -std::sin(delta);
    Rinv(2, 2) = std::cos(delta);
    const Eigen::Matrix3d M = A0 * Rinv;

    const double a = e1.dot(M * e1);
    const double b = e2.dot(M * e1);
    const double mu = std::atan2(b, a);

    const Eigen::Vector3d one{1.0, 0.0, 0.0};
    const Eigen::Vector3d lam = lambda0.to_vector();
    const Eigen::Vector2d xt{one.dot(e1), one.dot(e2)};
    const Eigen::Vector2d lt{lam.dot(e1), lam.dot(e2)};
    const double A_minus = one.dot(e0) * one.dot(e0);
    const double B_perp = xt.squaredNorm();
    const int eps = static_cast<int>(ell % 2);

    // 2x2 blocks in the (e1, e2) basis; R = rotation by mu.
    const Eigen::Matrix2d R{{a, -b}, {b, a}};
    const Eigen::Matrix2d I = Eigen::Matrix2d::Identity();
    const Eigen::Matrix2d Sinv = (I - R).inverse();
    const double lmu = static_cast<double>(ell) * mu;
    const Eigen::Matrix2d Rl{{std::cos(lmu), -std::sin(lmu)},
                             {std::sin(lmu), std::cos(lmu)}};
    const double l1mu = static_cast<double>(ell - 1) * mu;
    const Eigen::Matrix2d Rl1{{std::cos(l1mu), -std::sin(l1mu)},
                              {std::sin(l1mu), std::cos(l1mu)}};

    // h_l = h0 - l t^2 g/2 + t 1^T S1 Lambda0 + t^2 1^T S2 Phi with the secular
    // parts combined exactly: the l-linear terms cancel to -(g t^2/2)(eps A + B).
    const double osc1 = eps * one.dot(e0) * e0.dot(lam) + xt.dot(Sinv * (I - Rl) * lt);
    const double sec = -(g * t * t / 2.0) * (eps * A_minus + B_perp);
    const double osc2 = g * t * t * xt.dot(Sinv * Sinv * R * R * (I - Rl1) * xt);
    return h0 + t * osc1 + sec + osc2;
}

PlatesLadder plates_invariants(const TrajectoryRecord& rec, const MassParams& p) {
    if (rec.section.kind != SectionKind::Plates)
        throw std::domain_error("plates_invariants: Plates sections only");
    if (rec.rows.size() < 4)
        throw std::invalid_argument("plates_invariants: need at least 4 collisions");

    const int d = rec.section.dim;
    PlatesLadder lad;
    lad.t = rec.rows.front().flight_time;
    const size_t n = rec.rows.size();
    lad.h.resize(n);
    lad.k.resize(n);
    lad.sigma.resize(n);
    lad.omega.resize(n);
    const double nux = rec.rows.front().nu_x, nuy = rec.rows.front().nu_y;
    double tmin = lad.t, tmax = lad.t;
    for (size_t j = 0; j < n; ++j) {
        const CollisionRow& r = rec.rows[j];
        lad.h[j] = r.h;
        lad.sigma[j] = r.sigma;
        lad.omega[j] = r.w_x * nux + (d > 1 ? r.w_y * nuy : 0.0);
        lad.k[j] = (j == 0) ? 0.0 : lad.k[j - 1] + lad.t * lad.omega[j - 1];
        tmin = std::min(tmin, r.flight_time);
        tmax = std::max(tmax, r.flight_time);
    }
    lad.flight_time_spread = tmax - tmin;

    for (size_t j = 0; j + 2 < n; ++j) {
        const double dk = lad.k[j + 2] - lad.k[j];
        const double dh = lad.h[j + 2] - lad.h[j];
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        lad.slope_residual_max =
            std::max(lad.slope_residual_max, std::abs(dk - sign * p.gamma * dh));
    }

    const double g = p.g;
    const double lam = 0.5 * lad.t * lad.t * g;
    lad.energy_per_mass =
        0.5 * (lad.sigma[0] * lad.sigma[0] + lad.omega[0] * lad.omega[0]) + g * lad.h[0];
    lad.c_const = -(lad.h[0] + lad.h[1]) - (lad.k[1] - lad.k[0]) / p.gamma;
    const double rhs = 2.0 * lad.t * lad.t * lad.energy_per_mass - lam * lam;
    for (size_t m = 0; 2 * m + 1 < n; ++m) {
        const double he = lad.h[2 * m], ho = lad.h[2 * m + 1];
        const double lhs = (ho - he) * (ho - he) +
                           p.gamma2() * (ho + he + lad.c_const) * (ho + he + lad.c_const) +
                           2.0 * lam * (ho + he);
        lad.ellipse_residual_max = std::max(lad.ellipse_residual_max, std::abs(lhs - rhs));
    }
    return lad;
}

BoundednessDiagnostic boundedness_diagnostic(std::span<const double> heights) {
    const size_t n = heights.size();
    if (n < 100)
        throw std::invalid_argument("boundedness_diagnostic: need at least 100 samples");
    BoundednessDiagnostic d;
    d.min = d.max = heights[0];
    const double mean_i = 0.5 * static_cast<double>(n - 1);
    const double scale = std::max(1.0, mean_i);
    double sy = 0.0, suy = 0.0, su2 = 0.0, su2y = 0.0, su4 = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double y = heights[i];
        d.min = std::min(d.min, y);
        d.max = std::max(d.max, y);
        const double u = (static_cast<double>(i) - mean_i) / scale;
        sy += y;
        suy += u * y;
        su2 += u * u;
        su2y += u * u * y;
        su4 += u * u * u * u;
    }
    d.secular_slope = suy / su2 / scale;
    // quadratic fit: odd moments vanish by symmetry, so [alpha, c] solves a 2x2
    const double N = static_cast<double>(n);
    const double det = N * su4 - su2 * su2;
    const double c = (N * su2y - su2 * sy) / det;
    d.secular_curvature = c / (scale * scale);
    return d;
}

Eigen::Vector2d portrait_point(const TransversalState& ts, const BoundaryFrame& f,
                               const MassParams& p) {
    const double vt = ts.u.dot(f.tau.head<2>());
    const double vn = ts.u.dot(f.nu.head<2>());
    const double vs = p.gamma * p.r * ts.spin;
    const double norm = std::sqrt(vt * vt + vn * vn + vs * vs);
    if (norm == 0.0)
        throw std::domain_error("portrait_point: zero transverse energy");
    return {vt / norm, vs / norm};
}

std::vector<double> heights_of(const TrajectoryRecord& rec) {
    std::vector<double> h;
    h.reserve(rec.rows.size());
    for (const auto& r : rec.rows) h.push_back(r.h);
    return h;
}

}  // namespace noslip
