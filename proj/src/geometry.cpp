#include "noslip/geometry.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace noslip {

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::Vector2d tangent_of(const Eigen::Vector2d& nu) {
    // tau = nu x e mapped to the cross-section plane.
    return {nu.y(), -nu.x()};
}

double wrap(double s, double period) {
    double w = std::fmod(s, period);
    if (w < 0.0) w += period;
    return w;
}

/// Roots of |a + t u - c|^2 = rho^2 greater than t_min, smallest first.
/// Returns the number of admissible roots (0, 1 or 2), via the stable
/// quadratic (larger-magnitude root from the q-form).
int circle_roots(long double dx, long double dy, long double ux, long double uy,
                 long double rho, long double t_min, long double out[2]) {
    const long double A = ux * ux + uy * uy;
    const long double B = dx * ux + dy * uy;
    const long double C = dx * dx + dy * dy - rho * rho;
    const long double disc = B * B - A * C;
    if (disc < 0.0L || A == 0.0L) return 0;
    const long double sq = std::sqrt(disc);
    const long double q = -(B + (B >= 0.0L ? sq : -sq));
    long double r1 = q / A;
    long double r2 = (q != 0.0L) ? C / q : r1;
    if (r1 > r2) std::swap(r1, r2);
    int k = 0;
    if (r1 > t_min) out[k++] = r1;
    if (r2 > t_min) out[k++] = r2;
    return k;
}

/// a + t u polished radially onto the circle |p - c| = rho.
std::pair<long double, long double> circle_landing(long double ax, long double ay,
                                                   long double ux, long double uy,
                                                   long double cx, long double cy,
                                                   long double rho, long double t) {
    const long double px = ax + t * ux - cx;
    const long double py = ay + t * uy - cy;
    const long double scale = rho / std::sqrt(px * px + py * py);
    return {cx + px * scale, cy + py * scale};
}

}  // namespace

CrossSection CrossSection::circle(double rho) {
    if (!(rho > 0.0)) throw std::invalid_argument("circle: rho must be positive");
    return {SectionKind::Circle, 2, rho, 0.0, 0.0};
}

CrossSection CrossSection::stadium(double rho, double half_len) {
    if (!(rho > 0.0) || !(half_len > 0.0))
        throw std::invalid_argument("stadium: rho and half_len must be positive");
    return {SectionKind::Stadium, 2, rho, half_len, 0.0};
}

CrossSection CrossSection::plates(double gap, int dim) {
    if (!(gap > 0.0)) throw std::invalid_argument("plates: gap must be positive");
    if (dim < 1 || dim > 2) throw std::invalid_argument("plates: dim must be 1 or 2");
    return {SectionKind::Plates, dim, 0.0, 0.0, gap};
}

BoundaryFrame frame_at(const CrossSection& sec, double s, int side) {
    BoundaryFrame f;
    f.side = 0;
    switch (sec.kind) {
        case SectionKind::Circle: {
            const double P = 2.0 * kPi * sec.rho;
            s = wrap(s, P);
            const double ang = s / sec.rho;
            Eigen::Vector2d a{sec.rho * std::cos(ang), sec.rho * std::sin(ang)};
            Eigen::Vector2d nu = -a.normalized();
            f.a = a;
            f.nu = nu;
            f.tau = tangent_of(nu);
            f.curvature = 1.0 / sec.rho;
            f.arc_param = s;
            return f;
        }
        case SectionKind::Stadium: {
            const double L = sec.half_len, R = sec.rho;
            const double P = 2.0 * kPi * R + 4.0 * L;
            s = wrap(s, P);
            Eigen::Vector2d a, nu;
            double curv = 0.0;
            // caps claim their endpoints so that junctions get the cap frame
            if (s >= L && s <= L + kPi * R) {  // right cap
                const double ang = -kPi / 2 + (s - L) / R;
                a = {L + R * std::cos(ang), R * std::sin(ang)};
                nu = {-std::cos(ang), -std::sin(ang)};
                curv = 1.0 / R;
            } else if (s >= 3.0 * L + kPi * R && s <= 3.0 * L + 2.0 * kPi * R) {  // left cap
                const double ang = kPi / 2 + (s - 3.0 * L - kPi * R) / R;
                a = {-L + R * std::cos(ang), R * std::sin(ang)};
                nu = {-std::cos(ang), -std::sin(ang)};
                curv = 1.0 / R;
            } else if (s < L) {  // lower straight, right half
                a = {s, -R};
                nu = {0.0, 1.0};
            } else if (s < 3.0 * L + kPi * R) {  // upper straight
                a = {L - (s - L - kPi * R), R};
                nu = {0.0, -1.0};
            } else {  // lower straight, left half
                a = {-L + (s - 3.0 * L - 2.0 * kPi * R), -R};
                nu = {0.0, 1.0};
            }
            f.a = a;
            f.nu = nu;
            f.tau = tangent_of(nu);
            f.curvature = curv;
            f.arc_param = s;
            return f;
        }
        case SectionKind::Plates: {
            f.side = (side == 0) ? 0 : 1;
            const double x0 = (f.side == 0) ? -0.5 * sec.gap : 0.5 * sec.gap;
            if (sec.dim == 1) {
                f.a = Eigen::VectorXd::Constant(1, x0);
                f.nu = Eigen::VectorXd::Constant(1, f.side == 0 ? 1.0 : -1.0);
                f.tau = Eigen::VectorXd::Zero(1);
            } else {
                Eigen::Vector2d nu{f.side == 0 ? 1.0 : -1.0, 0.0};
                Eigen::Vector2d tau = tangent_of(nu);
                f.a = Eigen::Vector2d{x0, 0.0} + s * tau;
                f.nu = nu;
                f.tau = tau;
            }
            f.curvature = 0.0;
            f.arc_param = s;
            return f;
        }
    }
    throw std::logic_error("frame_at: unknown section kind");
}

std::pair<double, int> arc_param_of(const CrossSection& sec,
                                    const Eigen::VectorXd& point) {
    switch (sec.kind) {
        case SectionKind::Circle: {
            const double ang = std::atan2(point.y(), point.x());
            return {wrap(sec.rho * ang, 2.0 * kPi * sec.rho), 0};
        }
        case SectionKind::Stadium: {
            const double L = sec.half_len, R = sec.rho;
            const double x = point.x(), y = point.y();
            if (x >= L) {  // right cap (junctions included)
                const double ang = std::atan2(y, x - L);  // in [-pi/2, pi/2]
                return {L + (ang + kPi / 2) * R, 0};
            }
            if (x <= -L) {  // left cap
                double ang = std::atan2(y, x + L);
                if (ang < kPi / 2) ang += 2.0 * kPi;  // into [pi/2, 3pi/2]
                return {3.0 * L + kPi * R + (ang - kPi / 2) * R, 0};
            }
            if (y > 0.0) return {L + kPi * R + (L - x), 0};  // upper straight
            // lower straight
            if (x >= 0.0) return {x, 0};
            return {3.0 * L + 2.0 * kPi * R + (x + L), 0};
        }
        case SectionKind::Plates: {
            const int side = point(0) > 0.0 ? 1 : 0;
            if (sec.dim == 1) return {0.0, side};
            // arc param s solves a(0) + s*tau = point in the free coordinate
            const double s = (side == 0) ? -point(1) : point(1);
            return {s, side};
        }
    }
    throw std::logic_error("arc_param_of: unknown section kind");
}

BoundaryFrame frame_at_point(const CrossSection& sec, const Eigen::VectorXd& point) {
    auto [s, side] = arc_param_of(sec, point);
    BoundaryFrame f;
    f.arc_param = s;
    f.side = side;
    f.a = point;
    f.curvature = 0.0;
    switch (sec.kind) {
        case SectionKind::Circle: {
            Eigen::Vector2d nu = -point.head<2>().normalized();
            f.nu = nu;
            f.tau = tangent_of(nu);
            f.curvature = 1.0 / sec.rho;
            return f;
        }
        case SectionKind::Stadium: {
            const double L = sec.half_len;
            Eigen::Vector2d nu;
            if (point.x() >= L) {
                nu = -(point.head<2>() - Eigen::Vector2d{L, 0.0}).normalized();
                f.curvature = 1.0 / sec.rho;
            } else if (point.x() <= -L) {
                nu = -(point.head<2>() + Eigen::Vector2d{L, 0.0}).normalized();
                f.curvature = 1.0 / sec.rho;
            } else {
                nu = point.y() > 0.0 ? Eigen::Vector2d{0.0, -1.0}
                                     : Eigen::Vector2d{0.0, 1.0};
            }
            f.nu = nu;
            f.tau = tangent_of(nu);
            return f;
        }
        case SectionKind::Plates: {
            const BoundaryFrame tmpl = frame_at(sec, s, side);
            f.nu = tmpl.nu;
            f.tau = tmpl.tau;
            return f;
        }
    }
    throw std::logic_error("frame_at_point: unknown section kind");
}

namespace detail {

BoundaryHitL next_transverse_collision_l(const CrossSection& sec, const VectorXl& a,
                                         const VectorXl& u_bar, long double t_min) {
    if (a.size() != sec.dim || u_bar.size() != sec.dim)
        throw std::invalid_argument("next_transverse_collision: dimension mismatch");
    if (u_bar.squaredNorm() == 0.0L)
        throw SimulationError("longitudinal-only motion, no next collision");

    BoundaryHitL hit;
    switch (sec.kind) {
        case SectionKind::Circle: {
            long double roots[2];
            const int k =
                circle_roots(a(0), a(1), u_bar(0), u_bar(1), sec.rho, t_min, roots);
            if (k == 0) throw SimulationError("circle intersection failed");
            hit.t = roots[0];
            auto [px, py] =
                circle_landing(a(0), a(1), u_bar(0), u_bar(1), 0.0L, 0.0L, sec.rho, roots[0]);
            hit.point = VectorXl(2);
            hit.point << px, py;
            break;
        }
        case SectionKind::Stadium: {
            const long double L = sec.half_len, R = sec.rho;
            long double best = std::numeric_limits<long double>::infinity();
            bool best_cap = false;
            VectorXl best_pt(2);
            auto consider = [&](long double t, long double px, long double py, bool cap) {
                // junction ties resolve to the cap frame
                if (t < best - 1e-12L || (cap && !best_cap && t < best + 1e-12L)) {
                    best = t;
                    best_cap = cap;
                    best_pt << px, py;
                }
            };
            // straights y = +-R, |x| <= L
            if (u_bar(1) != 0.0L) {
                for (long double ys : {-R, R}) {
                    const long double t = (ys - a(1)) / u_bar(1);
                    if (t > t_min) {
                        const long double px = a(0) + t * u_bar(0);
                        if (std::abs(px) <= L + 1e-12L) consider(t, px, ys, false);
                    }
                }
            }
            // caps centered (+-L, 0)
            for (long double cx : {L, -L}) {
                long double roots[2];
                const int k =
                    circle_roots(a(0) - cx, a(1), u_bar(0), u_bar(1), R, t_min, roots);
                for (int i = 0; i < k; ++i) {
                    auto [px, py] = circle_landing(a(0), a(1), u_bar(0), u_bar(1), cx,
                                                   0.0L, R, roots[i]);
                    const bool on_cap =
                        (cx > 0.0L) ? px >= L - 1e-12L : px <= -L + 1e-12L;
                    if (on_cap) consider(roots[i], px, py, true);
                }
            }
            if (!std::isfinite(static_cast<double>(best)))
                throw SimulationError("stadium intersection failed");
            hit.t = best;
            hit.point = best_pt;
            break;
        }
        case SectionKind::Plates: {
            const long double ux = u_bar(0);
            if (ux == 0.0L) throw SimulationError("parallel escape");
            const long double target = (ux > 0.0L) ? 0.5L * sec.gap : -0.5L * sec.gap;
            const long double t = (target - a(0)) / ux;
            if (t <= t_min) throw SimulationError("plates intersection failed");
            hit.t = t;
            hit.point = a + t * u_bar;
            hit.point(0) = target;  // exact landing on the plane
            break;
        }
    }
    Eigen::VectorXd pd = hit.point.cast<double>();
    auto [s, side] = arc_param_of(sec, pd);
    hit.arc_param = s;
    hit.side = side;
    return hit;
}

VectorXl inward_normal_l(const CrossSection& sec, const VectorXl& point) {
    VectorXl nu;
    switch (sec.kind) {
        case SectionKind::Circle:
            return -point / point.norm();
        case SectionKind::Stadium: {
            const long double L = sec.half_len;
            nu.resize(2);
            if (point(0) >= L) {
                nu << point(0) - L, point(1);
                nu /= -nu.norm();
            } else if (point(0) <= -L) {
                nu << point(0) + L, point(1);
                nu /= -nu.norm();
            } else {
                nu << 0.0L, (point(1) > 0.0L ? -1.0L : 1.0L);
            }
            return nu;
        }
        case SectionKind::Plates: {
            nu = VectorXl::Zero(sec.dim);
            nu(0) = point(0) > 0.0L ? -1.0L : 1.0L;
            return nu;
        }
    }
    throw std::logic_error("inward_normal_l: unknown section kind");
}

}  // namespace detail

BoundaryHit next_transverse_collision(const CrossSection& sec,
                                      const Eigen::VectorXd& a,
                                      const Eigen::VectorXd& u_bar,
                                      double t_min) {
    const detail::BoundaryHitL hl = detail::next_transverse_collision_l(
        sec, a.cast<long double>(), u_bar.cast<long double>(), t_min);
    BoundaryHit hit;
    hit.point = hl.point.cast<double>();
    hit.t = static_cast<double>(hl.t);
    hit.arc_param = hl.arc_param;
    hit.side = hl.side;
    return hit;
}

double perimeter(const CrossSection& sec) {
    switch (sec.kind) {
        case SectionKind::Circle: return 2.0 * kPi * sec.rho;
        case SectionKind::Stadium: return 2.0 * kPi * sec.rho + 4.0 * sec.half_len;
        case SectionKind::Plates:
            throw std::domain_error("perimeter: unbounded section");
    }
    throw std::logic_error("perimeter: unknown section kind");
}

double curvature_profile(const CrossSection& sec, double s) {
    if (sec.kind == SectionKind::Plates)
        throw std::domain_error("curvature_profile: unbounded section");
    return frame_at(sec, s).curvature;
}

}  // namespace noslip
