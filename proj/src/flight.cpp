#include "noslip/flight.hpp"

#include <cmath>
#include <limits>

namespace noslip {

namespace {

using detail::MatrixXl;
using detail::VectorXl;

Eigen::VectorXd embed_transverse(const Eigen::VectorXd& v, int n) {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
    out.head(v.size()) = v;
    return out;
}

double boundary_mismatch(const CrossSection& sec, const Eigen::VectorXd& a_bar) {
    switch (sec.kind) {
        case SectionKind::Circle:
            return std::abs(a_bar.norm() - sec.rho);
        case SectionKind::Stadium: {
            auto [s, side] = arc_param_of(sec, a_bar);
            return (frame_at(sec, s, side).a - a_bar).norm();
        }
        case SectionKind::Plates:
            return std::abs(std::abs(a_bar(0)) - 0.5 * sec.gap);
    }
    return std::numeric_limits<double>::quiet_NaN();
}

/// Event-loop state, kept in extended precision between the recorded rows.
struct LoopState {
    VectorXl a;
    VectorXl u;
    MatrixXl U;
};

}  // namespace

ReducedState fly(const ReducedState& state, double t, const MassParams& p) {
    if (t < 0.0) throw std::invalid_argument("fly: negative time");
    ReducedState out = state;
    out.a += t * state.u;
    const int last = state.n() - 1;
    // single-rounded longitudinal updates (extended-precision intermediates)
    const long double tl = t, g = p.g;
    out.a(last) = static_cast<double>(state.a(last) + tl * state.u(last) -
                                      0.5L * g * tl * tl);
    out.u(last) = static_cast<double>(state.u(last) - g * tl);
    return out;
}

std::pair<ReducedState, double> billiard_step(const ReducedState& state,
                                              const CrossSection& sec,
                                              const MassParams& p) {
    const int d = sec.dim;
    const BoundaryHit hit =
        next_transverse_collision(sec, state.a.head(d), state.u.head(d));
    ReducedState next = fly(state, hit.t, p);
    next.a.head(d) = hit.point;  // exact landing point from the closed-form solve
    const BoundaryFrame f = frame_at_point(sec, hit.point);
    const Eigen::VectorXd nu = embed_transverse(f.nu, state.n());
    return {no_slip_collide(next, nu, p), hit.t};
}

void run_trajectory(const ReducedState& initial, const CrossSection& sec,
                    const MassParams& p, long n_collisions, const RowSink& sink) {
    if (n_collisions < 1)
        throw std::invalid_argument("run_trajectory: need at least one collision");
    const int n = initial.n();
    const int d = sec.dim;
    if (n != p.n || n != d + 1)
        throw std::invalid_argument("run_trajectory: dimension mismatch");
    if (boundary_mismatch(sec, initial.a.head(d)) > 1e-9)
        throw std::invalid_argument("run_trajectory: initial position not on boundary");

    LoopState st{initial.a.cast<long double>(), initial.u.cast<long double>(),
                 initial.U.cast<long double>()};
    VectorXl nu_t = detail::inward_normal_l(sec, st.a.head(d));
    VectorXl nu = VectorXl::Zero(n);
    nu.head(d) = nu_t;
    double arc_param = 0.0;
    int side = 0;
    {
        Eigen::VectorXd pd = initial.a.head(d);
        std::tie(arc_param, side) = arc_param_of(sec, pd);
    }
    if (static_cast<double>(st.u.dot(nu)) > 1e-9)
        throw std::invalid_argument("run_trajectory: initial velocity must be pre-collision");

    const long double lam_m = p.lambda_moment();
    long double time = 0.0L;
    for (long i = 0; i < n_collisions; ++i) {
        CollisionRow row;
        row.index = i;
        row.time = static_cast<double>(time);
        row.arc_param = arc_param;
        row.side = side;
        row.x = static_cast<double>(st.a(0));
        row.y = d > 1 ? static_cast<double>(st.a(1)) : 0.0;
        row.h = static_cast<double>(st.a(n - 1));
        row.nu_x = static_cast<double>(nu(0));
        row.nu_y = d > 1 ? static_cast<double>(nu(1)) : 0.0;

        // pre-collision diagnostics: tangential contact-point slip and defect
        {
            const VectorXl v = st.u - p.r * (st.U * nu);
            const VectorXl vt = v - v.dot(nu) * nu;
            row.residual = static_cast<double>(vt.norm());
            if (n == 3) {
                const long double u_tau = st.u(0) * nu(1) - st.u(1) * nu(0);  // u . tau
                row.defect = (u_tau != 0.0L)
                                 ? static_cast<double>(-p.r * st.U(1, 0) / u_tau)
                                 : std::numeric_limits<double>::quiet_NaN();
            } else {
                row.defect = std::numeric_limits<double>::quiet_NaN();
            }
        }

        std::tie(st.u, st.U) = detail::collide_velocity_l(st.u, st.U, nu, p);
        row.u_x = static_cast<double>(st.u(0));
        row.u_y = d > 1 ? static_cast<double>(st.u(1)) : 0.0;
        row.sigma = static_cast<double>(st.u(n - 1));
        const VectorXl w = p.gamma * p.r * st.U.col(n - 1).head(d);
        row.w_x = static_cast<double>(w(0));
        row.w_y = d > 1 ? static_cast<double>(w(1)) : 0.0;
        row.omega_e = (n == 3) ? static_cast<double>(st.U(1, 0)) : 0.0;
        row.energy = static_cast<double>(
            0.5L * p.m * (lam_m * st.U.squaredNorm() + st.u.squaredNorm()) +
            p.m * p.g * st.a(n - 1));

        const detail::BoundaryHitL hit =
            detail::next_transverse_collision_l(sec, st.a.head(d), st.u.head(d));
        row.flight_time = static_cast<double>(hit.t);
        sink(row);

        // free flight to the next boundary point
        st.a.head(d) = hit.point;
        st.a(n - 1) += hit.t * st.u(n - 1) - 0.5L * p.g * hit.t * hit.t;
        st.u(n - 1) -= p.g * hit.t;
        nu_t = detail::inward_normal_l(sec, hit.point);
        nu.head(d) = nu_t;
        arc_param = hit.arc_param;
        side = hit.side;
        time += hit.t;
    }
}

TrajectoryRecord run_trajectory(const ReducedState& initial, const CrossSection& sec,
                                const MassParams& p, long n_collisions) {
    TrajectoryRecord rec{p, sec, {}};
    rec.rows.reserve(static_cast<size_t>(n_collisions));
    run_trajectory(initial, sec, p, n_collisions,
                   [&rec](const CollisionRow& row) { rec.rows.push_back(row); });
    return rec;
}

ReducedState state_of_row(const CollisionRow& row, const CrossSection& sec,
                          const MassParams& p) {
    const int n = p.n;
    if (n != sec.dim + 1 || n < 2 || n > 3)
        throw std::invalid_argument("state_of_row: supported for n = 2, 3 only");
    ReducedState st;
    st.a = Eigen::VectorXd::Zero(n);
    st.u = Eigen::VectorXd::Zero(n);
    st.a(0) = row.x;
    st.u(0) = row.u_x;
    if (n == 3) {
        st.a(1) = row.y;
        st.u(1) = row.u_y;
    }
    st.a(n - 1) = row.h;
    st.u(n - 1) = row.sigma;
    const double gr = p.gamma * p.r;
    if (n == 3) {
        // w = gamma r (omega x e) => omega = (-w_y, w_x)/(gamma r), omega_e stored
        st.U = omega_to_skew({-row.w_y / gr, row.w_x / gr, row.omega_e});
    } else {
        const double spin = -row.w_x / gr;
        st.U = Eigen::MatrixXd::Zero(2, 2);
        st.U(0, 1) = -spin;
        st.U(1, 0) = spin;
    }
    return st;
}

}  // namespace noslip
