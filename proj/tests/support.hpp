#pragma once

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "noslip/collision.hpp"

namespace testsupport {

inline Eigen::VectorXd random_vector(std::mt19937_64& rng, int n) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = gauss(rng);
    return v;
}

inline Eigen::VectorXd random_unit(std::mt19937_64& rng, int n) {
    Eigen::VectorXd v = random_vector(rng, n);
    while (v.norm() < 1e-6) v = random_vector(rng, n);
    return v.normalized();
}

inline Eigen::MatrixXd random_skew(std::mt19937_64& rng, int n) {
    const Eigen::MatrixXd A =
        Eigen::MatrixXd::NullaryExpr(n, n, [&rng]() {
            std::normal_distribution<double> gauss(0.0, 1.0);
            return gauss(rng);
        });
    return 0.5 * (A - A.transpose());
}

/// Self-contained 2-D no-slip disc billiard, used as an oracle independent of
/// the n-dimensional collision map: reflection in (u_tau, u_nu, spin)
/// components, closed-form chord intersection, nothing shared with noslip::.
/// Internals run in extended precision so the oracle sits below the rounding
/// noise of what it checks.
struct Disc2D {
    long double rho;
    long double gamma;
    long double r;

    struct State {
        std::array<long double, 2> a;
        std::array<long double, 2> u;
        long double spin;
    };

    static long double dot(const std::array<long double, 2>& x,
                           const std::array<long double, 2>& y) {
        return x[0] * y[0] + x[1] * y[1];
    }

    /// Advance from a post-collision boundary state to the next one.
    /// Returns the flight time.
    long double step(State& s) const {
        const long double A = dot(s.u, s.u);
        const long double B = dot(s.a, s.u);
        const long double C = dot(s.a, s.a) - rho * rho;
        const long double t = (-B + std::sqrt(B * B - A * C)) / A;
        s.a = {s.a[0] + t * s.u[0], s.a[1] + t * s.u[1]};
        const long double norm = std::sqrt(dot(s.a, s.a));
        const std::array<long double, 2> nu = {-s.a[0] / norm, -s.a[1] / norm};
        const std::array<long double, 2> tau = {nu[1], -nu[0]};
        const long double c = (1.0L - gamma * gamma) / (1.0L + gamma * gamma);
        const long double sb = 2.0L * gamma / (1.0L + gamma * gamma);
        const long double ut = dot(s.u, tau), un = dot(s.u, nu), sp = s.spin;
        const long double ut2 = c * ut - sb * gamma * r * sp;
        const long double un2 = -un;
        const long double sp2 = -c * sp - (sb / (gamma * r)) * ut;
        s.u = {ut2 * tau[0] + un2 * nu[0], ut2 * tau[1] + un2 * nu[1]};
        s.spin = sp2;
        return t;
    }
};

}  // namespace testsupport
