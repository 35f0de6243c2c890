#include <doctest.h>

#include <cmath>
#include <numbers>

#include "noslip/rolling.hpp"

using namespace noslip;

namespace {
constexpr double kPi = std::numbers::pi;

MassParams uniform3(double g = 0.0) {
    return {3, 1.0, 1.0, MassParams::gamma_uniform(3), g};
}
}  // namespace

TEST_SUITE("rolling") {

TEST_CASE("rhs on flat and degenerate segments") {
    const MassParams p = uniform3(1.0);
    const CrossSection stad = CrossSection::stadium(1.0, 2.0);

    RollingState st;
    st.s = 0.0;  // lower straight midpoint, curvature 0
    st.sigma = 0.3;
    st.omega_nu = 0.7;
    st.omega_e = 2.0;
    const RollingDerivs d = rolling_rhs(st, stad, p);
    CHECK(d.dsigma == doctest::Approx(-p.g / (1.0 + p.gamma2())).epsilon(1e-14));
    CHECK(d.dh == doctest::Approx(0.3));
    CHECK(d.ds == doctest::Approx(-p.r * 2.0));
    CHECK(d.domega_nu == doctest::Approx(0.0));

    // omega_e = 0: scaled free fall regardless of curvature
    const CrossSection circ = CrossSection::circle(1.5);
    st.omega_e = 0.0;
    st.s = 0.4;
    const RollingDerivs d2 = rolling_rhs(st, circ, p);
    CHECK(d2.dsigma == doctest::Approx(-p.g / (1.0 + p.gamma2())).epsilon(1e-14));
    CHECK(d2.domega_nu == 0.0);

    CHECK_THROWS_AS(rolling_rhs(st, CrossSection::plates(1.0), p), std::domain_error);
}

TEST_CASE("closed form on the circle") {
    const MassParams p = uniform3(1.0);
    const double rho = 2.0;
    RollingState init;
    init.h = 0.4;
    init.sigma = 0.9;
    init.omega_nu = -0.3;
    init.omega_e = 1.5;
    const CircularRollingSolution sol = circular_closed_form(init, rho, p);
    const double k = p.gamma2() / (1.0 + p.gamma2());
    CHECK(sol.c0 == doctest::Approx(k * (p.r / rho) * (p.r / rho) * 1.5 * 1.5).epsilon(1e-15));
    CHECK(sol.h(0.0) == doctest::Approx(init.h).epsilon(1e-14));

    // g = 0, omega_nu(0) = 0, h(0) = 0 makes c1 = 0: h = sin(sqrt(c0) t)/sqrt(c0)
    const MassParams p0 = uniform3(0.0);
    RollingState simple;
    simple.sigma = 1.0;
    simple.omega_e = 1.5;
    const CircularRollingSolution s0 = circular_closed_form(simple, rho, p0);
    CHECK(s0.c1 == doctest::Approx(0.0).epsilon(1e-15));
    const double w = std::sqrt(s0.c0);
    CHECK(s0.h(0.77) == doctest::Approx(std::sin(w * 0.77) / w).epsilon(1e-14));

    RollingState still;
    still.omega_e = 0.0;
    CHECK_THROWS_AS(circular_closed_form(still, rho, p), std::domain_error);
}

TEST_CASE("RK4 matches the closed form and is fourth order") {
    const MassParams p = uniform3(1.0);
    const double rho = 2.0;
    const CrossSection circ = CrossSection::circle(rho);
    RollingState init;
    init.h = 0.0;
    init.sigma = 1.0;
    init.omega_nu = 0.2;
    init.omega_e = 1.5;
    const CircularRollingSolution sol = circular_closed_form(init, rho, p);
    const double period = 2.0 * kPi / std::sqrt(sol.c0);

    auto endpoint_err = [&](double dt) {
        double err = 0.0;
        integrate_rolling(init, circ, p, dt, 2.0 * period, [&](const RollingSample& s) {
            err = std::abs(s.h - sol.h(s.t));
        });
        return err;
    };
    const double e1 = endpoint_err(1e-2);
    const double e2 = endpoint_err(5e-3);
    CHECK(e1 / e2 > 10.0);  // ~16x for fourth order
    CHECK(e1 / e2 < 24.0);

    // track the whole path at dt = 1e-4 over two vertical periods
    double max_err = 0.0;
    integrate_rolling(init, circ, p, 1e-4, 2.0 * period, [&](const RollingSample& s) {
        max_err = std::max(max_err, std::abs(s.h - sol.h(s.t)));
    });
    CHECK(max_err < 1e-10);
}

TEST_CASE("omega_e is conserved and the harmonic invariant holds") {
    const MassParams p = uniform3(0.0);
    const double rho = 1.5;
    const CrossSection circ = CrossSection::circle(rho);
    RollingState init;
    init.sigma = 0.8;
    init.omega_nu = 0.0;
    init.omega_e = 2.0;
    const CircularRollingSolution sol = circular_closed_form(init, rho, p);
    // g = 0 circular case: sigma^2 + c0 (h + c1/c0)^2 is constant
    const double inv0 = init.sigma * init.sigma;
    double worst = 0.0;
    integrate_rolling(init, circ, p, 1e-4, 25.0, [&](const RollingSample& s) {
        const double z = s.h + sol.c1 / sol.c0;
        worst = std::max(worst, std::abs(s.sigma * s.sigma + sol.c0 * z * z - inv0));
    });
    CHECK(worst < 1e-8);
}

TEST_CASE("stadium rolling stays bounded with parabolic flat arcs") {
    const MassParams p = uniform3(1.0);
    const CrossSection stad = CrossSection::stadium(1.0, 2.0);
    RollingState init;
    init.s = 0.0;
    init.h = 0.0;
    init.sigma = 0.4;
    init.omega_nu = 0.0;
    for (double omega_e : {2.5, -2.5}) {  // both directions of contact travel
        init.omega_e = omega_e;
        double hmin = 0.0, hmax = 0.0;
        integrate_rolling(init, stad, p, 1e-3, 1000.0, [&](const RollingSample& s) {
            hmin = std::min(hmin, s.h);
            hmax = std::max(hmax, s.h);
        });
        CHECK(hmax - hmin < 50.0);
        CHECK(std::isfinite(hmin));
        CHECK(std::isfinite(hmax));
    }
}

TEST_CASE("flat segments are scaled free fall (parabolic arcs)") {
    const MassParams p = uniform3(1.0);
    const CrossSection stad = CrossSection::stadium(1.0, 2.0);
    RollingState init;
    init.s = 0.0;
    init.sigma = 0.4;
    init.omega_nu = 0.3;
    init.omega_e = 2.0;
    const double dt = 1e-3;
    std::vector<RollingSample> path = integrate_rolling(init, stad, p, dt, 40.0);
    const double expected = -p.g / (1.0 + p.gamma2());
    int checked = 0;
    for (size_t i = 1; i + 1 < path.size(); ++i) {
        // second difference of h where the whole stencil sits on one straight
        bool flat = true;
        for (size_t j = i - 1; j <= i + 1; ++j)
            if (curvature_profile(stad, path[j].s) != 0.0) flat = false;
        if (!flat) continue;
        const double hdd = (path[i + 1].h - 2.0 * path[i].h + path[i - 1].h) / (dt * dt);
        CHECK(hdd == doctest::Approx(expected).epsilon(1e-6));
        ++checked;
    }
    CHECK(checked > 1000);
}

TEST_CASE("junction clamping keeps fourth order across curvature jumps") {
    const MassParams p = uniform3(1.0);
    const CrossSection stad = CrossSection::stadium(1.0, 2.0);
    RollingState init;
    init.s = 0.5;  // starts on a straight, crosses many junctions
    init.sigma = 0.7;
    init.omega_nu = 0.4;
    init.omega_e = 2.0;
    const double t_end = 20.0;
    auto endpoint = [&](double dt) {
        double h = 0.0;
        integrate_rolling(init, stad, p, dt, t_end,
                          [&](const RollingSample& s) { h = s.h; });
        return h;
    };
    // stay above the ~1e-11 roundoff floor of the accumulated endpoint
    const double ref = endpoint(2e-4);
    const double e1 = std::abs(endpoint(1.6e-2) - ref);
    const double e2 = std::abs(endpoint(8e-3) - ref);
    CHECK(e1 / e2 > 10.0);
    CHECK(e1 / e2 < 26.0);
}

TEST_CASE("period ratio") {
    const MassParams p = uniform3();
    CHECK(period_ratio(p) == doctest::Approx(std::sqrt(3.5)).epsilon(1e-12));
    CHECK(period_ratio(p) == doctest::Approx(1.8708287).epsilon(1e-7));
    const MassParams g1(2, 1.0, 1.0, 1.0);
    CHECK(period_ratio(g1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));

    // measured from the integrated path: vertical period from upward
    // crossings of the oscillation center, horizontal from the contact rate
    const double rho = 2.0;
    const CrossSection circ = CrossSection::circle(rho);
    RollingState init;
    init.sigma = 1.0;
    init.omega_nu = 0.3;
    init.omega_e = 1.5;
    const MassParams pg = uniform3(1.0);
    const CircularRollingSolution sol = circular_closed_form(init, rho, pg);
    const double center = -sol.c1 / sol.c0;
    std::vector<double> crossings;
    double prev_z = init.h - center, prev_t = 0.0;
    integrate_rolling(init, circ, pg, 1e-4, 60.0, [&](const RollingSample& s) {
        const double z = s.h - center;
        if (prev_z < 0.0 && z >= 0.0 && s.t > 0.0)
            crossings.push_back(prev_t + (s.t - prev_t) * (-prev_z) / (z - prev_z));
        prev_z = z;
        prev_t = s.t;
    });
    REQUIRE(crossings.size() >= 3);
    const double T_v =
        (crossings.back() - crossings.front()) / double(crossings.size() - 1);
    const double T_h = 2.0 * kPi * rho / (pg.r * std::abs(init.omega_e));
    CHECK(std::abs(T_v / T_h - period_ratio(pg)) < 1e-6);
}

}  // TEST_SUITE
