#include <doctest.h>

#include <cmath>
#include <numbers>

#include "noslip/geometry.hpp"
#include "support.hpp"

using namespace noslip;
using testsupport::random_unit;

namespace {
constexpr double kPi = std::numbers::pi;

Eigen::Vector2d interior_point(std::mt19937_64& rng, const CrossSection& sec) {
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (;;) {
        Eigen::Vector2d p{unif(rng), unif(rng)};
        switch (sec.kind) {
            case SectionKind::Circle:
                p *= sec.rho;
                if (p.norm() < 0.95 * sec.rho) return p;
                break;
            case SectionKind::Stadium:
                p.x() *= sec.half_len + sec.rho;
                p.y() *= sec.rho;
                if (std::abs(p.x()) <= sec.half_len && std::abs(p.y()) < 0.95 * sec.rho)
                    return p;
                if (std::abs(p.x()) > sec.half_len &&
                    (p - Eigen::Vector2d{p.x() > 0 ? sec.half_len : -sec.half_len, 0.0})
                            .norm() < 0.95 * sec.rho)
                    return p;
                break;
            case SectionKind::Plates:
                p.x() *= 0.45 * sec.gap;
                return p;
        }
    }
}

double boundary_equation(const CrossSection& sec, const Eigen::Vector2d& p) {
    switch (sec.kind) {
        case SectionKind::Circle:
            return p.norm() - sec.rho;
        case SectionKind::Stadium: {
            if (p.x() > sec.half_len)
                return (p - Eigen::Vector2d{sec.half_len, 0.0}).norm() - sec.rho;
            if (p.x() < -sec.half_len)
                return (p + Eigen::Vector2d{sec.half_len, 0.0}).norm() - sec.rho;
            return std::abs(p.y()) - sec.rho;
        }
        case SectionKind::Plates:
            return std::abs(p.x()) - 0.5 * sec.gap;
    }
    return 0.0;
}
}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("construction validation") {
    CHECK_THROWS_AS(CrossSection::circle(0.0), std::invalid_argument);
    CHECK_THROWS_AS(CrossSection::stadium(1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(CrossSection::plates(-1.0), std::invalid_argument);
}

TEST_CASE("circle frame at origin of arc") {
    const CrossSection sec = CrossSection::circle(1.0);
    const BoundaryFrame f = frame_at(sec, 0.0);
    CHECK((f.a - Eigen::Vector2d{1.0, 0.0}).norm() == doctest::Approx(0.0));
    CHECK((f.nu - Eigen::Vector2d{-1.0, 0.0}).norm() == doctest::Approx(0.0));
    CHECK(f.curvature == doctest::Approx(1.0));
}

TEST_CASE("frame invariants along the boundary") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> unif(-30.0, 30.0);
    for (const CrossSection& sec :
         {CrossSection::circle(1.7), CrossSection::stadium(0.8, 2.1)}) {
        for (int rep = 0; rep < 200; ++rep) {
            const BoundaryFrame f = frame_at(sec, unif(rng));
            CHECK(f.nu.norm() == doctest::Approx(1.0).epsilon(1e-14));
            CHECK(f.tau.norm() == doctest::Approx(1.0).epsilon(1e-14));
            CHECK(f.nu.dot(f.tau) == doctest::Approx(0.0).epsilon(1e-14));
            CHECK(std::abs(boundary_equation(sec, f.a.head<2>())) <= 1e-12);
            // arc param round-trips through the boundary point
            auto [s, side] = arc_param_of(sec, f.a);
            const BoundaryFrame f2 = frame_at(sec, s, side);
            CHECK((f2.a - f.a).norm() <= 1e-11);
        }
    }
}

TEST_CASE("stadium frames and curvature") {
    const CrossSection sec = CrossSection::stadium(1.0, 2.0);
    // straight midpoint: arc origin, curvature 0
    const BoundaryFrame mid = frame_at(sec, 0.0);
    CHECK((mid.a - Eigen::Vector2d{0.0, -1.0}).norm() == doctest::Approx(0.0));
    CHECK(mid.curvature == 0.0);
    // cap midpoint
    const BoundaryFrame cap = frame_at(sec, 2.0 + kPi / 2);
    CHECK((cap.a - Eigen::Vector2d{3.0, 0.0}).norm() <= 1e-14);
    CHECK(cap.curvature == doctest::Approx(1.0));

    CHECK(perimeter(sec) == doctest::Approx(2.0 * kPi + 8.0).epsilon(1e-15));

    // curvature integrates to 2 pi (turning number 1), midpoint rule
    const long N = 400000;
    const double P = perimeter(sec);
    double total = 0.0;
    for (long i = 0; i < N; ++i) total += curvature_profile(sec, (i + 0.5) * P / N) * P / N;
    CHECK(total == doctest::Approx(2.0 * kPi).epsilon(1e-4));
}

TEST_CASE("plates frames") {
    const CrossSection sec = CrossSection::plates(2.0);
    const BoundaryFrame lo = frame_at(sec, 0.0, 0);
    const BoundaryFrame hi = frame_at(sec, 0.0, 1);
    CHECK(lo.a.x() == doctest::Approx(-1.0));
    CHECK(hi.a.x() == doctest::Approx(1.0));
    CHECK((lo.nu + hi.nu).norm() == doctest::Approx(0.0));
    CHECK(lo.curvature == 0.0);
    CHECK_THROWS_AS(perimeter(sec), std::domain_error);
    CHECK_THROWS_AS(curvature_profile(sec, 0.0), std::domain_error);
}

TEST_CASE("intersection examples") {
    const CrossSection circ = CrossSection::circle(1.0);
    // diameter chord
    Eigen::Vector2d a{-1.0, 0.0}, u{1.0, 0.0};
    const BoundaryHit hit = next_transverse_collision(circ, a, u);
    CHECK(hit.t == doctest::Approx(2.0).epsilon(1e-14));
    CHECK((hit.point - Eigen::Vector2d{1.0, 0.0}).norm() <= 1e-14);

    // chord entering at angle pi/4 from the tangent has length 2 rho sin(pi/4)
    const BoundaryFrame f = frame_at(circ, 0.3);
    const Eigen::Vector2d dir =
        std::cos(kPi / 4) * f.tau.head<2>() + std::sin(kPi / 4) * f.nu.head<2>();
    const BoundaryHit chord = next_transverse_collision(circ, f.a, dir);
    CHECK(chord.t == doctest::Approx(2.0 * std::sin(kPi / 4)).epsilon(1e-12));

    // plates: normal speed 1 over gap 2 with some tilt
    const CrossSection pl = CrossSection::plates(2.0);
    const BoundaryHit ph = next_transverse_collision(
        pl, Eigen::Vector2d{-1.0, 0.0}, Eigen::Vector2d{1.0, 0.7});
    CHECK(ph.t == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(ph.side == 1);
    CHECK_THROWS_AS(next_transverse_collision(pl, Eigen::Vector2d{0.0, 0.0},
                                              Eigen::Vector2d{0.0, 1.0}),
                    SimulationError);
}

TEST_CASE("hit points satisfy the boundary equation; reversibility") {
    std::mt19937_64 rng(37);
    for (const CrossSection& sec :
         {CrossSection::circle(1.3), CrossSection::stadium(1.0, 2.0),
          CrossSection::plates(1.7)}) {
        for (int rep = 0; rep < 300; ++rep) {
            const Eigen::Vector2d a = interior_point(rng, sec);
            Eigen::Vector2d u = random_unit(rng, 2);
            if (sec.kind == SectionKind::Plates && std::abs(u.x()) < 1e-3) continue;
            const BoundaryHit first = next_transverse_collision(sec, a, u);
            CHECK(std::abs(boundary_equation(sec, first.point.head<2>())) <= 1e-12);
            // chord between boundary points: firing back retraces it
            const BoundaryFrame f = frame_at_point(sec, first.point);
            const Eigen::Vector2d nu = f.nu.head<2>();
            const Eigen::Vector2d dir = u - 2.0 * u.dot(nu) * nu;  // inward
            const BoundaryHit fwd = next_transverse_collision(sec, first.point, dir);
            const BoundaryHit back = next_transverse_collision(sec, fwd.point, -dir);
            CHECK(back.t == doctest::Approx(fwd.t).epsilon(1e-10));
            CHECK((back.point - first.point).norm() <= 1e-10);
        }
    }
}

TEST_CASE("specular hops around the circle advance by a fixed rotation") {
    const CrossSection circ = CrossSection::circle(1.0);
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> unif(0.15, kPi / 2 - 0.1);
    const double theta = unif(rng);
    BoundaryFrame f = frame_at(circ, 0.0);
    Eigen::Vector2d a = f.a.head<2>();
    Eigen::Vector2d u = std::cos(theta) * f.tau.head<2>() + std::sin(theta) * f.nu.head<2>();
    const double delta = 2.0 * theta;  // subtended angle per hop
    const Eigen::Rotation2D<double> R(delta);
    for (int i = 0; i < 50; ++i) {
        const BoundaryHit hit = next_transverse_collision(circ, a, u);
        const Eigen::Vector2d predicted = R * a;
        CHECK((hit.point.head<2>() - predicted).norm() <= 1e-10);
        a = hit.point.head<2>();
        const Eigen::Vector2d nu = -a.normalized();
        u = u - 2.0 * u.dot(nu) * nu;  // specular
    }
}

TEST_CASE("junction hits use the cap frame") {
    const CrossSection sec = CrossSection::stadium(1.0, 2.0);
    // aim exactly at the junction (2, 1) from below it inside the domain
    const Eigen::Vector2d start{2.0, -0.5};
    const BoundaryHit hit = next_transverse_collision(sec, start, Eigen::Vector2d{0.0, 1.0});
    const BoundaryFrame f = frame_at(sec, hit.arc_param, hit.side);
    CHECK(f.curvature == doctest::Approx(1.0));  // cap, not straight
}

}  // TEST_SUITE
