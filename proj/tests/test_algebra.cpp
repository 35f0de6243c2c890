#include <doctest.h>

#include <cmath>

#include "noslip/algebra.hpp"
#include "support.hpp"

using namespace noslip;
using testsupport::random_skew;
using testsupport::random_unit;
using testsupport::random_vector;

TEST_SUITE("algebra") {

TEST_CASE("mass params validation") {
    CHECK_NOTHROW(MassParams(3, 1.0, 1.0, std::sqrt(2.0 / 5.0), 1.0));
    CHECK_THROWS_AS(MassParams(3, 1.0, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(MassParams(3, 1.0, 1.0, -0.3), std::invalid_argument);
    CHECK_THROWS_AS(MassParams(3, 1.0, 1.0, 0.9), std::invalid_argument);  // > sqrt(2/3)
    CHECK_THROWS_AS(MassParams(1, 1.0, 1.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(MassParams(3, -1.0, 1.0, 0.5), std::invalid_argument);
}

TEST_CASE("wedge definition and examples") {
    Eigen::VectorXd e1 = Eigen::VectorXd::Zero(3), e2 = Eigen::VectorXd::Zero(3);
    e1(0) = 1.0;
    e2(1) = 1.0;
    const Eigen::MatrixXd W = wedge(e1, e2);
    CHECK((W * e1 - e2).norm() == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(0.5 * (W * W.transpose()).trace() == doctest::Approx(1.0).epsilon(1e-15));

    Eigen::VectorXd a(2), b(3);
    a << 1, 2;
    b << 1, 2, 3;
    CHECK_THROWS_AS(wedge(a, b), std::invalid_argument);
}

TEST_CASE("wedge identities on random quadruples") {
    std::mt19937_64 rng(101);
    for (int n : {2, 3, 4}) {
        for (int rep = 0; rep < 50; ++rep) {
            const Eigen::VectorXd a = random_vector(rng, n), b = random_vector(rng, n);
            const Eigen::VectorXd c = random_vector(rng, n), d = random_vector(rng, n);
            const Eigen::VectorXd u = random_vector(rng, n);
            const Eigen::MatrixXd W = wedge(a, b);
            // antisymmetry and definition
            CHECK((W + wedge(b, a)).norm() == doctest::Approx(0.0).epsilon(1e-12));
            CHECK((W * u - (a.dot(u) * b - b.dot(u) * a)).norm() <= 1e-12);
            // trace pairings
            const double lhs1 = 0.5 * (W * wedge(c, d).transpose()).trace();
            CHECK(lhs1 == doctest::Approx(a.dot(c) * b.dot(d) - a.dot(d) * b.dot(c))
                              .epsilon(1e-12));
            const Eigen::MatrixXd U = random_skew(rng, n);
            const double lhs2 = 0.5 * (U * W.transpose()).trace();
            CHECK(lhs2 == doctest::Approx((U * a).dot(b)).epsilon(1e-12));
        }
    }
}

TEST_CASE("wedge matches double cross product in 3-D") {
    std::mt19937_64 rng(7);
    for (int rep = 0; rep < 100; ++rep) {
        const Eigen::Vector3d a = random_vector(rng, 3), b = random_vector(rng, 3);
        const Eigen::Vector3d u = random_vector(rng, 3);
        const Eigen::Vector3d lhs = wedge(a, b) * u;
        const Eigen::Vector3d rhs = a.cross(b).cross(u);
        CHECK((lhs - rhs).norm() <= 1e-12 * (1.0 + rhs.norm()));
    }
}

TEST_CASE("apply_skew") {
    Eigen::VectorXd v(3);
    v << 1, 2, 3;
    CHECK((apply_skew(Eigen::MatrixXd::Zero(3, 3), v)).norm() == 0.0);
    std::mt19937_64 rng(13);
    const Eigen::MatrixXd U = random_skew(rng, 4);
    const Eigen::VectorXd x = random_vector(rng, 4);
    CHECK(x.dot(apply_skew(U, x)) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_THROWS_AS(apply_skew(U, v), std::invalid_argument);
}

TEST_CASE("omega/skew correspondence") {
    const Eigen::Matrix3d U = omega_to_skew({0, 0, 1});
    CHECK((U * Eigen::Vector3d::UnitX() - Eigen::Vector3d::UnitY()).norm() == 0.0);
    CHECK((U * Eigen::Vector3d::UnitY() + Eigen::Vector3d::UnitX()).norm() == 0.0);
    CHECK((U * Eigen::Vector3d::UnitZ()).norm() == 0.0);

    // hand cross product: (1,2,3) x (4,5,6) = (-3, 6, -3)
    const Eigen::Vector3d got = omega_to_skew({1, 2, 3}) * Eigen::Vector3d{4, 5, 6};
    CHECK((got - Eigen::Vector3d{-3, 6, -3}).norm() == doctest::Approx(0.0));

    std::mt19937_64 rng(17);
    for (int rep = 0; rep < 20; ++rep) {
        const Eigen::Vector3d w = random_vector(rng, 3);
        CHECK((skew_to_omega(omega_to_skew(w)) - w).norm() == doctest::Approx(0.0));
    }
}

TEST_CASE("beta constants") {
    const MassParams uni3(3, 1.0, 1.0, MassParams::gamma_uniform(3));
    auto [c, s] = beta_constants(uni3);
    CHECK(c == doctest::Approx(3.0 / 7.0).epsilon(1e-14));
    CHECK(s == doctest::Approx(0.9035079029052513).epsilon(1e-12));

    const MassParams g1(2, 1.0, 1.0, 1.0);
    CHECK(g1.c_beta() == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(g1.s_beta() == doctest::Approx(1.0).epsilon(1e-15));

    const MassParams tiny(3, 1.0, 1.0, 1e-8);
    CHECK(tiny.c_beta() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(tiny.s_beta() == doctest::Approx(0.0).epsilon(1e-7));
}

TEST_CASE("beta identities") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> unif(0.01, std::sqrt(2.0 / 3.0));
    for (int rep = 0; rep < 50; ++rep) {
        const MassParams p(3, 1.0, 1.0, unif(rng));
        const double c = p.c_beta(), s = p.s_beta(), g = p.gamma;
        CHECK(c * c + s * s == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(1.0 - c == doctest::Approx(g * s).epsilon(1e-14));
        CHECK(1.0 + c == doctest::Approx(s / g).epsilon(1e-14));
    }
}

TEST_CASE("gamma_uniform") {
    CHECK(MassParams::gamma_uniform(3) == doctest::Approx(std::sqrt(0.4)).epsilon(1e-15));
    CHECK(MassParams::gamma_uniform(2) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
    for (int n = 2; n <= 8; ++n)
        CHECK(MassParams::gamma_uniform(n) < std::sqrt(2.0 / n));
}

TEST_CASE("kinetic norm") {
    const MassParams p(3, 1.0, 1.0, std::sqrt(0.4));
    CHECK(kinetic_norm_sq(Eigen::Vector3d::Zero(), Eigen::Matrix3d::Zero(), p) == 0.0);
    CHECK(kinetic_norm_sq(Eigen::Vector3d::UnitX(), Eigen::Matrix3d::Zero(), p) ==
          doctest::Approx(1.0).epsilon(1e-15));
    // u = 0, omega = e_z: Tr(U U^T) = 2 |omega|^2 = 2, so norm^2 = (r g)^2 = 2/5
    const Eigen::Matrix3d U = omega_to_skew({0, 0, 1});
    CHECK(kinetic_norm_sq(Eigen::Vector3d::Zero(), U, p) ==
          doctest::Approx(0.4).epsilon(1e-14));

    std::mt19937_64 rng(29);
    for (int rep = 0; rep < 30; ++rep) {
        const Eigen::VectorXd u = random_vector(rng, 3);
        const Eigen::MatrixXd W = random_skew(rng, 3);
        if (u.norm() + W.norm() > 0.0) CHECK(kinetic_norm_sq(u, W, p) > 0.0);
    }
}

}  // TEST_SUITE
