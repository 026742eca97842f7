#include <doctest.h>

#include <cmath>

#include "ccmkdv/config.hpp"
#include "ccmkdv/reduction.hpp"
#include "test_support.hpp"

using namespace ccmkdv;

TEST_CASE("constraint residual at published figure parameters") {
    // rounded-to-two-decimals parameters sit close to, not on, the curve
    const double r1 = reduction_residual({0.88, 1.0}, {1.0, 1.0}, {2.0, 1.0});
    CHECK(r1 > 0.0);
    CHECK(r1 < 0.01);
    CHECK(r1 == doctest::Approx(0.0021986703823730913).epsilon(1e-9));

    const double r2a = reduction_residual({1.53, 1.0}, {2.0, 1.0}, {2.3, 1.5});
    const double r2b = reduction_residual({1.49, 2.0}, {2.0, 1.0}, {2.3, 1.5});
    CHECK(std::abs(r2a) < 0.02);
    CHECK(std::abs(r2b) < 0.02);
    CHECK(r2a == doctest::Approx(-0.004313611205396084).epsilon(1e-9));
    CHECK(r2b == doctest::Approx(0.01047117841150591).epsilon(1e-9));
}

TEST_CASE("single-component closed form root") {
    // rho = (1, 0), alpha1 = 1: (p^2+1)^2 = 2 at real p
    const double p = std::sqrt(std::sqrt(2.0) - 1.0);
    CHECK(std::abs(reduction_residual({p, 0.0}, {1.0, 0.0}, {1.0, 1.0})) < 1e-12);
    const double solved = solve_re(0.0, {1.0, 0.0}, {1.0, 1.0}, {0.1, 1.0});
    CHECK(solved == doctest::Approx(0.6435942529055827).epsilon(1e-10));
}

TEST_CASE("residual symmetries p -> -p, conj(p), -conj(p)") {
    auto gen = testsupport::rng(31);
    std::uniform_real_distribution<double> u(0.2, 2.5);
    for (int rep = 0; rep < 50; ++rep) {
        const Cx p{u(gen), u(gen)};
        const std::array<double, 2> rho{u(gen), u(gen)};
        const std::array<double, 2> alpha{u(gen), u(gen)};
        const double base = reduction_residual(p, rho, alpha);
        CHECK(std::abs(reduction_residual(-p, rho, alpha) - base) < 1e-14);
        CHECK(std::abs(reduction_residual(std::conj(p), rho, alpha) - base) < 1e-14);
        CHECK(std::abs(reduction_residual(-std::conj(p), rho, alpha) - base) < 1e-14);
    }
}

TEST_CASE("naive complex evaluation of the constraint is real") {
    auto gen = testsupport::rng(37);
    std::uniform_real_distribution<double> u(0.3, 2.0);
    for (int rep = 0; rep < 20; ++rep) {
        const Cx p{u(gen), u(gen)};
        const std::array<double, 2> rho{u(gen), u(gen)};
        const std::array<double, 2> alpha{u(gen), u(gen)};
        Cx lhs{0.0, 0.0};
        for (int nu = 0; nu < 2; ++nu) {
            const double a2 = alpha[nu] * alpha[nu];
            lhs += 2.0 * a2 * rho[nu] * rho[nu] /
                   ((p * p + a2) * (std::conj(p) * std::conj(p) + a2));
        }
        CHECK(std::abs(lhs.imag()) < 1e-14);
        CHECK(std::abs(lhs.real() - 1.0 - reduction_residual(p, rho, alpha)) < 1e-13);
    }
}

TEST_CASE("pole of the constraint") {
    CHECK_THROWS_AS(reduction_residual({0.0, 2.0}, {1.0, 1.0}, {2.0, 1.0}), PoleError);
    // the pole of a zero-amplitude term is harmless
    CHECK_NOTHROW(reduction_residual({0.0, 2.0}, {0.0, 1.0}, {2.0, 1.0}));
}

TEST_CASE("solve_re refines the published parameters") {
    const double re1 = solve_re(1.0, {1.0, 1.0}, {2.0, 1.0}, {0.1, 3.0});
    CHECK(std::abs(reduction_residual({re1, 1.0}, {1.0, 1.0}, {2.0, 1.0})) < 1e-12);
    CHECK(re1 == doctest::Approx(0.8811181717481655).epsilon(1e-9));
    CHECK(std::abs(re1 - 0.88) < 0.01);  // consistent with the rounded value

    const double re2 = solve_re(1.0, {2.0, 1.0}, {2.3, 1.5}, {0.1, 3.0});
    CHECK(std::abs(re2 - 1.53) < 0.01);
    const double re3 = solve_re(2.0, {2.0, 1.0}, {2.3, 1.5}, {0.1, 3.0});
    CHECK(std::abs(re3 - 1.49) < 0.01);
}

TEST_CASE("solve_re reports a missing sign change with both residuals") {
    try {
        solve_re(1.0, {0.01, 0.01}, {2.0, 1.0}, {0.1, 3.0});
        FAIL("expected NoSignChangeError");
    } catch (const NoSignChangeError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("residual(") != std::string::npos);
    }
}

TEST_CASE("family scan samples the admissible curve") {
    const FamilyScan scan = family_scan({1.0, 1.0}, {2.0, 1.0}, 0.2, 2.0, 10, {0.1, 3.0});
    CHECK(scan.points.size() == 10);
    CHECK(scan.failures.empty());
    for (const auto& pt : scan.points) CHECK(std::abs(pt.residual) < 1e-12);

    // solver output always passes strict construction
    for (const auto& pt : scan.points) {
        CHECK_NOTHROW(SolitonConfig({1.0, 1.0}, {2.0, 1.0}, {pt.p}));
    }

    const FamilyScan two = family_scan({1.0, 1.0}, {2.0, 1.0}, 0.5, 1.5, 2, {0.1, 3.0});
    CHECK(two.points.size() == 2);

    const FamilyScan none = family_scan({0.01, 0.01}, {2.0, 1.0}, 0.5, 1.5, 4, {0.1, 3.0});
    CHECK(none.points.empty());
    CHECK(none.failures.size() == 4);

    CHECK_THROWS_AS(family_scan({1.0, 1.0}, {2.0, 1.0}, 0.5, 1.5, 1, {0.1, 3.0}),
                    InvalidConfigError);
}
