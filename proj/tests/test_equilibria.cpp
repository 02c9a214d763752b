#include <doctest.h>

#include "helpers.hpp"

#include "hvx/equilibria.hpp"

#include <cmath>
#include <numbers>

using namespace hvx;
using hvx_test::random_gamma;
using hvx_test::uniform;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("every two-vortex configuration is a relative equilibrium")
{
    for (int trial = 0; trial < 25; ++trial) {
        const Configuration cfg({lift(uniform(-1, 1), uniform(-1, 1)),
                                 lift(uniform(1.5, 2.5), uniform(-1, 1))},
                                {random_gamma(), random_gamma()});
        CHECK(re_multipliers(cfg).residual <= 1e-10);
    }
}

TEST_CASE("equilateral angular velocity matches the closed form")
{
    const Configuration cfg = make_equilateral(2.0, {1.0, 1.0, 1.0});
    const REReport rep = re_multipliers(cfg);
    CHECK(rep.residual <= 1e-10);
    const Vec3 mu = momentum(cfg).v;
    const double L = 2.0 * 2.0 - 1.0;
    CHECK((rep.xi.v - mu / (2.0 * pi * L)).norm() < 1e-10);
    CHECK(rep.xi.v.x() == doctest::Approx(0.0));
    CHECK(rep.xi.v.y() == doctest::Approx(0.0));
    CHECK(rep.xi.v.z() == doctest::Approx(3.0 * std::sqrt(5.0 / 3.0) / (6.0 * pi)));
}

TEST_CASE("generic scalene non-geodesic triples are not relative equilibria")
{
    for (int trial = 0; trial < 10; ++trial) {
        const Configuration cfg({lift(0.9 + 0.1 * trial, 0.0), lift(-0.5, 0.8),
                                 lift(0.1, -1.1 - 0.05 * trial)},
                                {1.0, 1.3, 0.7});
        CHECK(re_multipliers(cfg).residual > 1e-4);
    }
}

TEST_CASE("is_relative_equilibrium certifies the classified families")
{
    for (int trial = 0; trial < 10; ++trial) {
        const Configuration eq =
            make_equilateral(1.0 + uniform(0.2, 4.0), {random_gamma(), random_gamma(), random_gamma()});
        CHECK(is_relative_equilibrium(eq).first);
        CHECK(re_shape(eq) == REShape::Equilateral);
    }

    // geodesic triple with the third strength perturbed off the solution value
    const double g3 = solve_geodesic_gamma(1.0, 2.0, 1.0, 1.0);
    const GeodesicGeometry geo = geodesic_config(1.0, 2.0);
    const Configuration off({geo.points[0], geo.points[1], geo.points[2]}, {1.0, 1.0, g3 + 0.5});
    CHECK_FALSE(is_relative_equilibrium(off).first);

    const Configuration lone({lift(0.3, 0.3)}, {2.0});
    CHECK(is_relative_equilibrium(lone).first);

    CHECK_THROWS_AS(is_relative_equilibrium(lone, 0.0), Error);
}

TEST_CASE("make_equilateral geometry")
{
    CHECK_THROWS_AS(make_equilateral(1.0, {1, 1, 1}), Error);
    const Configuration cfg = make_equilateral(2.0, {1, 1, 1});
    for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
            CHECK(minkowski_dot(cfg.point(i).vec(), cfg.point(j).vec()) ==
                  doctest::Approx(-2.0).epsilon(1e-12));
            CHECK(hdistance(cfg.point(i), cfg.point(j)) == doctest::Approx(std::acosh(2.0)));
        }
    }
    CHECK(std::abs(coplanarity(cfg.point(0), cfg.point(1), cfg.point(2))) > 1e-6);
}

TEST_CASE("geodesic_config is collinear with additive distances")
{
    CHECK_THROWS_AS(geodesic_config(-1.0, 1.0), Error);
    const GeodesicGeometry g = geodesic_config(0.7, 1.9);
    CHECK(coplanarity(g.points[0], g.points[1], g.points[2]) == doctest::Approx(0.0));
    CHECK(g.L12 == doctest::Approx(0.49));
    CHECK(g.L23 == doctest::Approx(3.61));
    CHECK(hdistance(g.points[0], g.points[2]) ==
          doctest::Approx(std::asinh(0.7) + std::asinh(1.9)).epsilon(1e-12));
    const GeodesicGeometry iso = geodesic_config(1.3, 1.3);
    CHECK(iso.L12 == doctest::Approx(iso.L23));
}

TEST_CASE("geodesic RE condition: isosceles symmetry and linearity")
{
    const GeodesicGeometry iso = geodesic_config(1.3, 1.3);
    CHECK(geodesic_re_residual({1.0, 5.0, 1.0}, iso.L12, iso.L23, iso.L13) ==
          doctest::Approx(0.0));
    CHECK(std::abs(geodesic_re_residual({1.0, 5.0, 2.0}, iso.L12, iso.L23, iso.L13)) > 1e-6);
    const GeodesicGeometry g = geodesic_config(0.7, 1.9);
    const std::array<double, 3> G{1.1, -0.4, 0.8};
    const double r = geodesic_re_residual(G, g.L12, g.L23, g.L13);
    const std::array<double, 3> G2{3.3, -1.2, 2.4};
    CHECK(geodesic_re_residual(G2, g.L12, g.L23, g.L13) == doctest::Approx(3.0 * r));
}

TEST_CASE("solve_geodesic_gamma closes the stationarity system end to end")
{
    CHECK(solve_geodesic_gamma(1.4, 1.4, 1.0, -0.7) == doctest::Approx(1.0));
    const double g3 = solve_geodesic_gamma(1.0, 2.0, 1.0, 1.0);
    const GeodesicGeometry g = geodesic_config(1.0, 2.0);
    const Configuration cfg({g.points[0], g.points[1], g.points[2]}, {1.0, 1.0, g3});
    CHECK(re_multipliers(cfg).residual <= 1e-8);
    CHECK(re_shape(cfg) == REShape::Geodesic);
    CHECK(solve_geodesic_gamma(1.0, 2.0, 2.0, 2.0) == doctest::Approx(2.0 * g3));
}

TEST_CASE("solve_geodesic_geometry finds the isosceles root and certified REs")
{
    const auto roots_iso = solve_geodesic_geometry({1.0, 0.8, 1.0}, 1.2);
    bool found = false;
    for (double r : roots_iso) {
        if (std::abs(r - 1.2) < 1e-8) found = true;
    }
    CHECK(found);

    const auto roots = solve_geodesic_geometry({1.0, 1.0, 1.0}, 1.0);
    CHECK(!roots.empty());
    for (double x3 : roots) {
        const GeodesicGeometry g = geodesic_config(1.0, x3);
        const Configuration cfg({g.points[0], g.points[1], g.points[2]}, {1.0, 1.0, 1.0});
        CHECK(re_multipliers(cfg).residual <= 1e-8);
    }
}

TEST_CASE("fixed equilibria: the isosceles family and its necessary condition")
{
    const Configuration eq = make_equilateral(2.0, {1, 1, 1});
    CHECK_FALSE(is_fixed_equilibrium(eq, 1e-10));

    for (double a : {-1.3, -2.0, -3.5}) {
        const double g2 = isosceles_fixed_gamma2(1.0, a);
        const Configuration cfg = make_isosceles(a, 1.0, g2);
        CHECK(is_fixed_equilibrium(cfg, 1e-10));
        const double s = cfg.gamma(0) * cfg.gamma(1) + cfg.gamma(0) * cfg.gamma(2) +
                         cfg.gamma(1) * cfg.gamma(2);
        CHECK(s < 0.0);
        CHECK(classify_momentum(momentum(cfg)).type == MomentumType::Elliptic);
    }

    CHECK(isosceles_fixed_gamma2(1.0, -1.0) == doctest::Approx(-0.5));
    CHECK(isosceles_fixed_gamma2(1.0, -2.0) == doctest::Approx(-2.0 / 3.0));
    CHECK_THROWS_AS(isosceles_fixed_gamma2(1.0, 0.5), Error);
}

TEST_CASE("certified geodesic REs have zero or elliptic momentum")
{
    for (int trial = 0; trial < 30; ++trial) {
        const double x1 = uniform(0.3, 2.0), x3 = uniform(0.3, 2.0);
        const double g1 = random_gamma(), g2 = random_gamma();
        const GeodesicGeometry g = geodesic_config(x1, x3);
        if (std::abs(std::sqrt(g.L12) * (g.L23 - g.L13)) < 1e-6) continue;
        const double g3 = solve_geodesic_gamma(x1, x3, g1, g2);
        if (std::abs(g3) < 1e-6) continue;
        const Configuration cfg({g.points[0], g.points[1], g.points[2]}, {g1, g2, g3});
        if (re_multipliers(cfg).residual > 1e-8) continue;
        const MomentumType t = classify_momentum(momentum(cfg)).type;
        CHECK((t == MomentumType::Zero || t == MomentumType::Elliptic));
    }
}

TEST_CASE("relative equilibria rotate rigidly under the flow")
{
    const Configuration eq = make_equilateral(2.5, {1.0, 0.6, 1.4});
    const auto [ok, rep] = is_relative_equilibrium(eq);
    REQUIRE(ok);

    // the field equals the generator action at twice the generator rate
    const auto vel = velocity(eq);
    for (int r = 0; r < 3; ++r) {
        CHECK((vel[r] - 2.0 * hcross(rep.xi.v, eq.point(r).vec())).norm() < 1e-9);
    }

    const Vec3 mu = momentum(eq).v;
    const auto samples = integrate(eq, 3.0, IntegratorConfig{}, 0.5);
    const double d01 = hdistance(eq.point(0), eq.point(1));
    for (const auto& s : samples) {
        for (int i = 0; i < 3; ++i) {
            CHECK(std::abs(minkowski_dot(s.config.point(i).vec(), mu) -
                           minkowski_dot(eq.point(i).vec(), mu)) < 1e-7);
        }
        CHECK(hdistance(s.config.point(0), s.config.point(1)) ==
              doctest::Approx(d01).epsilon(1e-7));
    }
}
