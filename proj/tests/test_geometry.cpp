#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "curvedh/geometry.hpp"
#include "curvedh/units.hpp"

using namespace curvedh;
using std::numbers::pi;

TEST(Curvature, KindAndRadius)
{
    EXPECT_EQ(Curvature(0.25).kind(), SpaceKind::spherical);
    EXPECT_EQ(Curvature(0.0).kind(), SpaceKind::euclidean);
    EXPECT_EQ(Curvature(-3.0).kind(), SpaceKind::hyperbolic);
    for (double k : {1e-72, 0.01, -0.01, 7.0, -1e6}) {
        const Curvature c(k);
        EXPECT_NEAR(c.radius() * c.radius() * std::abs(k), 1.0, 4e-16);
    }
    EXPECT_TRUE(std::isinf(Curvature(0.0).radius()));
    EXPECT_THROW(Curvature{std::nan("")}, domain_error);
    EXPECT_THROW(Curvature{std::numeric_limits<double>::infinity()}, domain_error);
}

TEST(Curvature, FromRadiusKeepsSign)
{
    EXPECT_DOUBLE_EQ(Curvature::from_radius(10.0).value(), 0.01);
    EXPECT_DOUBLE_EQ(Curvature::from_radius(-10.0).value(), -0.01);
    EXPECT_THROW(Curvature::from_radius(0.0), domain_error);
}

TEST(Units, AtomicScales)
{
    const auto u = UnitScales::atomic();
    EXPECT_EQ(u.bohr_radius, 1.0);
    EXPECT_EQ(u.rydberg, 0.5);
    EXPECT_EQ(u.beta(), 2.0);
    EXPECT_DOUBLE_EQ(u.energy_from_lambda(-1.0), -0.5);
    for (double e : {-13.6, 1e-30, 4.2e7}) {
        EXPECT_NEAR(u.energy_from_lambda(u.lambda_from_energy(e)) / e, 1.0, 1e-12);
        const auto ev = UnitScales::electron_volt();
        EXPECT_NEAR(ev.energy_from_lambda(ev.lambda_from_energy(e)) / e, 1.0, 1e-12);
    }
    EXPECT_DOUBLE_EQ(UnitScales::electron_volt().energy_from_lambda(-1.0), -13.605693);
}

TEST(CurvedTrig, Examples)
{
    EXPECT_DOUBLE_EQ(curved_sin(Curvature(0), 2.0), 2.0);
    EXPECT_NEAR(curved_sin(Curvature(1), pi / 2), 1.0, 1e-15);
    EXPECT_NEAR(curved_sin(Curvature(-1), 1.0), 1.1752011936438014, 1e-14);

    EXPECT_DOUBLE_EQ(curved_cos(Curvature(0), 5.0), 1.0);
    EXPECT_NEAR(curved_cos(Curvature(1), pi), -1.0, 1e-15);
    EXPECT_NEAR(curved_cos(Curvature(-1), 1.0), 1.5430806348152437, 1e-14);

    EXPECT_NEAR(curved_tan(Curvature(1), pi / 4), 1.0, 1e-15);
    EXPECT_DOUBLE_EQ(curved_cot(Curvature(0), 3.0), 1.0 / 3.0);
    EXPECT_NEAR(curved_cot(Curvature(-0.01), 10.0), 0.13130352854993313, 1e-14);

    EXPECT_DOUBLE_EQ(volume_weight(Curvature(0), 2.0), 4.0);
    EXPECT_NEAR(volume_weight(Curvature(1), pi / 2), 1.0, 1e-15);
    EXPECT_NEAR(volume_weight(Curvature(-1), 1.0), 1.3810978455418157, 1e-14);
}

TEST(CurvedTrig, DomainAndPoles)
{
    EXPECT_THROW(curved_sin(Curvature(0), -1.0), domain_error);
    EXPECT_THROW(curved_sin(Curvature(1), 3.5), domain_error);
    EXPECT_NO_THROW(curved_sin(Curvature(1), pi));
    EXPECT_THROW(curved_cot(Curvature(0), 0.0), pole_error);
    EXPECT_THROW(curved_cot(Curvature(1), pi), pole_error);
    EXPECT_THROW(curved_tan(Curvature(1), pi / 2), pole_error);
    // Pole errors are domain errors.
    EXPECT_THROW(curved_cot(Curvature(-1), 0.0), domain_error);
}

TEST(CurvedTrig, PythagoreanIdentity)
{
    std::mt19937_64 rng(20261018);
    std::uniform_real_distribution<double> logk(-12.0, 1.0), unit(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const double mag = std::pow(10.0, logk(rng));
        const double kv = i % 2 ? mag : -mag;
        const Curvature k(kv);
        // For the sphere stay on [0, antipode]; for hyperbolic space keep sqrt|k| r <= 3.
        const double r = kv > 0 ? unit(rng) * k.domain_end() : unit(rng) * 3.0 / k.root();
        const double s = curved_sin(k, r), c = curved_cos(k, r);
        worst = std::max(worst, std::abs(c * c + kv * s * s - 1.0));
    }
    EXPECT_LE(worst, 1e-13);
}

TEST(CurvedTrig, SeriesBranchIsContinuousAcrossSwitch)
{
    // |k| r^2 just below and just above the switch agree with the closed form to ~1e-15.
    for (double sign : {1.0, -1.0}) {
        const double r = 1.0;
        for (double x : {0.99e-8, 1.01e-8, 1e-10, 1e-6}) {
            const Curvature k(sign * x);
            const double sq = std::sqrt(x);
            const double s_exact = sign > 0 ? std::sin(sq * r) / sq : std::sinh(sq * r) / sq;
            const double c_exact = sign > 0 ? std::cos(sq * r) : std::cosh(sq * r);
            EXPECT_NEAR(curved_sin(k, r), s_exact, 2e-15);
            EXPECT_NEAR(curved_cos(k, r), c_exact, 2e-15);
        }
    }
}

TEST(CurvedTrig, DerivativeOfSinIsCos)
{
    for (double kv : {0.3, -0.3, 1e-9, 0.0}) {
        const Curvature k(kv);
        for (double r : {0.5, 1.0, 2.5}) {
            const double h = 1e-5;
            const double fd = (curved_sin(k, r + h) - curved_sin(k, r - h)) / (2 * h);
            EXPECT_NEAR(fd, curved_cos(k, r), 1e-9);
        }
    }
}

TEST(CurvedTrig, TanCotReciprocal)
{
    for (double kv : {0.7, -0.7, 0.0, 1e-10}) {
        const Curvature k(kv);
        for (double r : {0.1, 0.9, 1.7})
            EXPECT_NEAR(curved_tan(k, r) * curved_cot(k, r), 1.0, 1e-14);
    }
}

TEST(CurvedTrig, LogSinAvoidsOverflow)
{
    const Curvature k(-1.0);
    EXPECT_NEAR(log_curved_sin(k, 1.0), std::log(std::sinh(1.0)), 1e-14);
    const double big = log_curved_sin(k, 2000.0);
    EXPECT_TRUE(std::isfinite(big));
    EXPECT_NEAR(big, 2000.0 - std::log(2.0), 1e-9);
}
