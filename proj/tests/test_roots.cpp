#include <algorithm>
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "hardy/roots.hpp"

using namespace hardy;

namespace {

/// Plain bisection on tan(alpha L) + alpha q over the open bracket, run on
/// the tangent form away from its pole as an independent check.
double bisect_tan(double L, double q)
{
    double lo = std::numbers::pi / (2 * L) * (1 + 1e-12);
    double hi = std::numbers::pi / L * (1 - 1e-15);
    for (int i = 0; i < 200; ++i) {
        const double m = 0.5 * (lo + hi);
        // tan is -inf just right of the pole and ~0 at pi, so g goes - to +.
        if (std::tan(m * L) + m * q < 0)
            lo = m;
        else
            hi = m;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST(SolveAlpha, PiAtPTwo)
{
    const AlphaRoot r = solve_alpha_p2(std::numbers::pi);
    EXPECT_NEAR(r.alpha, 0.6976, 5e-4);
    EXPECT_NEAR(r.alpha, bisect_tan(std::numbers::pi, 2.0), 1e-12);
    EXPECT_DOUBLE_EQ(r.bracket_lo, 0.5);
    EXPECT_DOUBLE_EQ(r.bracket_hi, 1.0);
    EXPECT_LE(r.residual, 1e-13);
}

TEST(SolveAlpha, BracketMembership)
{
    const double L = std::log(11.0);
    const AlphaRoot r = solve_alpha_extremal(L, 2.0);
    EXPECT_GT(r.alpha, std::numbers::pi / (2 * L));
    EXPECT_LT(r.alpha, std::numbers::pi / L);
    for (double L2 : {1e-3, 0.1, 1.0, 10.0, 200.0, 1e4}) {
        for (double q : {1.01, 1.25, 1.5, 2.0, 5.0, 100.0}) {
            const AlphaRoot s = solve_alpha_extremal(L2, q);
            EXPECT_GT(s.alpha * L2, std::numbers::pi / 2) << L2 << ' ' << q;
            EXPECT_LT(s.alpha * L2, std::numbers::pi) << L2 << ' ' << q;
            const double scale = std::max(1.0, s.alpha * q);
            EXPECT_LE(s.residual, 1e-13 * scale) << L2 << ' ' << q;
            EXPECT_LE(std::fabs(frequency_residual(s.alpha, L2, q)), 1e-13 * scale);
            if (scale == 1.0)
                EXPECT_LE(s.residual, 1e-13);
        }
    }
}

TEST(SolveAlpha, AgreesWithTangentBisection)
{
    for (double L : {0.3, 2.0, 7.5, 40.0})
        for (double q : {1.2, 2.0, 3.0})
            EXPECT_NEAR(solve_alpha_extremal(L, q).alpha / bisect_tan(L, q), 1.0, 1e-11) << L << ' ' << q;
}

TEST(SolveAlpha, TenAndLargeL)
{
    const AlphaRoot r = solve_alpha_p2(10.0);
    EXPECT_GT(r.alpha, std::numbers::pi / 20);
    EXPECT_LT(r.alpha, std::numbers::pi / 10);
    double prev = 0.0;
    for (double L : {10.0, 100.0, 1000.0}) {
        const double t = solve_alpha_p2(L).alpha * L;
        EXPECT_GT(t, prev);
        EXPECT_LT(t, std::numbers::pi);
        prev = t;
    }
    EXPECT_GT(prev, 0.99 * std::numbers::pi);
}

TEST(SolveAlpha, Errors)
{
    EXPECT_THROW(solve_alpha_extremal(0.0, 2.0), DomainError);
    EXPECT_THROW(solve_alpha_extremal(-1.0, 2.0), DomainError);
    EXPECT_THROW(solve_alpha_extremal(1.0, 1.0), DomainError);
    try {
        solve_alpha_p2(0.0);
        FAIL();
    } catch (const DomainError& e) {
        EXPECT_STREQ(e.what(), "L must be positive");
    }
}

TEST(AlphaUpperWeight, Values)
{
    EXPECT_NEAR(alpha_upper_weight(std::numbers::pi, 2.0), std::atan(0.5) / std::numbers::pi, 1e-16);
    EXPECT_NEAR(alpha_upper_weight(std::numbers::pi, 2.0), 0.147584, 1e-6);
    EXPECT_NEAR(alpha_upper_weight(std::atan(1.0 / 3.0), 3.0), 1.0, 1e-15);
    for (double L : {0.1, 1.0, 50.0})
        for (double p : {2.0, 3.0, 10.0}) {
            const double a = alpha_upper_weight(L, p);
            EXPECT_LT(a * L, std::numbers::pi / 4);
            EXPECT_NEAR(std::tan(a * L), 1.0 / p, 1e-15);
        }
    EXPECT_THROW(alpha_upper_weight(1.0, 1.5), DomainError);
    EXPECT_THROW(alpha_upper_weight(0.0, 2.0), DomainError);
}
