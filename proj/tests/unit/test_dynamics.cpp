#include <gtest/gtest.h>

#include <cmath>

#include "feigen/feigen.hpp"

using namespace feigen;

TEST(Classify, LogisticPeriodTwo) {
    const Attractor a = classify_attractor(catalog("logistic"), {3.2, 0.0});
    ASSERT_EQ(a.kind, Attractor::Kind::periodic);
    ASSERT_EQ(a.period, 2);
    // (a + 1 -+ sqrt((a - 3)(a + 1))) / 2a
    const double r = std::sqrt(0.2 * 4.2);
    EXPECT_NEAR(a.orbit[0], (4.2 - r) / 6.4, 1e-12);
    EXPECT_NEAR(a.orbit[1], (4.2 + r) / 6.4, 1e-12);
    EXPECT_NEAR(a.multiplier, 4.0 + 2.0 * 3.2 - 3.2 * 3.2, 1e-9);
}

TEST(Classify, FixedPointAndChaos) {
    const MapFamily f = catalog("logistic");
    const Attractor p = classify_attractor(f, {2.5, 0.0});
    ASSERT_EQ(p.period, 1);
    EXPECT_NEAR(p.orbit[0], 0.6, 1e-12);
    // The critical orbit at a = 4 lands on the repelling fixed point 0.
    const Attractor c = classify_attractor(f, {4.0, 0.0}, 0.3);
    EXPECT_EQ(c.kind, Attractor::Kind::chaotic);
    EXPECT_NEAR(c.lyapunov, std::log(2.0), 0.02);
    const Attractor w = classify_attractor(f, {3.835, 0.0});
    EXPECT_EQ(w.period, 3);
}

TEST(Classify, Escape) {
    const MapFamily f = parse_family("a*x*(1-x)", {0, 1}, Orientation::increasing);
    EXPECT_EQ(classify_attractor(f, {5.0, 0.0}).kind, Attractor::Kind::escaped);
    EXPECT_EQ(classify_attractor(catalog("dec_selfexp"), {0.2, 0.0}).kind, Attractor::Kind::escaped);
}

TEST(Classify, SeedOutsideDomainIsRejected) {
    EXPECT_THROW(classify_attractor(catalog("logistic"), {3.2, 0.0}, 2.0), DomainFault);
}

TEST(CriticalPoints, DegreesAndKinds) {
    const auto c = find_critical_points(catalog("logistic"), {4.0, 0.0}, {0.0, 1.0});
    ASSERT_EQ(c.size(), 1u);
    EXPECT_NEAR(c[0].x, 0.5, 1e-12);
    EXPECT_EQ(c[0].kind, CriticalPoint::Kind::maximum);
    EXPECT_EQ(c[0].degree, 2);

    const auto q = principal_critical_point(feigenmap(4, 4), {1.5, 0.0});
    ASSERT_TRUE(q);
    EXPECT_EQ(q->degree, 4);

    const auto m = find_critical_points(catalog("octic_two_max"), {1.0, 0.0}, {0.0, 1.0});
    int maxima = 0;
    for (const auto& p : m) maxima += p.kind == CriticalPoint::Kind::maximum;
    EXPECT_EQ(maxima, 2);

    const auto e = principal_critical_point(catalog("xpow_a_over_x"), {8.0, 0.0});
    ASSERT_TRUE(e);
    EXPECT_NEAR(e->x, std::exp(1.0), 1e-9);
}

TEST(GeometricMean, EqualsParameterForExponentFamily) {
    const MapFamily f = catalog("xpow_a_over_x");
    const MapFamily g = catalog("xpow_ax");
    for (double a : {5.0, 10.0, 13.0, 14.4}) {
        const Attractor at = classify_attractor(f, {a, 0.0});
        ASSERT_TRUE(at.is_periodic()) << a;
        EXPECT_NEAR(geometric_mean(at.orbit), a, 1e-9 * a);
        const Attractor ar = classify_attractor(g, {a, 0.0});
        ASSERT_TRUE(ar.is_periodic()) << a;
        EXPECT_NEAR(geometric_mean(ar.orbit), 1.0 / a, 1e-9 / a);
    }
    EXPECT_EQ(classify_attractor(f, {14.4, 0.0}).period, 8);
}

TEST(Scan, GammaRegions) {
    const auto rep = scan_local_attractors(catalog("gamma_sine"), {1.05, 0.0}, {0.0, 7.0}, 0.05);
    ASSERT_EQ(rep.regions.size(), 7u);
    const int periods[7] = {4, 10, 0, 0, 6, 0, 4};
    for (int i = 0; i < 7; ++i) {
        ASSERT_EQ(rep.regions[i].attractors.size(), 1u) << i;
        const Attractor& a = rep.regions[i].attractors[0];
        if (periods[i] == 0) EXPECT_EQ(a.kind, Attractor::Kind::chaotic) << i;
        else EXPECT_EQ(a.period, periods[i]) << i;
    }
}

TEST(Scan, GammaWindows) {
    const MapFamily g = catalog("gamma_sine");
    EXPECT_EQ(classify_attractor(g, {0.6029, 0.0}, 0.5).period, 1);
    EXPECT_EQ(classify_attractor(g, {0.6069, 0.0}, 0.5).period, 2);
    EXPECT_EQ(classify_attractor(g, {0.7881, 0.0}, 0.5).period, 2);
    EXPECT_EQ(classify_attractor(g, {0.7921, 0.0}, 0.5).period, 4);
    EXPECT_EQ(classify_attractor(g, {0.8700, 0.0}, 1.5).period, 4);
    EXPECT_EQ(classify_attractor(g, {0.8740, 0.0}, 1.5).period, 8);
}

TEST(Diagram, ColumnsHoldOrbitSamples) {
    const MapFamily f = catalog("logistic");
    const auto s = diagram_column(f, default_path(f), 3.2, 2000, 50);
    ASSERT_TRUE(s.ok);
    ASSERT_EQ(s.xs.size(), 50u);
    for (double x : s.xs) EXPECT_TRUE(std::fabs(x - 0.5130445095326298) < 1e-9 || std::fabs(x - 0.7994554904673701) < 1e-9);
}
