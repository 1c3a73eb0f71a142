#include <gtest/gtest.h>

#include <cmath>

#include "feigen/feigen.hpp"

using namespace feigen;

TEST(Family, DetectsParameters) {
    const MapFamily f = parse_family("a*x + b", {0, 1}, Orientation::increasing);
    EXPECT_TRUE(f.uses_a());
    EXPECT_TRUE(f.uses_b());
    EXPECT_EQ(f.param_count(), 2);
    EXPECT_THROW(parse_family("x^2", {0, 1}, Orientation::increasing), ConfigError);
    EXPECT_THROW(MapFamily("bad", parse_expression("x"), {1, 0}, Orientation::increasing), ConfigError);
}

TEST(Family, ThrowingWrapper) {
    const MapFamily f = parse_family("ln(x) + a", {0, 1}, Orientation::increasing);
    EXPECT_THROW((void)f(-1.0, {}), DomainFault);
    EXPECT_DOUBLE_EQ(f(1.0, {2.0, 0.0}), 2.0);
}

TEST(Catalog, AllEntriesBuild) {
    for (const auto& name : catalog_names()) {
        const MapFamily f = catalog(name);
        EXPECT_FALSE(f.name().empty());
        EXPECT_TRUE(f.param_range().lo < f.param_range().hi) << name;
    }
    EXPECT_THROW(catalog("nonexistent"), ConfigError);
}

TEST(Catalog, FeigenmapDegrees) {
    const MapFamily f = feigenmap(4, 4);
    EXPECT_DOUBLE_EQ(f(0.5, {2.0, 0.0}), 1.0 - 2.0 * 0.0625);
    const MapFamily h = feigenmap(3, 8);
    EXPECT_DOUBLE_EQ(h(-0.5, {1.0, 0.0}), 1.0 - 0.125);
    EXPECT_DOUBLE_EQ(h(0.5, {1.0, 0.0}), 1.0 - std::pow(0.5, 8));
    EXPECT_THROW(feigenmap(1.0, 2.0), ConfigError);
}

TEST(Transform, Forms) {
    const MapFamily phi = catalog("phi");
    const double x = 0.3, a = 1.7;
    const double F = phi(x, {});
    EXPECT_DOUBLE_EQ(transform(phi, TransformKind::outer_scale)(x, {a, 0}), a * F);
    EXPECT_DOUBLE_EQ(transform(phi, TransformKind::inner_scale)(x, {a, 0}), phi(a * x, {}));
    EXPECT_DOUBLE_EQ(transform(phi, TransformKind::outer_shift)(x, {a, 0}), F + a);
    EXPECT_DOUBLE_EQ(transform(phi, TransformKind::inner_shift)(x, {a, 0}), phi(x + a, {}));

    const MapFamily s("s", parse_expression("sin(pi*x)"), {0, 1}, Orientation::increasing);
    TransformExtras ex;
    ex.c = 2.0;
    EXPECT_NEAR(transform(s, TransformKind::exp_outer, ex)(x, {a, 0}), std::pow(2.0, -a * s(x, {})), 1e-15);
    EXPECT_NEAR(transform(s, TransformKind::exp_inner, ex)(x, {a, 0}), std::pow(2.0, -s(std::pow(x, a), {})), 1e-15);
    EXPECT_NEAR(transform(s, TransformKind::outer_pow)(x, {a, 0}), std::pow(s(x, {}), a), 1e-15);
    EXPECT_NEAR(transform(s, TransformKind::inner_pow)(x, {a, 0}), s(std::pow(x, a), {}), 1e-15);
    EXPECT_THROW(transform(s, TransformKind::exp_outer), ConfigError);
}

TEST(Transform, NeutralParameterIsIdentity) {
    const MapFamily phi = catalog("phi");
    for (double x : {-0.9, -0.2, 0.0, 0.4, 0.8}) {
        EXPECT_EQ(transform(phi, TransformKind::outer_scale)(x, {1.0, 0}), phi(x, {}));
        EXPECT_EQ(transform(phi, TransformKind::inner_scale)(x, {1.0, 0}), phi(x, {}));
        EXPECT_EQ(transform(phi, TransformKind::outer_shift)(x, {0.0, 0}), phi(x, {}));
        EXPECT_EQ(transform(phi, TransformKind::inner_shift)(x, {0.0, 0}), phi(x, {}));
    }
    const MapFamily s("s", parse_expression("exp(-sin(pi*x))"), {0, 1}, Orientation::increasing);
    for (double x : {0.1, 0.5, 0.9}) {
        EXPECT_EQ(transform(s, TransformKind::outer_pow)(x, {1.0, 0}), s(x, {}));
        EXPECT_EQ(transform(s, TransformKind::inner_pow)(x, {1.0, 0}), s(x, {}));
    }
}

TEST(Transform, InnerScaleMovesDomain) {
    const MapFamily f = transform(catalog("phi"), TransformKind::inner_scale);
    const Interval d = f.domain_at({2.0, 0.0});
    EXPECT_DOUBLE_EQ(d.lo, -0.5);
    EXPECT_DOUBLE_EQ(d.hi, 0.5);
}

TEST(Transform, ReciprocalConjugate) {
    const MapFamily f = catalog("xpow_a_over_x");
    const MapFamily g = transform(f, TransformKind::reciprocal_conjugate);
    EXPECT_EQ(g.domain().lo, 0.0);
    EXPECT_EQ(g.domain().hi, 1.0);
    for (double x : {0.2, 0.5, 0.8})
        EXPECT_NEAR(g(x, {3.0, 0}), std::pow(x, 3.0 * x), 1e-14);
}

TEST(Transform, ThetaNeedsExpression) {
    EXPECT_THROW(transform(catalog("logistic"), TransformKind::theta_reparam), ConfigError);
    EXPECT_NO_THROW(catalog("theta_logistic"));
}
