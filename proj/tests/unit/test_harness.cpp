#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "feigen/feigen.hpp"

using namespace feigen;

namespace {

SuiteConfig parse(const std::string& text) {
    std::istringstream in(text);
    return parse_suite(in);
}

}  // namespace

TEST(Permeability, ScaledPhiIsConfirmed) {
    PermeabilityCase pc;
    pc.name = "phi";
    pc.base = catalog("phi");
    pc.first_kind = TransformKind::outer_scale;
    pc.second_kind = TransformKind::inner_scale;
    const auto rep = permeability_test(pc);
    EXPECT_EQ(rep.outcome, Outcome::confirmed);
    EXPECT_FALSE(rep.divergent_rank);
    // Flips at 1 and sqrt(5), with the symmetric 2-cycle folding at a = 2.
    ASSERT_EQ(rep.events.size(), 5u);
    EXPECT_NEAR(rep.events[0].value, 1.0, 1e-10);
    EXPECT_EQ(rep.events[1].kind, EventKind::tangent);
    EXPECT_NEAR(rep.events[1].value, 2.0, 1e-9);
    EXPECT_NEAR(rep.events[2].value, std::sqrt(5.0), 1e-10);
}

TEST(Permeability, SymmetricUnderSwap) {
    PermeabilityCase pc;
    pc.first = catalog("logistic");
    pc.second = catalog("transcritical_g");
    pc.depth = 3;
    const auto fwd = permeability_test(pc);
    std::swap(pc.first, pc.second);
    const auto rev = permeability_test(pc);
    EXPECT_EQ(fwd.outcome, rev.outcome);
    EXPECT_EQ(fwd.divergent_rank, rev.divergent_rank);
}

TEST(Permeability, DifferentFamiliesAreRefuted) {
    PermeabilityCase pc;
    pc.first = catalog("logistic");
    pc.second = catalog("xpow_a_over_x");
    pc.depth = 2;
    const auto rep = permeability_test(pc);
    EXPECT_EQ(rep.outcome, Outcome::refuted);
    ASSERT_TRUE(rep.divergent_rank);
    EXPECT_EQ(*rep.divergent_rank, 1);
    ASSERT_TRUE(rep.gap);
    EXPECT_NEAR(*rep.gap, std::exp(2.0) - 3.0, 1e-8);
}

TEST(Permeability, BothWithoutEventsIsConfirmed) {
    PermeabilityCase pc;
    pc.first = catalog("selfexp_nochaos");
    pc.second = catalog("selfexp_nochaos");
    pc.depth = 2;
    EXPECT_EQ(permeability_test(pc).outcome, Outcome::confirmed);
}

TEST(Universality, Verdicts) {
    const MapFamily s = catalog("sin_pow");
    const auto ok = universality_scan(s, default_path(s), 8);
    EXPECT_EQ(ok.outcome, Outcome::supports);
    EXPECT_EQ(ok.degree.value_or(0), 2);
    EXPECT_NEAR(ok.reference_delta.value_or(0.0), kFeigenbaumDelta, 1e-12);

    const MapFamily n = catalog("selfexp_nochaos");
    EXPECT_EQ(universality_scan(n, default_path(n), 4).outcome, Outcome::no_chaos);

    const MapFamily q = feigenmap(4, 4);
    const auto quartic = universality_scan(q, default_path(q), 7, 0.05);
    EXPECT_EQ(quartic.degree.value_or(0), 4);
    EXPECT_NEAR(quartic.reference_delta.value_or(0.0), 7.2847, 0.01);
    EXPECT_EQ(quartic.outcome, Outcome::supports);
}

TEST(Universality, RandomFamiliesAreReproducible) {
    const MapFamily a = random_polynomial_family(3);
    const MapFamily b = random_polynomial_family(3);
    EXPECT_EQ(a.text(), b.text());
    EXPECT_NE(a.text(), random_polynomial_family(4).text());
    const auto cp = find_critical_points(a, {1.0, 0.0}, {0.0, 1.0});
    ASSERT_EQ(cp.size(), 1u);
    EXPECT_EQ(cp[0].degree, 2);
    EXPECT_NEAR(a(cp[0].x, {1.0, 0.0}), 1.0, 1e-9);
}

TEST(Multimax, AppendixReadingIsLocal) {
    const MapFamily f = catalog("appendix3_two_max");
    MultimaxOptions mo;
    mo.steps = 60;
    const auto rep = multimax_report(f, default_path(f), 3, mo);
    EXPECT_EQ(rep.outcome, Outcome::local);
    ASSERT_TRUE(rep.faster_maximum);
    EXPECT_EQ(*rep.faster_maximum, 1);

    const auto at = classify_attractor(f, {3.06, 0.0}, 0.91193);
    ASSERT_EQ(at.kind, Attractor::Kind::chaotic);
    EXPECT_NEAR(at.extent.lo, 0.87, 0.015);
    EXPECT_NEAR(at.extent.hi, 0.945, 0.015);
    EXPECT_TRUE(classify_attractor(f, {3.03, 0.0}, 0.91193).is_periodic());
}

TEST(Multimax, SingleMaximumIsGlobal) {
    const MapFamily f = catalog("appendix3");
    MultimaxOptions mo;
    mo.steps = 20;
    EXPECT_EQ(multimax_report(f, default_path(f), 2, mo).outcome, Outcome::global);
}

TEST(SuiteParser, AcceptsCommentsAndKeys) {
    const auto cfg = parse(
        "# comment\n"
        "\n"
        "case one family=phi pair=outer_scale,inner_scale depth=3 tol=1e-6 expect=confirm\n"
        "case two family=logistic test=universality depth=7  # trailing\n"
        "case three family=appendix3_two_max test=multimax window=3.0:3.1 depth=2\n");
    ASSERT_EQ(cfg.cases.size(), 3u);
    EXPECT_EQ(cfg.cases[0].type, TestType::permeability);
    EXPECT_EQ(cfg.cases[0].depth, 3);
    EXPECT_DOUBLE_EQ(cfg.cases[0].tol, 1e-6);
    EXPECT_EQ(cfg.cases[1].type, TestType::universality);
    EXPECT_EQ(cfg.cases[1].line, 4);
    ASSERT_TRUE(cfg.cases[2].window);
    EXPECT_DOUBLE_EQ(cfg.cases[2].window->hi, 3.1);
}

TEST(SuiteParser, Errors) {
    EXPECT_THROW(parse("cases x family=phi\n"), ConfigError);
    EXPECT_THROW(parse("case x family=phi depth=0\n"), ConfigError);
    EXPECT_THROW(parse("case x family=phi pair=outer_scale\n"), ConfigError);
    EXPECT_THROW(parse("case x family=phi bogus=1\n"), ConfigError);
    EXPECT_THROW(parse("case x family=phi depth=abc\n"), ConfigError);
    EXPECT_THROW(parse_suite_file("/nonexistent/file.suite"), ConfigError);
}

TEST(Suite, EmptyConfigGivesEmptyReport) {
    const auto rep = run_suite(parse("# nothing\n"));
    EXPECT_TRUE(rep.cases.empty());
    EXPECT_FALSE(rep.any_unmet());
}

TEST(Suite, QuickSuiteIsDeterministic) {
    const auto cfg = parse_suite_file(std::string(FEIGEN_SOURCE_DIR) + "/tests/data/quick.suite");
    const auto one = run_suite(cfg, 1);
    const auto two = run_suite(cfg, 3);
    ASSERT_EQ(one.cases.size(), 4u);
    EXPECT_FALSE(one.any_unmet());
    EXPECT_EQ(to_json(one).dump(), to_json(two).dump());
    EXPECT_EQ(one.cases[2].outcome, Outcome::no_chaos);
    EXPECT_EQ(one.cases[3].seed.value_or(0), 7u);
}

TEST(Suite, UnmetExpectationIsFlagged) {
    const auto rep = run_suite(parse("case x family=logistic family2=xpow_a_over_x pair=identity,identity depth=2 expect=confirm\n"));
    ASSERT_EQ(rep.cases.size(), 1u);
    EXPECT_EQ(rep.cases[0].outcome, Outcome::refuted);
    EXPECT_FALSE(rep.cases[0].expectation_met);
    EXPECT_TRUE(rep.any_unexpected_refutation());
}
