#pragma once

// Named map families.

#include <string>
#include <string_view>
#include <vector>

#include "transform.hpp"

namespace feigen {

struct CatalogEntry {
    const char* name;
    const char* expr;
    Interval domain;
    Orientation orientation;
    Interval param_range;   // where cascades start to be searched
    Interval search_region; // where critical points are looked for
    const char* note;
};

// Accumulation point of the logistic cascade; used by the theta family.
inline constexpr double kLogisticAccumulation = 3.5699456718695445;

namespace detail {

inline constexpr Orientation inc = Orientation::increasing;
inline constexpr Orientation dec = Orientation::decreasing;

inline const std::vector<CatalogEntry>& catalog_table() {
    static const std::vector<CatalogEntry> table = {
        {"logistic", "a*x*(1-x)", {0, 1}, inc, {1.5, 4}, {0, 1}, "logistic map"},
        {"xpow_a_over_x", "x^(a/x)", {1, kInf}, inc, {2, 16}, {1, 40}, "exponent parameter on the semi-line"},
        {"xpow_ax", "x^(a*x)", {0, 1}, inc, {2, 16}, {0, 1}, "reciprocal conjugate of x^(a/x)"},
        {"xi_sin", "(sin(pi/x) + 1)^a", {1, kInf}, inc, {0.1, 7.5}, {1, 40}, "[sin(pi/x)+1]^a"},
        {"psi_ratio", "((x^2 + x - 1)/x^2)^a", {1, kInf}, inc, {1, 40}, {1, 40}, "[(x^2+x-1)/x^2]^a"},
        {"inv_sin_pow", "1/(sin(pi*x) + 1)^a", {0, 1}, inc, {0.2, 7.5}, {0, 1}, "1/(sin(pi x)+1)^a"},
        {"Psi", "exp(-sin(pi*x))^a", {0, 1}, inc, {0.2, 6}, {0, 1}, "outer exponent of exp(-sin(pi x))"},
        {"Xi", "exp(-sin(pi*x^a))", {0, 1}, inc, {0.2, 6}, {0, 1}, "inner exponent of exp(-sin(pi x))"},
        {"singer_quartic", "a*(7.86*x - 23.31*x^2 + 28.75*x^3 - 13.3*x^4)", {0, 1}, inc, {0.3, 1.074}, {0, 1},
         "quartic with a single maximum"},
        {"example_I", "a*(1 - x^x*(1-x)^(1-x))", {0, 1}, inc, {1, 2}, {0, 1}, "no finite derivative at 0 and 1"},
        {"example_II", "a*(-1.55*x^4 + 4.34*x^3 - 4.56*x^2 + 1.77*x)", {0, 1}, inc, {1, 4}, {0, 1},
         "Schwarzian positive near 1"},
        {"octic_two_max", "a*(-x^8 + 4*x^3 - 5*x^2 + 2*x)", {0, 1}, inc, {2, 3.56}, {0, 1},
         "two unequal maxima"},
        {"triple_max_1", "a*(9*x*(1-x)*(1 - 3*x*(1-x)) + x^4*(1 - x^4) + 0.25*(-(2*x-1)^2 + 1)^44)", {0, 1}, inc,
         {0.3, 1.2}, {0, 1}, "three maxima"},
        {"triple_max_2", "a*(2.75*(-x^8 + 4*x^3 - 5*x^2 + 2*x) + 0.05*(-(2*x-1)^2 + 1)^42)", {0, 1}, inc,
         {0.5, 1.3}, {0, 1}, "three maxima"},
        {"triple_max_3", "a*(2.75*(-x^8 + 4*x^3 - 5*x^2 + 2*x) + 0.03*(-(2*x-1)^2 + 1)^42)", {0, 1}, inc,
         {0.5, 1.3}, {0, 1}, "three maxima"},
        {"picture10", "a*(0.15*(1 - (2*x-1)^4) + 0.5*(1 - (2*(1-x)^8 - 1)^4) + 2.4*x^2*(1 - x^2))", {0, 1}, inc,
         {0.5, 1.3}, {0, 1}, "two maxima, Schwarzian positive left of the first"},
        {"picture10_literal", "a*(0.15*(1 - (-2*x-1)^4) + 0.5*(1 - (2*(1-x)^8 - 1)^4) + 2.4*x^2*(1 - x^2))",
         {0, 1}, inc, {0.5, 1.3}, {0, 1}, "printed form; not an endomorphism of [0,1]"},
        {"dec_selfexp", "(x*(1-x))^(a - x*(1-x))", {0, 1}, dec, {0.2, 0.6}, {0, 1},
         "cascade under decreasing parameter"},
        {"selfexp_nochaos", "(x*(1-x))^a", {0, 1}, dec, {0.05, 3}, {0, 1}, "does not bifurcate"},
        {"sin_pow", "a^sin(pi*x)*sin(pi*x)", {0, 1}, inc, {0.05, 1}, {0, 1}, "a^g(x) h(x) form"},
        {"phi_outer", "a*(x^3 - x)", {-1, 1}, inc, {0.2, 2.6}, {-1, 1}, "a phi(x), phi = x^3 - x"},
        {"gamma_sine", "a*(sin(2*pi*x)/2 + x)", {-kInf, kInf}, inc, {0.3, 1.2}, {0, 1}, "map of the real line"},
        {"gamma_inner", "sin(2*pi*a*x)/2 + a*x", {-kInf, kInf}, inc, {0.3, 1.2}, {0, 1}, "inner form of gamma"},
        {"pic12_f", "a*1.5625*(0.25 - (x - 0.5)^2)", {0, 1}, inc, {1, 2.56}, {0, 1}, "quadratic part"},
        {"pic12_g", "a*(0.25 - (2.5*(0.25 - (x - 0.5)^2) - 0.5)^2)", {0, 1}, inc, {1, 4}, {0, 1}, "quartic part"},
        {"pic12_h", "a*1.5625*(0.25 - (x - 0.5)^2) + b*(0.25 - (2.5*(0.25 - (x - 0.5)^2) - 0.5)^2)", {0, 1}, inc,
         {1, 2.5}, {0, 1}, "two-parameter family a f + b g"},
        {"appendix3", "a*(1.2*x^7.9*(1-x)^7.9 + (1-x)^2*(1 - (1-x)^2))", {0, 1}, inc, {2, 3.9}, {0, 1},
         "printed two-maxima formula"},
        {"appendix3_two_max", "a*(1.2*x^7.9*(1 - x^7.9) + (1-x)^2*(1 - (1-x)^2))", {0, 1}, inc, {2, 3.25}, {0, 1},
         "two-maxima reading"},
        {"flip_f", "a - x - x^2", {-kInf, kInf}, inc, {-0.5, 1.5}, {-3, 3}, "flip normal form"},
        {"flip_g", "-(x + a) - (x + a)^2", {-kInf, kInf}, inc, {-0.5, 1.5}, {-3, 3}, "flip twin"},
        {"fold_f", "a - x^2", {-kInf, kInf}, inc, {-0.5, 1.5}, {-3, 3}, "fold normal form"},
        {"fold_g", "-(a + x)^2", {-kInf, kInf}, inc, {-0.5, 1.5}, {-3, 3}, "fold twin"},
        {"pitchfork_f", "a*x - x^3", {-kInf, kInf}, inc, {0.5, 2.6}, {0, 3}, "pitchfork normal form"},
        {"pitchfork_g", "a*(x - x^3)", {-kInf, kInf}, inc, {0.5, 2.6}, {0, 3}, "pitchfork twin"},
        {"pitchfork_h", "a*x - (a*x)^3", {-kInf, kInf}, inc, {0.5, 2.6}, {0, 3}, "pitchfork twin"},
        {"transcritical_f", "a*x - x^2", {-kInf, kInf}, inc, {0.5, 3.6}, {-5, 5}, "transcritical normal form"},
        {"transcritical_g", "a*(x - x^2)", {-kInf, kInf}, inc, {0.5, 3.6}, {-5, 5}, "transcritical twin"},
        {"transcritical_h", "a*x - (a*x)^2", {-kInf, kInf}, inc, {0.5, 3.6}, {-5, 5}, "transcritical twin"},
    };
    return table;
}

}  // namespace detail

// 1 - a |x|^nl for x < 0 and 1 - a |x|^nr for x >= 0, on [-1, 1].
inline MapFamily feigenmap(double n_left = 2.0, double n_right = 2.0) {
    if (!(n_left > 1.0) || !(n_right > 1.0)) throw ConfigError("feigenmap degrees must exceed 1");
    using namespace ex;
    NodePtr e;
    if (n_left == n_right) {
        e = sub(num(1.0), mul(a(), pow(unary(Op::Abs, x()), num(n_left))));
    } else {
        // (|x| - x)/2 is |x| on the left and 0 on the right; (|x| + x)/2 the reverse.
        NodePtr left = div(sub(unary(Op::Abs, x()), x()), num(2.0));
        NodePtr right = div(add(unary(Op::Abs, x()), x()), num(2.0));
        e = sub(num(1.0), mul(a(), add(pow(left, num(n_left)), pow(right, num(n_right)))));
    }
    auto fmt = [](double v) { return to_string(ex::num(v)); };
    MapFamily fam("feigenmap(" + fmt(n_left) + "," + fmt(n_right) + ")", e, {-1.0, 1.0}, Orientation::increasing);
    fam.set_param_range({0.05, 2.0}).set_search_region({-1.0, 1.0});
    return fam;
}

inline std::vector<std::string> catalog_names() {
    std::vector<std::string> out;
    for (const auto& e : detail::catalog_table()) out.emplace_back(e.name);
    for (const char* extra : {"phi", "phi_inner", "feigenmap", "theta_logistic"}) out.emplace_back(extra);
    return out;
}

inline MapFamily catalog(std::string_view name) {
    for (const auto& e : detail::catalog_table()) {
        if (name != e.name) continue;
        MapFamily fam(e.name, parse_expression(e.expr), e.domain, e.orientation);
        fam.set_param_range(e.param_range).set_search_region(e.search_region);
        return fam;
    }
    if (name == "phi") {
        MapFamily fam("phi", parse_expression("x^3 - x"), {-1, 1}, Orientation::increasing);
        fam.set_param_range({0.2, 2.6}).set_search_region({-1, 1});
        return fam;
    }
    if (name == "phi_inner") return transform(catalog("phi"), TransformKind::inner_scale).set_name("phi_inner");
    if (name == "feigenmap") return feigenmap(2.0, 2.0);
    if (name == "theta_logistic") {
        // theta(a) = lambda + (a - lambda)^3 has theta'(lambda) = 0.
        using namespace ex;
        TransformExtras ext;
        ext.theta = add(num(kLogisticAccumulation), pow(sub(a(), num(kLogisticAccumulation)), num(3.0)));
        MapFamily fam = transform(catalog("logistic"), TransformKind::theta_reparam, ext);
        fam.set_name("theta_logistic").set_param_range({2.3, 4.0});
        return fam;
    }
    throw ConfigError("unknown catalog family '" + std::string(name) + "'");
}

}  // namespace feigen
