#pragma once

// Combinators that move the parameter in or out of a base map.

#include <optional>
#include <string>

#include "family.hpp"

namespace feigen {

enum class TransformKind {
    outer_scale,      // a F(x)
    inner_scale,      // F(a x)
    outer_shift,      // F(x) + a
    inner_shift,      // F(x + a)
    outer_pow,        // F(x)^a
    inner_pow,        // F(x^a)
    exp_outer,        // c^(-a F(x))
    exp_inner,        // c^(-F(x^a))
    one_minus_outer,  // (1 - F(x))^a
    one_minus_inner,  // 1 - F(x^a)
    reciprocal_conjugate,  // 1 / F(1/x)
    log_ratio_1,      // -ln(a f) / ln(g)^2
    log_ratio_2,      // -ln(f) / ln(a g)^2
    log_ratio_3,
    log_ratio_4,
    theta_reparam,    // a <- theta(a)
};

struct TransformInfo {
    TransformKind kind;
    const char* name;
};

inline constexpr TransformInfo kTransforms[] = {
    {TransformKind::outer_scale, "outer_scale"},
    {TransformKind::inner_scale, "inner_scale"},
    {TransformKind::outer_shift, "outer_shift"},
    {TransformKind::inner_shift, "inner_shift"},
    {TransformKind::outer_pow, "outer_pow"},
    {TransformKind::inner_pow, "inner_pow"},
    {TransformKind::exp_outer, "exp_outer"},
    {TransformKind::exp_inner, "exp_inner"},
    {TransformKind::one_minus_outer, "one_minus_outer"},
    {TransformKind::one_minus_inner, "one_minus_inner"},
    {TransformKind::reciprocal_conjugate, "reciprocal_conjugate"},
    {TransformKind::log_ratio_1, "log_ratio_1"},
    {TransformKind::log_ratio_2, "log_ratio_2"},
    {TransformKind::log_ratio_3, "log_ratio_3"},
    {TransformKind::log_ratio_4, "log_ratio_4"},
    {TransformKind::theta_reparam, "theta_reparam"},
};

inline const char* transform_name(TransformKind k) {
    for (const auto& t : kTransforms)
        if (t.kind == k) return t.name;
    return "?";
}

inline std::optional<TransformKind> transform_from_name(std::string_view s) {
    for (const auto& t : kTransforms)
        if (s == t.name) return t.kind;
    return std::nullopt;
}

struct TransformExtras {
    double c = 0.0;                  // base for exp_outer / exp_inner
    NodePtr theta;                   // theta(a) for theta_reparam
    std::optional<MapFamily> g;      // second map for the log-ratio forms
};

namespace detail {

inline MapFamily rebuild(const MapFamily& base, std::string name, NodePtr expr) {
    MapFamily out(std::move(name), std::move(expr), base.domain(), base.orientation());
    out.set_steps(base.steps());
    out.set_param_range(base.param_range());
    out.set_search_region(base.search_region());
    return out;
}

inline MapFamily with_inner(const MapFamily& base, const std::string& name, const NodePtr& inner,
                            DomainStep::Kind step) {
    MapFamily out = rebuild(base, name, substitute(base.expr(), Op::X, inner));
    out.add_step(DomainStep::make(step, ex::a()));
    return out;
}

}  // namespace detail

inline MapFamily transform(const MapFamily& base, TransformKind kind, const TransformExtras& extras = {}) {
    using namespace ex;
    const std::string name = std::string(transform_name(kind)) + "(" + base.name() + ")";
    const NodePtr& F = base.expr();

    const bool introduces_a = kind != TransformKind::theta_reparam && kind != TransformKind::reciprocal_conjugate;
    if (introduces_a && base.uses_a())
        throw ConfigError(std::string(transform_name(kind)) + " needs a base map without parameter a");

    switch (kind) {
        case TransformKind::outer_scale: return detail::rebuild(base, name, mul(a(), F));
        case TransformKind::inner_scale:
            return detail::with_inner(base, name, mul(a(), x()), DomainStep::Kind::scale);
        case TransformKind::outer_shift: return detail::rebuild(base, name, add(F, a()));
        case TransformKind::inner_shift:
            return detail::with_inner(base, name, add(x(), a()), DomainStep::Kind::shift);
        case TransformKind::outer_pow: return detail::rebuild(base, name, pow(F, a()));
        case TransformKind::inner_pow:
            return detail::with_inner(base, name, pow(x(), a()), DomainStep::Kind::power);
        case TransformKind::exp_outer:
        case TransformKind::exp_inner: {
            if (!(extras.c > 1.0)) throw ConfigError("exp transforms need a constant c > 1");
            if (kind == TransformKind::exp_outer)
                return detail::rebuild(base, name, pow(num(extras.c), neg(mul(a(), F))));
            MapFamily out = detail::rebuild(base, name, pow(num(extras.c), neg(substitute(F, Op::X, pow(x(), a())))));
            out.add_step(DomainStep::make(DomainStep::Kind::power, ex::a()));
            return out;
        }
        case TransformKind::one_minus_outer: return detail::rebuild(base, name, pow(sub(num(1.0), F), a()));
        case TransformKind::one_minus_inner: {
            MapFamily out = detail::rebuild(base, name, sub(num(1.0), substitute(F, Op::X, pow(x(), a()))));
            out.add_step(DomainStep::make(DomainStep::Kind::power, ex::a()));
            return out;
        }
        case TransformKind::reciprocal_conjugate: {
            const Interval d = base.domain();
            const bool semi_line = d.lo == 1.0 && d.hi == kInf;
            const bool unit = d.lo == 0.0 && d.hi == 1.0;
            if (!semi_line && !unit) throw ConfigError("reciprocal_conjugate needs the domain [1,inf) or [0,1]");
            NodePtr e = div(num(1.0), substitute(F, Op::X, div(num(1.0), x())));
            MapFamily out(name, e, unit ? Interval{1.0, kInf} : Interval{0.0, 1.0}, base.orientation());
            // Inner steps of the base are carried across the conjugation.
            if (!base.steps().empty()) {
                MapFamily carried(name, e, d, base.orientation());
                carried.set_steps(base.steps());
                carried.add_step(DomainStep::make(DomainStep::Kind::reciprocal));
                out = carried;
            }
            out.set_param_range(base.param_range());
            const Interval s = base.search_region();
            const double lo = s.hi == kInf ? 0.0 : 1.0 / s.hi;
            const double hi = s.lo <= 0.0 ? kInf : 1.0 / s.lo;
            out.set_search_region({lo, hi});
            return out;
        }
        case TransformKind::log_ratio_1:
        case TransformKind::log_ratio_2:
        case TransformKind::log_ratio_3:
        case TransformKind::log_ratio_4: {
            if (!extras.g) throw ConfigError("log-ratio forms need a second map g");
            if (extras.g->uses_a()) throw ConfigError("log-ratio forms need g without parameter a");
            const NodePtr& G = extras.g->expr();
            const bool scale_f = kind == TransformKind::log_ratio_1 || kind == TransformKind::log_ratio_3;
            NodePtr e = scale_f ? div(neg(ln(mul(a(), F))), pow(ln(G), num(2.0)))
                                : div(neg(ln(F)), pow(ln(mul(a(), G)), num(2.0)));
            MapFamily out = detail::rebuild(base, name + "[" + extras.g->name() + "]", e);
            out.set_orientation(scale_f ? Orientation::decreasing : Orientation::increasing);
            return out;
        }
        case TransformKind::theta_reparam: {
            if (!extras.theta) throw ConfigError("theta_reparam needs theta(a)");
            if (contains(extras.theta, Op::X)) throw ConfigError("theta(a) must not depend on x");
            MapFamily out = detail::rebuild(base, name, substitute(F, Op::A, extras.theta));
            std::vector<DomainStep> steps;
            for (const auto& s : base.steps()) steps.push_back(DomainStep::make(s.kind, substitute(s.param, Op::A, extras.theta)));
            out.set_steps(std::move(steps));
            return out;
        }
    }
    throw ConfigError("unknown transform");
}

}  // namespace feigen
