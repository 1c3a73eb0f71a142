#pragma once

// JSON and CSV writers for reports. Doubles are written in shortest
// round-trip form; non-finite values become null (JSON) or nan/inf (CSV).

#include <charconv>
#include <cmath>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bifurcation.hpp"
#include "harness.hpp"
#include "schwarzian.hpp"

namespace feigen {

inline constexpr const char* kSchemaVersion = "1.0";

using json = nlohmann::ordered_json;

// ------------------------------------------------------------ numbers

inline std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace detail {

inline json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

inline json nums(const std::vector<double>& v) {
    json a = json::array();
    for (double x : v) a.push_back(num(x));
    return a;
}

template <class T>
json opt(const std::optional<T>& v) {
    if (!v) return nullptr;
    if constexpr (std::is_floating_point_v<T>) return num(*v);
    else return json(*v);
}

inline json strings(const std::vector<std::string>& v) { return json(v); }

}  // namespace detail

// ------------------------------------------------------------ JSON

inline json to_json(const Interval& i) { return json::array({detail::num(i.lo), detail::num(i.hi)}); }

inline json to_json(const Params& p) { return json{{"a", detail::num(p.a)}, {"b", detail::num(p.b)}}; }

inline json to_json(const ParamPath& p) {
    return json{{"base", to_json(p.base)}, {"direction", json::array({p.da, p.db})}};
}

inline json to_json(const Attractor& a) {
    json j{{"kind", attractor_kind_name(a.kind)}};
    if (a.is_periodic()) {
        j["period"] = a.period;
        j["orbit"] = detail::nums(a.orbit);
        j["cycle"] = detail::nums(a.cycle);
        j["multiplier"] = detail::num(a.multiplier);
        j["closure"] = detail::num(a.closure);
    }
    if (a.kind == Attractor::Kind::chaotic) j["lyapunov"] = detail::num(a.lyapunov);
    if (a.kind != Attractor::Kind::escaped) j["extent"] = to_json(a.extent);
    if (a.kind == Attractor::Kind::escaped) {
        j["escape_step"] = a.escape_step;
        j["last_x"] = detail::num(a.last_x);
    }
    if (!a.reason.empty()) j["reason"] = a.reason;
    return j;
}

inline json to_json(const LocalScanReport& r) {
    json cells = json::array();
    for (const auto& c : r.merged) cells.push_back({{"cell", to_json(c.cell)}, {"attractor", to_json(c.attractor)}});
    json atts = json::array();
    for (const auto& a : r.attractors) atts.push_back(to_json(a));
    json regions = json::array();
    for (const auto& g : r.regions) {
        json a = json::array();
        for (const auto& x : g.attractors) a.push_back(to_json(x));
        regions.push_back({{"span", to_json(g.span)}, {"attractors", a}});
    }
    return json{{"merged", cells}, {"attractors", atts}, {"separators", detail::nums(r.separators)}, {"regions", regions}};
}

inline json to_json(const BifurcationEvent& e) {
    return json{{"kind", event_kind_name(e.kind)},
                {"t", detail::num(e.t)},
                {"t_lo", detail::num(e.t_lo)},
                {"params", to_json(e.params)},
                {"period_before", e.period_before},
                {"residual", detail::num(e.residual)},
                {"bracket_width", detail::num(e.bracket_width)},
                {"orbit_point", detail::num(e.orbit_point)},
                {"precision", e.double_double ? "dd" : "double"}};
}

inline json to_json(const DeltaReport& r) {
    return json{{"b", detail::nums(r.b)},       {"delta", detail::nums(r.delta)},
                {"b_inf", detail::opt(r.b_inf)}, {"c", detail::nums(r.c)},
                {"d", detail::nums(r.d)},       {"monotone", r.monotone},
                {"last_spread", detail::opt(r.last_spread)}};
}

inline json to_json(const BifurcationSequence& s) {
    json ev = json::array();
    for (const auto& e : s.events) ev.push_back(to_json(e));
    json ss = json::array();
    for (const auto& e : s.superstable) ss.push_back(to_json(e));
    json j{{"family", s.family}, {"path", to_json(s.path)}, {"events", ev}, {"superstable", ss}, {"partial", s.partial}};
    if (!s.note.empty()) j["note"] = s.note;
    return j;
}

inline json cascade_json(const BifurcationSequence& s, const DeltaReport& r) {
    return json{{"sequence", to_json(s)}, {"report", to_json(r)}};
}

inline json to_json(const SignProfile& p) {
    return json{{"interval", to_json(p.interval)},
                {"changes", detail::nums(p.changes)},
                {"signs", p.signs},
                {"poles", detail::nums(p.poles)},
                {"notes", detail::strings(p.notes)}};
}

inline json to_json(const CriticalPoint& c) {
    return json{{"x", detail::num(c.x)},
                {"kind", critical_kind_name(c.kind)},
                {"degree", c.degree},
                {"integer_degree", c.integer_degree},
                {"value", detail::num(c.value)}};
}

inline json to_json(const ReadinessReport& r) {
    json maxima = json::array();
    for (const auto& c : r.maxima) maxima.push_back(to_json(c));
    json checks = json::array();
    for (const auto& c : r.checks)
        checks.push_back({{"name", c.name}, {"constrained", c.constrained}, {"ok", c.ok}, {"detail", c.detail}});
    return json{{"verdict", verdict_name(r.verdict)},
                {"maxima", maxima},
                {"checks", checks},
                {"profile", to_json(r.profile)},
                {"notes", detail::strings(r.notes)}};
}

inline json to_json(const TineWidths& w) {
    return json{{"level", w.level},
                {"ascending", w.ascending},
                {"ordered", detail::nums(w.ordered)},
                {"gaps", detail::nums(w.gaps)},
                {"pair_width", detail::num(w.pair_width)},
                {"tine_pairs", detail::nums(w.tine_pairs)},
                {"central_width", detail::num(w.central_width)},
                {"alpha_position", w.alpha_position}};
}

inline json to_json(const EventRecord& e) {
    return json{{"kind", event_kind_name(e.kind)}, {"value", detail::num(e.value)}, {"period_before", e.period_before}};
}

// Timing is left out unless asked for, so reports compare byte for byte.
inline json to_json(const CaseReport& c, bool with_timing = false) {
    auto events = [](const std::vector<EventRecord>& v) {
        json a = json::array();
        for (const auto& e : v) a.push_back(to_json(e));
        return a;
    };
    json lc = json::array();
    for (const auto& l : c.local_chaos)
        lc.push_back({{"param", detail::num(l.param)}, {"maximum", l.maximum}, {"extent", to_json(l.extent)}});
    json j{{"name", c.name},
           {"test", test_type_name(c.type)},
           {"outcome", outcome_name(c.outcome)},
           {"expect", c.expect.empty() ? json(nullptr) : json(c.expect)},
           {"expectation_met", c.expectation_met},
           {"family", c.family},
           {"family2", c.family2.empty() ? json(nullptr) : json(c.family2)},
           {"events", events(c.events)},
           {"events2", events(c.events2)},
           {"divergent_rank", detail::opt(c.divergent_rank)},
           {"gap", detail::opt(c.gap)},
           {"delta", detail::nums(c.delta)},
           {"delta_last", detail::opt(c.delta_last)},
           {"reference_delta", detail::opt(c.reference_delta)},
           {"degree", detail::opt(c.degree)},
           {"local_chaos", lc},
           {"faster_maximum", detail::opt(c.faster_maximum)},
           {"seed", detail::opt(c.seed)},
           {"notes", detail::strings(c.notes)}};
    if (with_timing) j["seconds"] = c.seconds;
    return j;
}

inline json to_json(const SuiteReport& r, bool with_timing = false) {
    json cases = json::array();
    for (const auto& c : r.cases) cases.push_back(to_json(c, with_timing));
    json counts = json::object();
    for (Outcome o : {Outcome::confirmed, Outcome::refuted, Outcome::inconclusive, Outcome::supports, Outcome::refutes,
                      Outcome::no_chaos, Outcome::global, Outcome::local})
        counts[outcome_name(o)] = r.count(o);
    return json{{"cases", cases}, {"counts", counts}, {"unmet_expectations", r.any_unmet()}};
}

inline json envelope(const std::string& command, json result) {
    return json{{"schema_version", kSchemaVersion}, {"command", command}, {"result", std::move(result)}};
}

// ------------------------------------------------------------ CSV

class CsvWriter {
public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}

    CsvWriter& header(std::initializer_list<const char*> cols) {
        bool first = true;
        for (const char* c : cols) {
            if (!first) out_ << ',';
            out_ << c;
            first = false;
        }
        out_ << '\n';
        return *this;
    }
    CsvWriter& field(const std::string& s) {
        sep();
        if (s.find_first_of(",\"\n") == std::string::npos) {
            out_ << s;
        } else {
            out_ << '"';
            for (char ch : s) {
                if (ch == '"') out_ << '"';
                out_ << ch;
            }
            out_ << '"';
        }
        return *this;
    }
    CsvWriter& field(const char* s) { return field(std::string(s)); }
    CsvWriter& field(double v) {
        sep();
        out_ << format_double(v);
        return *this;
    }
    CsvWriter& field(int v) {
        sep();
        out_ << v;
        return *this;
    }
    CsvWriter& field(bool v) {
        sep();
        out_ << (v ? 1 : 0);
        return *this;
    }
    template <class T>
    CsvWriter& field(const std::optional<T>& v) {
        if (v) return field(*v);
        sep();
        return *this;
    }
    CsvWriter& empty() {
        sep();
        return *this;
    }
    void end() {
        out_ << '\n';
        first_ = true;
    }

private:
    void sep() {
        if (!first_) out_ << ',';
        first_ = false;
    }
    std::ostream& out_;
    bool first_ = true;
};

inline void write_csv(std::ostream& out, const Attractor& a) {
    CsvWriter w(out);
    w.header({"kind", "period", "multiplier", "closure", "lyapunov", "extent_lo", "extent_hi", "index", "x"});
    auto common = [&] {
        w.field(attractor_kind_name(a.kind)).field(a.period).field(a.multiplier).field(a.closure).field(a.lyapunov);
        w.field(a.extent.lo).field(a.extent.hi);
    };
    if (a.is_periodic()) {
        for (std::size_t i = 0; i < a.cycle.size(); ++i) {
            common();
            w.field(static_cast<int>(i)).field(a.cycle[i]).end();
        }
    } else {
        common();
        w.empty().field(a.last_x).end();
    }
}

// One row per attractor of each region between separating fixed points.
inline void write_csv(std::ostream& out, const LocalScanReport& r) {
    CsvWriter w(out);
    w.header({"span_lo", "span_hi", "kind", "period", "extent_lo", "extent_hi", "lyapunov"});
    for (const auto& g : r.regions) {
        for (const auto& a : g.attractors) {
            w.field(g.span.lo).field(g.span.hi).field(attractor_kind_name(a.kind)).field(a.period);
            w.field(a.extent.lo).field(a.extent.hi).field(a.lyapunov).end();
        }
        if (g.attractors.empty()) w.field(g.span.lo).field(g.span.hi).field("none").empty().empty().empty().empty().end();
    }
}

// One row per event with δ_n, c_n and d_n placed at the rank they belong to
// (δ_n uses b_{n-1}, b_n, b_{n+1}), then one accumulation row.
inline void write_csv(std::ostream& out, const BifurcationSequence& s, const DeltaReport& r) {
    CsvWriter w(out);
    w.header({"rank", "kind", "t", "a", "b", "period_before", "residual", "bracket_width", "precision", "delta", "c",
              "d"});
    int flip = 0;
    for (const auto& e : s.events) {
        const bool is_flip = e.kind == EventKind::flip;
        if (is_flip) ++flip;
        w.field(is_flip ? flip : 0).field(event_kind_name(e.kind)).field(e.t).field(e.params.a).field(e.params.b);
        w.field(e.period_before).field(e.residual).field(e.bracket_width).field(e.double_double ? "dd" : "double");
        auto at = [&](const std::vector<double>& v, int offset) {
            const int k = flip - offset;
            if (is_flip && k >= 0 && k < static_cast<int>(v.size())) w.field(v[k]);
            else w.empty();
        };
        at(r.delta, 2);
        at(r.c, 2);
        at(r.d, 3);
        w.end();
    }
    if (r.b_inf) {
        w.empty().field("accumulation").field(*r.b_inf).empty().empty().empty().empty().empty().empty().empty().empty()
            .empty();
        w.end();
    }
}

inline void write_csv(std::ostream& out, const std::vector<DiagramSample>& cols) {
    CsvWriter w(out);
    w.header({"t", "a", "b", "ok", "index", "x"});
    for (const auto& c : cols) {
        if (!c.ok) {
            w.field(c.t).field(c.params.a).field(c.params.b).field(false).empty().empty().end();
            continue;
        }
        for (std::size_t i = 0; i < c.xs.size(); ++i)
            w.field(c.t).field(c.params.a).field(c.params.b).field(true).field(static_cast<int>(i)).field(c.xs[i]).end();
    }
}

inline void write_csv(std::ostream& out, const SignProfile& p) {
    CsvWriter w(out);
    w.header({"kind", "x", "sign_after"});
    std::size_t k = 0;
    for (double c : p.changes) {
        ++k;
        w.field("change").field(c).field(k < p.signs.size() ? p.signs[k] : 0).end();
    }
    for (double c : p.poles) w.field("pole").field(c).empty().end();
}

inline void write_csv(std::ostream& out, const ReadinessReport& r) {
    CsvWriter w(out);
    w.header({"check", "constrained", "ok", "detail"});
    for (const auto& c : r.checks) w.field(c.name).field(c.constrained).field(c.ok).field(c.detail).end();
    w.field("verdict").empty().field(r.verdict != Verdict::fail).field(verdict_name(r.verdict)).end();
}

inline void write_csv(std::ostream& out, const TineWidths& t) {
    CsvWriter w(out);
    w.header({"series", "index", "value"});
    for (std::size_t i = 0; i < t.ordered.size(); ++i) w.field("orbit").field(static_cast<int>(i)).field(t.ordered[i]).end();
    for (std::size_t i = 0; i < t.gaps.size(); ++i) w.field("gap").field(static_cast<int>(i)).field(t.gaps[i]).end();
    for (std::size_t i = 0; i < t.tine_pairs.size(); ++i)
        w.field("tine_pair").field(static_cast<int>(i)).field(t.tine_pairs[i]).end();
    w.field("pair_width").empty().field(t.pair_width).end();
    w.field("central_width").empty().field(t.central_width).end();
    w.field("alpha_position").empty().field(t.alpha_position).end();
}

inline void write_csv(std::ostream& out, const SuiteReport& r) {
    CsvWriter w(out);
    w.header({"name", "test", "outcome", "expect", "expectation_met", "family", "family2", "events", "divergent_rank",
              "gap", "delta_last", "reference_delta", "seed"});
    for (const auto& c : r.cases) {
        w.field(c.name).field(test_type_name(c.type)).field(outcome_name(c.outcome)).field(c.expect);
        w.field(c.expectation_met).field(c.family).field(c.family2).field(static_cast<int>(c.events.size()));
        w.field(c.divergent_rank).field(c.gap).field(c.delta_last).field(c.reference_delta);
        if (c.seed) w.field(std::to_string(*c.seed));
        else w.empty();
        w.end();
    }
}

}  // namespace feigen
