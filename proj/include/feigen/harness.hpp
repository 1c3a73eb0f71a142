#pragma once

// Conjecture suites: permeability of the parameter through a composition,
// universality of the cascade rate, several-maxima behaviour, and batch runs.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bifurcation.hpp"
#include "parallel.hpp"
#include "schwarzian.hpp"

namespace feigen {

inline constexpr double kFeigenbaumDelta = 4.669201609102990;

enum class TestType { permeability, universality, multimax };

inline const char* test_type_name(TestType t) {
    switch (t) {
        case TestType::permeability: return "permeability";
        case TestType::universality: return "universality";
        case TestType::multimax: return "multimax";
    }
    return "?";
}

// Outcomes; the first three belong to permeability, the next four to
// universality, the last two to multimax.
enum class Outcome { confirmed, refuted, inconclusive, supports, refutes, no_chaos, global, local };

inline const char* outcome_name(Outcome o) {
    switch (o) {
        case Outcome::confirmed: return "confirmed";
        case Outcome::refuted: return "refuted";
        case Outcome::inconclusive: return "inconclusive";
        case Outcome::supports: return "supports";
        case Outcome::refutes: return "refutes";
        case Outcome::no_chaos: return "no-chaos";
        case Outcome::global: return "global";
        case Outcome::local: return "local";
    }
    return "?";
}

inline bool is_refutation(Outcome o) { return o == Outcome::refuted || o == Outcome::refutes; }

struct EventRecord {
    EventKind kind = EventKind::flip;
    double value = 0.0;  // value of the moving parameter
    int period_before = 1;
};

struct LocalChaos {
    double param = 0.0;
    int maximum = 0;  // index into the maxima list
    Interval extent{};
};

struct CaseReport {
    std::string name;
    TestType type = TestType::permeability;
    Outcome outcome = Outcome::inconclusive;
    std::string expect;  // confirm | refute | nochaos | empty
    bool expectation_met = true;
    std::string family;
    std::string family2;
    std::vector<EventRecord> events;
    std::vector<EventRecord> events2;
    std::optional<int> divergent_rank;  // 1-based
    std::optional<double> gap;
    std::vector<double> delta;
    std::optional<double> delta_last;
    std::optional<double> reference_delta;
    std::optional<int> degree;
    std::vector<LocalChaos> local_chaos;
    std::optional<int> faster_maximum;
    std::optional<std::uint64_t> seed;  // random families only
    std::vector<std::string> notes;
    double seconds = 0.0;  // kept out of reports unless asked for
};

struct SuiteReport {
    std::vector<CaseReport> cases;

    [[nodiscard]] int count(Outcome o) const {
        return static_cast<int>(std::count_if(cases.begin(), cases.end(), [&](const auto& c) { return c.outcome == o; }));
    }
    [[nodiscard]] bool any_unexpected_refutation() const {
        return std::any_of(cases.begin(), cases.end(),
                           [](const auto& c) { return !c.expectation_met && is_refutation(c.outcome); });
    }
    [[nodiscard]] bool any_unmet() const {
        return std::any_of(cases.begin(), cases.end(), [](const auto& c) { return !c.expectation_met; });
    }
};

// ------------------------------------------------------------ permeability

struct PermeabilityCase {
    std::string name;
    std::optional<MapFamily> base;
    std::optional<TransformKind> first_kind;
    std::optional<TransformKind> second_kind;
    TransformExtras extras;
    std::optional<MapFamily> first;   // explicit members override the transforms
    std::optional<MapFamily> second;
    EventKind kind = EventKind::flip;
    int depth = 4;
    double tol = 1e-8;
    CascadeOptions cascade{};
};

namespace detail {

inline double moving_value(const ParamPath& path, const Params& p) { return path.da != 0.0 ? p.a : p.b; }

inline std::vector<EventRecord> records(const BifurcationSequence& seq) {
    std::vector<EventRecord> out;
    for (const auto& e : seq.events) out.push_back({e.kind, moving_value(seq.path, e.params), e.period_before});
    return out;
}

inline MapFamily member(const PermeabilityCase& c, bool second) {
    const auto& explicit_member = second ? c.second : c.first;
    if (explicit_member) return *explicit_member;
    const auto& kind = second ? c.second_kind : c.first_kind;
    if (!c.base) throw ConfigError("permeability case needs a base family or explicit members");
    if (!kind) return *c.base;
    return transform(*c.base, *kind, c.extras);
}

struct SequenceRun {
    std::vector<EventRecord> events;
    bool empty = false;      // no cascade in range
    bool complete = true;
    std::string error;
};

inline SequenceRun run_sequence(const MapFamily& fam, const PermeabilityCase& c) {
    SequenceRun r;
    try {
        const ParamPath path = default_path(fam);
        if (c.kind == EventKind::tangent) {
            for (const auto& e : CascadeTracker(fam, path, c.cascade).tangent_events())
                r.events.push_back({e.kind, moving_value(path, e.params), e.period_before});
            r.empty = r.events.empty();
            return r;
        }
        const auto seq = bifurcation_sequence(fam, path, c.depth, c.cascade);
        r.events = records(seq);
        r.complete = !seq.partial;
        if (seq.partial) r.error = seq.note;
    } catch (const CascadeNotFound&) {
        r.empty = true;
    } catch (const std::exception& e) {
        r.complete = false;
        r.error = e.what();
    }
    return r;
}

}  // namespace detail

inline CaseReport permeability_test(const PermeabilityCase& c) {
    CaseReport rep;
    rep.name = c.name;
    rep.type = TestType::permeability;
    std::optional<MapFamily> f1, f2;
    try {
        f1 = detail::member(c, false);
        f2 = detail::member(c, true);
    } catch (const std::exception& e) {
        rep.outcome = Outcome::inconclusive;
        rep.notes.push_back(e.what());
        return rep;
    }
    rep.family = f1->name();
    rep.family2 = f2->name();
    const auto r1 = detail::run_sequence(*f1, c);
    const auto r2 = detail::run_sequence(*f2, c);
    rep.events = r1.events;
    rep.events2 = r2.events;
    if (!r1.error.empty()) rep.notes.push_back(rep.family + ": " + r1.error);
    if (!r2.error.empty()) rep.notes.push_back(rep.family2 + ": " + r2.error);

    if (r1.empty && r2.empty) {
        rep.outcome = Outcome::confirmed;
        rep.notes.push_back("both event sets are empty over the searched range");
        return rep;
    }
    const std::size_t n = std::min(r1.events.size(), r2.events.size());
    for (std::size_t i = 0; i < n; ++i) {
        const auto& u = r1.events[i];
        const auto& v = r2.events[i];
        const double g = std::fabs(u.value - v.value);
        const double scale = std::max(1.0, std::min(std::fabs(u.value), std::fabs(v.value)));
        if (u.kind != v.kind || !(g < c.tol * scale)) {
            rep.outcome = Outcome::refuted;
            rep.divergent_rank = static_cast<int>(i) + 1;
            rep.gap = g;
            return rep;
        }
    }
    if (r1.events.size() != r2.events.size()) {
        const bool both_complete = r1.complete && r2.complete && !r1.empty && !r2.empty;
        if (r1.empty != r2.empty || both_complete) {
            rep.outcome = Outcome::refuted;
            rep.divergent_rank = static_cast<int>(n) + 1;
            rep.notes.push_back("event counts differ");
        } else {
            rep.outcome = Outcome::inconclusive;
            rep.notes.push_back("a sequence stopped early; the common prefix agrees");
        }
        return rep;
    }
    rep.outcome = (r1.complete && r2.complete) ? Outcome::confirmed : Outcome::inconclusive;
    return rep;
}

// ------------------------------------------------------------ universality

// Delta for a maximum of the given degree, computed on 1 - a|x|^d.
inline double reference_delta(int degree) {
    if (degree == 2) return kFeigenbaumDelta;
    static std::mutex mu;
    static std::map<int, double> cache;
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(degree); it != cache.end()) return it->second;
    const auto r = feigenvalue_for_degree(degree, degree, 9);
    const double d = r.report.delta.empty() ? std::nan("") : r.report.delta.back();
    cache[degree] = d;
    return d;
}

inline CaseReport universality_scan(const MapFamily& fam, const ParamPath& path, int N, double tol = 0.02,
                                    const CascadeOptions& opt = {}) {
    CaseReport rep;
    rep.type = TestType::universality;
    rep.family = fam.name();
    BifurcationSequence seq;
    try {
        seq = bifurcation_sequence(fam, path, N, opt);
    } catch (const CascadeNotFound&) {
        rep.outcome = Outcome::no_chaos;
        return rep;
    } catch (const std::exception& e) {
        rep.outcome = Outcome::inconclusive;
        rep.notes.push_back(e.what());
        return rep;
    }
    rep.events = detail::records(seq);
    if (seq.partial) rep.notes.push_back(seq.note);
    const auto flips = seq.flips();
    if (flips.size() < 3) {
        rep.outcome = Outcome::inconclusive;
        rep.notes.push_back("fewer than three flips");
        return rep;
    }
    const auto report = delta_report(flip_parameters(seq));
    rep.delta = report.delta;
    rep.delta_last = report.delta.back();

    // Degree of the maximum the cascade runs through, read at the last flip.
    int degree = 2;
    if (const auto c = principal_critical_point(fam, flips.back().params)) {
        degree = c->degree;
        if (!c->integer_degree) rep.notes.push_back("maximum has a non-integer degree; compared against degree 2");
    }
    if (degree != 2) rep.notes.push_back("maximum of degree " + std::to_string(degree));
    rep.degree = degree;
    const double ref = (degree >= 2 && degree <= 8) ? reference_delta(degree) : kFeigenbaumDelta;
    rep.reference_delta = ref;

    const double rel = std::fabs(*rep.delta_last - ref) / ref;
    const bool stable = report.last_spread && *report.last_spread < 0.05;
    if (rel < tol) rep.outcome = Outcome::supports;
    else if (stable) rep.outcome = Outcome::refutes;
    else rep.outcome = Outcome::inconclusive;
    return rep;
}

// Random unimodal polynomial of degree <= 6 scaled to an endomorphism of
// [0,1]: a * P(x) / max P with P = x(1-x)(1 + sum c_k (x - 1/2)^k).
// Draws that are not positive inside or not single-maximum are rejected.
inline MapFamily random_polynomial_family(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> deg(2, 6);
    std::uniform_real_distribution<double> coef(-0.8, 0.8);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        const int d = deg(rng);
        std::vector<double> c(d - 1, 0.0);
        for (std::size_t k = 1; k < c.size(); ++k) c[k] = coef(rng);
        std::ostringstream q;
        q.precision(17);
        q << "x*(1-x)*(1";
        for (std::size_t k = 1; k < c.size(); ++k) q << (c[k] < 0 ? " - " : " + ") << std::fabs(c[k]) << "*(x-0.5)^" << k;
        q << ")";
        MapFamily poly("p", parse_expression(q.str()), {0.0, 1.0}, Orientation::increasing);
        bool positive = true;
        for (int i = 1; i < 200 && positive; ++i) positive = poly(i / 200.0, {}) > 0.0;
        if (!positive) continue;
        const auto cps = find_critical_points(poly, {}, {0.0, 1.0});
        if (cps.size() != 1 || cps[0].kind != CriticalPoint::Kind::maximum || cps[0].degree != 2) continue;
        std::ostringstream e;
        e.precision(17);
        e << "a*" << (1.0 / cps[0].value) << "*" << q.str();
        MapFamily fam("random_" + std::to_string(seed), parse_expression(e.str()), {0.0, 1.0}, Orientation::increasing);
        fam.set_param_range({0.3, 1.0}).set_search_region({0.0, 1.0});
        return fam;
    }
    throw ConfigError("no admissible random polynomial for seed " + std::to_string(seed));
}

// ------------------------------------------------------------ several maxima

struct MultimaxOptions {
    int steps = 120;
    std::optional<Interval> range;  // parameter values visited; default the family's range
    int workers = 1;
};

inline CaseReport multimax_report(const MapFamily& fam, const ParamPath& path, int N, const MultimaxOptions& mo = {},
                                  const CascadeOptions& opt = {}) {
    CaseReport rep;
    rep.type = TestType::multimax;
    rep.family = fam.name();
    const Interval pr = mo.range.value_or(fam.param_range());
    const int G = std::max(2, mo.steps);

    struct Column {
        std::vector<std::optional<Attractor>> seeds;
        int maxima = 0;
    };
    std::vector<Column> cols(G);
    parallel_for(G, mo.workers, [&](int i) {
        const double v = pr.lo + pr.width() * i / (G - 1);
        Params p = path.da != 0.0 ? Params{v, path.base.b} : Params{path.base.a, v};
        const Interval dom = fam.domain_at(p);
        std::vector<CriticalPoint> maxima;
        try {
            for (const auto& c : find_critical_points(fam, p, {std::max(dom.lo, fam.search_region().lo),
                                                              std::min(dom.hi, fam.search_region().hi)}))
                if (c.kind == CriticalPoint::Kind::maximum) maxima.push_back(c);
        } catch (const std::exception&) {
        }
        cols[i].maxima = static_cast<int>(maxima.size());
        for (const auto& c : maxima) {
            try {
                cols[i].seeds.push_back(classify_attractor(fam, p, c.x, opt.classify));
            } catch (const std::exception&) {
                cols[i].seeds.emplace_back();
            }
        }
    });

    int max_count = 0;
    for (const auto& c : cols) max_count = std::max(max_count, c.maxima);
    if (max_count < 2) rep.notes.push_back("fewer than two maxima; trivially global");

    bool local = false;
    // First visited parameter at which each maximum's orbit reaches period
    // 2^k, for the speed comparison.
    std::vector<std::map<int, double>> reached(max_count);
    for (int i = 0; i < G; ++i) {
        const double v = pr.lo + pr.width() * i / (G - 1);
        const auto& s = cols[i].seeds;
        for (std::size_t k = 0; k < s.size(); ++k) {
            if (!s[k]) continue;
            if (k > 0 && s[0] && !same_attractor(*s[0], *s[k], 1e-6)) local = true;
            if (s[k]->is_periodic()) {
                int lvl = 0;
                while ((1 << (lvl + 1)) <= s[k]->period) ++lvl;
                if ((1 << lvl) == s[k]->period && !reached[k].count(lvl)) reached[k][lvl] = v;
            } else if (s[k]->kind == Attractor::Kind::chaotic) {
                if (!reached[k].count(99)) reached[k][99] = v;
            }
        }
        if (s.size() >= 2) {
            for (std::size_t k = 0; k < s.size(); ++k) {
                if (!s[k] || s[k]->kind != Attractor::Kind::chaotic) continue;
                bool distinct = true;
                for (std::size_t j = 0; j < s.size(); ++j)
                    if (j != k && s[j] && same_attractor(*s[j], *s[k], 1e-6)) distinct = false;
                if (distinct) rep.local_chaos.push_back({v, static_cast<int>(k), s[k]->extent});
            }
        }
    }
    rep.outcome = local ? Outcome::local : Outcome::global;

    if (max_count >= 2) {
        // The maximum that first reaches a level the others reach later.
        for (int lvl = 1; lvl <= 99 && !rep.faster_maximum; lvl = lvl == 12 ? 99 : lvl + 1) {
            std::optional<int> best;
            double best_v = kInf;
            bool tie = false;
            for (int k = 0; k < max_count; ++k) {
                auto it = reached[k].find(lvl);
                if (it == reached[k].end()) continue;
                const double v = it->second * (path.da + path.db > 0 ? 1.0 : -1.0);
                if (v < best_v) {
                    best_v = v;
                    best = k;
                    tie = false;
                } else if (v == best_v) {
                    tie = true;
                }
            }
            if (best && !tie) {
                bool others_later = false;
                for (int k = 0; k < max_count; ++k)
                    if (k != *best && (!reached[k].count(lvl) || reached[k][lvl] != reached[*best][lvl])) others_later = true;
                if (others_later) rep.faster_maximum = *best;
            }
        }
    }

    if (N > 0) {
        try {
            const auto seq = bifurcation_sequence(fam, path, N, opt);
            rep.events = detail::records(seq);
            if (seq.flips().size() >= 3) {
                const auto d = delta_report(flip_parameters(seq));
                rep.delta = d.delta;
                rep.delta_last = d.delta.back();
            }
        } catch (const std::exception& e) {
            rep.notes.push_back(e.what());
        }
    }
    return rep;
}

// ------------------------------------------------------------ suites

struct SuiteCase {
    std::string name;
    TestType type = TestType::permeability;
    std::string family;   // catalog name or expr:<dsl>
    std::string family2;  // optional explicit second member
    std::optional<TransformKind> first;
    std::optional<TransformKind> second;
    EventKind kind = EventKind::flip;
    int depth = 4;
    double tol = 1e-8;
    std::string expect;
    double c = 0.0;
    std::string g;
    std::optional<Interval> domain;
    std::optional<Interval> range;
    std::optional<Interval> window;  // multimax parameter window
    int line = 0;
};

struct SuiteConfig {
    std::vector<SuiteCase> cases;
};

namespace detail {

inline std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline double parse_number(const std::string& s, int line, const std::string& key) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("line " + std::to_string(line) + ": bad number for " + key + ": '" + s + "'");
    }
}

inline Interval parse_interval(const std::string& s, int line, const std::string& key) {
    const auto colon = s.find(':');
    if (colon == std::string::npos) throw ConfigError("line " + std::to_string(line) + ": " + key + " needs lo:hi");
    auto bound = [&](const std::string& t) {
        if (t == "inf") return kInf;
        if (t == "-inf") return -kInf;
        return parse_number(t, line, key);
    };
    Interval r{bound(s.substr(0, colon)), bound(s.substr(colon + 1))};
    if (!(r.lo < r.hi)) throw ConfigError("line " + std::to_string(line) + ": " + key + " needs lo < hi");
    return r;
}

inline MapFamily resolve_family(const std::string& spec, const std::optional<Interval>& domain) {
    if (spec.rfind("random:", 0) == 0) {
        try {
            return random_polynomial_family(std::stoull(spec.substr(7)));
        } catch (const std::logic_error&) {
            throw ConfigError("random family needs an integer seed: '" + spec + "'");
        }
    }
    if (spec.rfind("expr:", 0) == 0) {
        const std::string text = spec.substr(5);
        const Interval dom = domain.value_or(Interval{0.0, 1.0});
        // A parameter-free expression is allowed here: it is a base for transforms.
        MapFamily f(text, parse_expression(text), dom, Orientation::increasing);
        if (!dom.bounded()) f.set_search_region({-3.0, 3.0});
        return f;
    }
    MapFamily f = catalog(spec);
    if (domain) {
        MapFamily g(f.name(), f.expr(), *domain, f.orientation());
        g.set_param_range(f.param_range()).set_search_region(f.search_region()).set_steps(f.steps());
        return g;
    }
    return f;
}

}  // namespace detail

// One case per line:
//   case <name> family=<catalog|expr:...|random:seed> pair=<kind>,<kind> depth=<N> tol=<x> expect=<confirm|refute|nochaos>
// plus optional test=, kind=, family2=, c=, g=, domain=, range=, window=.
inline SuiteConfig parse_suite(std::istream& in) {
    SuiteConfig cfg;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        const std::string text = detail::trim(raw);
        if (text.empty()) continue;
        std::istringstream ss(text);
        std::string word;
        ss >> word;
        if (word != "case") throw ConfigError("line " + std::to_string(line) + ": expected 'case'");
        SuiteCase c;
        c.line = line;
        if (!(ss >> c.name) || c.name.find('=') != std::string::npos)
            throw ConfigError("line " + std::to_string(line) + ": missing case name");
        bool has_pair = false, has_test = false;
        while (ss >> word) {
            const auto eq = word.find('=');
            if (eq == std::string::npos || eq == 0)
                throw ConfigError("line " + std::to_string(line) + ": expected key=value, got '" + word + "'");
            const std::string key = word.substr(0, eq), val = word.substr(eq + 1);
            if (key == "family") {
                c.family = val;
            } else if (key == "family2") {
                c.family2 = val;
            } else if (key == "pair") {
                const auto comma = val.find(',');
                if (comma == std::string::npos) throw ConfigError("line " + std::to_string(line) + ": pair needs two kinds");
                auto k1 = transform_from_name(val.substr(0, comma));
                auto k2 = transform_from_name(val.substr(comma + 1));
                const bool id1 = val.substr(0, comma) == "identity", id2 = val.substr(comma + 1) == "identity";
                if ((!k1 && !id1) || (!k2 && !id2))
                    throw ConfigError("line " + std::to_string(line) + ": unknown transform in '" + val + "'");
                c.first = k1;
                c.second = k2;
                has_pair = true;
            } else if (key == "depth") {
                const double d = detail::parse_number(val, line, key);
                if (d < 1 || d != std::floor(d)) throw ConfigError("line " + std::to_string(line) + ": depth must be a positive integer");
                c.depth = static_cast<int>(d);
            } else if (key == "tol") {
                c.tol = detail::parse_number(val, line, key);
                if (!(c.tol > 0.0)) throw ConfigError("line " + std::to_string(line) + ": tol must be positive");
            } else if (key == "expect") {
                if (val != "confirm" && val != "refute" && val != "nochaos")
                    throw ConfigError("line " + std::to_string(line) + ": expect must be confirm, refute or nochaos");
                c.expect = val;
            } else if (key == "test") {
                if (val == "permeability") c.type = TestType::permeability;
                else if (val == "universality") c.type = TestType::universality;
                else if (val == "multimax") c.type = TestType::multimax;
                else throw ConfigError("line " + std::to_string(line) + ": unknown test '" + val + "'");
                has_test = true;
            } else if (key == "kind") {
                if (val == "flip") c.kind = EventKind::flip;
                else if (val == "tangent") c.kind = EventKind::tangent;
                else throw ConfigError("line " + std::to_string(line) + ": kind must be flip or tangent");
            } else if (key == "c") {
                c.c = detail::parse_number(val, line, key);
            } else if (key == "g") {
                c.g = val;
            } else if (key == "domain") {
                c.domain = detail::parse_interval(val, line, key);
            } else if (key == "range") {
                c.range = detail::parse_interval(val, line, key);
            } else if (key == "window") {
                c.window = detail::parse_interval(val, line, key);
            } else {
                throw ConfigError("line " + std::to_string(line) + ": unknown key '" + key + "'");
            }
        }
        if (c.family.empty()) throw ConfigError("line " + std::to_string(line) + ": family is required");
        if (!has_test) c.type = (has_pair || !c.family2.empty()) ? TestType::permeability : TestType::universality;
        if (c.type == TestType::permeability && !has_pair && c.family2.empty())
            throw ConfigError("line " + std::to_string(line) + ": permeability needs pair= or family2=");
        cfg.cases.push_back(std::move(c));
    }
    return cfg;
}

inline SuiteConfig parse_suite_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open suite file '" + path + "'");
    return parse_suite(in);
}

namespace detail {

inline bool expectation_met(const std::string& expect, Outcome o) {
    if (expect.empty()) return !is_refutation(o) && o != Outcome::inconclusive;
    if (expect == "confirm") return o == Outcome::confirmed || o == Outcome::supports || o == Outcome::global;
    if (expect == "refute") return is_refutation(o);
    if (expect == "nochaos") return o == Outcome::no_chaos;
    return false;
}

inline CaseReport run_case(const SuiteCase& sc, int workers) {
    CaseReport rep;
    try {
        MapFamily fam = resolve_family(sc.family, sc.domain);
        if (sc.range) fam.set_param_range(*sc.range);
        switch (sc.type) {
            case TestType::permeability: {
                PermeabilityCase pc;
                pc.name = sc.name;
                pc.base = fam;
                pc.first_kind = sc.first;
                pc.second_kind = sc.second;
                pc.extras.c = sc.c;
                if (!sc.g.empty()) pc.extras.g = resolve_family(sc.g, sc.domain);
                if (!sc.family2.empty()) {
                    MapFamily f2 = resolve_family(sc.family2, sc.domain);
                    if (sc.range) f2.set_param_range(*sc.range);
                    pc.first = sc.first ? transform(fam, *sc.first, pc.extras) : fam;
                    pc.second = sc.second ? transform(f2, *sc.second, pc.extras) : f2;
                }
                pc.kind = sc.kind;
                pc.depth = sc.depth;
                pc.tol = sc.tol;
                rep = permeability_test(pc);
                break;
            }
            case TestType::universality:
                rep = universality_scan(fam, default_path(fam), sc.depth, sc.tol);
                break;
            case TestType::multimax: {
                MultimaxOptions mo;
                mo.range = sc.window;
                mo.workers = 1;
                rep = multimax_report(fam, default_path(fam), sc.depth, mo);
                break;
            }
        }
    } catch (const std::exception& e) {
        rep.outcome = Outcome::inconclusive;
        rep.notes.push_back(e.what());
    }
    (void)workers;
    rep.name = sc.name;
    rep.type = sc.type;
    if (sc.family.rfind("random:", 0) == 0) {
        try {
            rep.seed = std::stoull(sc.family.substr(7));
        } catch (const std::logic_error&) {
        }
    }
    rep.expect = sc.expect;
    rep.expectation_met = expectation_met(sc.expect, rep.outcome);
    return rep;
}

}  // namespace detail

inline SuiteReport run_suite(const SuiteConfig& cfg, int workers = 1) {
    SuiteReport rep;
    rep.cases.resize(cfg.cases.size());
    parallel_for(static_cast<int>(cfg.cases.size()), workers, [&](int i) {
        const auto t0 = std::chrono::steady_clock::now();
        rep.cases[i] = detail::run_case(cfg.cases[i], workers);
        rep.cases[i].seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    });
    return rep;
}

}  // namespace feigen
