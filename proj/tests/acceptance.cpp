// Acceptance checks: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "feigen/feigen.hpp"

using namespace feigen;

namespace {

struct Check {
    bool ok = true;
    std::ostringstream msg;

    void expect(bool cond, const std::string& what) {
        if (!cond) ok = false;
        msg << (cond ? "" : "!") << what << "; ";
    }
    void near(double got, double want, double tol, const std::string& what) {
        std::ostringstream s;
        s.precision(10);
        s << what << "=" << got << " (want " << want << " +- " << tol << ")";
        expect(std::fabs(got - want) <= tol, s.str());
    }
    void rel(double got, double want, double frac, const std::string& what) {
        std::ostringstream s;
        s.precision(10);
        s << what << "=" << got << " (want " << want << " within " << frac * 100 << "%)";
        expect(std::fabs(got - want) <= frac * std::fabs(want), s.str());
    }
};

int failures = 0;

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

void criterion(int id, const char* title, double budget_s, const std::function<void(Check&)>& body) {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.ok = false;
        c.msg << "exception: " << e.what() << "; ";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (budget_s > 0) {
        std::ostringstream s;
        s.precision(3);
        s << "runtime " << secs << " s (budget " << budget_s << " s)";
        c.expect(secs < budget_s, s.str());
    }
    if (!c.ok) ++failures;
    std::printf("[%s] %2d %s: %s\n", c.ok ? "PASS" : "FAIL", id, title, c.msg.str().c_str());
    std::fflush(stdout);
}

std::vector<double> flips_of(const MapFamily& fam, int n, CascadeOptions opt = {}) {
    return flip_parameters(bifurcation_sequence(fam, default_path(fam), n, opt));
}

std::string region_pattern(const LocalScanReport& r) {
    std::string out;
    for (const auto& g : r.regions) {
        if (!out.empty()) out += ",";
        if (g.attractors.size() != 1) {
            out += "?";
            continue;
        }
        const auto& a = g.attractors[0];
        out += a.is_periodic() ? std::to_string(a.period) : attractor_kind_name(a.kind);
    }
    return out;
}

// Jet derivatives against a five-point stencil on the next lower derivative.
double worst_jet_error(const MapFamily& fam, std::mt19937_64& rng, int points) {
    const Interval pr = fam.param_range();
    const Params p{0.5 * (pr.lo + pr.hi), fam.uses_b() ? 0.5 * (pr.lo + pr.hi) : 0.0};
    Interval r = fam.search_region();
    const Interval dom = fam.domain_at(p);
    r.lo = std::max(r.lo, dom.lo);
    r.hi = std::min(r.hi, dom.hi);
    std::uniform_real_distribution<double> u(r.lo + 0.02 * r.width(), r.hi - 0.02 * r.width());
    double worst = 0.0;
    for (int i = 0; i < points; ++i) {
        const double x = u(rng);
        const double h = std::min({1e-4 * detail::x_scale(x), (x - r.lo) / 50.0, (r.hi - x) / 50.0});
        Jet3<double> j;
        Fault f{};
        if (!fam.jet<double>(x, p, 3, j, f)) continue;
        auto d = [&](int k) {
            auto g = [&](double y) {
                Jet3<double> q;
                Fault ff{};
                fam.jet<double>(y, p, 3, q, ff);
                return k == 0 ? q.f : k == 1 ? q.f1 : q.f2;
            };
            return (g(x - 2 * h) - 8 * g(x - h) + 8 * g(x + h) - g(x + 2 * h)) / (12 * h);
        };
        const double exact[3] = {j.f1, j.f2, j.f3};
        for (int k = 0; k < 3; ++k) {
            const double e = std::fabs(exact[k] - d(k)) / std::max(1.0, std::fabs(exact[k]));
            worst = std::max(worst, e);
        }
    }
    return worst;
}

}  // namespace

int main() {
    criterion(1, "x^(a/x) first flip is e^2", 1.0, [](Check& c) {
        const auto b = flips_of(catalog("xpow_a_over_x"), 1);
        c.near(b.at(0), 7.3890560989, 1e-6, "b1");
    });

    criterion(2, "x^(a/x) second flip, accumulation and ratio", 30.0, [](Check& c) {
        const MapFamily f = catalog("xpow_a_over_x");
        const auto b = flips_of(f, 6);
        c.near(b.at(1), 12.509, 0.01, "b2");
        const auto r = delta_report(b);
        c.near(r.b_inf.value(), 14.77, 0.01, "b_inf");
        c.near(accumulation_ratio(f, default_path(f), 6), 1.9989, 0.002, "b_inf/b1");
    });

    criterion(3, "logistic delta at depth 7 (double)", 60.0, [](Check& c) {
        CascadeOptions o;
        o.precision = Precision::float64;
        const auto r = delta_report(flips_of(catalog("logistic"), 7, o));
        c.rel(r.delta.back(), 4.669201, 0.005, "delta_7");
    });

    criterion(4, "degree-4 Feigenvalue", 120.0, [](Check& c) {
        const auto r = feigenvalue_for_degree(4, 4, 8);
        c.rel(r.report.delta.back(), 7.2846862171, 0.01, "delta");
    });

    criterion(5, "parenthesis permeability", 0.0, [](Check& c) {
        auto run = [&](PermeabilityCase pc, const std::string& name) {
            pc.name = name;
            pc.depth = 4;
            pc.tol = 1e-8;
            const auto rep = permeability_test(pc);
            c.expect(rep.outcome == Outcome::confirmed && rep.events.size() >= 4,
                     name + " " + outcome_name(rep.outcome) + " over " + std::to_string(rep.events.size()) + " events");
            return rep;
        };
        PermeabilityCase phi;
        phi.base = catalog("phi");
        phi.first_kind = TransformKind::outer_scale;
        phi.second_kind = TransformKind::inner_scale;
        run(phi, "phi");

        PermeabilityCase px;
        px.first = catalog("Psi");
        px.second = catalog("Xi");
        const auto rep = run(px, "Psi/Xi");
        std::vector<double> fl;
        for (const auto& e : rep.events)
            if (e.kind == EventKind::flip) fl.push_back(e.value);
        c.near(fl.at(0), 1.8, 0.05, "Psi flip 1");
        c.near(fl.at(1), 3.15, 0.05, "Psi flip 2");

        for (const char* triple : {"pitchfork", "transcritical"}) {
            const std::string t(triple);
            const std::vector<std::string> names{t + "_f", t + "_g", t + "_h"};
            for (int i = 0; i < 3; ++i)
                for (int j = i + 1; j < 3; ++j) {
                    PermeabilityCase pc;
                    pc.first = catalog(names[i]);
                    pc.second = catalog(names[j]);
                    run(pc, names[i] + "/" + names[j]);
                }
        }
    });

    criterion(6, "decreasing cascade of [x(1-x)]^(a-x(1-x))", 0.0, [](Check& c) {
        const MapFamily f = catalog("dec_selfexp");
        const auto b = flips_of(f, 2);
        c.near(b.at(0), 0.35, 0.01, "b1");
        c.near(b.at(1), 0.265, 0.01, "b2");
        const auto a = classify_attractor(f, {0.2, 0.0});
        c.expect(a.kind == Attractor::Kind::escaped, std::string("a=0.2 is ") + attractor_kind_name(a.kind));
    });

    criterion(7, "Schwarzian sign changes", 0.0, [](Check& c) {
        const MapFamily xx("x^x", parse_expression("x^x"), {0.0, 1.0}, Orientation::increasing);
        const auto p1 = sign_profile(xx, {}, {0.001, 0.999});
        c.expect(p1.changes.size() == 1, std::to_string(p1.changes.size()) + " change(s) for x^x");
        c.near(p1.changes.at(0), 0.0806, 5e-4, "x^x change");

        MapFamily xr("x^(1/x)", parse_expression("x^(1/x)"), {1.0, kInf}, Orientation::increasing);
        xr.set_search_region({1.0, 40.0});
        const auto p2 = sign_profile(xr, {}, {1.001, 40.0});
        c.expect(p2.changes.size() == 1, std::to_string(p2.changes.size()) + " change(s) for x^(1/x)");
        c.near(p2.changes.at(0), 12.3944, 5e-3, "x^(1/x) change");

        const auto p3 = sign_profile(catalog("example_II"), {1.0, 0.0}, {0.01, 0.99});
        c.expect(p3.changes.size() == 1, std::to_string(p3.changes.size()) + " change(s) for example II");
        c.near(p3.changes.at(0), 0.7, 0.05, "example II change");
    });

    criterion(8, "two-maxima cascades", 0.0, [](Check& c) {
        const auto b = flips_of(catalog("octic_two_max"), 6);
        c.near(b.at(0), 3.0781, 0.01, "octic b1");
        c.near(b.at(1), 3.19746, 0.01, "octic b2");
        c.rel(delta_report(b).delta.back(), 4.669, 0.02, "octic delta at depth 6");
        const auto q = flips_of(catalog("picture10"), 2);
        c.near(q.at(0), 1.1, 0.02, "picture10 b1");
        c.near(q.at(1), 1.17, 0.02, "picture10 b2");
    });

    criterion(9, "gamma local attractors and windows", 0.0, [](Check& c) {
        const MapFamily g = catalog("gamma_sine");
        const auto rep = scan_local_attractors(g, {1.05, 0.0}, {0.0, 7.0}, 0.05);
        const std::string pat = region_pattern(rep);
        c.expect(pat == "4,10,chaotic,chaotic,6,chaotic,4", "pattern " + pat);
        for (const auto& r : rep.regions)
            c.expect(std::fabs(r.span.width() - 0.99) < 0.02, "region width " + std::to_string(r.span.width()));
        // Period seen from a seed inside [0,1] (and [1,2] for the last window)
        // on either side of each boundary.
        struct Window {
            double at;
            double seed;
            int below, above;
        };
        for (const Window w : {Window{0.6049, 0.5, 1, 2}, Window{0.7901, 0.5, 2, 4}, Window{0.87201, 1.5, 4, 8}}) {
            const int lo = classify_attractor(g, {w.at - 0.002, 0.0}, w.seed).period;
            const int hi = classify_attractor(g, {w.at + 0.002, 0.0}, w.seed).period;
            c.expect(lo == w.below && hi == w.above, "boundary " + std::to_string(w.at) + ": periods " +
                                                         std::to_string(lo) + " -> " + std::to_string(hi));
        }
    });

    criterion(10, "two-parameter family a f + b g", 0.0, [](Check& c) {
        const MapFamily h = catalog("pic12_h");
        const auto ra = directional_bifurcations(h, {1.0, 1.0}, 1.0, 0.0, 3);
        const auto rb = directional_bifurcations(h, {1.0, 1.0}, 0.0, 1.0, 3);
        std::vector<double> va, vb;
        for (const auto& e : ra.sequence.flips()) va.push_back(e.params.a);
        for (const auto& e : rb.sequence.flips()) vb.push_back(e.params.b);
        const double wa[3] = {1.48, 1.725, 1.77}, wb[3] = {1.89, 2.392, 2.455};
        for (int i = 0; i < 3; ++i) {
            c.near(va.at(i), wa[i], 0.02, "a" + std::to_string(i + 1));
            c.near(vb.at(i), wb[i], 0.02, "b" + std::to_string(i + 1));
        }
        c.rel((va[1] - va[0]) / (va[2] - va[1]), 5.44, 0.05, "ratio along a");
        c.rel((vb[1] - vb[0]) / (vb[2] - vb[1]), 7.97, 0.05, "ratio along b");
        const auto rd = directional_bifurcations(h, {1.0, 1.0}, 1.0, 1.0, 8);
        c.rel(rd.report.delta.back(), 7.2847, 0.02, "diagonal delta");
    });

    criterion(11, "geometric mean of orbits", 0.0, [](Check& c) {
        const MapFamily f = catalog("xpow_a_over_x");
        const MapFamily g = catalog("xpow_ax");
        int n = 0;
        double worst = 0.0, worst_r = 0.0;
        for (double a : {2.5, 5.0, 7.0, 8.0, 10.0, 12.0, 13.0, 14.0, 14.4, 14.7}) {
            const auto at = classify_attractor(f, {a, 0.0});
            if (!at.is_periodic()) continue;
            ++n;
            worst = std::max(worst, std::fabs(geometric_mean(at.orbit) - a) / a);
            const auto ar = classify_attractor(g, {a, 0.0});
            if (ar.is_periodic()) worst_r = std::max(worst_r, std::fabs(geometric_mean(ar.orbit) * a - 1.0));
            else worst_r = 1.0;
        }
        c.expect(n == 10, std::to_string(n) + " stable orbits");
        c.expect(worst < 1e-9, "worst |gm - a|/a = " + sci(worst));
        c.expect(worst_r < 1e-9, "worst reciprocal |gm a - 1| = " + sci(worst_r));
    });

    criterion(12, "theta reparameterisation destroys delta", 0.0, [](Check& c) {
        const MapFamily f = catalog("theta_logistic");
        const auto rep = universality_scan(f, default_path(f), 9);
        c.expect(rep.delta_last.has_value(), "delta available");
        c.expect(std::fabs(rep.delta_last.value_or(kFeigenbaumDelta) - kFeigenbaumDelta) > 0.5 * kFeigenbaumDelta,
                 "delta_last = " + std::to_string(rep.delta_last.value_or(0.0)));
        c.expect(rep.outcome == Outcome::refutes, std::string("verdict ") + outcome_name(rep.outcome));
    });

    criterion(13, "property suites", 0.0, [](Check& c) {
        std::mt19937_64 rng(20260417);
        double worst = 0.0;
        std::string worst_name;
        for (const auto& name : catalog_names()) {
            const MapFamily f = catalog(name);
            const double e = worst_jet_error(f, rng, 100);
            if (e > worst) {
                worst = e;
                worst_name = name;
            }
        }
        c.expect(worst < 1e-5, "jet vs stencil worst " + sci(worst) + " (" + worst_name + ")");

        const MapFamily mob("mobius", parse_expression("(2*x + 1)/(x + 3)"), {0.0, 1.0}, Orientation::increasing);
        double ms = 0.0;
        for (double x : {0.1, 0.3, 0.5, 0.7, 0.9}) ms = std::max(ms, std::fabs(schwarzian_at(mob, {}, x)));
        c.expect(ms < 1e-12, "Mobius Schwarzian " + sci(ms));

        // Transforms at their neutral parameter give back the base map.
        const MapFamily phi = catalog("phi");
        const MapFamily os = transform(phi, TransformKind::outer_shift);
        const MapFamily is = transform(phi, TransformKind::inner_shift);
        const MapFamily sc = transform(phi, TransformKind::outer_scale);
        bool exact = true;
        for (double x : {-0.9, -0.3, 0.0, 0.2, 0.7}) {
            exact = exact && os(x, {0.0, 0.0}) == phi(x, {}) && is(x, {0.0, 0.0}) == phi(x, {});
            exact = exact && sc(x, {1.0, 0.0}) == phi(x, {});
        }
        c.expect(exact, "identity transforms pointwise exact");

        // Conjugacy invariance: x -> 1/x conjugates x^(a/x) and x^(ax).
        const auto u = flips_of(catalog("xpow_a_over_x"), 4);
        const auto v = flips_of(catalog("xpow_ax"), 4);
        double gap = 0.0;
        for (std::size_t i = 0; i < 4; ++i) gap = std::max(gap, std::fabs(u.at(i) - v.at(i)) / std::max(1.0, u[i]));
        c.expect(gap < 1e-8, "conjugate cascades differ by " + sci(gap));

        const SuiteConfig cfg = parse_suite_file(std::string(FEIGEN_SOURCE_DIR) + "/tests/data/quick.suite");
        const std::string one = to_json(run_suite(cfg, 1)).dump();
        const std::string four = to_json(run_suite(cfg, 4)).dump();
        c.expect(one == four, "suite report identical for 1 and 4 workers");
    });

    std::printf("%d criterion(s) failed\n", failures);
    return failures;
}
