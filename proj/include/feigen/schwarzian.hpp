#pragma once

// Schwarzian derivative, sign profiles and the readiness checks for
// several-maxima maps.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "dynamics.hpp"
#include "parallel.hpp"

namespace feigen {

// S f = f'''/f' - 3/2 (f''/f')^2 from the order-3 jet.
inline double schwarzian_at(const MapFamily& fam, const Params& p, double x) {
    Jet3<double> j;
    Fault f{};
    if (!fam.jet<double>(x, p, 3, j, f))
        throw DomainFault(std::string(fault_name(f)) + " evaluating the jet at x=" + std::to_string(x));
    const double scale = std::max({1.0, std::fabs(j.f2), std::fabs(j.f3)});
    if (std::fabs(j.f1) <= 1e-14 * scale) throw DomainFault("critical point at x=" + std::to_string(x) + ": Schwarzian pole");
    const double r = j.f2 / j.f1;
    return j.f3 / j.f1 - 1.5 * r * r;
}

struct SignProfile {
    Interval interval{};
    std::vector<double> changes;         // sign-change abscissas, increasing
    std::vector<int> signs;              // +1 / -1 per segment, changes.size() + 1 of them
    std::vector<double> poles;           // excluded critical points
    std::vector<std::string> notes;

    [[nodiscard]] int count_in(double lo, double hi) const {
        return static_cast<int>(std::count_if(changes.begin(), changes.end(),
                                              [&](double c) { return c > lo && c < hi; }));
    }
    [[nodiscard]] bool any_positive() const {
        return std::any_of(signs.begin(), signs.end(), [](int s) { return s > 0; });
    }
};

namespace detail {

inline constexpr double kPoleRadius = 1e-6;

// Describes how S behaves when x approaches an endpoint from inside.
inline std::string endpoint_behaviour(const MapFamily& fam, const Params& p, double end, double inward, double width) {
    double prev = 0.0;
    bool growing = true;
    double last = 0.0;
    int k = 0;
    for (double d : {1e-3, 1e-5, 1e-7}) {
        double s = 0.0;
        try {
            s = schwarzian_at(fam, p, end + inward * d * width);
        } catch (const std::exception&) {
            return {};
        }
        if (k > 0 && !(std::fabs(s) > 10.0 * std::fabs(prev) && (s > 0) == (prev > 0))) growing = false;
        prev = s;
        last = s;
        ++k;
    }
    if (!growing || std::fabs(last) < 1e4) return {};
    return std::string("Schwarzian tends to ") + (last > 0 ? "+inf" : "-inf") + " as x -> " + to_string(ex::num(end));
}

}  // namespace detail

inline SignProfile sign_profile(const MapFamily& fam, const Params& p, Interval range, int grid = 4000,
                                int workers = 1) {
    const Interval dom = fam.domain_at(p);
    if (!(range.lo < range.hi) || range.lo < dom.lo || range.hi > dom.hi || !std::isfinite(range.width()))
        throw ConfigError("sign profile interval must be finite and inside the domain");
    if (grid < 2) throw ConfigError("grid needs at least two cells");

    SignProfile prof;
    prof.interval = range;
    for (const auto& c : find_critical_points(fam, p, range)) prof.poles.push_back(c.x);

    auto near_pole = [&](double x) {
        for (double c : prof.poles)
            if (std::fabs(x - c) < detail::kPoleRadius * detail::x_scale(c)) return true;
        return false;
    };

    // Grid values; points inside an exclusion ball are skipped.
    std::vector<double> xs(grid + 1), ss(grid + 1);
    std::vector<char> valid(grid + 1, 0);
    const double h = range.width() / grid;
    for (int i = 0; i <= grid; ++i) xs[i] = i == grid ? range.hi : range.lo + i * h;
    xs.front() = detail::clamp_interior(range.lo, dom);
    xs.back() = detail::clamp_interior(range.hi, dom);
    parallel_for(grid + 1, workers, [&](int i) {
        if (near_pole(xs[i])) return;
        Jet3<double> j;
        Fault f{};
        if (!fam.jet<double>(xs[i], p, 3, j, f))
            throw DomainFault(std::string(fault_name(f)) + " in the sign profile at x=" + std::to_string(xs[i]));
        if (j.f1 == 0.0) return;
        const double r = j.f2 / j.f1;
        ss[i] = j.f3 / j.f1 - 1.5 * r * r;
        valid[i] = ss[i] != 0.0 && std::isfinite(ss[i]);
    });

    int last = -1;
    for (int i = 0; i <= grid; ++i) {
        if (!valid[i]) continue;
        const int sgn = ss[i] > 0 ? 1 : -1;
        if (last < 0) {
            prof.signs.push_back(sgn);
            last = i;
            continue;
        }
        const int prev_sgn = prof.signs.back();
        if (sgn != prev_sgn) {
            bool across_pole = false;
            for (double c : prof.poles)
                if (c > xs[last] && c < xs[i]) across_pole = true;
            if (across_pole) {
                prof.notes.push_back("sign differs across the critical point near x=" + to_string(ex::num(xs[i])));
            } else {
                double lo = xs[last], hi = xs[i];
                while (hi - lo > 1e-10 * detail::x_scale(lo)) {
                    const double mid = 0.5 * (lo + hi);
                    const double sm = schwarzian_at(fam, p, mid);
                    if ((sm > 0 ? 1 : -1) == prev_sgn) lo = mid;
                    else hi = mid;
                }
                prof.changes.push_back(0.5 * (lo + hi));
            }
            prof.signs.push_back(sgn);
        }
        last = i;
    }
    for (double c : prof.poles) prof.notes.push_back("pole at critical point x=" + to_string(ex::num(c)));
    if (auto n = detail::endpoint_behaviour(fam, p, range.lo, 1.0, range.width()); !n.empty()) prof.notes.push_back(n);
    if (auto n = detail::endpoint_behaviour(fam, p, range.hi, -1.0, range.width()); !n.empty()) prof.notes.push_back(n);
    return prof;
}

// ------------------------------------------------------------ readiness

struct ReadinessCheck {
    std::string name;
    bool constrained = true;
    bool ok = true;
    std::string detail;
};

enum class Verdict { pass, pass_with_notes, fail };

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::pass_with_notes: return "pass-with-notes";
        case Verdict::fail: return "fail";
    }
    return "?";
}

struct ReadinessReport {
    std::vector<CriticalPoint> maxima;
    std::vector<ReadinessCheck> checks;
    SignProfile profile;
    Verdict verdict = Verdict::pass;
    std::vector<std::string> notes;
};

inline ReadinessReport check_bifurcation_readiness(const MapFamily& fam, const Params& p, int grid = 4000) {
    const Interval dom = fam.domain_at(p);
    if (!std::isfinite(dom.width())) throw ConfigError("readiness needs a finite domain");
    ReadinessReport r;
    const auto cps = find_critical_points(fam, p, dom);
    for (const auto& c : cps)
        if (c.kind == CriticalPoint::Kind::maximum) r.maxima.push_back(c);
    if (r.maxima.empty()) throw ConfigError("no maxima found in " + fam.name());

    auto add = [&](std::string name, bool constrained, bool ok, std::string detail) {
        r.checks.push_back({std::move(name), constrained, ok, std::move(detail)});
    };

    // Exact endpoint values when the expression allows them.
    auto end_value = [&](double x) {
        double y = 0.0;
        Fault f{};
        if (fam.value<double>(x, p, y, f)) return y;
        return fam(detail::clamp_interior(x, dom), p);
    };
    const double f_lo = end_value(dom.lo);
    const double f_hi = end_value(dom.hi);
    const double ztol = 1e-9;
    const bool ends_zero = std::fabs(f_lo - dom.lo) < ztol && std::fabs(f_hi - dom.lo) < ztol;
    add("endpoints", true, ends_zero || f_lo > f_hi,
        "f(lo)=" + to_string(ex::num(f_lo)) + ", f(hi)=" + to_string(ex::num(f_hi)));

    double top = -kInf, bottom = kInf;
    for (const auto& c : cps) {
        top = std::max(top, c.value);
        bottom = std::min(bottom, c.value);
    }
    top = std::max({top, f_lo, f_hi});
    bottom = std::min({bottom, f_lo, f_hi});
    add("endomorphism", true, top <= dom.hi + ztol && bottom >= dom.lo - ztol,
        "range [" + to_string(ex::num(bottom)) + ", " + to_string(ex::num(top)) + "]");

    const CriticalPoint& last = r.maxima.back();
    bool dominant = true;
    for (std::size_t i = 0; i + 1 < r.maxima.size(); ++i)
        if (r.maxima[i].value > last.value) dominant = false;
    add("dominance", true, dominant, "rightmost maximum value " + to_string(ex::num(last.value)));

    r.profile = sign_profile(fam, p, {detail::clamp_interior(dom.lo, dom), detail::clamp_interior(dom.hi, dom)}, grid);
    const double x1 = r.maxima.front().x, xn = last.x;

    // Segment sign at a point, read off the profile.
    auto sign_at = [&](double x) {
        std::size_t k = 0;
        while (k < r.profile.changes.size() && r.profile.changes[k] < x) ++k;
        return r.profile.signs.empty() ? -1 : r.profile.signs[std::min(k, r.profile.signs.size() - 1)];
    };
    const int inner_changes = r.profile.count_in(x1, xn);
    const bool inner_negative = inner_changes == 0 && (r.maxima.size() == 1 || sign_at(0.5 * (x1 + xn)) < 0);
    add("schwarzian_negative_between_maxima", true, inner_negative,
        std::to_string(inner_changes) + " sign changes in [x1, xn]");

    const int right = r.profile.count_in(xn, dom.hi);
    add("right_of_last_maximum", true, right <= 1, std::to_string(right) + " sign changes in ]xn, hi]");

    const int left = r.profile.count_in(dom.lo, x1);
    // With a single maximum the left side obeys the same at-most-once rule.
    if (r.maxima.size() == 1) add("left_of_first_maximum", true, left <= 1, std::to_string(left) + " sign changes in [lo, x1[");
    else add("left_of_first_maximum", false, true, std::to_string(left) + " sign changes in ]lo, x1[");

    for (const auto& c : r.maxima) {
        if (!c.integer_degree) r.notes.push_back("maximum at x=" + to_string(ex::num(c.x)) + " has non-integer degree");
        else if (c.degree >= 8) r.notes.push_back("maximum at x=" + to_string(ex::num(c.x)) + " has degree >= 8");
    }
    if (left > 0) r.notes.push_back("Schwarzian changes sign " + std::to_string(left) + " times left of the first maximum");
    if (r.profile.any_positive()) r.notes.push_back("Schwarzian positive on part of the domain");
    for (const auto& n : r.profile.notes)
        if (n.rfind("pole", 0) != 0) r.notes.push_back(n);

    bool failed = false;
    for (const auto& c : r.checks)
        if (c.constrained && !c.ok) failed = true;
    r.verdict = failed ? Verdict::fail : (r.notes.empty() ? Verdict::pass : Verdict::pass_with_notes);
    return r;
}

}  // namespace feigen
