#pragma once

/**
 * @file dynamics.hpp
 * @brief Long-run behaviour at fixed parameters: critical points, periodic
 *        orbits and their multipliers, Lyapunov exponents, escape, and the
 *        cell scan used for maps of the whole line.
 */

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "family.hpp"
#include "parallel.hpp"

namespace feigen {

struct CriticalPoint {
    enum class Kind { maximum, minimum };
    double x = 0.0;
    Kind kind = Kind::maximum;
    int degree = 2;            // 8 means "8 or more"
    bool integer_degree = true;
    double value = 0.0;
};

inline const char* critical_kind_name(CriticalPoint::Kind k) {
    return k == CriticalPoint::Kind::maximum ? "maximum" : "minimum";
}

struct Attractor {
    enum class Kind { periodic, chaotic, escaped, unresolved };
    Kind kind = Kind::unresolved;
    int period = 0;
    std::vector<double> orbit;  // sorted ascending
    std::vector<double> cycle;  // dynamical order, starting at the smallest point
    double multiplier = 0.0;
    double closure = 0.0;
    double lyapunov = 0.0;
    Interval extent{0.0, 0.0};
    long escape_step = 0;
    double last_x = 0.0;
    std::string reason;

    [[nodiscard]] bool is_periodic() const { return kind == Kind::periodic; }
};

inline const char* attractor_kind_name(Attractor::Kind k) {
    switch (k) {
        case Attractor::Kind::periodic: return "periodic";
        case Attractor::Kind::chaotic: return "chaotic";
        case Attractor::Kind::escaped: return "escaped";
        case Attractor::Kind::unresolved: return "unresolved";
    }
    return "?";
}

struct ClassifyOptions {
    long transient = 100000;
    int max_pow2 = 12;          // power-of-two periods up to 2^K
    int max_general_period = 512;
    long lyapunov_steps = 100000;
    double lyapunov_threshold = 1e-3;
    double closure_tol = 1e-10;
};

namespace detail {

inline double x_scale(double x) { return std::max(1.0, std::fabs(x)); }

// Pulls x into the open interior of d by 1e-12 (relative to the scale).
inline double clamp_interior(double x, Interval d) {
    if (std::isfinite(d.lo)) x = std::max(x, d.lo + 1e-12 * x_scale(d.lo));
    if (std::isfinite(d.hi)) x = std::min(x, d.hi - 1e-12 * x_scale(d.hi));
    return x;
}

inline bool outside(double x, Interval d) {
    const double slack = 1e-12;
    return x < d.lo - slack * x_scale(d.lo) || x > d.hi + slack * x_scale(d.hi) || !std::isfinite(x);
}

}  // namespace detail

// ------------------------------------------------------------ critical points

inline std::vector<CriticalPoint> find_critical_points(const MapFamily& fam, const Params& p, Interval range,
                                                       int grid = 4096) {
    const Interval dom = fam.domain_at(p);
    range.lo = std::max(range.lo, dom.lo);
    range.hi = std::min(range.hi, dom.hi);
    if (!(range.lo < range.hi) || !std::isfinite(range.lo) || !std::isfinite(range.hi))
        throw ConfigError("critical point search needs a finite range inside the domain");

    auto d1 = [&](double x, double& out) {
        Jet3<double> j;
        Fault f{};
        if (!fam.jet<double>(x, p, 1, j, f)) return false;
        out = j.f1;
        return true;
    };

    std::vector<CriticalPoint> out;
    const double h = range.width() / grid;
    double xp = detail::clamp_interior(range.lo, range);
    double gp = 0.0;
    bool have_prev = d1(xp, gp);
    int evaluated = have_prev ? 1 : 0;
    for (int i = 1; i <= grid; ++i) {
        const double xc = i == grid ? detail::clamp_interior(range.hi, range) : range.lo + i * h;
        double gc = 0.0;
        if (!d1(xc, gc)) {
            have_prev = false;
            continue;
        }
        ++evaluated;
        if (have_prev && ((gp > 0.0 && gc <= 0.0) || (gp < 0.0 && gc >= 0.0))) {
            if (gc == 0.0 && i < grid) {
                // Exact zero on the grid: let the next cell decide the sign change.
                double gn = 0.0;
                if (d1(range.lo + (i + 1) * h, gn) && ((gp > 0.0) == (gn > 0.0))) {
                    xp = xc;
                    gp = gp;
                    continue;
                }
            }
            double lo = xp, hi = xc, glo = gp;
            while (hi - lo > 1e-12 * detail::x_scale(lo)) {
                const double mid = 0.5 * (lo + hi);
                double gm = 0.0;
                if (!d1(mid, gm)) break;
                if (gm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if ((gm > 0.0) == (glo > 0.0)) {
                    lo = mid;
                    glo = gm;
                } else {
                    hi = mid;
                }
            }
            CriticalPoint c;
            c.x = 0.5 * (lo + hi);
            c.kind = gp > 0.0 ? CriticalPoint::Kind::maximum : CriticalPoint::Kind::minimum;
            const Jet3<double> j = fam.jet3(c.x, p, 3);
            c.value = j.f;
            const double tol = 1e-6 * std::max(1.0, std::fabs(j.f));
            if (std::fabs(j.f2) > tol) {
                c.degree = 2;
            } else if (std::fabs(j.f3) > tol) {
                c.degree = 3;
            } else {
                // |f(x+s) - f(x)| ~ C s^d: compare two step sizes on the side that
                // stays in the domain.
                const double s = 1e-3 * std::max(range.width(), 1e-6);
                auto probe = [&](double step) {
                    double y = 0.0;
                    Fault f{};
                    double xs = c.x + step;
                    if (xs > range.hi) xs = c.x - step;
                    if (!fam.value<double>(xs, p, y, f)) return 0.0;
                    return std::fabs(y - j.f);
                };
                const double r1 = probe(s), r2 = probe(2.0 * s);
                double d = r1 > 0.0 ? std::log2(r2 / r1) : 8.0;
                if (!std::isfinite(d)) d = 8.0;
                c.integer_degree = std::fabs(d - std::round(d)) < 0.15;
                c.degree = std::clamp(static_cast<int>(std::lround(d)), 4, 8);
            }
            out.push_back(c);
        }
        xp = xc;
        gp = gc;
        have_prev = true;
    }
    if (evaluated == 0) throw DomainFault("derivative undefined on the whole search range");
    return out;
}

// Principal critical point: the highest maximum, or the lowest minimum when
// the map has no interior maximum.
inline std::optional<CriticalPoint> principal_critical_point(const MapFamily& fam, const Params& p) {
    const Interval dom = fam.domain_at(p);
    Interval r = fam.search_region();
    r.lo = std::max(r.lo, dom.lo);
    r.hi = std::min(r.hi, dom.hi);
    if (!(r.lo < r.hi)) return std::nullopt;
    std::vector<CriticalPoint> cps;
    try {
        cps = find_critical_points(fam, p, r);
    } catch (const std::exception&) {
        return std::nullopt;
    }
    std::optional<CriticalPoint> best;
    for (const auto& c : cps)
        if (c.kind == CriticalPoint::Kind::maximum && (!best || c.value > best->value)) best = c;
    if (best) return best;
    for (const auto& c : cps)
        if (!best || c.value < best->value) best = c;
    return best;
}

// -------------------------------------------------------------- orbit tools

// Derivative of f^n at x by the chain rule. Returns false on a fault.
inline bool iterate_with_derivative(const MapFamily& fam, const Params& p, double x, int n, double& xn, double& dn) {
    dn = 1.0;
    Jet3<double> j;
    Fault f{};
    for (int i = 0; i < n; ++i) {
        if (!fam.jet<double>(x, p, 1, j, f)) return false;
        dn *= j.f1;
        x = j.f;
    }
    xn = x;
    return true;
}

struct PolishedOrbit {
    std::vector<double> cycle;
    double multiplier = 0.0;
    double closure = 0.0;
};

// Newton on f^P(x) - x from x0.
inline std::optional<PolishedOrbit> polish_orbit(const MapFamily& fam, const Params& p, double x0, int period) {
    const Interval dom = fam.domain_at(p);
    double x = x0;
    bool converged = false;
    for (int it = 0; it < 60; ++it) {
        double xn = 0.0, dn = 0.0;
        if (!iterate_with_derivative(fam, p, x, period, xn, dn)) return std::nullopt;
        const double g = xn - x;
        const double dg = dn - 1.0;
        if (dg == 0.0 || !std::isfinite(dg)) return std::nullopt;
        double step = -g / dg;
        if (!std::isfinite(step)) return std::nullopt;
        const double cap = 0.1 * std::max(1e-3, std::isfinite(dom.width()) ? dom.width() : detail::x_scale(x));
        step = std::clamp(step, -cap, cap);
        x += step;
        if (detail::outside(x, dom)) return std::nullopt;
        if (std::fabs(step) <= 4e-16 * detail::x_scale(x)) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        // Accept a plateau at rounding level.
        double xn = 0.0, dn = 0.0;
        if (!iterate_with_derivative(fam, p, x, period, xn, dn)) return std::nullopt;
        if (std::fabs(xn - x) > 1e-12 * detail::x_scale(x)) return std::nullopt;
    }
    PolishedOrbit out;
    out.cycle.reserve(period);
    double m = 1.0;
    double y = x;
    Jet3<double> j;
    Fault f{};
    for (int i = 0; i < period; ++i) {
        out.cycle.push_back(y);
        if (!fam.jet<double>(y, p, 1, j, f)) return std::nullopt;
        m *= j.f1;
        y = j.f;
    }
    out.closure = std::fabs(y - x);
    for (int i = 0; i < period; ++i) {
        double fy = 0.0;
        if (!fam.value<double>(out.cycle[i], p, fy, f)) return std::nullopt;
        out.closure = std::max(out.closure, std::fabs(fy - out.cycle[(i + 1) % period]));
    }
    out.multiplier = m;
    return out;
}

// Smallest divisor d of `period` with f^d(x) = x to the given tolerance.
inline int minimal_period(const MapFamily& fam, const Params& p, double x, int period, double tol) {
    for (int d = 1; d < period; ++d) {
        if (period % d != 0) continue;
        double y = x;
        Fault f{};
        bool ok = true;
        for (int i = 0; i < d && ok; ++i) ok = fam.value<double>(y, p, y, f);
        if (ok && std::fabs(y - x) <= tol * detail::x_scale(x)) return d;
    }
    return period;
}

inline Attractor make_periodic(const PolishedOrbit& po) {
    Attractor a;
    a.kind = Attractor::Kind::periodic;
    a.period = static_cast<int>(po.cycle.size());
    const auto it = std::min_element(po.cycle.begin(), po.cycle.end());
    a.cycle.assign(it, po.cycle.end());
    a.cycle.insert(a.cycle.end(), po.cycle.begin(), it);
    a.orbit = po.cycle;
    std::sort(a.orbit.begin(), a.orbit.end());
    a.multiplier = po.multiplier;
    a.closure = po.closure;
    a.extent = {a.orbit.front(), a.orbit.back()};
    return a;
}

// ------------------------------------------------------------ classification

inline double lyapunov_from(const MapFamily& fam, const Params& p, double& x, long n, long* skipped = nullptr,
                            Interval* extent = nullptr, bool* escaped = nullptr) {
    const Interval dom = fam.domain_at(p);
    double sum = 0.0;
    long used = 0;
    long skip = 0;
    Jet3<double> j;
    Fault f{};
    double lo = x, hi = x;
    for (long i = 0; i < n; ++i) {
        if (!fam.jet<double>(x, p, 1, j, f) || detail::outside(j.f, dom)) {
            if (escaped) *escaped = true;
            break;
        }
        const double d = std::fabs(j.f1);
        if (d == 0.0) {
            ++skip;
        } else {
            sum += std::max(std::log(d), -700.0);
            ++used;
        }
        x = j.f;
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    if (skipped) *skipped = skip;
    if (extent) *extent = {lo, hi};
    if (used == 0) return -700.0;
    return sum / static_cast<double>(used);
}

inline Attractor classify_attractor(const MapFamily& fam, const Params& p, std::optional<double> seed = std::nullopt,
                                    const ClassifyOptions& opt = {}) {
    const Interval dom = fam.domain_at(p);
    if (!(dom.lo < dom.hi)) throw DomainFault("empty domain at these parameters");
    double x = 0.0;
    if (seed) {
        x = *seed;
    } else {
        const auto c = principal_critical_point(fam, p);
        if (!c) throw DomainFault("no critical point to seed from in " + fam.name());
        x = c->x;
    }
    if (!dom.contains(x)) throw DomainFault("seed outside the domain");
    x = detail::clamp_interior(x, dom);
    {
        double y = 0.0;
        Fault f{};
        if (!fam.value<double>(x, p, y, f)) throw DomainFault(std::string(fault_name(f)) + " at the seed");
    }

    const int max_p2 = 1 << opt.max_pow2;
    const int ring_size = std::max(2 * max_p2, 2 * opt.max_general_period) + 2;
    std::vector<double> ring(ring_size);
    auto at = [&](long n) -> double& { return ring[static_cast<std::size_t>(n % ring_size)]; };

    auto escaped = [&](long step, double last) {
        Attractor a;
        a.kind = Attractor::Kind::escaped;
        a.escape_step = step;
        a.last_x = last;
        return a;
    };

    auto try_period = [&](int P, long n) -> std::optional<Attractor> {
        const double xn = at(n);
        const double tol = 1e-4 * detail::x_scale(xn);
        if (std::fabs(xn - at(n - P)) > tol || std::fabs(at(n - 1) - at(n - 1 - P)) > tol) return std::nullopt;
        auto po = polish_orbit(fam, p, xn, P);
        if (!po || po->closure > opt.closure_tol * detail::x_scale(xn)) return std::nullopt;
        if (std::fabs(po->multiplier) > 1.0 + 1e-9) return std::nullopt;
        // Near a flip, Newton on f^P converges slowly onto a shorter cycle;
        // test each divisor loosely, then confirm it by its own polish.
        for (int d = 1; d < P; ++d) {
            if (P % d != 0) continue;
            double y = po->cycle[0];
            Fault ff{};
            bool ok = true;
            for (int i = 0; i < d && ok; ++i) ok = fam.value<double>(y, p, y, ff);
            if (!ok || std::fabs(y - po->cycle[0]) > 1e-6 * detail::x_scale(y)) continue;
            auto short_po = polish_orbit(fam, p, po->cycle[0], d);
            if (!short_po || short_po->closure > opt.closure_tol * detail::x_scale(xn)) continue;
            if (std::fabs(short_po->multiplier) > 1.0 + 1e-9) continue;
            if (minimal_period(fam, p, short_po->cycle[0], d, 1e-11) != d) continue;
            return make_periodic(*short_po);
        }
        return make_periodic(*po);
    };

    at(0) = x;
    long next_check = 256;
    Fault f{};
    for (long n = 1; n <= opt.transient; ++n) {
        double y = 0.0;
        if (!fam.value<double>(x, p, y, f) || detail::outside(y, dom)) return escaped(n, x);
        x = y;
        at(n) = x;
        if (n != next_check) continue;
        next_check = n < 4096 ? 2 * n : n + 4096;
        for (int P = 1; P <= max_p2 && P < n; P *= 2)
            if (auto a = try_period(P, n)) return *a;
        for (int P = 3; P <= opt.max_general_period && P < n; ++P) {
            if ((P & (P - 1)) == 0) continue;
            if (auto a = try_period(P, n)) return *a;
        }
    }

    Attractor res;
    Interval ext{};
    bool esc = false;
    const double lyap = lyapunov_from(fam, p, x, opt.lyapunov_steps, nullptr, &ext, &esc);
    if (esc) return escaped(opt.transient, x);
    res.lyapunov = lyap;
    res.extent = ext;
    if (lyap > opt.lyapunov_threshold) {
        res.kind = Attractor::Kind::chaotic;
    } else {
        res.kind = Attractor::Kind::unresolved;
        res.reason = "no cycle of period <= " + std::to_string(max_p2) + " and Lyapunov estimate " +
                     std::to_string(lyap) + " below threshold";
    }
    return res;
}

inline double lyapunov_estimate(const MapFamily& fam, const Params& p, double seed, long n = 100000,
                                long transient = 10000, long* skipped = nullptr) {
    if (n < 10000) throw ConfigError("Lyapunov estimate needs at least 10^4 steps");
    const Interval dom = fam.domain_at(p);
    if (!dom.contains(seed)) throw DomainFault("seed outside the domain");
    double x = detail::clamp_interior(seed, dom);
    Fault f{};
    for (long i = 0; i < transient; ++i) {
        double y = 0.0;
        if (!fam.value<double>(x, p, y, f) || detail::outside(y, dom)) throw DomainFault("orbit escaped during transient");
        x = y;
    }
    bool esc = false;
    const double l = lyapunov_from(fam, p, x, n, skipped, nullptr, &esc);
    if (esc) throw DomainFault("orbit escaped while averaging");
    return l;
}

inline double geometric_mean(const std::vector<double>& orbit) {
    if (orbit.empty()) throw ConfigError("geometric mean of an empty orbit");
    double s = 0.0;
    for (double v : orbit) {
        if (!(v > 0.0)) throw DomainFault("geometric mean needs positive elements");
        s += std::log(v);
    }
    return std::exp(s / static_cast<double>(orbit.size()));
}

// Two attractors are the same when their orbits coincide, or, for chaotic
// ones, when their extents overlap.
inline bool same_attractor(const Attractor& u, const Attractor& v, double tol = 1e-7) {
    if (u.kind != v.kind) return false;
    switch (u.kind) {
        case Attractor::Kind::periodic:
            if (u.period != v.period) return false;
            for (std::size_t i = 0; i < u.orbit.size(); ++i)
                if (std::fabs(u.orbit[i] - v.orbit[i]) > tol * detail::x_scale(u.orbit[i])) return false;
            return true;
        case Attractor::Kind::chaotic: return u.extent.lo <= v.extent.hi && v.extent.lo <= u.extent.hi;
        case Attractor::Kind::escaped: return true;
        case Attractor::Kind::unresolved: return true;
    }
    return false;
}

// ------------------------------------------------------------- local scan

struct ScanCell {
    Interval cell;
    Attractor attractor;
};

struct ScanRegion {
    Interval span;
    std::vector<Attractor> attractors;  // attractors located inside span
};

struct LocalScanReport {
    std::vector<ScanCell> cells;      // one per seed cell
    std::vector<ScanCell> merged;     // adjacent cells with the same attractor joined
    std::vector<Attractor> attractors;  // distinct attractors, sorted by location
    std::vector<double> separators;   // repelling fixed points with f' > 1
    std::vector<ScanRegion> regions;  // range cut at the separators
};

// Fixed points of f in range with f' > 1: they bound invariant pieces.
inline std::vector<double> separating_fixed_points(const MapFamily& fam, const Params& p, Interval range,
                                                   int grid = 8192) {
    std::vector<double> out;
    auto g = [&](double x, double& v) {
        double y = 0.0;
        Fault f{};
        if (!fam.value<double>(x, p, y, f)) return false;
        v = y - x;
        return true;
    };
    const double h = range.width() / grid;
    double xp = range.lo, gp = 0.0;
    bool okp = g(xp, gp);
    for (int i = 1; i <= grid; ++i) {
        const double xc = range.lo + i * h;
        double gc = 0.0;
        const bool okc = g(xc, gc);
        if (okp && okc && (gp == 0.0 || (gp < 0.0) != (gc < 0.0))) {
            double lo = xp, hi = xc, glo = gp;
            if (gp == 0.0) hi = lo;
            for (int it = 0; it < 200 && hi - lo > 1e-14 * detail::x_scale(lo); ++it) {
                const double mid = 0.5 * (lo + hi);
                double gm = 0.0;
                if (!g(mid, gm)) break;
                if ((gm < 0.0) == (glo < 0.0)) {
                    lo = mid;
                    glo = gm;
                } else {
                    hi = mid;
                }
            }
            const double xf = 0.5 * (lo + hi);
            const Jet3<double> j = fam.jet3(xf, p, 1);
            if (j.f1 > 1.0 && (out.empty() || xf - out.back() > 1e-9)) out.push_back(xf);
        }
        xp = xc;
        gp = gc;
        okp = okc;
    }
    return out;
}

inline LocalScanReport scan_local_attractors(const MapFamily& fam, const Params& p, Interval range, double cell,
                                             int workers = 1, const ClassifyOptions& opt = {}) {
    if (!(cell > 0.0) || !(range.lo < range.hi)) throw ConfigError("scan needs a positive cell width and a range");
    const int n = std::max(1, static_cast<int>(std::ceil(range.width() / cell - 1e-9)));
    LocalScanReport rep;
    rep.cells.resize(n);
    auto classify_cell = [&](int i) {
        const double lo = range.lo + i * cell;
        const double hi = std::min(range.hi, lo + cell);
        ScanCell c;
        c.cell = {lo, hi};
        try {
            c.attractor = classify_attractor(fam, p, 0.5 * (lo + hi), opt);
        } catch (const DomainFault& e) {
            c.attractor.kind = Attractor::Kind::unresolved;
            c.attractor.reason = e.what();
        }
        rep.cells[i] = std::move(c);
    };
    parallel_for(n, workers, classify_cell);

    for (const auto& c : rep.cells) {
        if (!rep.merged.empty() && same_attractor(rep.merged.back().attractor, c.attractor)) {
            auto& last = rep.merged.back();
            last.cell.hi = c.cell.hi;
            if (c.attractor.kind == Attractor::Kind::chaotic) {
                last.attractor.extent.lo = std::min(last.attractor.extent.lo, c.attractor.extent.lo);
                last.attractor.extent.hi = std::max(last.attractor.extent.hi, c.attractor.extent.hi);
            }
            continue;
        }
        rep.merged.push_back(c);
    }

    // Distinct attractors, also seeded from the critical points so that a
    // piece whose cells all wander elsewhere is still represented.
    std::vector<Attractor> found;
    for (const auto& c : rep.cells) found.push_back(c.attractor);
    Interval crit_range = range;
    try {
        for (const auto& cp : find_critical_points(fam, p, crit_range, std::max(4096, 64 * n))) {
            try {
                found.push_back(classify_attractor(fam, p, cp.x, opt));
            } catch (const DomainFault&) {
            }
        }
    } catch (const std::exception&) {
    }
    for (const auto& a : found) {
        if (a.kind != Attractor::Kind::periodic && a.kind != Attractor::Kind::chaotic) continue;
        if (a.extent.hi < range.lo || a.extent.lo > range.hi) continue;
        bool merged = false;
        for (auto& b : rep.attractors) {
            if (same_attractor(a, b)) {
                if (a.kind == Attractor::Kind::chaotic) {
                    b.extent.lo = std::min(b.extent.lo, a.extent.lo);
                    b.extent.hi = std::max(b.extent.hi, a.extent.hi);
                }
                merged = true;
                break;
            }
        }
        if (!merged) rep.attractors.push_back(a);
    }
    std::sort(rep.attractors.begin(), rep.attractors.end(),
              [](const Attractor& u, const Attractor& v) { return u.extent.lo < v.extent.lo; });

    rep.separators = separating_fixed_points(fam, p, range);
    std::vector<double> cuts{range.lo};
    for (double s : rep.separators)
        if (s > range.lo && s < range.hi) cuts.push_back(s);
    cuts.push_back(range.hi);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        ScanRegion r;
        r.span = {cuts[i], cuts[i + 1]};
        for (const auto& a : rep.attractors) {
            const double mid = 0.5 * (a.extent.lo + a.extent.hi);
            if (mid >= r.span.lo && mid < r.span.hi) r.attractors.push_back(a);
        }
        if (!r.attractors.empty()) rep.regions.push_back(std::move(r));
    }
    return rep;
}

// ------------------------------------------------------------- diagram

struct DiagramSample {
    double t = 0.0;
    Params params;
    std::vector<double> xs;
    bool ok = true;
    std::string note;
};

inline DiagramSample diagram_column(const MapFamily& fam, const ParamPath& path, double t, long transient,
                                    int samples) {
    DiagramSample s;
    s.t = t;
    s.params = path.at(t);
    try {
        const Interval dom = fam.domain_at(s.params);
        const auto c = principal_critical_point(fam, s.params);
        if (!c) throw DomainFault("no critical point");
        double x = detail::clamp_interior(c->x, dom);
        Fault f{};
        for (long i = 0; i < transient + samples; ++i) {
            double y = 0.0;
            if (!fam.value<double>(x, s.params, y, f) || detail::outside(y, dom)) throw DomainFault("escaped");
            x = y;
            if (i >= transient) s.xs.push_back(x);
        }
    } catch (const std::exception& e) {
        s.ok = false;
        s.xs.clear();
        s.note = e.what();
    }
    return s;
}

}  // namespace feigen
