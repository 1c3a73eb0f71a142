#pragma once

/**
 * @file bifurcation.hpp
 * @brief Cascade tracking along parameter paths.
 *
 * A stable period-P orbit is continued in the path coordinate t by Newton
 * polishing of f^P(x) - x. Its multiplier m(t) is watched: m = -1 is a flip,
 * m = +1 a tangent event, m = 0 a superstable parameter. Each crossing is
 * bracketed by the continuation and refined by the Illinois variant of
 * regula falsi, with the orbit re-polished at every trial parameter.
 */

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "catalog.hpp"
#include "double_double.hpp"
#include "dynamics.hpp"

namespace feigen {

enum class EventKind { flip, tangent, superstable };

inline const char* event_kind_name(EventKind k) {
    switch (k) {
        case EventKind::flip: return "flip";
        case EventKind::tangent: return "tangent";
        case EventKind::superstable: return "superstable";
    }
    return "?";
}

enum class Precision { float64, double_double, automatic };

struct BifurcationEvent {
    double t = 0.0;
    double t_lo = 0.0;  // low word when refined in double-double
    Params params;
    EventKind kind = EventKind::flip;
    int period_before = 1;
    double residual = 0.0;
    double bracket_width = 0.0;
    double orbit_point = 0.0;
    bool double_double = false;
};

struct BifurcationSequence {
    std::string family;
    ParamPath path;
    std::vector<BifurcationEvent> events;       // flips and tangent events in path order
    std::vector<BifurcationEvent> superstable;  // m = 0 crossings
    bool partial = false;
    std::string note;

    [[nodiscard]] std::vector<double> flip_t() const {
        std::vector<double> out;
        for (const auto& e : events)
            if (e.kind == EventKind::flip) out.push_back(e.t);
        return out;
    }
    [[nodiscard]] std::vector<BifurcationEvent> flips() const {
        std::vector<BifurcationEvent> out;
        for (const auto& e : events)
            if (e.kind == EventKind::flip) out.push_back(e);
        return out;
    }
};

struct CascadeOptions {
    Precision precision = Precision::automatic;
    int dd_from_rank = 10;        // automatic mode switches to double-double at this rank
    double max_dm = 0.25;         // largest multiplier change per continuation step
    int max_steps = 200000;
    std::optional<Interval> t_range;  // path coordinates searched; default from the family
    int start_grid = 96;
    bool continue_to_superstable = false;  // after the last flip, run on to the next m = 0
    ClassifyOptions classify{};
};

// ------------------------------------------------------------ orbit map

namespace detail {

template <class S>
inline double scale_of(S v) {
    return std::max(1.0, std::fabs(to_double(v)));
}

template <class S>
inline S eps_of() {
    if constexpr (std::is_same_v<S, DoubleDouble>) return S(1e-30);
    else return S(4e-16);
}

template <class S>
class OrbitMap {
public:
    OrbitMap(const MapFamily& fam, const ParamPath& path, int period) : fam_(fam), path_(path), period_(period) {}

    [[nodiscard]] int period() const { return period_; }

    // f^P at x and its x-derivative.
    bool eval(S x, S t, S& xn, S& m) const {
        const BasicParams<S> p = path_.at_s<S>(t);
        Jet3<S> j;
        Fault f{};
        m = S(1.0);
        for (int i = 0; i < period_; ++i) {
            if (!fam_.jet<S>(x, p, 1, j, f)) return false;
            m = m * j.f1;
            x = j.f;
        }
        xn = x;
        return std::isfinite(to_double(m));
    }

    // Also the second derivative of f^P.
    bool eval2(S x, S t, S& xn, S& m, S& m2) const {
        const BasicParams<S> p = path_.at_s<S>(t);
        Jet3<S> j;
        Fault f{};
        m = S(1.0);
        m2 = S(0.0);
        for (int i = 0; i < period_; ++i) {
            if (!fam_.jet<S>(x, p, 2, j, f)) return false;
            m2 = j.f2 * m * m + j.f1 * m2;
            m = m * j.f1;
            x = j.f;
        }
        xn = x;
        return true;
    }

    // Newton on f^P(x) - x at fixed t; x is updated in place.
    // max_step, when positive, keeps Newton on the branch it starts from.
    bool polish(S& x, S t, S& m, double max_step = 0.0) const {
        const Interval dom = fam_.domain_at(path_.at(to_double(t)));
        double cap = std::isfinite(dom.width()) ? 0.25 * dom.width() : 0.25 * scale_of(x);
        if (max_step > 0.0) cap = std::min(cap, max_step);
        for (int it = 0; it < 80; ++it) {
            S xn, dn;
            if (!eval(x, t, xn, dn)) return false;
            const S g = xn - x;
            const S dg = dn - S(1.0);
            if (to_double(g) == 0.0) {
                m = dn;
                return true;
            }
            if (to_double(dg) == 0.0) return false;
            S step = -g / dg;
            const double sd = to_double(step);
            if (!std::isfinite(sd)) return false;
            if (std::fabs(sd) > cap) step = S(sd > 0 ? cap : -cap);
            x = x + step;
            if (detail::outside(to_double(x), dom)) return false;
            if (std::fabs(to_double(step)) <= to_double(eps_of<S>()) * scale_of(x)) {
                S xn2;
                if (!eval(x, t, xn2, m)) return false;
                return true;
            }
        }
        // Rounding plateau: accept if the residual is at noise level.
        S xn, dn;
        if (!eval(x, t, xn, dn)) return false;
        if (std::fabs(to_double(xn - x)) > 1e3 * to_double(eps_of<S>()) * scale_of(x)) return false;
        m = dn;
        return true;
    }

    // True when x already repeats after a proper divisor of the period.
    [[nodiscard]] bool collapsed(S x, S t) const {
        const BasicParams<S> p = path_.at_s<S>(t);
        int n = period_;
        std::vector<int> primes;
        for (int q = 2; q <= n; ++q) {
            if (n % q) continue;
            primes.push_back(q);
            while (n % q == 0) n /= q;
        }
        for (int q : primes) {
            const int d = period_ / q;
            S y = x;
            S out;
            Fault f{};
            for (int i = 0; i < d; ++i) {
                if (!fam_.value<S>(y, p, out, f)) return false;
                y = out;
            }
            if (std::fabs(to_double(y - x)) < 1e-9 * scale_of(x)) return true;
        }
        return false;
    }

private:
    const MapFamily& fam_;
    const ParamPath& path_;
    int period_;
};

template <class S>
struct OrbitPoint {
    S t;
    S x;
    S m;
};

template <class S>
struct Refined {
    OrbitPoint<S> at;
    double residual = 0.0;
    double width = 0.0;
};

// Illinois iteration on m(t) - target between a and b (opposite signs).
template <class S>
std::optional<Refined<S>> refine_crossing(const OrbitMap<S>& om, OrbitPoint<S> a, OrbitPoint<S> b, double target) {
    const S tau(target);
    S ha = a.m - tau;
    S hb = b.m - tau;
    const double htol = std::is_same_v<S, DoubleDouble> ? 1e-26 : 1e-14;
    const double ttol = std::is_same_v<S, DoubleDouble> ? 1e-30 : 2e-16;
    int side = 0;
    OrbitPoint<S> best = std::fabs(to_double(ha)) < std::fabs(to_double(hb)) ? a : b;
    double best_h = std::min(std::fabs(to_double(ha)), std::fabs(to_double(hb)));
    for (int it = 0; it < 300; ++it) {
        const double width = std::fabs(to_double(b.t - a.t));
        if (best_h < htol || width < ttol * scale_of(a.t)) return Refined<S>{best, best_h, width};
        S tc = (a.t * hb - b.t * ha) / (hb - ha);
        const double lo = std::min(to_double(a.t), to_double(b.t));
        const double hi = std::max(to_double(a.t), to_double(b.t));
        if (!(to_double(tc) > lo && to_double(tc) < hi)) tc = (a.t + b.t) * S(0.5);
        S xc = a.x + (b.x - a.x) * ((tc - a.t) / (b.t - a.t));
        S mc;
        const double cap = 2.0 * std::fabs(to_double(b.x - a.x)) + 1e-10 * scale_of(a.x);
        if (!om.polish(xc, tc, mc, cap) || om.collapsed(xc, tc)) {
            tc = (a.t + b.t) * S(0.5);
            xc = (a.x + b.x) * S(0.5);
            if (!om.polish(xc, tc, mc, cap) || om.collapsed(xc, tc)) {
                // Degenerate point (m = 1 at a pitchfork): keep what was reached.
                if (best_h < 1e-10) return Refined<S>{best, best_h, std::fabs(to_double(b.t - a.t))};
                return std::nullopt;
            }
        }
        const S hc = mc - tau;
        const OrbitPoint<S> c{tc, xc, mc};
        if (std::fabs(to_double(hc)) < best_h) {
            best_h = std::fabs(to_double(hc));
            best = c;
        }
        if ((to_double(hc) > 0.0) == (to_double(hb) > 0.0)) {
            b = c;
            hb = hc;
            if (side == -1) ha = ha * S(0.5);
            side = -1;
        } else {
            a = c;
            ha = hc;
            if (side == +1) hb = hb * S(0.5);
            side = +1;
        }
    }
    return Refined<S>{best, best_h, std::fabs(to_double(b.t - a.t))};
}

// Fold: solve f^P(x,t) = x and (f^P)'(x,t) = 1 together by Newton in (x, t).
inline std::optional<Refined<double>> solve_fold(const OrbitMap<double>& om, OrbitPoint<double> start) {
    double x = start.x, t = start.t;
    for (int it = 0; it < 60; ++it) {
        double xn, m, m2;
        if (!om.eval2(x, t, xn, m, m2)) return std::nullopt;
        const double F1 = xn - x, F2 = m - 1.0;
        const double h = 1e-7 * scale_of(t);
        double xp, mp, xm, mm;
        if (!om.eval(x, t + h, xp, mp) || !om.eval(x, t - h, xm, mm)) return std::nullopt;
        const double J11 = m - 1.0, J12 = (xp - xm) / (2 * h);
        const double J21 = m2, J22 = (mp - mm) / (2 * h);
        const double det = J11 * J22 - J12 * J21;
        if (det == 0.0 || !std::isfinite(det)) return std::nullopt;
        const double dx = -(F1 * J22 - J12 * F2) / det;
        const double dt = -(J11 * F2 - J21 * F1) / det;
        x += dx;
        t += dt;
        if (std::fabs(dx) < 1e-15 * scale_of(x) && std::fabs(dt) < 1e-15 * scale_of(t)) break;
    }
    double xn, m;
    if (!om.eval(x, t, xn, m)) return std::nullopt;
    if (std::fabs(xn - x) > 1e-10 * scale_of(x)) return std::nullopt;
    return Refined<double>{{t, x, m}, std::fabs(m - 1.0), 0.0};
}

}  // namespace detail

// ------------------------------------------------------------ the engine

class CascadeTracker {
public:
    CascadeTracker(const MapFamily& fam, ParamPath path, CascadeOptions opt = {})
        : fam_(fam), path_(path), opt_(std::move(opt)) {
        if (opt_.t_range) {
            range_ = *opt_.t_range;
        } else {
            // Map the family's parameter range onto the path coordinate.
            const Interval pr = fam.param_range();
            const double d = fam.uses_a() ? path_.da : path_.db;
            const double base = fam.uses_a() ? path_.base.a : path_.base.b;
            if (d == 0.0) throw ConfigError("path direction does not move the family parameter");
            double t0 = (pr.lo - base) / d, t1 = (pr.hi - base) / d;
            if (t0 > t1) std::swap(t0, t1);
            range_ = {t0, t1};
        }
    }

    [[nodiscard]] Interval t_range() const { return range_; }

    struct StableStart {
        double t;
        Attractor attractor;
    };

    // First grid point (in path order) with a stable periodic attractor.
    [[nodiscard]] std::optional<StableStart> find_start() const {
        const int n = opt_.start_grid;
        for (int i = 0; i <= n; ++i) {
            const double t = range_.lo + (range_.hi - range_.lo) * i / n;
            const auto a = classify_at(t, std::nullopt);
            if (a && a->is_periodic()) return StableStart{t, *a};
        }
        return std::nullopt;
    }

    // Follow stable orbits from the start, recording events, until `flips`
    // flip events are found or the range is exhausted.
    BifurcationSequence run(int flips) const {
        if (flips < 1) throw ConfigError("cascade depth must be at least 1");
        BifurcationSequence seq;
        seq.family = fam_.name();
        seq.path = path_;
        const auto start = find_start();
        if (!start) throw CascadeNotFound("no stable periodic orbit found along the path in " + fam_.name());

        double t = start->t;
        double x = start->attractor.cycle.front();
        int P = start->attractor.period;
        double m = start->attractor.multiplier;
        double last_gap = 0.0;
        double last_flip = 0.0;
        int nflips = 0;
        bool want_superstable = false;

        for (int guard = 0; guard < 64; ++guard) {
            const bool use_dd = opt_.precision == Precision::double_double ||
                                (opt_.precision == Precision::automatic && nflips + 1 >= opt_.dd_from_rank);
            const double max_dt = last_gap > 0.0 ? last_gap / 20.0 : 0.0;
            const std::size_t n_super = seq.superstable.size();
            Segment seg = use_dd ? track<DoubleDouble>(t, x, m, P, +1, seq, max_dt)
                                 : track<double>(t, x, m, P, +1, seq, max_dt);
            if (!use_dd && opt_.precision == Precision::automatic && seg.status == Segment::Status::flip &&
                seg.event.residual >= 1e-10) {
                // Double precision ran out before the rank threshold; redo in double-double.
                seq.superstable.resize(n_super);
                seg = track<DoubleDouble>(t, x, m, P, +1, seq, max_dt);
            }
            if (want_superstable && !seq.superstable.empty() && seq.superstable.back().period_before == P) break;

            if (seg.status == Segment::Status::flip) {
                seq.events.push_back(seg.event);
                ++nflips;
                if (nflips > 1) last_gap = std::fabs(seg.event.t - last_flip);
                last_flip = seg.event.t;
                if (nflips >= flips && !opt_.continue_to_superstable) break;
                const double k = std::max(seg.slope, 1e-12);
                const double gap_pred = nflips > 1 ? last_gap / 4.5 : 0.5 / k;
                auto next = reseed(seg.event.t, gap_pred, 2 * P, seg.event.orbit_point);
                if (!next) {
                    seq.partial = nflips < flips;
                    seq.note = "lost the doubled orbit after rank " + std::to_string(nflips);
                    break;
                }
                t = next->t;
                x = next->attractor.cycle.front();
                P = next->attractor.period;
                m = next->attractor.multiplier;
                if (nflips >= flips) want_superstable = true;
                continue;
            }
            if (seg.status == Segment::Status::tangent || seg.status == Segment::Status::fold) {
                seq.events.push_back(seg.event);
                const double gap_pred = last_gap > 0.0 ? last_gap / 4.5 : 0.02 * range_.width();
                auto next = reseed(seg.event.t, gap_pred, 0, seg.event.orbit_point);
                if (!next) {
                    seq.partial = true;
                    seq.note = "no stable orbit after the tangent event at t=" + std::to_string(seg.event.t);
                    break;
                }
                t = next->t;
                x = next->attractor.cycle.front();
                P = next->attractor.period;
                m = next->attractor.multiplier;
                continue;
            }
            seq.partial = nflips < flips;
            seq.note = seg.status == Segment::Status::end ? "end of the parameter range" : "orbit lost during continuation";
            break;
        }
        if (nflips == 0) throw CascadeNotFound("no flip event found along the path in " + fam_.name());
        return seq;
    }

    // Tangent events around the first stable orbit: backward to the start of
    // the range and forward up to the first flip.
    std::vector<BifurcationEvent> tangent_events() const {
        std::vector<BifurcationEvent> out;
        const auto start = find_start();
        if (!start) return out;
        BifurcationSequence scratch;
        const double x = start->attractor.cycle.front();
        const int P = start->attractor.period;
        const double m = start->attractor.multiplier;
        Segment back = track<double>(start->t, x, m, P, -1, scratch);
        if (back.status == Segment::Status::tangent || back.status == Segment::Status::fold) out.push_back(back.event);
        Segment fwd = track<double>(start->t, x, m, P, +1, scratch);
        if (fwd.status == Segment::Status::tangent || fwd.status == Segment::Status::fold) out.push_back(fwd.event);
        std::sort(out.begin(), out.end(), [](const auto& u, const auto& v) { return u.t < v.t; });
        return out;
    }

    // Refine a single event inside [t_lo, t_hi].
    BifurcationEvent find_event(Interval bracket, EventKind kind) const {
        const auto lo = classify_at(bracket.lo, std::nullopt);
        const auto hi = classify_at(bracket.hi, std::nullopt);
        const bool lo_p = lo && lo->is_periodic();
        const bool hi_p = hi && hi->is_periodic();
        if (kind == EventKind::flip) {
            if (!lo_p || !hi_p || hi->period != 2 * lo->period)
                throw BifurcationError("invalid bracket: the ends do not classify to periods P and 2P");
        } else if (lo_p && hi_p && lo->period == hi->period && same_attractor(*lo, *hi, 1e-6)) {
            throw BifurcationError("invalid bracket: same classification at both ends");
        }
        BifurcationSequence scratch;
        const bool from_lo = kind == EventKind::flip || lo_p;
        const Attractor& a = from_lo ? *lo : *hi;
        const double t0 = from_lo ? bracket.lo : bracket.hi;
        CascadeTracker sub(fam_, path_, with_range(bracket));
        const Segment seg = sub.track<double>(t0, a.cycle.front(), a.multiplier, a.period, from_lo ? +1 : -1, scratch);
        const bool match = kind == EventKind::flip ? seg.status == Segment::Status::flip
                                                   : (seg.status == Segment::Status::tangent ||
                                                      seg.status == Segment::Status::fold);
        if (!match) throw BifurcationError("refinement did not reach the requested event inside the bracket");
        return seg.event;
    }

private:
    struct Segment {
        enum class Status { flip, tangent, fold, end, lost } status = Status::end;
        BifurcationEvent event;
        double slope = 0.0;  // |dm/dt| at the event
    };

    CascadeOptions with_range(Interval r) const {
        CascadeOptions o = opt_;
        o.t_range = r;
        return o;
    }

    [[nodiscard]] std::optional<Attractor> classify_at(double t, std::optional<double> seed) const {
        try {
            return classify_attractor(fam_, path_.at(t), seed, opt_.classify);
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }

    // Stable orbit a little past an event at t_event. want_period = 0 accepts
    // any stable periodic orbit.
    [[nodiscard]] std::optional<StableStart> reseed(double t_event, double gap_pred, int want_period,
                                                    double orbit_point) const {
        const double sgn = 1.0;
        for (double frac : {0.2, 0.1, 0.35, 0.05, 0.5, 0.02, 0.7}) {
            const double t = t_event + sgn * frac * gap_pred;
            if (t > range_.hi) continue;
            for (int s = 0; s < 2; ++s) {
                std::optional<double> seed;
                if (s == 1) {
                    const Interval d = fam_.domain_at(path_.at(t));
                    double off = orbit_point + 1e-3 * detail::x_scale(orbit_point);
                    if (!d.contains(off)) off = orbit_point - 1e-3 * detail::x_scale(orbit_point);
                    if (!d.contains(off)) continue;
                    seed = off;
                }
                const auto a = classify_at(t, seed);
                if (!a || !a->is_periodic()) continue;
                if (want_period != 0 && a->period != want_period) continue;
                if (std::fabs(a->multiplier) >= 1.0) continue;
                return StableStart{t, *a};
            }
        }
        return std::nullopt;
    }

    template <class S>
    BifurcationEvent make_event(const detail::Refined<S>& r, EventKind kind, int period) const {
        BifurcationEvent e;
        e.t = to_double(r.at.t);
        if constexpr (std::is_same_v<S, DoubleDouble>) {
            e.t = r.at.t.hi();
            e.t_lo = r.at.t.lo();
            e.double_double = true;
        }
        e.params = path_.at(e.t);
        e.kind = kind;
        e.period_before = period;
        e.residual = r.residual;
        e.bracket_width = r.width;
        e.orbit_point = to_double(r.at.x);
        return e;
    }

    // Continue the period-P orbit through x at t in direction dir until an
    // event or the end of the range.
    template <class S>
    Segment track(double t0, double x0, double m0, int P, int dir, BifurcationSequence& seq, double max_dt = 0.0) const {
        using OP = detail::OrbitPoint<S>;
        const detail::OrbitMap<S> om(fam_, path_, P);
        Segment seg;
        OP cur{S(t0), S(x0), S(m0)};
        if (!om.polish(cur.x, cur.t, cur.m)) {
            seg.status = Segment::Status::lost;
            return seg;
        }
        std::optional<OP> prev;
        const double t_end = dir > 0 ? range_.hi : range_.lo;
        // Steps longer than a fraction of the expected gap can land on an
        // unrelated window orbit of the same period.
        const double dt_cap = max_dt > 0.0 ? max_dt : 0.05 * range_.width();
        double dt = std::min(dt_cap, std::max(1e-6, 0.01 * range_.width()));
        const double dt_min = 1e-14 * detail::scale_of(t0);
        for (int step = 0; step < opt_.max_steps; ++step) {
            const double tc = to_double(cur.t);
            if ((t_end - tc) * dir <= dt_min) {
                seg.status = Segment::Status::end;
                return seg;
            }
            double h = std::min(dt, std::fabs(t_end - tc));
            OP trial{cur.t + S(dir * h), cur.x, S(0.0)};
            // Tangent predictor: dx/dt = -(d f^P / dt) / (m - 1).
            S dxdt(0.0);
            if (std::fabs(to_double(cur.m) - 1.0) > 1e-6) {
                const S ht(1e-7 * detail::scale_of(cur.t));
                S fp, fm, dummy;
                if (om.eval(cur.x, cur.t + ht, fp, dummy) && om.eval(cur.x, cur.t - ht, fm, dummy))
                    dxdt = -((fp - fm) / (ht * S(2.0))) / (cur.m - S(1.0));
            } else if (prev) {
                dxdt = (cur.x - prev->x) / (cur.t - prev->t);
            }
            const S pred = cur.x + dxdt * (trial.t - cur.t);
            trial.x = pred;
            bool ok = om.polish(trial.x, trial.t, trial.m) && !om.collapsed(trial.x, trial.t);
            if (ok && std::fabs(to_double(trial.m - cur.m)) > opt_.max_dm) ok = false;
            // Reject jumps to a neighbouring orbit.
            if (ok) {
                const double moved = std::fabs(to_double(pred - cur.x));
                const double dev = std::fabs(to_double(trial.x - pred));
                if (dev > 0.3 * moved + 1e-9 * detail::scale_of(cur.x)) ok = false;
            }
            if (!ok) {
                dt = 0.5 * h;
                if (dt < dt_min) {
                    // The orbit vanished: a fold if m was approaching +1.
                    if (to_double(cur.m) > 0.9) {
                        if constexpr (std::is_same_v<S, double>) {
                            const detail::OrbitMap<double> omd(fam_, path_, P);
                            if (auto r = detail::solve_fold(omd, {cur.t, cur.x, cur.m})) {
                                seg.status = Segment::Status::fold;
                                seg.event = make_event<double>(*r, EventKind::tangent, P);
                                seg.event.bracket_width = h;
                                return seg;
                            }
                        }
                    }
                    seg.status = Segment::Status::lost;
                    return seg;
                }
                continue;
            }
            const double mc = to_double(cur.m), mt = to_double(trial.m);
            // Superstable crossing.
            if ((mc > 0.0) != (mt > 0.0) || mt == 0.0) {
                if (auto r = detail::refine_crossing<S>(om, cur, trial, 0.0)) {
                    auto e = make_event<S>(*r, EventKind::superstable, P);
                    if (seq.superstable.empty() || seq.superstable.back().t != e.t) seq.superstable.push_back(e);
                }
            }
            for (double target : {-1.0, 1.0}) {
                if ((mc - target) * (mt - target) > 0.0 && mt != target) continue;
                auto r = detail::refine_crossing<S>(om, cur, trial, target);
                if (!r) {
                    seg.status = Segment::Status::lost;
                    return seg;
                }
                seg.status = target < 0 ? Segment::Status::flip : Segment::Status::tangent;
                seg.event = make_event<S>(*r, target < 0 ? EventKind::flip : EventKind::tangent, P);
                seg.slope = std::fabs((mt - mc) / h);
                return seg;
            }
            const double dm = std::fabs(mt - mc);
            prev = cur;
            cur = trial;
            if (dm < 0.06) dt = std::min(1.6 * h, dt_cap);
            else dt = h;
        }
        seg.status = Segment::Status::lost;
        return seg;
    }

    const MapFamily& fam_;
    ParamPath path_;
    CascadeOptions opt_;
    Interval range_{};
};

// ------------------------------------------------------------ δ analysis

struct DeltaReport {
    std::vector<double> b;
    std::vector<double> delta;          // (b_n - b_{n-1}) / (b_{n+1} - b_n)
    std::optional<double> b_inf;        // b_N + (b_N - b_{N-1}) / (delta_last - 1)
    std::vector<double> c;              // (b_inf - b_{n-1}) / (b_inf - b_n)
    std::vector<double> d;              // (c_n - c_{n-1}) / (c_{n+1} - c_n)
    bool monotone = true;
    std::optional<double> last_spread;  // |delta_N - delta_{N-1}| / delta_N
};

inline DeltaReport delta_report(const std::vector<double>& b) {
    DeltaReport r;
    r.b = b;
    const std::size_t n = b.size();
    for (std::size_t i = 1; i < n; ++i) {
        if (b[i] == b[i - 1]) throw BifurcationError("duplicate events: zero gap");
        if (i >= 2 && (b[i] - b[i - 1]) * (b[1] - b[0]) <= 0.0) r.monotone = false;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) r.delta.push_back((b[i] - b[i - 1]) / (b[i + 1] - b[i]));
    if (!r.delta.empty() && r.delta.back() != 1.0) {
        r.b_inf = b[n - 1] + (b[n - 1] - b[n - 2]) / (r.delta.back() - 1.0);
    }
    if (r.delta.size() >= 2)
        r.last_spread = std::fabs(r.delta.back() - r.delta[r.delta.size() - 2]) / std::fabs(r.delta.back());
    if (r.b_inf) {
        for (std::size_t i = 1; i < n; ++i) {
            const double den = *r.b_inf - b[i];
            if (den == 0.0) break;
            r.c.push_back((*r.b_inf - b[i - 1]) / den);
        }
        for (std::size_t i = 1; i + 1 < r.c.size(); ++i) {
            const double den = r.c[i + 1] - r.c[i];
            if (den == 0.0) break;
            r.d.push_back((r.c[i] - r.c[i - 1]) / den);
        }
    }
    return r;
}

// Event coordinates expressed as the moving parameter's value.
inline std::vector<double> flip_parameters(const BifurcationSequence& seq) {
    std::vector<double> out;
    const bool along_a = seq.path.da != 0.0;
    for (const auto& e : seq.flips()) out.push_back(along_a ? e.params.a : e.params.b);
    return out;
}

// A one-parameter path running against the family's orientation is walked
// the other way; events keep their parameter values and cascade order.
inline BifurcationSequence bifurcation_sequence(const MapFamily& fam, const ParamPath& path, int N,
                                                CascadeOptions opt = {}) {
    if (N < 1) throw ConfigError("depth must be at least 1");
    const bool one_param = path.da == 0.0 || path.db == 0.0;
    const double dir = path.da != 0.0 ? path.da : path.db;
    const bool against = one_param && fam.param_count() == 1 &&
                         ((fam.orientation() == Orientation::increasing) != (dir > 0.0));
    if (!against) return CascadeTracker(fam, path, opt).run(N);
    ParamPath flipped{path.base, -path.da, -path.db};
    if (opt.t_range) opt.t_range = Interval{-opt.t_range->hi, -opt.t_range->lo};
    BifurcationSequence seq = CascadeTracker(fam, flipped, opt).run(N);
    seq.path = path;
    for (auto* list : {&seq.events, &seq.superstable}) {
        for (auto& e : *list) {
            e.t = -e.t;
            e.t_lo = -e.t_lo;
        }
    }
    return seq;
}

inline BifurcationEvent find_bifurcation(const MapFamily& fam, const ParamPath& path, Interval bracket,
                                         EventKind kind = EventKind::flip, const CascadeOptions& opt = {}) {
    if (!(bracket.lo < bracket.hi)) throw ConfigError("bracket must satisfy t_lo < t_hi");
    return CascadeTracker(fam, path, opt).find_event(bracket, kind);
}

inline double accumulation_ratio(const MapFamily& fam, const ParamPath& path, int N, const CascadeOptions& opt = {}) {
    const auto seq = bifurcation_sequence(fam, path, N, opt);
    const auto b = flip_parameters(seq);
    const auto rep = delta_report(b);
    if (!rep.b_inf) throw BifurcationError("accumulation point needs at least three flips");
    return *rep.b_inf / b.front();
}

// s_0 ... s_N: parameters whose orbit of period 2^n contains a critical point.
inline std::vector<BifurcationEvent> superstable_sequence(const MapFamily& fam, const ParamPath& path, int N,
                                                          CascadeOptions opt = {}) {
    opt.continue_to_superstable = true;
    const auto seq = CascadeTracker(fam, path, opt).run(std::max(1, N));
    std::vector<BifurcationEvent> out;
    for (const auto& s : seq.superstable)
        if (static_cast<int>(out.size()) <= N) out.push_back(s);
    if (static_cast<int>(out.size()) < N + 1) throw BifurcationError("superstable parameter not found in bracket");
    return out;
}

// ------------------------------------------------------------ tine widths

struct TineWidths {
    int level = 0;                    // n: orbit period 2^(n-1)
    std::vector<double> ordered;      // orbit in the chosen order
    bool ascending = true;
    std::vector<double> gaps;         // consecutive gaps, 2^(n-1) - 1 of them
    double pair_width = 0.0;          // |x_r1 - x_r2|, ranks 2^(n-2) and 2^(n-1)
    std::vector<double> tine_pairs;   // |x_i - f^(P/2)(x_i)| for each pair, in orbit order
    double central_width = 0.0;       // tine pair containing the point nearest the critical point
    int alpha_position = -1;          // zero-based position, in the chosen order, of the later member
                                      // of the central pair
};

// Exponent-parameter families are read ascending, factor-parameter ones
// descending.
inline TineWidths tine_widths(const MapFamily& fam, const Params& p, int n, std::optional<bool> ascending = {}) {
    if (n < 1) throw ConfigError("level must be at least 1");
    const Attractor a = classify_attractor(fam, p);
    const int P = 1 << (n - 1);
    if (!a.is_periodic() || a.period != P)
        throw BifurcationError("attractor is not periodic with period " + std::to_string(P));
    TineWidths w;
    w.level = n;
    w.ascending = ascending.value_or(fam.domain().hi == kInf || (contains(fam.expr(), Op::Pow) && !contains(fam.expr(), Op::Mul)));
    w.ordered = a.orbit;
    if (!w.ascending) std::reverse(w.ordered.begin(), w.ordered.end());
    for (int i = 0; i + 1 < P; ++i) w.gaps.push_back(std::fabs(w.ordered[i + 1] - w.ordered[i]));
    if (n >= 2) w.pair_width = std::fabs(w.ordered[(P / 2) - 1] - w.ordered[P - 1]);
    if (P >= 2) {
        // cycle is in dynamical order, so f^(P/2)(cycle[i]) = cycle[i + P/2].
        for (int i = 0; i < P / 2; ++i) w.tine_pairs.push_back(std::fabs(a.cycle[i] - a.cycle[i + P / 2]));
        const auto c = principal_critical_point(fam, p);
        if (c) {
            int best = 0;
            for (int i = 0; i < P; ++i)
                if (std::fabs(a.cycle[i] - c->x) < std::fabs(a.cycle[best] - c->x)) best = i;
            const double u = a.cycle[best], v = a.cycle[(best + P / 2) % P];
            w.central_width = std::fabs(u - v);
            const double later = w.ascending ? std::max(u, v) : std::min(u, v);
            w.alpha_position = static_cast<int>(std::find(w.ordered.begin(), w.ordered.end(), later) - w.ordered.begin());
        }
    }
    return w;
}

inline std::vector<std::vector<double>> ratio_table(const std::vector<double>& level_n,
                                                    const std::vector<double>& level_n1) {
    std::vector<std::vector<double>> t(level_n.size(), std::vector<double>(level_n1.size()));
    for (std::size_t i = 0; i < level_n.size(); ++i)
        for (std::size_t j = 0; j < level_n1.size(); ++j) t[i][j] = level_n[i] / level_n1[j];
    return t;
}

// A(1) = 1, A(n+1) = 2 A(n) + (-1)^(n+1). With period 2^n, A(n) orbit points
// precede the later member of the central pair.
inline std::vector<long> alpha_pair_ranks(int n) {
    std::vector<long> out{1};
    for (int k = 1; k < n; ++k) out.push_back(2 * out.back() + (k % 2 == 1 ? 1 : -1));
    return out;
}

// ------------------------------------------------------------ front ends

struct DirectionalResult {
    BifurcationSequence sequence;
    DeltaReport report;
};

inline DirectionalResult directional_bifurcations(const MapFamily& fam, Params base, double da, double db, int N,
                                                  CascadeOptions opt = {}) {
    if (fam.param_count() != 2) throw ConfigError("directional cascades need a two-parameter family");
    if (da == 0.0 && db == 0.0) throw ConfigError("direction must be nonzero");
    const double norm = std::hypot(da, db);
    const ParamPath path{base, da / norm, db / norm};
    if (!opt.t_range) opt.t_range = Interval{0.0, 3.0};
    DirectionalResult r;
    r.sequence = bifurcation_sequence(fam, path, N, opt);
    std::vector<double> ts = r.sequence.flip_t();
    r.report = delta_report(ts);
    return r;
}

struct FeigenvalueResult {
    double n_left = 2.0;
    double n_right = 2.0;
    BifurcationSequence sequence;
    DeltaReport report;
};

inline FeigenvalueResult feigenvalue_for_degree(double n_left, double n_right, int N, const CascadeOptions& opt = {}) {
    FeigenvalueResult r;
    r.n_left = n_left;
    r.n_right = n_right;
    const MapFamily fam = feigenmap(n_left, n_right);
    r.sequence = bifurcation_sequence(fam, default_path(fam), N, opt);
    r.report = delta_report(flip_parameters(r.sequence));
    return r;
}

}  // namespace feigen
