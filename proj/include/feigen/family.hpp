#pragma once

// Parameterised map families and parameter paths.

#include <cmath>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "expr.hpp"

namespace feigen {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Interval {
    double lo = 0.0;
    double hi = 1.0;

    [[nodiscard]] bool contains(double x) const { return x >= lo && x <= hi; }
    [[nodiscard]] bool bounded() const { return std::isfinite(lo) && std::isfinite(hi); }
    [[nodiscard]] double width() const { return hi - lo; }
};

enum class Orientation { increasing, decreasing };

inline const char* orientation_name(Orientation o) {
    return o == Orientation::increasing ? "increasing" : "decreasing";
}

template <class S = double>
struct BasicParams {
    S a{};
    S b{};
};
using Params = BasicParams<double>;

// How an inner transform moves the domain: the new variable x relates to the
// previous one by x_prev = g(x), so the domain is pulled back through g.
struct DomainStep {
    enum class Kind { scale, shift, power, reciprocal };
    Kind kind = Kind::scale;
    NodePtr param;  // expression in a, b giving the transform constant
    std::shared_ptr<const Program> program;

    static DomainStep make(Kind k, NodePtr param = ex::num(0.0)) {
        auto prog = std::make_shared<const Program>(param);
        return {k, std::move(param), std::move(prog)};
    }

    [[nodiscard]] Interval apply(Interval d, const Params& p) const {
        double c = 0.0;
        if (kind != Kind::reciprocal) {
            Fault f{};
            if (!program->eval<double>(0.0, p.a, p.b, c, f)) return {kInf, -kInf};
        }
        switch (kind) {
            case Kind::scale: {  // x_prev = c x
                if (c == 0.0) return {-kInf, kInf};
                Interval r{d.lo / c, d.hi / c};
                if (r.lo > r.hi) std::swap(r.lo, r.hi);
                return r;
            }
            case Kind::shift: return {d.lo - c, d.hi - c};  // x_prev = x + c
            case Kind::power:                               // x_prev = x^c
                if (c <= 0.0 || d.lo < 0.0) return {kInf, -kInf};
                return {std::pow(d.lo, 1.0 / c), std::pow(d.hi, 1.0 / c)};
            case Kind::reciprocal: {  // x_prev = 1/x
                const double lo = d.hi == kInf ? 0.0 : 1.0 / d.hi;
                const double hi = d.lo == 0.0 ? kInf : 1.0 / d.lo;
                return {lo, hi};
            }
        }
        return d;
    }
};

class MapFamily {
public:
    MapFamily() = default;
    MapFamily(std::string name, NodePtr expr, Interval domain, Orientation orientation)
        : name_(std::move(name)), expr_(std::move(expr)), domain_(domain), orientation_(orientation) {
        if (!expr_) throw ConfigError("empty expression");
        if (!(domain_.lo < domain_.hi)) throw ConfigError("domain must be a nonempty interval");
        program_ = std::make_shared<const Program>(expr_);
        uses_a_ = contains(expr_, Op::A);
        uses_b_ = contains(expr_, Op::B);
        search_ = {domain_.lo, domain_.hi};
    }

    [[nodiscard]] const std::string& name() const { return name_; }
    [[nodiscard]] const NodePtr& expr() const { return expr_; }
    [[nodiscard]] std::string text() const { return to_string(expr_); }
    [[nodiscard]] const Program& program() const { return *program_; }
    [[nodiscard]] Interval domain() const { return domain_; }
    [[nodiscard]] Orientation orientation() const { return orientation_; }
    [[nodiscard]] bool uses_a() const { return uses_a_; }
    [[nodiscard]] bool uses_b() const { return uses_b_; }
    [[nodiscard]] int param_count() const { return int(uses_a_) + int(uses_b_); }
    [[nodiscard]] std::vector<std::string> param_names() const {
        std::vector<std::string> out;
        if (uses_a_) out.emplace_back("a");
        if (uses_b_) out.emplace_back("b");
        return out;
    }
    [[nodiscard]] const std::vector<DomainStep>& steps() const { return steps_; }

    // Parameter interval in which cascades are searched by default.
    [[nodiscard]] Interval param_range() const { return param_range_; }
    // Region of x where critical points are looked for.
    [[nodiscard]] Interval search_region() const { return search_; }

    MapFamily& set_name(std::string n) { name_ = std::move(n); return *this; }
    MapFamily& set_param_range(Interval r) { param_range_ = r; return *this; }
    MapFamily& set_search_region(Interval r) { search_ = r; return *this; }
    MapFamily& set_orientation(Orientation o) { orientation_ = o; return *this; }
    MapFamily& add_step(DomainStep s) { steps_.push_back(std::move(s)); return *this; }
    MapFamily& set_steps(std::vector<DomainStep> s) { steps_ = std::move(s); return *this; }

    // Domain of the map at the given parameters (inner transforms move it).
    [[nodiscard]] Interval domain_at(const Params& p) const {
        Interval d = domain_;
        for (const auto& s : steps_) d = s.apply(d, p);
        return d;
    }

    template <class S>
    bool value(S x, const BasicParams<S>& p, S& out, Fault& fault) const {
        return program_->eval<S>(x, p.a, p.b, out, fault);
    }
    template <class S>
    bool jet(S x, const BasicParams<S>& p, int order, Jet3<S>& out, Fault& fault) const {
        return program_->eval_jet<S>(x, p.a, p.b, order, out, fault);
    }

    // Convenience wrappers that throw DomainFault.
    [[nodiscard]] double operator()(double x, const Params& p) const {
        double y = 0.0;
        Fault f{};
        if (!value<double>(x, p, y, f)) throw DomainFault(std::string(fault_name(f)) + " at x=" + std::to_string(x));
        return y;
    }
    [[nodiscard]] Jet3<double> jet3(double x, const Params& p, int order = 3) const {
        Jet3<double> j;
        Fault f{};
        if (!jet<double>(x, p, order, j, f)) throw DomainFault(std::string(fault_name(f)) + " at x=" + std::to_string(x));
        return j;
    }

private:
    std::string name_;
    NodePtr expr_;
    std::shared_ptr<const Program> program_;
    Interval domain_{};
    Orientation orientation_ = Orientation::increasing;
    bool uses_a_ = false;
    bool uses_b_ = false;
    std::vector<DomainStep> steps_;
    Interval param_range_{0.0, 4.0};
    Interval search_{0.0, 1.0};
};

// Builds a family from DSL text; parameters are detected from a and b.
inline MapFamily parse_family(std::string_view text, Interval domain, Orientation orientation,
                              std::string name = {}) {
    NodePtr e = parse_expression(text);
    MapFamily fam(name.empty() ? std::string(text) : std::move(name), e, domain, orientation);
    if (fam.param_count() == 0) throw ConfigError("no parameter (a or b) in expression");
    return fam;
}

// params(t) = base + t * direction
struct ParamPath {
    Params base{};
    double da = 1.0;
    double db = 0.0;

    [[nodiscard]] Params at(double t) const { return {base.a + t * da, base.b + t * db}; }
    template <class S>
    [[nodiscard]] BasicParams<S> at_s(S t) const {
        return {S(base.a) + t * S(da), S(base.b) + t * S(db)};
    }

    static ParamPath along_a(double sign = 1.0, double b = 0.0) { return {{0.0, b}, sign, 0.0}; }
    // Path coordinate of parameter value a on a one-parameter path.
    [[nodiscard]] double t_of_a(double a) const { return (a - base.a) / da; }
};

// Default path for a one-parameter family, following its orientation.
inline ParamPath default_path(const MapFamily& fam) {
    const double sign = fam.orientation() == Orientation::increasing ? 1.0 : -1.0;
    if (fam.uses_a()) return {{0.0, 0.0}, sign, 0.0};
    return {{0.0, 0.0}, 0.0, sign};
}

}  // namespace feigen
