#pragma once

/**
 * @file expr.hpp
 * @brief Expression trees for map families: parser, printer and a compiled
 *        stack evaluator for plain values and third-order jets.
 *
 * Grammar (no implicit multiplication, whitespace ignored):
 *
 *   expr    := term (('+' | '-') term)*
 *   term    := unary (('*' | '/') unary)*
 *   unary   := '-' unary | power
 *   power   := atom ('^' unary)?          right associative
 *   atom    := number | x | a | b | pi | e | func '(' expr ')' | '(' expr ')'
 *   func    := sin | cos | exp | ln | sqrt | abs
 *
 * so -x^2 is -(x^2) and 2^-x is 2^(-x).
 */

#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "double_double.hpp"
#include "errors.hpp"
#include "jet.hpp"

namespace feigen {

enum class Op : std::uint8_t {
    Num, Pi, E, X, A, B,
    Neg, Abs, Sin, Cos, Exp, Ln, Sqrt,
    Add, Sub, Mul, Div, Pow,
};

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
    Op op = Op::Num;
    double value = 0.0;  // Num only; always >= 0
    NodePtr lhs;
    NodePtr rhs;
};

inline bool is_unary(Op op) { return op >= Op::Neg && op <= Op::Sqrt; }
inline bool is_binary(Op op) { return op >= Op::Add; }

namespace ex {

inline NodePtr leaf(Op op) { return std::make_shared<const Node>(Node{op, 0.0, nullptr, nullptr}); }
inline NodePtr unary(Op op, NodePtr u) { return std::make_shared<const Node>(Node{op, 0.0, std::move(u), nullptr}); }
inline NodePtr binary(Op op, NodePtr l, NodePtr r) {
    return std::make_shared<const Node>(Node{op, 0.0, std::move(l), std::move(r)});
}
// Negative constants are stored as Neg(Num) so printing round-trips.
inline NodePtr num(double v) {
    if (std::signbit(v) && v != 0.0) return unary(Op::Neg, num(-v));
    return std::make_shared<const Node>(Node{Op::Num, v == 0.0 ? 0.0 : v, nullptr, nullptr});
}
inline NodePtr x() { return leaf(Op::X); }
inline NodePtr a() { return leaf(Op::A); }
inline NodePtr b() { return leaf(Op::B); }
inline NodePtr pi() { return leaf(Op::Pi); }
inline NodePtr neg(NodePtr u) { return unary(Op::Neg, std::move(u)); }
inline NodePtr add(NodePtr l, NodePtr r) { return binary(Op::Add, std::move(l), std::move(r)); }
inline NodePtr sub(NodePtr l, NodePtr r) { return binary(Op::Sub, std::move(l), std::move(r)); }
inline NodePtr mul(NodePtr l, NodePtr r) { return binary(Op::Mul, std::move(l), std::move(r)); }
inline NodePtr div(NodePtr l, NodePtr r) { return binary(Op::Div, std::move(l), std::move(r)); }
inline NodePtr pow(NodePtr l, NodePtr r) { return binary(Op::Pow, std::move(l), std::move(r)); }
inline NodePtr ln(NodePtr u) { return unary(Op::Ln, std::move(u)); }
inline NodePtr exp(NodePtr u) { return unary(Op::Exp, std::move(u)); }

}  // namespace ex

inline bool structurally_equal(const NodePtr& p, const NodePtr& q) {
    if (p == q) return true;
    if (!p || !q) return false;
    if (p->op != q->op) return false;
    if (p->op == Op::Num) return p->value == q->value;
    return structurally_equal(p->lhs, q->lhs) && structurally_equal(p->rhs, q->rhs);
}

// Replaces every leaf with op `target` (X, A or B) by `with`.
inline NodePtr substitute(const NodePtr& n, Op target, const NodePtr& with) {
    if (!n) return n;
    if (n->op == target) return with;
    if (!n->lhs) return n;
    NodePtr l = substitute(n->lhs, target, with);
    NodePtr r = substitute(n->rhs, target, with);
    if (l == n->lhs && r == n->rhs) return n;
    return std::make_shared<const Node>(Node{n->op, n->value, std::move(l), std::move(r)});
}

inline bool contains(const NodePtr& n, Op target) {
    if (!n) return false;
    if (n->op == target) return true;
    return contains(n->lhs, target) || contains(n->rhs, target);
}

// ---------------------------------------------------------------- parser

namespace detail {

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    NodePtr parse() {
        skip_ws();
        NodePtr n = parse_expr();
        skip_ws();
        if (pos_ < src_.size()) fail("unexpected character '" + std::string(1, src_[pos_]) + "'");
        return n;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError("syntax error: " + msg, pos_ + 1); }

    void skip_ws() {
        while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\n' || src_[pos_] == '\r'))
            ++pos_;
    }
    bool accept(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) {
            if (pos_ >= src_.size()) fail(std::string("expected '") + c + "' before end of input");
            fail(std::string("expected '") + c + "'");
        }
    }

    NodePtr parse_expr() {
        NodePtr n = parse_term();
        for (;;) {
            if (accept('+')) n = ex::add(n, parse_term());
            else if (accept('-')) n = ex::sub(n, parse_term());
            else return n;
        }
    }
    NodePtr parse_term() {
        NodePtr n = parse_unary();
        for (;;) {
            if (accept('*')) n = ex::mul(n, parse_unary());
            else if (accept('/')) n = ex::div(n, parse_unary());
            else return n;
        }
    }
    NodePtr parse_unary() {
        if (accept('-')) return ex::neg(parse_unary());
        return parse_power();
    }
    NodePtr parse_power() {
        NodePtr base = parse_atom();
        if (accept('^')) return ex::pow(base, parse_unary());
        return base;
    }

    static bool is_digit(char c) { return c >= '0' && c <= '9'; }
    static bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }

    NodePtr parse_atom() {
        skip_ws();
        if (pos_ >= src_.size()) fail("unexpected end of input");
        const char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr n = parse_expr();
            expect(')');
            return n;
        }
        if (is_digit(c) || (c == '.' && pos_ + 1 < src_.size() && is_digit(src_[pos_ + 1]))) return parse_number();
        if (is_alpha(c)) return parse_identifier();
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    NodePtr parse_number() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
        }
        // An exponent is taken only when digits follow, so "2*e" stays readable.
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t q = pos_ + 1;
            if (q < src_.size() && (src_[q] == '+' || src_[q] == '-')) ++q;
            if (q < src_.size() && is_digit(src_[q])) {
                pos_ = q;
                while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
            }
        }
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, v);
        if (ec != std::errc() || ptr != src_.data() + pos_ || !std::isfinite(v)) {
            pos_ = start;
            fail("malformed number");
        }
        return ex::num(v);
    }

    NodePtr parse_identifier() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() && (is_alpha(src_[pos_]) || is_digit(src_[pos_]))) ++pos_;
        const std::string_view id = src_.substr(start, pos_ - start);
        if (id == "x") return ex::x();
        if (id == "a") return ex::a();
        if (id == "b") return ex::b();
        if (id == "pi") return ex::leaf(Op::Pi);
        if (id == "e") return ex::leaf(Op::E);
        Op f;
        if (id == "sin") f = Op::Sin;
        else if (id == "cos") f = Op::Cos;
        else if (id == "exp") f = Op::Exp;
        else if (id == "ln") f = Op::Ln;
        else if (id == "sqrt") f = Op::Sqrt;
        else if (id == "abs") f = Op::Abs;
        else throw ParseError("unknown identifier '" + std::string(id) + "'", start + 1);
        expect('(');
        NodePtr arg = parse_expr();
        expect(')');
        return ex::unary(f, arg);
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

inline int precedence(const Node& n) {
    switch (n.op) {
        case Op::Add:
        case Op::Sub: return 1;
        case Op::Mul:
        case Op::Div: return 2;
        case Op::Neg: return 3;
        case Op::Pow: return 4;
        default: return 5;
    }
}

inline void print(const Node& n, std::string& out);

inline void print_at(const Node& n, int min_prec, std::string& out) {
    if (precedence(n) < min_prec) {
        out += '(';
        print(n, out);
        out += ')';
    } else {
        print(n, out);
    }
}

inline void print(const Node& n, std::string& out) {
    switch (n.op) {
        case Op::Num: {
            std::array<char, 32> buf{};
            const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), n.value);
            out.append(buf.data(), res.ptr);
            return;
        }
        case Op::Pi: out += "pi"; return;
        case Op::E: out += "e"; return;
        case Op::X: out += 'x'; return;
        case Op::A: out += 'a'; return;
        case Op::B: out += 'b'; return;
        case Op::Neg:
            out += '-';
            print_at(*n.lhs, 3, out);
            return;
        case Op::Abs:
        case Op::Sin:
        case Op::Cos:
        case Op::Exp:
        case Op::Ln:
        case Op::Sqrt: {
            static constexpr const char* names[] = {"abs", "sin", "cos", "exp", "ln", "sqrt"};
            out += names[static_cast<int>(n.op) - static_cast<int>(Op::Abs)];
            out += '(';
            print(*n.lhs, out);
            out += ')';
            return;
        }
        case Op::Add:
        case Op::Sub:
            print_at(*n.lhs, 1, out);
            out += n.op == Op::Add ? " + " : " - ";
            print_at(*n.rhs, 2, out);
            return;
        case Op::Mul:
        case Op::Div:
            print_at(*n.lhs, 2, out);
            out += n.op == Op::Mul ? '*' : '/';
            print_at(*n.rhs, 3, out);
            return;
        case Op::Pow:
            print_at(*n.lhs, 5, out);
            out += '^';
            print_at(*n.rhs, 3, out);
            return;
    }
}

}  // namespace detail

inline NodePtr parse_expression(std::string_view text) { return detail::Parser(text).parse(); }

inline std::string to_string(const NodePtr& n) {
    std::string out;
    if (n) detail::print(*n, out);
    return out;
}

// ------------------------------------------------------------- evaluator

enum class Fault : std::uint8_t { none, log_domain, pow_domain, sqrt_domain, div_zero, overflow };

inline const char* fault_name(Fault f) {
    switch (f) {
        case Fault::none: return "none";
        case Fault::log_domain: return "logarithm of a non-positive number";
        case Fault::pow_domain: return "power outside its real domain";
        case Fault::sqrt_domain: return "square root of a negative number";
        case Fault::div_zero: return "division by zero";
        case Fault::overflow: return "overflow";
    }
    return "unknown";
}

inline constexpr double kOverflowGuard = 1e300;

struct Instr {
    Op op;
    double value;
    bool x_free_exponent;  // Pow: exponent does not depend on x
};

class Program {
public:
    static constexpr int kMaxStack = 64;

    Program() = default;
    explicit Program(const NodePtr& root) {
        int depth = 0;
        emit(*root, depth);
        if (max_depth_ > kMaxStack) throw ConfigError("expression too deeply nested");
    }

    [[nodiscard]] const std::vector<Instr>& code() const { return code_; }

    // Plain evaluation; returns false and sets fault on a domain error.
    template <class S>
    bool eval(S x, S a, S b, S& out, Fault& fault) const;

    // Jet evaluation in x up to `order` (0..3); higher entries are zero.
    template <class S>
    bool eval_jet(S x, S a, S b, int order, Jet3<S>& out, Fault& fault) const;

private:
    void emit(const Node& n, int& depth) {
        if (n.lhs) emit(*n.lhs, depth);
        if (n.rhs) emit(*n.rhs, depth);
        if (is_binary(n.op)) --depth;
        else if (!is_unary(n.op)) ++depth;
        if (depth > max_depth_) max_depth_ = depth;
        code_.push_back({n.op, n.value, n.op == Op::Pow && !contains(n.rhs, Op::X)});
    }

    std::vector<Instr> code_;
    int max_depth_ = 0;
};

namespace detail {

template <class S>
inline S constant_pi() {
    if constexpr (std::is_same_v<S, DoubleDouble>) return DoubleDouble::pi();
    else return S(3.141592653589793);
}
template <class S>
inline S constant_e() {
    if constexpr (std::is_same_v<S, DoubleDouble>) return DoubleDouble::e();
    else return S(2.718281828459045);
}

template <class S>
inline bool is_integer(S v) {
    const double d = to_double(v);
    if (std::nearbyint(d) != d) return false;
    if constexpr (std::is_same_v<S, DoubleDouble>) return v.lo() == 0.0;
    return true;
}

template <class S>
inline bool finite_guarded(S v) {
    const double d = to_double(v);
    return std::isfinite(d) && std::fabs(d) <= kOverflowGuard;
}

}  // namespace detail

template <class S>
bool Program::eval(S x, S a, S b, S& out, Fault& fault) const {
    using std::abs, std::sin, std::cos, std::exp, std::log, std::sqrt, std::pow;
    std::array<S, kMaxStack> st;
    int sp = 0;
    const S zero(0.0);
    for (const Instr& in : code_) {
        switch (in.op) {
            case Op::Num: st[sp++] = S(in.value); continue;
            case Op::Pi: st[sp++] = detail::constant_pi<S>(); continue;
            case Op::E: st[sp++] = detail::constant_e<S>(); continue;
            case Op::X: st[sp++] = x; continue;
            case Op::A: st[sp++] = a; continue;
            case Op::B: st[sp++] = b; continue;
            default: break;
        }
        if (is_unary(in.op)) {
            S& u = st[sp - 1];
            switch (in.op) {
                case Op::Neg: u = -u; break;
                case Op::Abs: u = abs(u); break;
                case Op::Sin: u = sin(u); break;
                case Op::Cos: u = cos(u); break;
                case Op::Exp: u = exp(u); break;
                case Op::Ln:
                    if (!(u > zero)) return fault = Fault::log_domain, false;
                    u = log(u);
                    break;
                case Op::Sqrt:
                    if (u < zero) return fault = Fault::sqrt_domain, false;
                    u = sqrt(u);
                    break;
                default: break;
            }
            if (!detail::finite_guarded(u)) return fault = Fault::overflow, false;
            continue;
        }
        const S r = st[--sp];
        S& l = st[sp - 1];
        switch (in.op) {
            case Op::Add: l = l + r; break;
            case Op::Sub: l = l - r; break;
            case Op::Mul: l = l * r; break;
            case Op::Div:
                if (r == zero) return fault = Fault::div_zero, false;
                l = l / r;
                break;
            case Op::Pow:
                if (in.x_free_exponent) {
                    if (r == zero) {
                        l = S(1.0);
                        break;
                    }
                    if (l < zero && !detail::is_integer(r)) return fault = Fault::pow_domain, false;
                    if (l == zero && r < zero) return fault = Fault::div_zero, false;
                } else if (!(l > zero)) {
                    return fault = Fault::pow_domain, false;
                }
                l = pow(l, r);
                break;
            default: break;
        }
        if (!detail::finite_guarded(l)) return fault = Fault::overflow, false;
    }
    out = st[0];
    return true;
}

template <class S>
bool Program::eval_jet(S x, S a, S b, int order, Jet3<S>& out, Fault& fault) const {
    using std::abs, std::sin, std::cos, std::exp, std::log, std::sqrt, std::pow;
    using J = Jet3<S>;
    std::array<J, kMaxStack> st;
    int sp = 0;
    const S zero(0.0);
    const S one(1.0);
    for (const Instr& in : code_) {
        switch (in.op) {
            case Op::Num: st[sp++] = J::constant(S(in.value)); continue;
            case Op::Pi: st[sp++] = J::constant(detail::constant_pi<S>()); continue;
            case Op::E: st[sp++] = J::constant(detail::constant_e<S>()); continue;
            case Op::X: st[sp++] = J::variable(x); continue;
            case Op::A: st[sp++] = J::constant(a); continue;
            case Op::B: st[sp++] = J::constant(b); continue;
            default: break;
        }
        if (is_unary(in.op)) {
            J& u = st[sp - 1];
            const S y = u.f;
            switch (in.op) {
                case Op::Neg: u = -u; break;
                case Op::Abs: {
                    // d|y|/dy at 0 is taken as +1.
                    const S s = y < zero ? S(-1.0) : one;
                    u = u.compose(abs(y), s, zero, zero);
                    break;
                }
                case Op::Sin: {
                    const S sy = sin(y), cy = cos(y);
                    u = u.compose(sy, cy, -sy, -cy);
                    break;
                }
                case Op::Cos: {
                    const S sy = sin(y), cy = cos(y);
                    u = u.compose(cy, -sy, -cy, sy);
                    break;
                }
                case Op::Exp: {
                    const S ey = exp(y);
                    u = u.compose(ey, ey, ey, ey);
                    break;
                }
                case Op::Ln: {
                    if (!(y > zero)) return fault = Fault::log_domain, false;
                    const S r = one / y;
                    u = u.compose(log(y), r, -r * r, S(2.0) * r * r * r);
                    break;
                }
                case Op::Sqrt: {
                    if (y < zero || (y == zero && order > 0)) return fault = Fault::sqrt_domain, false;
                    const S s = sqrt(y);
                    if (order == 0) {
                        u = J::constant(s);
                        break;
                    }
                    const S g1 = S(0.5) / s;
                    const S g2 = -S(0.5) * g1 / y;
                    const S g3 = -S(1.5) * g2 / y;
                    u = u.compose(s, g1, g2, g3);
                    break;
                }
                default: break;
            }
            if (!detail::finite_guarded(u.f)) return fault = Fault::overflow, false;
            continue;
        }
        const J r = st[--sp];
        J& l = st[sp - 1];
        switch (in.op) {
            case Op::Add: l = l + r; break;
            case Op::Sub: l = l - r; break;
            case Op::Mul: l = l * r; break;
            case Op::Div:
                if (r.f == zero) return fault = Fault::div_zero, false;
                l = l / r;
                break;
            case Op::Pow: {
                const S y = l.f;
                if (in.x_free_exponent) {
                    const S p = r.f;
                    if (p == zero) {
                        l = J::constant(one);  // u^0 = 1, including 0^0
                        break;
                    }
                    const bool integral = detail::is_integer(p);
                    if (y < zero && !integral) return fault = Fault::pow_domain, false;
                    // g_k = p (p-1) ... (p-k+1) y^(p-k). A term is skipped when its
                    // coefficient vanishes or when the inner derivatives it multiplies
                    // are all zero, so (0)^2.5 on a branch that is identically zero
                    // stays differentiable.
                    const bool u1 = l.f1 != zero;
                    const std::array<bool, 4> needed{
                        true, order >= 1 && (u1 || (order >= 2 && l.f2 != zero) || (order >= 3 && l.f3 != zero)),
                        order >= 2 && u1, order >= 3 && u1};
                    std::array<S, 4> g{};
                    S coef = one;
                    for (int k = 0; k <= 3; ++k) {
                        if (k > 0) coef = coef * (p - S(static_cast<double>(k - 1)));
                        if (!needed[k] || coef == zero) {
                            g[k] = zero;
                            continue;
                        }
                        const S e = p - S(static_cast<double>(k));
                        if (y == zero) {
                            if (e > zero) g[k] = zero;
                            else if (e == zero) g[k] = coef;
                            else return fault = Fault::pow_domain, false;
                        } else {
                            g[k] = coef * pow(y, e);
                        }
                    }
                    l = l.compose(g[0], g[1], g[2], g[3]);
                } else {
                    if (!(y > zero)) return fault = Fault::pow_domain, false;
                    const S ly = log(y);
                    const S r1 = one / y;
                    const J lnu = l.compose(ly, r1, -r1 * r1, S(2.0) * r1 * r1 * r1);
                    const J w = r * lnu;
                    const S ew = exp(w.f);
                    l = w.compose(ew, ew, ew, ew);
                }
                break;
            }
            default: break;
        }
        if (!detail::finite_guarded(l.f)) return fault = Fault::overflow, false;
    }
    out = st[0];
    if (order < 3) out.f3 = zero;
    if (order < 2) out.f2 = zero;
    if (order < 1) out.f1 = zero;
    const bool finite = std::isfinite(to_double(out.f1)) && std::isfinite(to_double(out.f2)) &&
                        std::isfinite(to_double(out.f3));
    if (!finite) return fault = Fault::overflow, false;
    return true;
}

}  // namespace feigen
