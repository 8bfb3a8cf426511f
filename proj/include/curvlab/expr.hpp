#pragma once

// Expression language for metric components and auxiliary fields.
//
// Grammar (precedence low to high: +/-, * and /, unary -, ^ right-assoc):
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := unary ('^' factor)?
//   unary  := '-' unary | atom
//   atom   := NUMBER | IDENT | IDENT '(' expr ')' | '(' expr ')'
//
// `csgn` is accepted as an alias of `sign`.  A Deriv node (derivative with
// respect to one coordinate axis) exists only as an internal construction
// used by the extension builder; the parser never produces it and the
// printed form `D<i>(...)` is deliberately not parseable.

#include <cctype>
#include <cstdio>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "curvlab/errors.hpp"
#include "curvlab/jet.hpp"

namespace curvlab {

enum class NodeKind { Number, Ident, Neg, Add, Sub, Mul, Div, Pow, Call, Deriv };

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    NodeKind kind;
    double number = 0.0;
    std::string name;          // Ident
    Func func = Func::Exp;     // Call
    int axis = 0;              // Deriv
    ExprPtr a, b;
};

class Expr {
  public:
    Expr() = default;
    explicit Expr(ExprPtr n) : node_(std::move(n)) {}

    static Expr number(double v) {
        auto n = std::make_shared<ExprNode>();
        n->kind = NodeKind::Number;
        n->number = v;
        return Expr(n);
    }
    static Expr ident(std::string name) {
        auto n = std::make_shared<ExprNode>();
        n->kind = NodeKind::Ident;
        n->name = std::move(name);
        return Expr(n);
    }
    static Expr unary(NodeKind k, Expr a) {
        auto n = std::make_shared<ExprNode>();
        n->kind = k;
        n->a = a.node_;
        return Expr(n);
    }
    static Expr binary(NodeKind k, Expr a, Expr b) {
        auto n = std::make_shared<ExprNode>();
        n->kind = k;
        n->a = a.node_;
        n->b = b.node_;
        return Expr(n);
    }
    static Expr call(Func f, Expr a) {
        auto n = std::make_shared<ExprNode>();
        n->kind = NodeKind::Call;
        n->func = f;
        n->a = a.node_;
        return Expr(n);
    }
    static Expr deriv(Expr a, int axis) {
        auto n = std::make_shared<ExprNode>();
        n->kind = NodeKind::Deriv;
        n->axis = axis;
        n->a = a.node_;
        return Expr(n);
    }

    const ExprNode* get() const { return node_.get(); }
    bool empty() const { return node_ == nullptr; }

    bool is_number(double v) const {
        return node_ && node_->kind == NodeKind::Number && node_->number == v;
    }

    // Maximum nesting depth of Deriv nodes; evaluation needs this many
    // extra jet orders on top of the caller's requirement.
    int deriv_depth() const { return deriv_depth(node_.get()); }

  private:
    static int deriv_depth(const ExprNode* n) {
        if (!n) return 0;
        int d = 0;
        if (n->a) d = deriv_depth(n->a.get());
        if (n->b) {
            int db = deriv_depth(n->b.get());
            if (db > d) d = db;
        }
        if (n->kind == NodeKind::Deriv) ++d;
        return d;
    }

    ExprPtr node_;
};

// ----- zero/one folding combinators (used when building expressions
// programmatically; parsed expressions are kept verbatim) -----

inline Expr e_num(double v) { return Expr::number(v); }
inline Expr e_var(const std::string& s) { return Expr::ident(s); }

inline Expr e_neg(Expr a) {
    if (a.is_number(0)) return a;
    return Expr::unary(NodeKind::Neg, a);
}
inline Expr e_add(Expr a, Expr b) {
    if (a.is_number(0)) return b;
    if (b.is_number(0)) return a;
    return Expr::binary(NodeKind::Add, a, b);
}
inline Expr e_sub(Expr a, Expr b) {
    if (b.is_number(0)) return a;
    if (a.is_number(0)) return e_neg(b);
    return Expr::binary(NodeKind::Sub, a, b);
}
inline Expr e_mul(Expr a, Expr b) {
    if (a.is_number(0) || b.is_number(0)) return e_num(0);
    if (a.is_number(1)) return b;
    if (b.is_number(1)) return a;
    return Expr::binary(NodeKind::Mul, a, b);
}
inline Expr e_div(Expr a, Expr b) {
    if (a.is_number(0)) return a;
    if (b.is_number(1)) return a;
    return Expr::binary(NodeKind::Div, a, b);
}
inline Expr e_pow(Expr a, Expr b) {
    if (b.is_number(1)) return a;
    return Expr::binary(NodeKind::Pow, a, b);
}
inline Expr e_call(Func f, Expr a) { return Expr::call(f, a); }
inline Expr e_d(Expr a, int axis) {
    if (a.is_number(0)) return a;
    if (a.get() && a.get()->kind == NodeKind::Number) return e_num(0);
    return Expr::deriv(a, axis);
}

// ----- parsing -----

namespace detail {

inline std::optional<Func> func_by_name(const std::string& s) {
    if (s == "exp") return Func::Exp;
    if (s == "ln") return Func::Ln;
    if (s == "sqrt") return Func::Sqrt;
    if (s == "sin") return Func::Sin;
    if (s == "cos") return Func::Cos;
    if (s == "tan") return Func::Tan;
    if (s == "atan") return Func::Atan;
    if (s == "sinh") return Func::Sinh;
    if (s == "cosh") return Func::Cosh;
    if (s == "tanh") return Func::Tanh;
    if (s == "sign" || s == "csgn") return Func::Sign;
    return std::nullopt;
}

class Parser {
  public:
    explicit Parser(const std::string& text) : s_(text) {}

    Expr parse() {
        Expr e = expr();
        skip_ws();
        if (p_ != s_.size())
            throw parse_error("unexpected trailing input", p_);
        return e;
    }

  private:
    Expr expr() {
        Expr e = term();
        while (true) {
            skip_ws();
            if (accept('+'))
                e = Expr::binary(NodeKind::Add, e, term());
            else if (accept('-'))
                e = Expr::binary(NodeKind::Sub, e, term());
            else
                return e;
        }
    }

    Expr term() {
        Expr e = factor();
        while (true) {
            skip_ws();
            if (accept('*'))
                e = Expr::binary(NodeKind::Mul, e, factor());
            else if (accept('/'))
                e = Expr::binary(NodeKind::Div, e, factor());
            else
                return e;
        }
    }

    Expr factor() {
        Expr e = unary();
        skip_ws();
        if (accept('^'))
            return Expr::binary(NodeKind::Pow, e, factor());
        return e;
    }

    Expr unary() {
        skip_ws();
        if (accept('-'))
            return Expr::unary(NodeKind::Neg, unary());
        return atom();
    }

    Expr atom() {
        skip_ws();
        if (p_ >= s_.size())
            throw parse_error("unexpected end of input", p_);
        char c = s_[p_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
            return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = p_;
            std::string id = identifier();
            skip_ws();
            if (accept('(')) {
                auto f = func_by_name(id);
                if (!f)
                    throw parse_error("unknown function '" + id + "'", start);
                Expr arg = expr();
                expect(')');
                return Expr::call(*f, arg);
            }
            return Expr::ident(id);
        }
        if (accept('(')) {
            Expr e = expr();
            expect(')');
            return e;
        }
        throw parse_error(std::string("unexpected character '") + c + "'", p_);
    }

    Expr number() {
        std::size_t start = p_;
        while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) ++p_;
        if (p_ < s_.size() && s_[p_] == '.') {
            ++p_;
            while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) ++p_;
        }
        if (p_ < s_.size() && (s_[p_] == 'e' || s_[p_] == 'E')) {
            std::size_t mark = p_;
            ++p_;
            if (p_ < s_.size() && (s_[p_] == '+' || s_[p_] == '-')) ++p_;
            if (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) {
                while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) ++p_;
            } else {
                p_ = mark; // 'e' belongs to a following identifier, not this number
            }
        }
        std::string tok = s_.substr(start, p_ - start);
        try {
            return Expr::number(std::stod(tok));
        } catch (const std::exception&) {
            throw parse_error("malformed number '" + tok + "'", start);
        }
    }

    std::string identifier() {
        std::size_t start = p_;
        while (p_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[p_])) || s_[p_] == '_'))
            ++p_;
        return s_.substr(start, p_ - start);
    }

    void skip_ws() {
        while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_]))) ++p_;
    }

    bool accept(char c) {
        if (p_ < s_.size() && s_[p_] == c) {
            ++p_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        skip_ws();
        if (!accept(c))
            throw parse_error(std::string("expected '") + c + "'", p_);
    }

    const std::string& s_;
    std::size_t p_ = 0;
};

} // namespace detail

inline Expr parse_expr(const std::string& text) { return detail::Parser(text).parse(); }

// ----- printing (fully parenthesized, so print-then-parse reproduces
// the identical tree) -----

namespace detail {

inline void print_node(const ExprNode* n, std::string& out) {
    switch (n->kind) {
        case NodeKind::Number: {
            char buf[40];
            std::snprintf(buf, sizeof(buf), "%.17g", n->number);
            out += buf;
            break;
        }
        case NodeKind::Ident:
            out += n->name;
            break;
        case NodeKind::Neg:
            out += "(-";
            print_node(n->a.get(), out);
            out += ')';
            break;
        case NodeKind::Add:
        case NodeKind::Sub:
        case NodeKind::Mul:
        case NodeKind::Div:
        case NodeKind::Pow: {
            char op = n->kind == NodeKind::Add   ? '+'
                      : n->kind == NodeKind::Sub ? '-'
                      : n->kind == NodeKind::Mul ? '*'
                      : n->kind == NodeKind::Div ? '/'
                                                 : '^';
            out += '(';
            print_node(n->a.get(), out);
            out += op;
            print_node(n->b.get(), out);
            out += ')';
            break;
        }
        case NodeKind::Call:
            out += func_name(n->func);
            out += '(';
            print_node(n->a.get(), out);
            out += ')';
            break;
        case NodeKind::Deriv:
            out += "D";
            out += std::to_string(n->axis);
            out += '(';
            print_node(n->a.get(), out);
            out += ')';
            break;
    }
}

} // namespace detail

inline std::string print_expr(const Expr& e) {
    std::string out;
    if (e.get()) detail::print_node(e.get(), out);
    return out;
}

// ----- evaluation -----

struct EvalContext {
    // coordinate name -> jet of that coordinate at the evaluation point
    const std::map<std::string, Jet>* coords = nullptr;
    const std::map<std::string, double>* params = nullptr;
    int nvars = 0;
    int order = 0;
};

namespace detail {

inline Jet eval_node(const ExprNode* n, const EvalContext& ctx) {
    switch (n->kind) {
        case NodeKind::Number:
            return Jet::constant(n->number, ctx.nvars, ctx.order);
        case NodeKind::Ident: {
            if (ctx.coords) {
                auto it = ctx.coords->find(n->name);
                if (it != ctx.coords->end()) return it->second;
            }
            if (ctx.params) {
                auto it = ctx.params->find(n->name);
                if (it != ctx.params->end())
                    return Jet::constant(it->second, ctx.nvars, ctx.order);
            }
            throw eval_error("unbound identifier '" + n->name + "'");
        }
        case NodeKind::Neg:
            return -eval_node(n->a.get(), ctx);
        case NodeKind::Add:
            return eval_node(n->a.get(), ctx) + eval_node(n->b.get(), ctx);
        case NodeKind::Sub:
            return eval_node(n->a.get(), ctx) - eval_node(n->b.get(), ctx);
        case NodeKind::Mul:
            return eval_node(n->a.get(), ctx) * eval_node(n->b.get(), ctx);
        case NodeKind::Div:
            return eval_node(n->a.get(), ctx) / eval_node(n->b.get(), ctx);
        case NodeKind::Pow:
            return jet_pow(eval_node(n->a.get(), ctx), eval_node(n->b.get(), ctx));
        case NodeKind::Call:
            return eval_node(n->a.get(), ctx).apply(n->func);
        case NodeKind::Deriv:
            // Exact through order-1 of the surrounding evaluation; callers
            // bump the evaluation order by deriv_depth() to compensate.
            return eval_node(n->a.get(), ctx).derivative(n->axis).padded(ctx.order);
    }
    throw eval_error("corrupt expression node");
}

// Deriv drops one jet order, so re-expand the result back to ctx.order by
// re-running at a higher order and truncating.  Handled by evaluating the
// whole tree at an elevated order in eval_expr below.

} // namespace detail

// Evaluate with explicit coordinate jets.  All jets in `coords` must share
// (nvars, order); the result has the same layout.  If the expression
// contains Deriv nodes, coefficients of total degree > order - deriv_depth
// are not exact; choose the binding order accordingly.
inline Jet eval_expr(const Expr& e, const std::map<std::string, Jet>& coords,
                     const std::map<std::string, double>& params) {
    if (!e.get()) throw eval_error("evaluating empty expression");
    EvalContext ctx;
    ctx.coords = &coords;
    ctx.params = &params;
    if (coords.empty()) throw eval_error("eval_expr: no coordinate bindings");
    ctx.nvars = coords.begin()->second.nvars();
    ctx.order = coords.begin()->second.order();
    return detail::eval_node(e.get(), ctx);
}

// Convenience: evaluate at a point with the named coordinates lifted to
// jets of the given order.
inline Jet eval_expr_at(const Expr& e, const std::vector<std::string>& coord_names,
                        const std::vector<double>& point, int order,
                        const std::map<std::string, double>& params = {}) {
    if (coord_names.size() != point.size())
        throw eval_error("eval_expr_at: point/coordinate size mismatch");
    int n = static_cast<int>(coord_names.size());
    std::map<std::string, Jet> coords;
    for (int i = 0; i < n; ++i)
        coords.emplace(coord_names[i], Jet::variable(point[i], i, n, order));
    return eval_expr(e, coords, params);
}

inline double eval_value(const Expr& e, const std::vector<std::string>& coord_names,
                         const std::vector<double>& point,
                         const std::map<std::string, double>& params = {}) {
    // axis-derivative nodes need headroom above order 0
    return eval_expr_at(e, coord_names, point, e.deriv_depth(), params).value();
}

// ----- symbolic differentiation -----
//
// Unlike Deriv nodes (whose printed form is not parseable), the result is a
// plain expression tree, so differentiated components survive a
// print/parse round trip.  Used where derived metric components must be
// written to files.

namespace detail {

inline Expr diff_node(const ExprNode* n, const std::string& var);

inline Expr dwrap(const ExprPtr& p, const std::string& var) {
    return diff_node(p.get(), var);
}

inline Expr diff_node(const ExprNode* n, const std::string& var) {
    Expr a(n->a), b(n->b);
    switch (n->kind) {
        case NodeKind::Number:
            return e_num(0);
        case NodeKind::Ident:
            return e_num(n->name == var ? 1 : 0);
        case NodeKind::Neg:
            return e_neg(dwrap(n->a, var));
        case NodeKind::Add:
            return e_add(dwrap(n->a, var), dwrap(n->b, var));
        case NodeKind::Sub:
            return e_sub(dwrap(n->a, var), dwrap(n->b, var));
        case NodeKind::Mul:
            return e_add(e_mul(dwrap(n->a, var), b), e_mul(a, dwrap(n->b, var)));
        case NodeKind::Div:
            return e_div(e_sub(e_mul(dwrap(n->a, var), b), e_mul(a, dwrap(n->b, var))),
                         e_mul(b, b));
        case NodeKind::Pow: {
            Expr da = dwrap(n->a, var);
            if (n->b->kind == NodeKind::Number) {
                double p = n->b->number;
                if (p == 0) return e_num(0);
                return e_mul(e_num(p), e_mul(e_pow(a, e_num(p - 1)), da));
            }
            Expr db = dwrap(n->b, var);
            // a^b * (b' ln a + b a'/a)
            return e_mul(e_pow(a, b),
                         e_add(e_mul(db, e_call(Func::Ln, a)), e_div(e_mul(b, da), a)));
        }
        case NodeKind::Call: {
            Expr da = dwrap(n->a, var);
            switch (n->func) {
                case Func::Exp: return e_mul(e_call(Func::Exp, a), da);
                case Func::Ln: return e_div(da, a);
                case Func::Sqrt:
                    return e_div(da, e_mul(e_num(2), e_call(Func::Sqrt, a)));
                case Func::Sin: return e_mul(e_call(Func::Cos, a), da);
                case Func::Cos: return e_neg(e_mul(e_call(Func::Sin, a), da));
                case Func::Tan: {
                    Expr t = e_call(Func::Tan, a);
                    return e_mul(e_add(e_num(1), e_mul(t, t)), da);
                }
                case Func::Atan:
                    return e_div(da, e_add(e_num(1), e_mul(a, a)));
                case Func::Sinh: return e_mul(e_call(Func::Cosh, a), da);
                case Func::Cosh: return e_mul(e_call(Func::Sinh, a), da);
                case Func::Tanh: {
                    Expr t = e_call(Func::Tanh, a);
                    return e_mul(e_sub(e_num(1), e_mul(t, t)), da);
                }
                case Func::Sign: return e_num(0);
            }
            throw eval_error("corrupt call node");
        }
        case NodeKind::Deriv:
            throw eval_error("symbolic differentiation through an axis-derivative node");
    }
    throw eval_error("corrupt expression node");
}

} // namespace detail

inline Expr diff_expr(const Expr& e, const std::string& var) {
    if (!e.get()) throw eval_error("differentiating empty expression");
    return detail::diff_node(e.get(), var);
}

} // namespace curvlab
