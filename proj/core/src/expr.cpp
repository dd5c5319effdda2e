#include "sigsurf/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <set>
#include <unordered_set>

namespace sigsurf::expr {

ParseError::ParseError(const std::string& msg, std::size_t off)
    : std::runtime_error(msg + " at offset " + std::to_string(off)), offset(off) {}

EvalError::EvalError(const std::string& msg, std::string sub)
    : std::runtime_error(msg + " in '" + sub + "'"), subexpr(std::move(sub)) {}

namespace {

Expr make(Node n) { return std::make_shared<const Node>(std::move(n)); }

Expr binary(Op op, const Expr& a, const Expr& b) {
    Node n;
    n.op = op;
    n.a = a;
    n.b = b;
    return make(std::move(n));
}

// exponent small enough to use repeated squaring
bool small_integer(cd v, long& n) {
    if (v.imag() != 0.0) return false;
    const double r = v.real();
    if (r != std::floor(r) || std::abs(r) > 1024) return false;
    n = static_cast<long>(r);
    return true;
}

cd ipow(cd base, long n) {
    if (n < 0) return 1.0 / ipow(base, -n);
    cd r = 1.0;
    while (n) {
        if (n & 1) r *= base;
        n >>= 1;
        if (n) base *= base;
    }
    return r;
}

// nullopt-free domain helpers: return false on a domain error
bool apply_fn(Fn f, cd x, cd& out) {
    switch (f) {
        case Fn::Exp: out = std::exp(x); return true;
        case Fn::Ln:
            if (x == 0.0) return false;
            out = std::log(x);
            return true;
        case Fn::Sinh: out = std::sinh(x); return true;
        case Fn::Cosh: out = std::cosh(x); return true;
        case Fn::Tanh: out = std::tanh(x); return true;
        case Fn::Sech: {
            const cd c = std::cosh(x);
            if (c == 0.0) return false;
            out = 1.0 / c;
            return true;
        }
        case Fn::Sqrt: out = std::sqrt(x); return true;
        case Fn::Sin: out = std::sin(x); return true;
        case Fn::Cos: out = std::cos(x); return true;
    }
    return false;
}

bool apply_pow(cd a, cd b, cd& out) {
    long n;
    if (small_integer(b, n)) {
        if (a == 0.0 && n < 0) return false;
        out = ipow(a, n);
        return true;
    }
    if (a == 0.0) {
        if (b.real() <= 0.0) return false;
        out = 0.0;
        return true;
    }
    out = std::exp(b * std::log(a));
    return true;
}

}  // namespace

Expr constant(cd v) {
    Node n;
    n.op = Op::Const;
    n.value = v;
    return make(std::move(n));
}

Expr xi() {
    static const Expr e = [] { Node n; n.op = Op::Xi; return make(std::move(n)); }();
    return e;
}

Expr xibar() {
    static const Expr e = [] { Node n; n.op = Op::XiBar; return make(std::move(n)); }();
    return e;
}

Expr param(std::string name, bool conj) {
    Node n;
    n.op = Op::Param;
    n.name = std::move(name);
    n.conj = conj;
    return make(std::move(n));
}

bool is_const(const Expr& e) { return e->op == Op::Const; }
bool is_zero(const Expr& e) { return is_const(e) && e->value == 0.0; }
bool is_one(const Expr& e) { return is_const(e) && e->value == 1.0; }

Expr neg(const Expr& a) {
    if (is_const(a)) return constant(-a->value);
    Node n;
    n.op = Op::Neg;
    n.a = a;
    return make(std::move(n));
}

Expr add(const Expr& a, const Expr& b) {
    if (is_zero(a)) return b;
    if (is_zero(b)) return a;
    if (is_const(a) && is_const(b)) return constant(a->value + b->value);
    return binary(Op::Add, a, b);
}

Expr sub(const Expr& a, const Expr& b) {
    if (is_zero(b)) return a;
    if (is_zero(a)) return neg(b);
    if (is_const(a) && is_const(b)) return constant(a->value - b->value);
    return binary(Op::Sub, a, b);
}

Expr mul(const Expr& a, const Expr& b) {
    if (is_zero(a) || is_zero(b)) return constant(0.0);
    if (is_one(a)) return b;
    if (is_one(b)) return a;
    if (is_const(a) && is_const(b)) return constant(a->value * b->value);
    return binary(Op::Mul, a, b);
}

Expr div(const Expr& a, const Expr& b) {
    if (is_one(b)) return a;
    if (is_zero(a) && !is_zero(b)) return constant(0.0);
    if (is_const(a) && is_const(b) && b->value != 0.0) return constant(a->value / b->value);
    return binary(Op::Div, a, b);
}

Expr pow(const Expr& a, const Expr& b) {
    if (is_one(b)) return a;
    if (is_zero(b)) return constant(1.0);
    cd v;
    if (is_const(a) && is_const(b) && apply_pow(a->value, b->value, v)) return constant(v);
    return binary(Op::Pow, a, b);
}

Expr func(Fn f, const Expr& a) {
    cd v;
    if (is_const(a) && apply_fn(f, a->value, v)) return constant(v);
    Node n;
    n.op = Op::Func;
    n.fn = f;
    n.a = a;
    return make(std::move(n));
}

Expr operator+(const Expr& a, const Expr& b) { return add(a, b); }
Expr operator-(const Expr& a, const Expr& b) { return sub(a, b); }
Expr operator*(const Expr& a, const Expr& b) { return mul(a, b); }
Expr operator/(const Expr& a, const Expr& b) { return div(a, b); }
Expr operator-(const Expr& a) { return neg(a); }

namespace {
struct FnEntry {
    const char* name;
    Fn fn;
};
constexpr FnEntry kFns[] = {{"exp", Fn::Exp},   {"ln", Fn::Ln},     {"sinh", Fn::Sinh},
                            {"cosh", Fn::Cosh}, {"tanh", Fn::Tanh}, {"sech", Fn::Sech},
                            {"sqrt", Fn::Sqrt}, {"sin", Fn::Sin},   {"cos", Fn::Cos}};
}  // namespace

const char* fn_name(Fn f) {
    for (const auto& e : kFns)
        if (e.fn == f) return e.name;
    return "?";
}

bool fn_from_name(std::string_view s, Fn& out) {
    for (const auto& e : kFns)
        if (s == e.name) {
            out = e.fn;
            return true;
        }
    if (s == "log") {
        out = Fn::Ln;
        return true;
    }
    return false;
}

// ---------------------------------------------------------------- parser

namespace {

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    Expr run() {
        Expr e = expression();
        skip();
        if (pos_ < s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
        return e;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    Expr expression() {
        Expr e = term();
        for (;;) {
            if (accept('+'))
                e = add(e, term());
            else if (accept('-'))
                e = sub(e, term());
            else
                return e;
        }
    }

    Expr term() {
        Expr e = unary();
        for (;;) {
            if (accept('*'))
                e = mul(e, unary());
            else if (accept('/'))
                e = div(e, unary());
            else
                return e;
        }
    }

    Expr unary() {
        if (accept('-')) return neg(unary());
        if (accept('+')) return unary();
        return power();
    }

    // '^' binds tighter than unary minus on its left, right-associative
    Expr power() {
        Expr base = primary();
        if (accept('^')) return pow(base, unary());
        return base;
    }

    Expr primary() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Expr e = expression();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    Expr number() {
        const std::size_t start = pos_;
        auto digits = [&] {
            std::size_t n = 0;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_, ++n;
            return n;
        };
        std::size_t nd = digits();
        if (pos_ < s_.size() && s_[pos_] == '.') {
            ++pos_;
            nd += digits();
        }
        if (nd == 0) {
            pos_ = start;
            fail("malformed number");
        }
        if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
            std::size_t save = pos_++;
            if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
            if (digits() == 0) pos_ = save;  // 'e' belongs to something else
        }
        if (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            fail("implicit multiplication is not allowed");
        return constant(std::stod(std::string(s_.substr(start, pos_ - start))));
    }

    Expr identifier() {
        const std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
        const std::string_view id = s_.substr(start, pos_ - start);
        skip();
        const bool call = pos_ < s_.size() && s_[pos_] == '(';
        if (call) {
            Fn f;
            const bool is_conj = id == "conj";
            if (!is_conj && !fn_from_name(id, f)) {
                pos_ = start;
                fail("unknown function '" + std::string(id) + "'");
            }
            ++pos_;
            Expr arg = expression();
            expect(')');
            return is_conj ? conjugate(arg) : func(f, arg);
        }
        if (id == "xi") return xi();
        if (id == "xibar") return xibar();
        if (id == "i") return constant(cd(0.0, 1.0));
        if (id == "pi") return constant(std::numbers::pi);
        Fn f;
        if (fn_from_name(id, f) || id == "conj") {
            pos_ = start;
            fail("function '" + std::string(id) + "' requires an argument");
        }
        return param(std::string(id));
    }
};

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_const(cd v) {
    const double re = v.real(), im = v.imag();
    if (im == 0.0) return re < 0 || std::signbit(re) ? "(" + fmt_double(re) + ")" : fmt_double(re);
    std::string s = "(";
    if (re != 0.0) s += fmt_double(re) + (im < 0 ? "-" : "+");
    else if (im < 0) s += "-";
    s += fmt_double(std::abs(im)) + "*i)";
    return s;
}

void print(const Expr& e, std::string& out) {
    switch (e->op) {
        case Op::Const: out += fmt_const(e->value); return;
        case Op::Xi: out += "xi"; return;
        case Op::XiBar: out += "xibar"; return;
        case Op::Param:
            out += e->conj ? "conj(" + e->name + ")" : e->name;
            return;
        case Op::Neg:
            out += "(-";
            print(e->a, out);
            out += ")";
            return;
        case Op::Func:
            out += fn_name(e->fn);
            out += "(";
            print(e->a, out);
            out += ")";
            return;
        default: break;
    }
    static const char ops[] = {'+', '-', '*', '/', '^'};
    out += "(";
    print(e->a, out);
    out += ops[static_cast<int>(e->op) - static_cast<int>(Op::Add)];
    print(e->b, out);
    out += ")";
}

}  // namespace

Expr parse(std::string_view text) { return Parser(text).run(); }

std::string to_string(const Expr& e) {
    std::string s;
    print(e, s);
    return s;
}

bool structurally_equal(const Expr& a, const Expr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->op != b->op) return false;
    switch (a->op) {
        case Op::Const: return a->value == b->value;
        case Op::Xi:
        case Op::XiBar: return true;
        case Op::Param: return a->name == b->name && a->conj == b->conj;
        case Op::Neg: return structurally_equal(a->a, b->a);
        case Op::Func: return a->fn == b->fn && structurally_equal(a->a, b->a);
        default: return structurally_equal(a->a, b->a) && structurally_equal(a->b, b->b);
    }
}

namespace {
template <class F>
void visit_unique(const Expr& e, std::unordered_set<const Node*>& seen, F&& f) {
    if (!e || !seen.insert(e.get()).second) return;
    f(*e);
    visit_unique(e->a, seen, f);
    visit_unique(e->b, seen, f);
}
}  // namespace

bool depends_on(const Expr& e, Var v) {
    const Op target = v == Var::Xi ? Op::Xi : Op::XiBar;
    bool found = false;
    std::unordered_set<const Node*> seen;
    visit_unique(e, seen, [&](const Node& n) { found |= n.op == target; });
    return found;
}

std::vector<std::string> parameters(const Expr& e) {
    std::set<std::string> names;
    std::unordered_set<const Node*> seen;
    visit_unique(e, seen, [&](const Node& n) {
        if (n.op == Op::Param) names.insert(n.name);
    });
    return {names.begin(), names.end()};
}

std::size_t node_count(const Expr& e) {
    if (!e) return 0;
    return 1 + node_count(e->a) + node_count(e->b);
}

// ---------------------------------------------------------------- transforms

namespace {

class Differentiator {
public:
    explicit Differentiator(Var v) : v_(v) {}

    Expr operator()(const Expr& e) {
        auto it = memo_.find(e.get());
        if (it != memo_.end()) return it->second.second;
        Expr d = rule(e);
        memo_.emplace(e.get(), std::make_pair(e, d));
        return d;
    }

private:
    Var v_;
    std::unordered_map<const Node*, std::pair<Expr, Expr>> memo_;  // keeps keys alive
    std::unordered_map<const Node*, bool> dep_;

    bool free_of_vars(const Expr& e) {
        auto it = dep_.find(e.get());
        if (it != dep_.end()) return it->second;
        bool r;
        switch (e->op) {
            case Op::Xi:
            case Op::XiBar: r = false; break;
            case Op::Const:
            case Op::Param: r = true; break;
            default: r = free_of_vars(e->a) && (!e->b || free_of_vars(e->b));
        }
        dep_[e.get()] = r;
        return r;
    }

    Expr rule(const Expr& e) {
        const Expr zero = constant(0.0), one = constant(1.0);
        switch (e->op) {
            case Op::Const:
            case Op::Param: return zero;
            case Op::Xi: return v_ == Var::Xi ? one : zero;
            case Op::XiBar: return v_ == Var::XiBar ? one : zero;
            case Op::Neg: return neg((*this)(e->a));
            case Op::Add: return add((*this)(e->a), (*this)(e->b));
            case Op::Sub: return sub((*this)(e->a), (*this)(e->b));
            case Op::Mul: return add(mul((*this)(e->a), e->b), mul(e->a, (*this)(e->b)));
            case Op::Div: {
                const Expr da = (*this)(e->a), db = (*this)(e->b);
                if (is_zero(db)) return div(da, e->b);
                return sub(div(da, e->b), div(mul(e->a, db), mul(e->b, e->b)));
            }
            case Op::Pow: {
                const Expr da = (*this)(e->a);
                if (free_of_vars(e->b)) {
                    if (is_zero(da)) return zero;
                    return mul(mul(e->b, pow(e->a, sub(e->b, one))), da);
                }
                const Expr db = (*this)(e->b);
                return mul(e, add(mul(db, func(Fn::Ln, e->a)), div(mul(e->b, da), e->a)));
            }
            case Op::Func: {
                const Expr da = (*this)(e->a);
                if (is_zero(da)) return zero;
                const Expr& a = e->a;
                Expr outer;
                switch (e->fn) {
                    case Fn::Exp: outer = e; break;
                    case Fn::Ln: return div(da, a);
                    case Fn::Sinh: outer = func(Fn::Cosh, a); break;
                    case Fn::Cosh: outer = func(Fn::Sinh, a); break;
                    case Fn::Tanh: outer = sub(one, mul(e, e)); break;
                    case Fn::Sech: outer = neg(mul(e, func(Fn::Tanh, a))); break;
                    case Fn::Sqrt: return div(da, mul(constant(2.0), e));
                    case Fn::Sin: outer = func(Fn::Cos, a); break;
                    case Fn::Cos: outer = neg(func(Fn::Sin, a)); break;
                }
                return mul(outer, da);
            }
        }
        return zero;
    }
};

Expr map_tree(const Expr& e, std::unordered_map<const Node*, Expr>& memo,
              const std::function<Expr(const Expr&)>& leaf) {
    auto it = memo.find(e.get());
    if (it != memo.end()) return it->second;
    Expr r;
    switch (e->op) {
        case Op::Const:
        case Op::Xi:
        case Op::XiBar:
        case Op::Param: r = leaf(e); break;
        case Op::Neg: r = neg(map_tree(e->a, memo, leaf)); break;
        case Op::Func: r = func(e->fn, map_tree(e->a, memo, leaf)); break;
        case Op::Add: r = add(map_tree(e->a, memo, leaf), map_tree(e->b, memo, leaf)); break;
        case Op::Sub: r = sub(map_tree(e->a, memo, leaf), map_tree(e->b, memo, leaf)); break;
        case Op::Mul: r = mul(map_tree(e->a, memo, leaf), map_tree(e->b, memo, leaf)); break;
        case Op::Div: r = div(map_tree(e->a, memo, leaf), map_tree(e->b, memo, leaf)); break;
        case Op::Pow: r = pow(map_tree(e->a, memo, leaf), map_tree(e->b, memo, leaf)); break;
    }
    memo.emplace(e.get(), r);
    return r;
}

}  // namespace

Expr differentiate(const Expr& e, Var v) { return Differentiator(v)(e); }

Expr conjugate(const Expr& e) {
    std::unordered_map<const Node*, Expr> memo;
    return map_tree(e, memo, [](const Expr& l) -> Expr {
        switch (l->op) {
            case Op::Const: return constant(std::conj(l->value));
            case Op::Xi: return xibar();
            case Op::XiBar: return xi();
            default: return param(l->name, !l->conj);
        }
    });
}

Expr substitute(const Expr& e, const Expr& for_xi, const Expr& for_xibar) {
    std::unordered_map<const Node*, Expr> memo;
    return map_tree(e, memo, [&](const Expr& l) -> Expr {
        if (l->op == Op::Xi) return for_xi;
        if (l->op == Op::XiBar) return for_xibar;
        return l;
    });
}

Expr substitute_params(const Expr& e, const std::map<std::string, Expr>& with) {
    std::unordered_map<const Node*, Expr> memo;
    return map_tree(e, memo, [&](const Expr& l) -> Expr {
        if (l->op != Op::Param || l->conj) return l;
        auto it = with.find(l->name);
        return it == with.end() ? l : it->second;
    });
}

// ---------------------------------------------------------------- evaluation

cd Evaluator::operator()(const Expr& e) {
    if (e->op == Op::Const) return e->value;
    auto it = cache_.find(e.get());
    if (it != cache_.end()) return it->second;
    cd r;
    switch (e->op) {
        case Op::Const: r = e->value; break;
        case Op::Xi: r = p_.xi; break;
        case Op::XiBar: r = std::conj(p_.xi); break;
        case Op::Param: {
            if (!p_.params) throw EvalError("unbound parameter '" + e->name + "'", to_string(e));
            auto pit = p_.params->find(e->name);
            if (pit == p_.params->end()) throw EvalError("unbound parameter '" + e->name + "'", to_string(e));
            r = e->conj ? std::conj(pit->second) : pit->second;
            break;
        }
        case Op::Neg: r = -(*this)(e->a); break;
        case Op::Add: r = (*this)(e->a) + (*this)(e->b); break;
        case Op::Sub: r = (*this)(e->a) - (*this)(e->b); break;
        case Op::Mul: r = (*this)(e->a) * (*this)(e->b); break;
        case Op::Div: {
            const cd a = (*this)(e->a), b = (*this)(e->b);
            if (b == 0.0) throw EvalError("division by zero", to_string(e));
            r = a / b;
            break;
        }
        case Op::Pow:
            if (!apply_pow((*this)(e->a), (*this)(e->b), r)) throw EvalError("zero to a non-positive power", to_string(e));
            break;
        case Op::Func:
            if (!apply_fn(e->fn, (*this)(e->a), r))
                throw EvalError(std::string("domain error in ") + fn_name(e->fn), to_string(e));
            break;
    }
    cache_.emplace(e.get(), r);
    return r;
}

cd evaluate(const Expr& e, const EvalPoint& p) { return Evaluator(p)(e); }

Tower::Tower(Expr e, int order) : order_(order) {
    if (order < 0 || order > Jet::kMax) throw std::invalid_argument("Tower: order out of range");
    Differentiator dxi(Var::Xi), dxb(Var::XiBar);
    d_[0] = std::move(e);
    for (int a = 0; a <= order; ++a)
        for (int b = 0; a + b <= order; ++b) {
            if (a == 0 && b == 0) continue;
            Expr& slot = d_[a * (Jet::kMax + 1) + b];
            slot = b > 0 ? dxb(at(a, b - 1)) : dxi(at(a - 1, 0));
        }
}

Jet evaluate_jet(const Tower& t, const EvalPoint& p, int order) {
    if (order > t.order()) throw std::invalid_argument("evaluate_jet: tower too shallow");
    Evaluator ev(p);
    return Jet::from_derivatives([&](int a, int b) { return ev(t.at(a, b)); }, order);
}

Jet evaluate_jet(const Expr& e, const EvalPoint& p, int order) { return evaluate_jet(Tower(e, order), p, order); }

}  // namespace sigsurf::expr
