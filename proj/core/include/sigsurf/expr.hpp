#pragma once

#include <array>
#include <complex>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sigsurf/jet.hpp"

namespace sigsurf::expr {

using cd = std::complex<double>;

enum class Op { Const, Xi, XiBar, Param, Neg, Add, Sub, Mul, Div, Pow, Func };
enum class Fn { Exp, Ln, Sinh, Cosh, Tanh, Sech, Sqrt, Sin, Cos };
enum class Var { Xi, XiBar };

struct Node;
using Expr = std::shared_ptr<const Node>;

struct Node {
    Op op = Op::Const;
    cd value{};           // Const
    std::string name;     // Param
    bool conj = false;    // Param: stands for the conjugate of the bound value
    Fn fn = Fn::Exp;      // Func
    Expr a, b;
};

using ParamMap = std::map<std::string, cd>;

struct ParseError : std::runtime_error {
    std::size_t offset;
    ParseError(const std::string& msg, std::size_t off);
};

// Evaluation failure: unbound parameter, ln(0), division by zero, ...
struct EvalError : std::runtime_error {
    std::string subexpr;
    EvalError(const std::string& msg, std::string sub);
};

// Leaves
Expr constant(cd v);
Expr xi();
Expr xibar();
Expr param(std::string name, bool conj = false);

// Builders fold literal 0/1 and all-constant operands; nothing else.
Expr neg(const Expr& a);
Expr add(const Expr& a, const Expr& b);
Expr sub(const Expr& a, const Expr& b);
Expr mul(const Expr& a, const Expr& b);
Expr div(const Expr& a, const Expr& b);
Expr pow(const Expr& a, const Expr& b);
Expr func(Fn f, const Expr& a);

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);

bool is_const(const Expr& e);
bool is_zero(const Expr& e);
bool is_one(const Expr& e);

const char* fn_name(Fn f);
bool fn_from_name(std::string_view s, Fn& out);

Expr parse(std::string_view text);
std::string to_string(const Expr& e);

bool structurally_equal(const Expr& a, const Expr& b);
bool depends_on(const Expr& e, Var v);
std::vector<std::string> parameters(const Expr& e);
std::size_t node_count(const Expr& e);

Expr differentiate(const Expr& e, Var v);
Expr conjugate(const Expr& e);
// Replace xi / xibar by arbitrary expressions.
Expr substitute(const Expr& e, const Expr& for_xi, const Expr& for_xibar);
// Replace (unconjugated) parameters by expressions; others are kept.
Expr substitute_params(const Expr& e, const std::map<std::string, Expr>& with);

struct EvalPoint {
    cd xi;
    const ParamMap* params = nullptr;
};

cd evaluate(const Expr& e, const EvalPoint& p);

// Memoizing evaluator for DAG-shaped trees (derivative towers share subtrees).
class Evaluator {
public:
    explicit Evaluator(const EvalPoint& p) : p_(p) {}
    cd operator()(const Expr& e);

private:
    EvalPoint p_;
    std::unordered_map<const Node*, cd> cache_;
};

// Symbolic derivatives d^a/dxi^a d^b/dxibar^b for a+b <= order, built once.
class Tower {
public:
    Tower() = default;
    explicit Tower(Expr e, int order = Jet::kMax);
    const Expr& base() const { return d_[0]; }
    const Expr& at(int a, int b) const { return d_[a * (Jet::kMax + 1) + b]; }
    int order() const { return order_; }

private:
    std::array<Expr, (Jet::kMax + 1) * (Jet::kMax + 1)> d_{};
    int order_ = 0;
};

Jet evaluate_jet(const Tower& t, const EvalPoint& p, int order);
Jet evaluate_jet(const Expr& e, const EvalPoint& p, int order);

}  // namespace sigsurf::expr
