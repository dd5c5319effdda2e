#include "support.hpp"

#include <sigsurf/expr.hpp>

using namespace sigsurf;
using namespace sigsurf::expr;
using test::fd_d;

namespace {
cd at(const std::string& s, cd z, const ParamMap* p = nullptr) { return evaluate(parse(s), {z, p}); }
}  // namespace

TEST_CASE("parser: precedence and associativity") {
    const cd z(0.3, -0.7);
    CHECK(std::abs(at("1+2*3", z) - 7.0) < 1e-15);
    CHECK(std::abs(at("2^3^2", z) - 512.0) < 1e-12);
    CHECK(std::abs(at("-xi^2", z) + z * z) < 1e-15);
    CHECK(std::abs(at("xi^-2", z) - 1.0 / (z * z)) < 1e-14);
    CHECK(std::abs(at("(1+i)*xibar/2", z) - cd(1, 1) * std::conj(z) / 2.0) < 1e-15);
    CHECK(std::abs(at("2.5e-1*pi", z) - 0.25 * M_PI) < 1e-15);
    CHECK(std::abs(at("sech(xi) - 1/cosh(xi)", z)) < 1e-15);
}

TEST_CASE("parser: errors carry offsets") {
    auto offset = [](const std::string& s) {
        try {
            parse(s);
        } catch (const ParseError& e) {
            return long(e.offset);
        }
        return -1L;
    };
    CHECK(offset("2xi") == 1);
    CHECK(offset("xi+") == 3);
    CHECK(offset("foo(xi)") == 0);
    CHECK(offset("(xi") == 3);
    CHECK(offset("xi $ 2") == 3);
    CHECK(offset("exp") == 0);
    CHECK(offset("xi^2") == -1);
}

TEST_CASE("printing round-trips") {
    for (const char* s : {"xi^2/2", "-(tanh(xi)+tanh(xibar))/(sech(xi)+sech(xibar))", "a*exp((1-2*i)*ln(xi))",
                          "conj(a)*xibar^(1/3)", "(-1.5)^xi"}) {
        const Expr e = parse(s);
        const Expr r = parse(to_string(e));
        CHECK(structurally_equal(e, r));
    }
}

TEST_CASE("evaluation: parameters and conjugates") {
    const ParamMap p{{"a", cd(2, 1)}};
    const cd z(0.4, 0.9);
    CHECK(std::abs(at("a*xi", z, &p) - cd(2, 1) * z) < 1e-15);
    CHECK(std::abs(at("conj(a*xi)", z, &p) - std::conj(cd(2, 1) * z)) < 1e-15);
    CHECK_THROWS_AS(at("b*xi", z, &p), EvalError);
    CHECK_THROWS_AS(at("1/(xi-xi)", z), EvalError);
    CHECK_THROWS_AS(at("ln(xi)", 0.0), EvalError);
    CHECK(parameters(parse("a*xi+conj(b)")) == std::vector<std::string>{"a", "b"});
}

TEST_CASE("conjugate expression evaluates to the conjugate") {
    const ParamMap p{{"c", cd(0.3, -2)}};
    for (const char* s : {"xi*exp(c*xibar)", "sqrt(xi+2)", "tanh(xi)/(1+xibar^3)", "c^xi"}) {
        const Expr e = parse(s);
        for (cd z : {cd(0.2, 0.5), cd(-0.7, 0.1), cd(1.1, -0.4)})
            CHECK(std::abs(evaluate(conjugate(e), {z, &p}) - std::conj(evaluate(e, {z, &p}))) < 1e-13);
    }
}

TEST_CASE("symbolic Wirtinger derivatives against closed forms") {
    const cd z(0.6, -0.3), zb = std::conj(z);
    CHECK(std::abs(evaluate(differentiate(parse("sin(xi)*exp(xibar)"), Var::Xi), {z}) - std::cos(z) * std::exp(zb)) < 1e-14);
    CHECK(std::abs(evaluate(differentiate(parse("sin(xi)*exp(xibar)"), Var::XiBar), {z}) - std::sin(z) * std::exp(zb)) < 1e-14);
    CHECK(std::abs(evaluate(differentiate(parse("xi*xibar"), Var::Xi), {z}) - zb) < 1e-15);
    CHECK(std::abs(evaluate(differentiate(parse("sech(xi)"), Var::Xi), {z}) + std::tanh(z) / std::cosh(z)) < 1e-14);
    CHECK(std::abs(evaluate(differentiate(parse("xi^xibar"), Var::XiBar), {z}) - std::pow(z, zb) * std::log(z)) < 1e-14);
    CHECK(is_zero(differentiate(parse("exp(xi)"), Var::XiBar)));
    CHECK(!depends_on(parse("exp(xi)*2"), Var::XiBar));
}

TEST_CASE("derivatives against finite differences") {
    const char* exprs[] = {"tanh((xi-xibar)/2)", "exp(exp(i*pi/3)*ln(xi))/exp(exp(-i*pi/3)*ln(xibar))",
                           "(xi^3+xibar)/(2+xi*xibar)", "sqrt(1+xi^2)*cos(xibar)"};
    for (const char* s : exprs) {
        const Expr e = parse(s);
        auto f = [&](cd z) { return evaluate(e, {z}); };
        for (cd z : {cd(0.7, 0.2), cd(0.5, -0.6), cd(1.3, 0.9)}) {
            for (bool bar : {false, true}) {
                const cd sym = evaluate(differentiate(e, bar ? Var::XiBar : Var::Xi), {z});
                CHECK(std::abs(sym - fd_d(f, z, bar)) < 1e-8 * std::max(1.0, std::abs(sym)));
            }
        }
    }
}

TEST_CASE("towers and jets agree with repeated differentiation") {
    const Expr e = parse("exp(xi)*xibar^2 + tanh(xi*xibar)");
    const Tower t(e, 3);
    const cd z(0.3, 0.45);
    const Jet j = evaluate_jet(t, {z}, 3);
    const Expr d21 = differentiate(differentiate(differentiate(e, Var::Xi), Var::Xi), Var::XiBar);
    CHECK(std::abs(j.d(2, 1) - evaluate(d21, {z})) < 1e-12);
    CHECK(std::abs(j.d(0, 0) - evaluate(e, {z})) < 1e-15);
    CHECK(std::abs(evaluate(t.at(1, 2), {z}) - j.d(1, 2)) < 1e-12);
}

TEST_CASE("substitution") {
    const Expr e = parse("a*w1 + xi");
    const Expr s = substitute_params(e, {{"w1", parse("xibar^2")}});
    const ParamMap p{{"a", 3.0}};
    const cd z(0.2, 0.1);
    CHECK(std::abs(evaluate(s, {z, &p}) - (3.0 * std::conj(z) * std::conj(z) + z)) < 1e-15);
    const Expr u = substitute(parse("xi*xibar"), parse("xi+1"), parse("xibar+1"));
    CHECK(std::abs(evaluate(u, {z}) - std::norm(z + 1.0)) < 1e-15);
}
