#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "curvlab/expr.hpp"

using namespace curvlab;

namespace {
double ev(const std::string& s, double x, double y, double z,
          const std::map<std::string, double>& params = {}) {
    return eval_value(parse_expr(s), {"x", "y", "z"}, {x, y, z}, params);
}
} // namespace

TEST_CASE("basic parsing and evaluation") {
    CHECK(ev("1+2*3", 0, 0, 0) == 7.0);
    CHECK(ev("(1+2)*3", 0, 0, 0) == 9.0);
    CHECK(ev("x^2+y^2+z^2", 1, 2, 3) == 14.0);
    CHECK(ev("2^3^2", 0, 0, 0) == 512.0); // right-associative
    CHECK(ev("-x^2", 2, 0, 0) == 4.0);    // unary minus binds tighter than ^
    CHECK(ev("-(x^2)", 2, 0, 0) == -4.0);
    CHECK(ev("0-x^2", 2, 0, 0) == -4.0);  // binary minus does not
    CHECK(ev("6/3/2", 0, 0, 0) == 1.0);   // left-associative
    CHECK(ev("1/2*x", 4, 0, 0) == 2.0);
    CHECK(ev("exp(0)", 0, 0, 0) == 1.0);
    CHECK(ev("lambda*x", 3, 0, 0, {{"lambda", 0.25}}) == doctest::Approx(0.75));
    CHECK(ev("csgn(y)", 0, -2, 0) == -1.0); // alias of sign
    CHECK(ev("1e2+x", 1, 0, 0) == 101.0);
    // 'e' not followed by digits is not part of the number (and implicit
    // multiplication does not exist, so this is trailing input)
    CHECK_THROWS_AS(parse_expr("2e"), parse_error);
}

TEST_CASE("parse errors carry the failing offset") {
    CHECK_THROWS_AS(parse_expr("x +"), parse_error);
    try {
        parse_expr("x +");
    } catch (const parse_error& e) {
        CHECK(e.offset == 3);
    }
    CHECK_THROWS_AS(parse_expr("foo(x)"), parse_error);   // unknown function
    CHECK_THROWS_AS(parse_expr("1 + 2) * 3"), parse_error); // trailing input
    CHECK_THROWS_AS(parse_expr("(1+2"), parse_error);
    CHECK_THROWS_AS(parse_expr(""), parse_error);
    CHECK_THROWS_AS(parse_expr("1..2"), parse_error);
}

TEST_CASE("print-then-parse is the identity on the printed form") {
    const char* samples[] = {
        "1+2*3",
        "-4*cosh(x-4*z)^(-2)",
        "(z^4+1)/(2*z^2)",
        "atan(sqrt(1-x^2)/x)",
        "sign(y)/y",
        "exp(2*x+2*y)*sin(z)-1/(x^2+y^2)",
        "0.125*x^2.5",
        "tanh(x)*tan(y)+ln(z)",
    };
    for (const char* s : samples) {
        CAPTURE(s);
        Expr e = parse_expr(s);
        std::string printed = print_expr(e);
        Expr e2 = parse_expr(printed);
        CHECK(print_expr(e2) == printed);
        // and both evaluate identically
        std::vector<double> p = {0.7, 0.6, 0.9};
        CHECK(eval_value(e, {"x", "y", "z"}, p) ==
              doctest::Approx(eval_value(e2, {"x", "y", "z"}, p)).epsilon(1e-15));
    }
}

TEST_CASE("unbound identifiers are reported") {
    Expr e = parse_expr("x + q");
    CHECK_THROWS_AS(eval_value(e, {"x", "y", "z"}, {1, 2, 3}), eval_error);
    CHECK_THROWS_WITH_AS(eval_value(e, {"x", "y", "z"}, {1, 2, 3}),
                         "unbound identifier 'q'", eval_error);
}

TEST_CASE("symbolic differentiation matches jet derivatives") {
    const char* samples[] = {
        "x^3*y - 2*x*z + z^2",
        "exp(x*y)/(1+z^2)",
        "sin(x)*cos(y)+tan(0.3*z)",
        "sqrt(x+2)*ln(y+3)",
        "atan(x*y)",
        "sinh(x)*tanh(y)+cosh(z)",
        "x^y",
        "(x+y)^2.5",
        "1/(x-y)",
    };
    std::vector<std::string> coords = {"x", "y", "z"};
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> uni(0.3, 1.1);
    for (const char* s : samples) {
        CAPTURE(s);
        Expr e = parse_expr(s);
        for (int axis = 0; axis < 3; ++axis) {
            Expr de = diff_expr(e, coords[axis]);
            // differentiated expressions must survive a print/parse round trip
            Expr de2 = parse_expr(print_expr(de));
            for (int trial = 0; trial < 5; ++trial) {
                std::vector<double> p = {uni(rng), uni(rng), uni(rng)};
                if (std::abs(p[0] - p[1]) < 0.05) continue;
                Jet j = eval_expr_at(e, coords, p, 1);
                double expect = j.d(axis);
                double scale = std::max(1.0, std::abs(expect));
                CHECK(std::abs(eval_value(de, coords, p) - expect) / scale < 1e-12);
                CHECK(std::abs(eval_value(de2, coords, p) - expect) / scale < 1e-12);
            }
        }
    }
}

TEST_CASE("differentiation edge cases") {
    CHECK(print_expr(diff_expr(parse_expr("sign(x)"), "x")) == "0");
    CHECK(print_expr(diff_expr(parse_expr("7"), "x")) == "0");
    CHECK(print_expr(diff_expr(parse_expr("y"), "x")) == "0");
    CHECK(print_expr(diff_expr(parse_expr("x"), "x")) == "1");
    // axis-derivative nodes cannot be differentiated symbolically
    Expr d = e_d(e_var("x"), 0);
    CHECK_THROWS_AS(diff_expr(d, "x"), eval_error);
}

TEST_CASE("axis-derivative nodes evaluate correctly with order headroom") {
    // D_z of x*z^2 is 2*x*z
    Expr e = e_d(parse_expr("x*z^2"), 2);
    CHECK(e.deriv_depth() == 1);
    CHECK(eval_value(e, {"x", "y", "z"}, {3, 0, 2}) == doctest::Approx(12.0));
    // the printed form is deliberately not parseable
    std::string printed = print_expr(e);
    CHECK(printed.find("D2(") != std::string::npos);
    CHECK_THROWS_AS(parse_expr(printed), parse_error);
    // nested depth accumulates
    Expr e2 = e_d(e, 0);
    CHECK(e2.deriv_depth() == 2);
    CHECK(eval_value(e2, {"x", "y", "z"}, {3, 0, 2}) == doctest::Approx(4.0));
    // first derivatives of a Deriv-bearing expression are still exact when
    // the evaluation order leaves headroom
    Jet j = eval_expr_at(e, {"x", "y", "z"}, {3, 0, 2}, 1 + e.deriv_depth());
    CHECK(j.d(0) == doctest::Approx(4.0));  // d/dx (2 x z) = 2 z
    CHECK(j.d(2) == doctest::Approx(6.0));  // d/dz (2 x z) = 2 x
}

TEST_CASE("number printing is round-trip exact for awkward doubles") {
    double vals[] = {0.1, 1.0 / 3.0, 1e-9, 123456789.123456789, -2.5e-7};
    for (double v : vals) {
        Expr e = Expr::number(v);
        Expr e2 = parse_expr(print_expr(e));
        CHECK(eval_value(e2, {"x"}, {0.0}) == v);
    }
}
