#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "curvlab/extension.hpp"
#include "curvlab/verdicts.hpp"

using namespace curvlab;

namespace {

MetricSpec conformal(const char* expr) {
    MetricSpec m;
    m.coords = {"x", "y", "z"};
    m.init_zero_metric();
    for (int i = 0; i < 3; ++i) m.set_g(i, i, parse_expr(expr));
    return m;
}

SamplePlan upper_half(int n = 32) {
    SamplePlan p;
    p.boxes = {{-1, 1}, {-1, 1}, {0.3, 2.0}};
    p.n_points = n;
    return p;
}

} // namespace

TEST_CASE("constant-curvature verdict with a supplied value") {
    MetricSpec m = conformal("1/z^2");
    Report r = check_constant_curvature(m, -1.0, upper_half());
    CHECK(r.pass);
    CHECK(r.max_abs_residual < 1e-10);
    CHECK(r.n_points == 32);
    CHECK(r.lambda == -1.0);
    Report wrong = check_constant_curvature(m, 1.0, upper_half());
    CHECK_FALSE(wrong.pass);
    CHECK(wrong.max_abs_residual > 0.1);
}

TEST_CASE("constant-curvature verdict estimates the value when not supplied") {
    MetricSpec m = conformal("1/z^2");
    Report r = check_constant_curvature(m, std::nullopt, upper_half());
    CHECK(r.pass);
    REQUIRE(r.lambda.has_value());
    CHECK(*r.lambda == doctest::Approx(-1.0).epsilon(1e-10));
    CHECK(r.lambda_spread < 1e-9);
    CHECK(!r.notes.empty());
}

TEST_CASE("flatness verdict") {
    MetricSpec eu = conformal("1");
    CHECK(check_flat(eu, SamplePlan::cube(3, -2, 2, 16)).pass);

    // stereographic conformal factor: curvature +1, not flat
    MetricSpec sph = conformal("(1+(x^2+y^2+z^2)/4)^(-2)");
    Report r = check_flat(sph, SamplePlan::cube(3, -1, 1, 16));
    CHECK_FALSE(r.pass);
    CHECK(r.max_abs_residual > 1e-3);
    CHECK(check_constant_curvature(sph, 1.0, SamplePlan::cube(3, -1, 1, 16)).pass);
}

TEST_CASE("parallel-curvature verdict") {
    MetricSpec m = conformal("1/z^2");
    CHECK(check_symmetric(m, upper_half()).pass);

    // the 6D doubling of the same base is not parallel-curvature
    MetricSpec ext = extend(m, ExtensionMode::LeviCivita);
    SamplePlan p;
    p.boxes = {{-1, 1}, {-1, 1}, {0.3, 2.0}, {-1, 1}, {-1, 1}, {-1, 1}};
    p.n_points = 8;
    Report r = check_symmetric(ext, p);
    CHECK_FALSE(r.pass);
    CHECK(r.max_abs_residual > 1e-2);
}

TEST_CASE("vanishing condition for the density of a diagonal triple") {
    std::vector<std::string> coords = {"x", "y", "z"};
    SamplePlan plan = upper_half(24);

    // A = B = C = 1/z satisfies it, and the cross-check agrees
    Expr inv_z = parse_expr("1/z");
    Report ok = check_cs_vanishing(inv_z, inv_z, inv_z, coords, plan);
    CHECK(ok.pass);
    CHECK(ok.max_abs_residual < 1e-12);
    REQUIRE(!ok.notes.empty());
    CHECK(ok.notes[0].find("density vanishes") != std::string::npos);

    // the asymmetric exponential triple violates it
    Expr A = parse_expr("exp(2*y+2*z)");
    Expr B = parse_expr("exp(z-x)");
    Expr C = parse_expr("exp(x+y)");
    Report bad = check_cs_vanishing(A, B, C, coords, SamplePlan::cube(3, -0.5, 0.5, 24));
    CHECK_FALSE(bad.pass);
    CHECK(bad.max_abs_residual > 0.1);

    CHECK_THROWS_AS(
        check_cs_vanishing(A, B, C, {"x", "y"}, SamplePlan::cube(2, 0, 1, 4)), eval_error);
}

TEST_CASE("residuals are pre-scaled so large metrics do not inflate them") {
    // scaling the flat metric by 1e6 squares to 1e12 in |g|^2; the scaled
    // residual must stay at roundoff level
    MetricSpec big = conformal("1000000");
    Report r = check_flat(big, SamplePlan::cube(3, -1, 1, 8));
    CHECK(r.pass);
    CHECK(r.max_abs_residual < 1e-10);
}

TEST_CASE("reports serialize with stable keys") {
    MetricSpec m = conformal("1/z^2");
    Report r = check_constant_curvature(m, -1.0, upper_half(4), kDefaultTol, "hyper");
    std::string j = r.to_json().dump();
    CHECK(j.find("\"case\":\"hyper\"") != std::string::npos);
    CHECK(j.find("\"check\":\"constant_curvature\"") != std::string::npos);
    CHECK(j.find("\"verdict\":\"pass\"") != std::string::npos);
    CHECK(r.to_json().dump() == j); // deterministic
}
