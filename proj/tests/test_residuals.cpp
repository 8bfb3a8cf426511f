#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "curvlab/residuals.hpp"

using namespace curvlab;

// Every system is exercised on simple polynomial fields at a fixed point and
// compared against values frozen from an independent symbolic computation.

namespace {

std::map<std::string, Expr> fields(std::initializer_list<std::pair<const char*, const char*>> fs) {
    std::map<std::string, Expr> out;
    for (auto& [k, v] : fs) out.emplace(k, parse_expr(v));
    return out;
}

void expect(SystemId sys, const std::map<std::string, Expr>& f,
            const std::map<std::string, double>& params, const std::vector<double>& p,
            const std::vector<double>& want, double tol = 1e-10) {
    auto got = residual_at(sys, f, params, p);
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i) {
        CAPTURE(i);
        CHECK(std::abs(got[i] - want[i]) < tol);
    }
}

const std::vector<double> p3 = {0.3, -0.2, 0.5};
const std::vector<double> p2 = {0.3, 0.5};

} // namespace

TEST_CASE("mixed-derivative triple system") {
    auto f = fields({{"A", "1+x*y+z"}, {"B", "2+x*z+y"}, {"C", "3+x+y*z"}});
    expect(SystemId::Darboux, f, {}, p3,
           {-0.20240384615384616, 0.55902777777777779, -0.33653846153846156});
}

TEST_CASE("full second-order triple system with curvature parameter") {
    auto f = fields({{"A", "1+x*y+z"}, {"B", "2+x*z+y"}, {"C", "3+x+y*z"}});
    expect(SystemId::LameFull, f, {{"lambda", 0.7}}, p3,
           {-0.20240384615384616, 0.55902777777777779, -0.33653846153846156,
            4.48349347902513, 3.3810295990393748, 1.9642267201311272});
}

TEST_CASE("third-order evolution equation and its pair") {
    auto f = fields({{"l", "x^3-2*x*z+z^2"}});
    expect(SystemId::Kdv, f, {}, p2, {6.3496300000000003});
    auto f2 = fields({{"l", "x^3-2*x*z+z^2"}, {"m", "x*z+x^2"}});
    expect(SystemId::KdvPair, f2, {}, p2,
           {6.3496300000000003, -1.4056999999999999});
}

TEST_CASE("exponential-nonlinearity equations") {
    expect(SystemId::Liouville, fields({{"U", "x*y-x+y"}}), {}, p2,
           {6.0137527074704762});
    expect(SystemId::FEquation, fields({{"F", "1+x*y"}}), {}, p2,
           {5.7490062499999999});
}

TEST_CASE("sine-nonlinearity equations") {
    expect(SystemId::SineGordon, fields({{"u", "x^2*y"}}), {{"lambda", 0.3}}, p2,
           {0.61349544421129809});
    expect(SystemId::SgLinear, fields({{"A", "x+y^2"}, {"u", "1+x*y"}}),
           {{"lambda", 0.4}}, p2,
           {0.089867236994514599, 0.54402274729817501, 2.4144136483789049});
}

TEST_CASE("third-order angle system") {
    expect(SystemId::BSystem, fields({{"B", "0.5+x*y+y^2*z+x*z"}}), {{"lambda", 0.35}}, p3,
           {1.0572867460100481, 2.265791696966919, -0.60470691012798283});
}

TEST_CASE("generalized triple system") {
    auto f = fields({{"A", "1+x*y+z"}, {"B", "2+x*z+y"}, {"C", "3+x+y*z"}});
    expect(SystemId::GenDarboux, f, {}, p3,
           {-7.3024038461538465, -2.8009722222222222, -5.1005384615384619});
}

TEST_CASE("first-order curvature-coefficient system, both coefficient readings") {
    auto f = fields({{"K1", "x+2*y+3*z+x*y"}, {"K2", "2*x-y+z^2"}, {"K3", "x*y*z+x"}});
    expect(SystemId::NormalK, f, {}, p3, {-5.013, 6.5825, 3.7578});
    expect(SystemId::NormalK, f, {{"uniform_coeffs", 1}}, p3,
           {-3.765, 8.7225, 3.7578});
}

TEST_CASE("linear second-order systems for the curvature coefficients") {
    auto base = fields({{"A", "1+x*y+z*y"}, {"B", "2+x*y+y*z+x*z"}, {"C", "3+x+y*z+x*y"}});
    auto f1 = base;
    f1.emplace("K1", parse_expr("x^2+y*z+x*y"));
    expect(SystemId::K1Linear, f1, {}, p3,
           {0.31107920555156737, -0.098574461631786472, -0.38095238095238093});
    auto f2 = f1;
    f2.emplace("K2", parse_expr("y^2+x*z+x"));
    expect(SystemId::K2Linear, f2, {}, p3,
           {0.096284996410624546, -1.9303523989373619, -1.7878884870210927});
}

TEST_CASE("six first-order coefficient relations") {
    auto f = fields({{"A", "1+x*y+z*y"},
                     {"B", "2+x*y+y*z+x*z"},
                     {"C", "3+x+y*z+x*y"},
                     {"K1", "x^2+y*z+x*y"},
                     {"K2", "y^2+x*z+x"},
                     {"K3", "x*y*z+x+z^2"}});
    expect(SystemId::Theorem3Relations, f, {}, p3,
           {0.26666666666666666, -0.059523809523809521, 1.5844221105527638,
            0.29849246231155779, 1.0503184713375797, 0.15764331210191082});
}

TEST_CASE("algebraic cyclic relation") {
    auto f = fields({{"K1", "x^2+y*z+x*y"},
                     {"K2", "y^2+x*z+x"},
                     {"K3", "x*y*z+x+z^2"},
                     {"phi1", "x+y"},
                     {"phi2", "y*z+2"},
                     {"phi3", "x*z-1"}});
    expect(SystemId::PhiRelation, f, {}, p3, {-1.5940000000000001});
    // equal coefficients annihilate the cyclic sum for any phi
    auto f0 = fields({{"K1", "x+1"},
                      {"K2", "x+1"},
                      {"K3", "x+1"},
                      {"phi1", "x+y"},
                      {"phi2", "y*z+2"},
                      {"phi3", "x*z-1"}});
    expect(SystemId::PhiRelation, f0, {}, p3, {0.0}, 1e-14);
}

TEST_CASE("coefficient system over separated factors") {
    auto f = fields({{"K1", "x^2+y*z+x*y"}, {"a", "1+2*x+y"}, {"b", "y+x-2"}, {"c", "z-x+4"}});
    expect(SystemId::K1AbcSystem, f, {}, p3,
           {0.33333333333333331, -0.2857142857142857, 0.91803278688524592});
}

TEST_CASE("known solutions produce tiny residuals") {
    // 1-soliton profile for the third-order evolution equation
    expect(SystemId::Kdv, fields({{"l", "-4*cosh(x-4*z)^(-2)"}}), {}, {0.4, 0.1}, {0.0},
           1e-9);
    // A = B = C = 1/z solves the full triple system at curvature -1
    auto f = fields({{"A", "1/z"}, {"B", "1/z"}, {"C", "1/z"}});
    expect(SystemId::LameFull, f, {{"lambda", -1}}, {0.3, -0.2, 0.7},
           {0, 0, 0, 0, 0, 0}, 1e-10);
}

TEST_CASE("singular denominators raise the dedicated error") {
    // B vanishes at y = 2 - x*z... pick a point where B = 0
    auto f = fields({{"A", "1+x*y+z"}, {"B", "x"}, {"C", "3+x+y*z"}});
    CHECK_THROWS_AS(residual_at(SystemId::Darboux, f, {}, {0.0, 0.1, 0.2}),
                    singular_point_error);
    // sin(u) = 0
    CHECK_THROWS_AS(residual_at(SystemId::SgLinear, fields({{"A", "x+y"}, {"u", "x"}}),
                                {{"lambda", 1}}, {0.0, 0.5}),
                    singular_point_error);
}

TEST_CASE("scan skips singular points but fails when most points are singular") {
    // field with a denominator that vanishes on the plane x = 0: exclude it
    auto f = fields({{"A", "1+x*y+z"}, {"B", "x"}, {"C", "3+x+y*z"}});
    SamplePlan plan = SamplePlan::cube(3, 0.5, 1.5, 16);
    Report r = residual_scan(SystemId::Darboux, f, {}, plan, 1e-8);
    CHECK(r.n_points == 16); // no singular point in this box
    CHECK_FALSE(r.pass);     // the fields are not a solution

    // a solution sampled over a clean box passes
    auto sol = fields({{"A", "1/z"}, {"B", "1/z"}, {"C", "1/z"}});
    SamplePlan up;
    up.boxes = {{-1, 1}, {-1, 1}, {0.3, 2.0}};
    up.n_points = 16;
    CHECK(residual_scan(SystemId::LameFull, sol, {{"lambda", -1}}, up).pass);

    // every point singular -> error
    auto bad = fields({{"A", "1+x*y+z"}, {"B", "0"}, {"C", "3+x+y*z"}});
    CHECK_THROWS_AS(residual_scan(SystemId::Darboux, bad, {}, up), eval_error);
}

TEST_CASE("missing fields, parameters, and dimension mismatches are reported") {
    auto f = fields({{"A", "1"}, {"B", "1"}});
    CHECK_THROWS_AS(residual_at(SystemId::Darboux, f, {}, p3), eval_error);
    auto g = fields({{"A", "1"}, {"B", "1"}, {"C", "1"}});
    CHECK_THROWS_AS(residual_at(SystemId::LameFull, g, {}, p3), eval_error); // no lambda
    CHECK_THROWS_AS(residual_at(SystemId::Kdv, fields({{"l", "x"}}), {}, p3), eval_error);
    CHECK_THROWS_AS(system_from_name("nope"), eval_error);
    CHECK(system_info(system_from_name("kdv_pair")).fields ==
          std::vector<std::string>{"l", "m"});
    CHECK(all_systems().size() == 16);
}
