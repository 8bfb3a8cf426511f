#pragma once

// Registry of named example cases: each bundles a metric and/or field set,
// a deterministic sample plan, the checks to run, and the expected outcome
// of every check.  Outcomes marked in `frozen` were first confirmed
// against the finite-difference oracle in the test suite and are kept here
// as regression baselines.

#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "curvlab/errors.hpp"
#include "curvlab/expr.hpp"
#include "curvlab/extension.hpp"
#include "curvlab/metric.hpp"
#include "curvlab/report.hpp"
#include "curvlab/residuals.hpp"
#include "curvlab/sample.hpp"
#include "curvlab/tensor.hpp"
#include "curvlab/verdicts.hpp"

namespace curvlab {

struct CaseOutcome {
    Report report;
    bool expected_pass = true;
    bool matched() const { return report.pass == expected_pass; }
};

struct CorpusCase {
    std::string name;
    std::string summary;
    std::function<MetricSpec()> metric; // null when the case has no single metric
    std::function<std::vector<CaseOutcome>()> run;
};

namespace corpus_detail {

// Calibrated expectations (see test_corpus for the oracle confirmations).
namespace frozen {
// Which sign variant of the twisted product metric has constant curvature.
inline constexpr bool kTwistMinusVariantConst = true;
inline constexpr bool kTwistPlusVariantConst = true;
// Whether the surface-family metric needs the dy^2 term for constant
// curvature at lambda = -1.
inline constexpr bool kChebyshevWithDy2 = true;
inline constexpr bool kChebyshevWithoutDy2 = false;
// The mixed-coefficient diagnostic system on sqrt-power fields holds
// exactly (confirmed with an independent symbolic evaluation).
inline constexpr bool kSqrtPowerTripleSatisfiesMixed = true;
// Shifted-log field: the printed closed form does not satisfy the
// exponential PDE; the corrected form does.
inline constexpr bool kPrintedLogFormSatisfies = false;
// The doubled metric of the curvature -1 base is NOT a symmetric space,
// although the base itself is: an independent symbolic computation confirms
// the 6D curvature has non-vanishing covariant derivative (the quoted claim
// holds only for flat bases in our calculations); kept as a recorded
// discrepancy.
inline constexpr bool kDoubledHyperbolicIsSymmetric = false;
// The quoted invariant-density closed forms are proportional to the computed
// density (constant factor +/-5, recorded in the report notes) but do not
// match either the raw or the normalized variant directly; kept as recorded
// discrepancies.
inline constexpr bool kClosedFormCsMatches = false;
} // namespace frozen

inline Expr px(const std::string& s) { return parse_expr(s); }

inline CaseOutcome oc(Report r, bool expected) { return {std::move(r), expected}; }

// ---- shared metric builders ----

inline MetricSpec heat_pair_metric(const Expr& l, const Expr& mfun) {
    // y^2 dx^2 + 2(l y^2 + m) dx dz + 2 dy dz
    //   + (l^2 y^2 - 2 l_x y + 2 l m + 2 l) dz^2
    MetricSpec m;
    m.coords = {"x", "y", "z"};
    m.init_zero_metric();
    Expr y = e_var("y");
    Expr y2 = e_mul(y, y);
    Expr lx = diff_expr(l, "x");
    m.set_g(0, 0, px("y^2"));
    m.set_g(0, 2, e_add(e_mul(l, y2), mfun));
    m.set_g(1, 2, e_num(1));
    m.set_g(2, 2, e_add(e_sub(e_mul(e_mul(l, l), y2), e_mul(e_num(2), e_mul(lx, y))),
                        e_add(e_mul(e_num(2), e_mul(l, mfun)), e_mul(e_num(2), l))));
    m.fields["l"] = l;
    m.fields["m"] = mfun;
    return m;
}

inline MetricSpec diagonal_metric(const Expr& g11, const Expr& g22, const Expr& g33) {
    MetricSpec m;
    m.coords = {"x", "y", "z"};
    m.init_zero_metric();
    m.set_g(0, 0, g11);
    m.set_g(1, 1, g22);
    m.set_g(2, 2, g33);
    return m;
}

inline MetricSpec abc_squared_metric(const Expr& A, const Expr& B, const Expr& C) {
    return diagonal_metric(e_mul(A, A), e_mul(B, B), e_mul(C, C));
}

// ---- custom report helpers ----

inline Report lambda_estimate_report(const MetricSpec& m, const SamplePlan& plan,
                                     double target, const std::string& case_name) {
    Report r = check_constant_curvature(m, std::nullopt, plan, kDefaultTol, case_name);
    r.check = "lambda_estimate";
    bool close = r.lambda && std::abs(*r.lambda - target) < 1e-9 && r.lambda_spread < 1e-9;
    r.notes.push_back("target " + std::to_string(target));
    r.pass = r.pass && close;
    return r;
}

inline Report cs_zero_report(const MetricSpec& m, const SamplePlan& plan,
                             const std::string& case_name, double tol = 1e-9) {
    auto pts = sample_points(plan, m.coords, m.params);
    Report rep;
    rep.case_name = case_name;
    rep.check = "cs_zero";
    rep.n_points = static_cast<int>(pts.size());
    rep.tol = tol;
    detail::Aggregate agg;
    for (const auto& p : pts) agg.add(cs_density_at(m, p));
    rep.max_abs_residual = agg.max_abs;
    rep.mean_abs_residual = agg.mean();
    rep.pass = agg.max_abs <= tol;
    return rep;
}

// Compare the computed Chern-Simons density (raw and sqrt(|det g|)
// normalized) against a closed-form expression; the report names the
// matching variant, or records that neither matches.
inline Report cs_match_report(const MetricSpec& m, const Expr& closed, const SamplePlan& plan,
                              const std::string& case_name, double rel_tol = 1e-6) {
    auto pts = sample_points(plan, m.coords, m.params);
    Report rep;
    rep.case_name = case_name;
    rep.check = "cs_closed_form";
    rep.n_points = static_cast<int>(pts.size());
    rep.tol = rel_tol;
    std::vector<double> refs, raws, norms;
    for (const auto& p : pts) {
        refs.push_back(eval_value(closed, m.coords, p, m.params));
        raws.push_back(cs_density_at(m, p, false));
        norms.push_back(cs_density_at(m, p, true));
    }
    auto max_rel_err = [&](const std::vector<double>& v, double scale) {
        double e = 0;
        for (std::size_t i = 0; i < refs.size(); ++i)
            e = std::max(e, std::abs(scale * v[i] - refs[i]) /
                                std::max(std::abs(refs[i]), 1e-30));
        return e;
    };
    double err_raw = max_rel_err(raws, 1.0), err_norm = max_rel_err(norms, 1.0);
    const char* which = err_raw <= rel_tol    ? "raw"
                        : err_norm <= rel_tol ? "normalized"
                                              : "neither";
    rep.notes.push_back(std::string("matching variant: ") + which);
    rep.notes.push_back("max rel err raw " + std::to_string(err_raw) + ", normalized " +
                        std::to_string(err_norm));
    // When neither matches directly, check for a constant proportionality
    // factor (closed form = c * computed) and record it.
    if (err_raw > rel_tol && err_norm > rel_tol) {
        auto try_scale = [&](const std::vector<double>& v, const char* name) {
            if (std::abs(v[0]) < 1e-30) return;
            double c = refs[0] / v[0];
            if (max_rel_err(v, c) <= rel_tol)
                rep.notes.push_back(std::string("closed form = c * ") + name +
                                    " with constant c = " + std::to_string(c));
        };
        try_scale(raws, "raw");
        try_scale(norms, "normalized");
    }
    rep.max_abs_residual = std::min(err_raw, err_norm);
    rep.mean_abs_residual = rep.max_abs_residual;
    rep.pass = err_raw <= rel_tol || err_norm <= rel_tol;
    return rep;
}

inline Report det_invariance_report(const MetricSpec& m1, const MetricSpec& m2,
                                    const SamplePlan& plan, const std::string& case_name) {
    auto pts = sample_points(plan, m1.coords, m1.params);
    Report rep;
    rep.case_name = case_name;
    rep.check = "det_invariant";
    rep.n_points = static_cast<int>(pts.size());
    rep.tol = 1e-9;
    detail::Aggregate agg;
    double vs_closed = 0;
    for (const auto& p : pts) {
        double d1 = metric_det_at(m1, p), d2 = metric_det_at(m2, p);
        agg.add(d1 - d2);
        vs_closed = std::max(vs_closed, std::abs(d1 + p[1] * p[1])); // det = -y^2
    }
    rep.max_abs_residual = agg.max_abs;
    rep.mean_abs_residual = agg.mean();
    rep.pass = agg.max_abs <= rep.tol;
    rep.notes.push_back("max |det + y^2| = " + std::to_string(vs_closed));
    return rep;
}

inline Report not_flat_report(const MetricSpec& m, const SamplePlan& plan,
                              const std::string& case_name, double threshold = 0.1) {
    auto pts = sample_points(plan, m.coords, m.params);
    Report rep;
    rep.case_name = case_name;
    rep.check = "not_flat";
    rep.n_points = static_cast<int>(pts.size());
    rep.tol = threshold;
    double worst = 0;
    for (const auto& p : pts) {
        CurvatureBundle b = bundle_at(m, p);
        for (double v : b.riemann_low) worst = std::max(worst, std::abs(v));
    }
    rep.max_abs_residual = worst;
    rep.mean_abs_residual = worst;
    rep.pass = worst > threshold;
    rep.notes.push_back("pass requires max |R| above the threshold");
    return rep;
}

inline Report signature_report(const MetricSpec& m, const SamplePlan& plan,
                               const std::string& case_name, int want_pos, int want_neg) {
    auto pts = sample_points(plan, m.coords, m.params);
    Report rep;
    rep.case_name = case_name;
    rep.check = "signature";
    rep.n_points = static_cast<int>(pts.size());
    rep.tol = 0;
    bool ok = true;
    for (const auto& p : pts) {
        Signature s = metric_signature_at(m, p);
        if (s.n_pos != want_pos || s.n_neg != want_neg || s.n_zero != 0) ok = false;
    }
    rep.pass = ok;
    rep.notes.push_back("expected inertia (" + std::to_string(want_pos) + "," +
                        std::to_string(want_neg) + ",0) at every point");
    return rep;
}

// Ricci of the quarter-curvature case against its displayed matrix and the
// identity R_ab = 2 lambda g_ab.
inline Report quarter_ricci_report(const MetricSpec& m, const SamplePlan& plan,
                                   const std::string& case_name) {
    auto pts = sample_points(plan, m.coords, m.params);
    const double lam = 0.25;
    Report rep;
    rep.case_name = case_name;
    rep.check = "ricci_display";
    rep.lambda = lam;
    rep.n_points = static_cast<int>(pts.size());
    rep.tol = 1e-9;
    double worst_fixed = 0, worst_disp = 0, worst_ident = 0;
    for (const auto& p : pts) {
        CurvatureBundle b = bundle_at(m, p);
        double z = p[2];
        double u = (std::pow(z, 4) + 1) / (4 * z * z);
        worst_fixed = std::max({worst_fixed, std::abs(b.Ric(0, 0) - 0.5),
                                std::abs(b.Ric(2, 2) + 2.0 / (z * z))});
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                worst_fixed = std::max(worst_fixed,
                                       std::abs(b.Ric(i, j) - 2 * lam * b.G(i, j)));
        worst_disp = std::max(worst_disp, std::abs(b.Ric(0, 1) - u));
        worst_ident = std::max(worst_ident, std::abs(b.Ric(0, 1) - 2 * lam * b.G(0, 1)));
    }
    rep.max_abs_residual = worst_fixed;
    rep.mean_abs_residual = worst_fixed;
    rep.pass = worst_fixed <= rep.tol;
    const char* which = (worst_disp <= 1e-9 && worst_ident <= 1e-9)
                            ? "both candidates (they coincide)"
                        : worst_disp <= 1e-9  ? "displayed value"
                        : worst_ident <= 1e-9 ? "2*lambda*g12"
                                              : "neither candidate";
    rep.notes.push_back(std::string("off-diagonal entry matches ") + which);
    rep.notes.push_back("|R12 - displayed| = " + std::to_string(worst_disp) +
                        ", |R12 - 2*lambda*g12| = " + std::to_string(worst_ident));
    return rep;
}

// Informational: curvature of the modified-mode connection, reported
// without a verdict.
inline Report connection_info_report(const MetricSpec& base, ExtensionMode mode,
                                     const std::vector<double>& point,
                                     const std::string& case_name) {
    ConnectionCurvature cc = connection_curvature_at(base, mode, point);
    Report rep;
    rep.case_name = case_name;
    rep.check = std::string("connection_bundle:") + extension_mode_name(mode);
    rep.n_points = 1;
    rep.max_abs_residual = cc.max_abs_riemann();
    rep.mean_abs_residual = cc.max_abs_nabla();
    rep.pass = true; // informational only
    rep.notes.push_back("no verdict asserted; max |R| = " +
                        std::to_string(cc.max_abs_riemann()) + ", max |DR| = " +
                        std::to_string(cc.max_abs_nabla()));
    if (mode == ExtensionMode::ModifiedMinus)
        rep.notes.push_back(
            "minus mode realized with a formal unit of square -1 (interpretation)");
    return rep;
}

// ---- the cases ----

inline const Expr& soliton1() {
    static Expr e = px("-4*cosh(x-4*z)^(-2)");
    return e;
}
inline const Expr& soliton2() {
    static Expr e = px(
        "-24*(4*cosh(2*x-8*z)+cosh(4*x-64*z)+3)/(3*cosh(x-28*z)+cosh(3*x-36*z))^2");
    return e;
}

inline std::vector<CorpusCase> build_registry() {
    std::vector<CorpusCase> reg;

    // --- kdv1_flat ---
    reg.push_back(CorpusCase{
        "kdv1_flat",
        "non-diagonal flat metric from the single-bump travelling wave",
        [] { return heat_pair_metric(soliton1(), e_num(-0.5)); },
        [] {
            MetricSpec m = heat_pair_metric(soliton1(), e_num(-0.5));
            SamplePlan plan;
            plan.boxes = {{-1, 1}, {0.5, 1.5}, {-1, 1}};
            std::vector<CaseOutcome> out;
            out.push_back(oc(check_flat(m, plan, kDefaultTol, "kdv1_flat"), true));
            SamplePlan plan2;
            plan2.boxes = {{-1, 1}, {-1, 1}};
            out.push_back(oc(residual_scan(SystemId::Kdv, {{"l", soliton1()}}, {}, plan2,
                                           1e-9, "kdv1_flat"),
                             true));
            MetricSpec m2 = heat_pair_metric(soliton2(), e_num(-0.5));
            out.push_back(oc(det_invariance_report(m, m2, plan, "kdv1_flat"), true));
            SamplePlan csplan;
            csplan.boxes = {{-1, 1}, {0.5, 1.5}, {-0.5, 0.5}}; // y > 0 throughout
            csplan.n_points = 16;
            // Quoted closed form for this travelling-wave case.
            Expr closed = px("160*cosh(x-4*z)*sinh(x-4*z)^3*sign(y)/y");
            out.push_back(oc(cs_match_report(m, closed, csplan, "kdv1_flat"),
                             frozen::kClosedFormCsMatches));
            // Same case pushed through the general two-field density formula;
            // differs from the quoted form above by a factor cosh^6.
            Expr closed2 = px("-160*sinh(x-4*z)^3/cosh(x-4*z)^5*sign(y)/y");
            out.push_back(oc(cs_match_report(m, closed2, csplan, "kdv1_flat"),
                             frozen::kClosedFormCsMatches));
            return out;
        }});

    // --- kdv2_flat ---
    reg.push_back(CorpusCase{
        "kdv2_flat",
        "non-diagonal flat metric from the two-bump travelling wave",
        [] { return heat_pair_metric(soliton2(), e_num(-0.5)); },
        [] {
            MetricSpec m = heat_pair_metric(soliton2(), e_num(-0.5));
            SamplePlan plan;
            plan.boxes = {{-0.3, 0.3}, {0.5, 1.5}, {-0.05, 0.05}};
            std::vector<CaseOutcome> out;
            out.push_back(oc(check_flat(m, plan, kDefaultTol, "kdv2_flat"), true));
            SamplePlan plan2;
            plan2.boxes = {{-0.3, 0.3}, {-0.05, 0.05}};
            out.push_back(oc(residual_scan(SystemId::Kdv, {{"l", soliton2()}}, {}, plan2,
                                           1e-9, "kdv2_flat"),
                             true));
            return out;
        }});

    // --- kdv_linear_example1 ---
    reg.push_back(CorpusCase{
        "kdv_linear_example1",
        "rational similarity solution of the evolution pair",
        [] { return heat_pair_metric(px("-x/(3*z)"), px("-1/2+z/x^5")); },
        [] {
            Expr l = px("-x/(3*z)"), mm = px("-1/2+z/x^5");
            MetricSpec m = heat_pair_metric(l, mm);
            SamplePlan plan;
            plan.boxes = {{1, 2}, {0.5, 1.5}, {1, 2}};
            std::vector<CaseOutcome> out;
            SamplePlan plan2;
            plan2.boxes = {{1, 2}, {1, 2}};
            out.push_back(oc(residual_scan(SystemId::KdvPair, {{"l", l}, {"m", mm}}, {},
                                           plan2, 1e-9, "kdv_linear_example1"),
                             true));
            out.push_back(oc(check_flat(m, plan, kDefaultTol, "kdv_linear_example1"), true));
            SamplePlan csplan = plan;
            csplan.n_points = 16;
            Expr closed =
                px("10/9*x*sign(y)/(z^2*y)-10/3*(z/x^3)*sign(y)/(z*x^2*y^3)");
            out.push_back(oc(cs_match_report(m, closed, csplan, "kdv_linear_example1"),
                             frozen::kClosedFormCsMatches));
            return out;
        }});

    // --- sphere_l1 ---
    reg.push_back(CorpusCase{
        "sphere_l1",
        "conformally flat metric of curvature +1",
        [] {
            Expr g = px("(1+(x^2+y^2+z^2)/4)^(-2)");
            return diagonal_metric(g, g, g);
        },
        [] {
            Expr g = px("(1+(x^2+y^2+z^2)/4)^(-2)");
            MetricSpec m = diagonal_metric(g, g, g);
            SamplePlan plan = SamplePlan::cube(3, -0.8, 0.8);
            std::vector<CaseOutcome> out;
            out.push_back(
                oc(check_constant_curvature(m, 1.0, plan, 1e-9, "sphere_l1"), true));
            return out;
        }});

    // --- hyperbolic_lm1 ---
    reg.push_back(CorpusCase{
        "hyperbolic_lm1",
        "upper-half-space metric of curvature -1",
        [] {
            Expr g = px("1/z^2");
            return diagonal_metric(g, g, g);
        },
        [] {
            Expr g = px("1/z^2");
            MetricSpec m = diagonal_metric(g, g, g);
            SamplePlan plan;
            plan.boxes = {{-1, 1}, {-1, 1}, {0.5, 1.5}};
            std::vector<CaseOutcome> out;
            out.push_back(
                oc(check_constant_curvature(m, -1.0, plan, 1e-9, "hyperbolic_lm1"), true));
            out.push_back(oc(lambda_estimate_report(m, plan, -1.0, "hyperbolic_lm1"), true));
            // negative control: this space is certainly not flat
            out.push_back(oc(check_flat(m, plan, kDefaultTol, "hyperbolic_lm1"), false));
            out.push_back(oc(cs_zero_report(m, plan, "hyperbolic_lm1"), true));
            return out;
        }});

    // --- hyperbolic_uv ---
    reg.push_back(CorpusCase{
        "hyperbolic_uv",
        "curvature -1 metric obtained by perturbing two diagonal entries",
        [] {
            return diagonal_metric(px("1/z^2"), px("1/z^2-1"), px("1/(z^2*(1-z^2))"));
        },
        [] {
            MetricSpec m =
                diagonal_metric(px("1/z^2"), px("1/z^2-1"), px("1/(z^2*(1-z^2))"));
            SamplePlan plan;
            plan.boxes = {{-1, 1}, {-1, 1}, {0.35, 0.8}};
            std::vector<CaseOutcome> out;
            out.push_back(
                oc(check_constant_curvature(m, -1.0, plan, kDefaultTol, "hyperbolic_uv"),
                   true));
            return out;
        }});

    // --- sphere_Axyz ---
    reg.push_back(CorpusCase{
        "sphere_Axyz",
        "one-parameter deformation of the conformal factor in the x slot",
        [] {
            Expr A = px("4*sqrt(x^2*(x^2-4*lambda+4))/"
                        "((x^2-4*lambda+4)*(4+x^2+y^2+z^2))");
            Expr g = px("(1+(x^2+y^2+z^2)/4)^(-2)");
            MetricSpec m = diagonal_metric(e_mul(A, A), g, g);
            m.params["lambda"] = -1.0;
            return m;
        },
        [] {
            std::vector<CaseOutcome> out;
            for (double lam : {-1.0, 0.5}) {
                Expr A = px("4*sqrt(x^2*(x^2-4*lambda+4))/"
                            "((x^2-4*lambda+4)*(4+x^2+y^2+z^2))");
                Expr g = px("(1+(x^2+y^2+z^2)/4)^(-2)");
                MetricSpec m = diagonal_metric(e_mul(A, A), g, g);
                m.params["lambda"] = lam;
                SamplePlan plan;
                plan.boxes = {{0.3, 1.2}, {-0.5, 0.5}, {-0.5, 0.5}};
                Report r =
                    check_constant_curvature(m, lam, plan, kDefaultTol, "sphere_Axyz");
                r.notes.push_back("deformation parameter " + std::to_string(lam));
                out.push_back(oc(std::move(r), true));
            }
            return out;
        }});

    // --- liouville_metric ---
    reg.push_back(CorpusCase{
        "liouville_metric",
        "twisted product 2E dx dy + dz^2 over a log-field solution",
        [] {
            MetricSpec m;
            m.coords = {"x", "y", "z"};
            m.init_zero_metric();
            m.set_g(0, 1, px("1/4*((2/(1+x*y))*sin(z)-(2/(1+x*y))*cos(z))^2"));
            m.set_g(2, 2, e_num(1));
            return m;
        },
        [] {
            std::vector<CaseOutcome> out;
            SamplePlan plan;
            plan.boxes = {{0.2, 0.8}, {0.2, 0.8}, {1.0, 1.5}};

            MetricSpec minus;
            minus.coords = {"x", "y", "z"};
            minus.init_zero_metric();
            minus.set_g(0, 1, px("1/4*((2/(1+x*y))*sin(z)-(2/(1+x*y))*cos(z))^2"));
            minus.set_g(2, 2, e_num(1));
            Report r1 =
                check_constant_curvature(minus, 1.0, plan, kDefaultTol, "liouville_metric");
            r1.notes.push_back("sign variant: F sin - F cos");
            out.push_back(oc(std::move(r1), frozen::kTwistMinusVariantConst));

            MetricSpec plus = minus;
            plus.set_g(0, 1, px("1/4*((2/(1+x*y))*sin(z)+(2/(1+x*y))*cos(z))^2"));
            Report r2 =
                check_constant_curvature(plus, 1.0, plan, kDefaultTol, "liouville_metric");
            r2.notes.push_back("sign variant: F sin + F cos");
            out.push_back(oc(std::move(r2), frozen::kTwistPlusVariantConst));

            out.push_back(oc(cs_zero_report(minus, plan, "liouville_metric"), true));

            SamplePlan plan2;
            plan2.boxes = {{0.2, 0.8}, {0.2, 0.8}};
            out.push_back(oc(residual_scan(SystemId::Liouville,
                                           {{"U", px("ln(2/(1+x*y))")}}, {}, plan2, 1e-8,
                                           "liouville_metric"),
                             true));
            out.push_back(oc(residual_scan(SystemId::FEquation, {{"F", px("2/(1+x*y)")}},
                                           {}, plan2, 1e-8, "liouville_metric"),
                             true));
            // the printed closed form (with a = x, b = -y) does not solve the
            // exponential PDE; recorded as a discrepancy
            Report r3 = residual_scan(SystemId::Liouville, {{"U", px("ln(2/(x^2+y^2))")}},
                                      {}, plan2, 1e-8, "liouville_metric");
            r3.notes.push_back("printed closed form, free functions a=x, b=-y");
            out.push_back(oc(std::move(r3), frozen::kPrintedLogFormSatisfies));
            return out;
        }});

    // --- sg_chebyshev ---
    reg.push_back(CorpusCase{
        "sg_chebyshev",
        "net-angle surface family over the kink solution, curvature -1",
        [] {
            MetricSpec m;
            m.coords = {"x", "y", "z"};
            m.init_zero_metric();
            m.set_g(0, 0, e_num(1));
            m.set_g(0, 1, px("cos(4*atan(exp(x+y)))"));
            m.set_g(1, 1, e_num(1));
            m.set_g(2, 2, px("(exp(x+y)/(1+exp(2*x+2*y)))^2"));
            return m;
        },
        [] {
            Expr u = px("4*atan(exp(x+y))");
            Expr A = px("exp(x+y)/(1+exp(2*x+2*y))");
            std::vector<CaseOutcome> out;
            SamplePlan plan;
            plan.boxes = {{0.6, 1.2}, {0.6, 1.2}, {0, 1}};

            MetricSpec with_dy2;
            with_dy2.coords = {"x", "y", "z"};
            with_dy2.init_zero_metric();
            with_dy2.set_g(0, 0, e_num(1));
            with_dy2.set_g(0, 1, e_call(Func::Cos, u));
            with_dy2.set_g(1, 1, e_num(1));
            with_dy2.set_g(2, 2, e_mul(A, A));
            Report r1 = check_constant_curvature(with_dy2, -1.0, plan, kDefaultTol,
                                                 "sg_chebyshev");
            r1.notes.push_back("transcription with the dy^2 term");
            out.push_back(oc(std::move(r1), frozen::kChebyshevWithDy2));

            MetricSpec no_dy2 = with_dy2;
            no_dy2.set_g(1, 1, e_num(0));
            Report r2 =
                check_constant_curvature(no_dy2, -1.0, plan, kDefaultTol, "sg_chebyshev");
            r2.notes.push_back("transcription without the dy^2 term");
            out.push_back(oc(std::move(r2), frozen::kChebyshevWithoutDy2));

            SamplePlan plan2;
            plan2.boxes = {{0.6, 1.2}, {0.6, 1.2}};
            out.push_back(oc(residual_scan(SystemId::SineGordon, {{"u", u}},
                                           {{"lambda", -1.0}}, plan2, 1e-8,
                                           "sg_chebyshev"),
                             true));
            out.push_back(oc(residual_scan(SystemId::SgLinear, {{"A", A}, {"u", u}},
                                           {{"lambda", -1.0}}, plan2, 1e-8,
                                           "sg_chebyshev"),
                             true));
            return out;
        }});

    // --- sec4_lambda_quarter ---
    reg.push_back(CorpusCase{
        "sec4_lambda_quarter",
        "curvature 1/4 metric with the displayed mixed Ricci entry",
        [] {
            MetricSpec m;
            m.coords = {"x", "y", "z"};
            m.init_zero_metric();
            m.set_g(0, 0, e_num(1));
            m.set_g(0, 1, px("(z^4+1)/(2*z^2)"));
            m.set_g(1, 1, e_num(1));
            m.set_g(2, 2, px("-4/z^2"));
            return m;
        },
        [] {
            MetricSpec m;
            m.coords = {"x", "y", "z"};
            m.init_zero_metric();
            m.set_g(0, 0, e_num(1));
            m.set_g(0, 1, px("(z^4+1)/(2*z^2)"));
            m.set_g(1, 1, e_num(1));
            m.set_g(2, 2, px("-4/z^2"));
            SamplePlan plan;
            plan.boxes = {{0.5, 1.5}, {0.5, 1.5}, {0.55, 0.9}};
            std::vector<CaseOutcome> out;
            out.push_back(oc(check_constant_curvature(m, 0.25, plan, kDefaultTol,
                                                      "sec4_lambda_quarter"),
                             true));
            out.push_back(oc(quarter_ricci_report(m, plan, "sec4_lambda_quarter"), true));
            Expr B = px("atan(sqrt(1-((z^4+1)/(4*z^2))^2)/((z^4+1)/(4*z^2)))");
            out.push_back(oc(residual_scan(SystemId::BSystem, {{"B", B}},
                                           {{"lambda", 0.25}}, plan, 1e-8,
                                           "sec4_lambda_quarter"),
                             true));
            out.push_back(oc(cs_zero_report(m, plan, "sec4_lambda_quarter"), true));
            return out;
        }});

    // --- ext_flat ---
    reg.push_back(CorpusCase{
        "ext_flat",
        "doubled metric of a flat diagonal base: flat, inertia (3,3)",
        [] { return diagonal_metric(px("exp(2*x)"), e_num(1), e_num(1)); },
        [] {
            MetricSpec base = diagonal_metric(px("exp(2*x)"), e_num(1), e_num(1));
            std::vector<CaseOutcome> out;
            SamplePlan plan3 = SamplePlan::cube(3, -0.5, 0.5);
            out.push_back(oc(residual_scan(SystemId::LameFull,
                                           {{"A", px("exp(x)")},
                                            {"B", e_num(1)},
                                            {"C", e_num(1)}},
                                           {{"lambda", 0.0}}, plan3, 1e-9, "ext_flat"),
                             true));
            MetricSpec ext = extend(base, ExtensionMode::LeviCivita);
            SamplePlan plan6;
            plan6.boxes = {{-0.5, 0.5}, {-0.5, 0.5}, {-0.5, 0.5},
                           {-1, 1},     {-1, 1},     {-1, 1}};
            plan6.n_points = 16;
            out.push_back(oc(check_flat(ext, plan6, kDefaultTol, "ext_flat"), true));
            out.push_back(oc(signature_report(ext, plan6, "ext_flat", 3, 3), true));
            return out;
        }});

    // --- ext_symmetric ---
    reg.push_back(CorpusCase{
        "ext_symmetric",
        "doubled metric of the curvature -1 base: curved, parallel-curvature "
        "check kept as a recorded discrepancy",
        [] {
            MetricSpec base =
                diagonal_metric(px("1/z^2"), px("1/z^2"), px("1/z^2"));
            return extend(base, ExtensionMode::LeviCivita);
        },
        [] {
            MetricSpec base =
                diagonal_metric(px("1/z^2"), px("1/z^2"), px("1/z^2"));
            MetricSpec ext = extend(base, ExtensionMode::LeviCivita);
            SamplePlan plan6;
            plan6.boxes = {{-1, 1}, {-1, 1}, {0.5, 1.5}, {-1, 1}, {-1, 1}, {-1, 1}};
            plan6.n_points = 10;
            std::vector<CaseOutcome> out;
            Report rs = check_symmetric(ext, plan6, kDefaultTol, "ext_symmetric");
            rs.notes.push_back(
                "base has parallel curvature; the doubled metric does not "
                "(cross-checked symbolically)");
            out.push_back(oc(std::move(rs), frozen::kDoubledHyperbolicIsSymmetric));
            out.push_back(oc(not_flat_report(ext, plan6, "ext_symmetric"), true));
            return out;
        }});

    // --- gen_darboux_exp ---
    reg.push_back(CorpusCase{
        "gen_darboux_exp",
        "exponential solution of the source-extended mixed system",
        [] {
            return abc_squared_metric(px("exp(z/4-x)"), px("exp(y-z/4)"), px("exp(z/4)"));
        },
        [] {
            Expr A = px("exp(z/4-x)"), B = px("exp(y-z/4)"), C = px("exp(z/4)");
            std::vector<CaseOutcome> out;
            SamplePlan plan = SamplePlan::cube(3, -0.5, 0.5);
            out.push_back(oc(residual_scan(SystemId::GenDarboux,
                                           {{"A", A}, {"B", B}, {"C", C}}, {}, plan, 1e-9,
                                           "gen_darboux_exp"),
                             true));
            MetricSpec base = abc_squared_metric(A, B, C);
            out.push_back(oc(connection_info_report(base, ExtensionMode::ModifiedPlus,
                                                    {0.1, 0.2, 0.3}, "gen_darboux_exp"),
                             true));
            out.push_back(oc(connection_info_report(base, ExtensionMode::ModifiedMinus,
                                                    {0.1, 0.2, 0.3}, "gen_darboux_exp"),
                             true));
            return out;
        }});

    // --- normal_abc ---
    reg.push_back(CorpusCase{
        "normal_abc",
        "separated-coordinate principal-curvature system and sqrt-power fields",
        [] {
            return abc_squared_metric(px("1/(sqrt(x-y)*sqrt(x-z))"),
                                      px("1/((x-y)^2.5*sqrt(y-z))"),
                                      px("1/((x-z)^2.5*sqrt(y-z))"));
        },
        [] {
            std::vector<CaseOutcome> out;
            SamplePlan plan;
            plan.boxes = {{2, 3}, {1, 1.9}, {0, 0.9}};
            out.push_back(oc(residual_scan(SystemId::K1AbcSystem,
                                           {{"K1", px("3*x+y+z")},
                                            {"a", px("x")},
                                            {"b", px("y")},
                                            {"c", px("z")}},
                                           {}, plan, 1e-9, "normal_abc"),
                             true));
            Report r = residual_scan(SystemId::Darboux,
                                     {{"A", px("1/(sqrt(x-y)*sqrt(x-z))")},
                                      {"B", px("1/((x-y)^2.5*sqrt(y-z))")},
                                      {"C", px("1/((x-z)^2.5*sqrt(y-z))")}},
                                     {}, plan, 1e-8, "normal_abc");
            r.notes.push_back("sqrt-power triple with unit free functions");
            out.push_back(oc(std::move(r), frozen::kSqrtPowerTripleSatisfiesMixed));
            return out;
        }});

    // --- darboux_exp_cs ---
    reg.push_back(CorpusCase{
        "darboux_exp_cs",
        "asymmetric exponential triple: mixed system holds, invariant is 40",
        [] {
            return abc_squared_metric(px("exp(2*y+2*z)"), px("exp(z-x)"), px("exp(x+y)"));
        },
        [] {
            Expr A = px("exp(2*y+2*z)"), B = px("exp(z-x)"), C = px("exp(x+y)");
            std::vector<CaseOutcome> out;
            SamplePlan plan = SamplePlan::cube(3, -0.3, 0.3);
            out.push_back(oc(residual_scan(SystemId::Darboux,
                                           {{"A", A}, {"B", B}, {"C", C}}, {}, plan, 1e-9,
                                           "darboux_exp_cs"),
                             true));
            MetricSpec m = abc_squared_metric(A, B, C);
            SamplePlan plan16 = plan;
            plan16.n_points = 16;
            out.push_back(oc(cs_match_report(m, e_num(40), plan16, "darboux_exp_cs"),
                             frozen::kClosedFormCsMatches));
            // negative control for the vanishing condition
            out.push_back(oc(check_cs_vanishing(A, B, C, {"x", "y", "z"}, plan16,
                                                kDefaultTol, "darboux_exp_cs"),
                             false));
            return out;
        }});

    return reg;
}

} // namespace corpus_detail

inline const std::vector<CorpusCase>& corpus_cases() {
    static const std::vector<CorpusCase> reg = corpus_detail::build_registry();
    return reg;
}

inline std::vector<std::string> corpus_list() {
    std::vector<std::string> names;
    for (const auto& c : corpus_cases()) names.push_back(c.name);
    return names;
}

inline const CorpusCase& corpus_case(const std::string& name) {
    for (const auto& c : corpus_cases())
        if (c.name == name) return c;
    throw eval_error("unknown corpus case '" + name + "'");
}

inline std::vector<CaseOutcome> corpus_run(const std::string& name) {
    return corpus_case(name).run();
}

inline bool outcomes_ok(const std::vector<CaseOutcome>& outcomes) {
    for (const auto& o : outcomes)
        if (!o.matched()) return false;
    return true;
}

} // namespace curvlab
