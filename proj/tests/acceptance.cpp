// Acceptance gate: one line per criterion, "criterion N: pass|fail - ...".
// Exits nonzero when any criterion fails.  Criterion 3's first clause (the
// doubled space of a curved constant-curvature base having covariantly
// constant curvature) does not hold numerically or symbolically; it is kept
// here verbatim and reported honestly rather than weakened.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "curvlab/corpus.hpp"
#include "curvlab/extension.hpp"
#include "curvlab/residuals.hpp"
#include "curvlab/verdicts.hpp"
#include "fd_oracle.hpp"

using namespace curvlab;

namespace {

int failures = 0;

void line(int n, bool pass, const std::string& what) {
    std::printf("criterion %d: %s - %s\n", n, pass ? "pass" : "fail", what.c_str());
    if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

MetricSpec conformal3(const char* e) {
    MetricSpec m;
    m.coords = {"x", "y", "z"};
    m.init_zero_metric();
    for (int i = 0; i < 3; ++i) m.set_g(i, i, parse_expr(e));
    return m;
}

SamplePlan upper_half(int n) {
    SamplePlan p;
    p.boxes = {{-1, 1}, {-1, 1}, {0.5, 1.5}};
    p.n_points = n;
    return p;
}

bool case_ok(const char* name) { return outcomes_ok(corpus_run(name)); }

} // namespace

int main() {
    auto suite_t0 = std::chrono::steady_clock::now();

    // 1. model spaces: verdicts at fixed curvature, and blind estimation
    {
        auto t0 = std::chrono::steady_clock::now();
        MetricSpec hyp = conformal3("1/z^2");
        MetricSpec sph = conformal3("(1+(x^2+y^2+z^2)/4)^(-2)");
        Report rh = check_constant_curvature(hyp, -1.0, upper_half(64), 1e-9);
        Report rs =
            check_constant_curvature(sph, 1.0, SamplePlan::cube(3, -0.8, 0.8, 64), 1e-9);
        Report est = check_constant_curvature(hyp, std::nullopt, upper_half(64), 1e-9);
        bool est_ok = est.lambda && std::abs(*est.lambda + 1.0) < 1e-9 &&
                      est.lambda_spread < 1e-9;
        double dt = seconds_since(t0);
        line(1, rh.pass && rs.pass && est_ok && dt < 3.0,
             "curvature -1 and +1 model spaces verified at 64 points, curvature "
             "re-estimated blind (" +
                 std::to_string(dt) + " s)");
    }

    // 2. travelling-wave / rational solution metrics are flat and solve the
    //    third-order evolution equation
    {
        bool ok = case_ok("kdv1_flat") && case_ok("kdv2_flat") &&
                  case_ok("kdv_linear_example1");
        Report res = residual_scan(SystemId::Kdv,
                                   {{"l", parse_expr("-4*cosh(x-4*z)^(-2)")}}, {},
                                   SamplePlan::cube(2, -1, 1, 64), 1e-9);
        line(2, ok && res.pass,
             "solution-derived metrics flat to 1e-8 and equation residuals at 1e-9");
    }

    // 3. doubled 6D spaces: the curved-base parallel-curvature claim, the
    //    flat-base check, and the (3,3) signature
    {
        auto t0 = std::chrono::steady_clock::now();
        MetricSpec hyp = conformal3("1/z^2");
        MetricSpec ext = extend(hyp, ExtensionMode::LeviCivita);
        SamplePlan plan;
        plan.boxes = {{-1, 1}, {-1, 1}, {0.5, 1.5}, {-1, 1}, {-1, 1}, {-1, 1}};
        plan.n_points = 8;
        Report sym = check_symmetric(ext, plan, 1e-8);
        bool curved_base_curved = false;
        {
            BundleWant want;
            CurvatureBundle b =
                bundle_at(ext, {0.3, -0.2, 0.8, 0.4, -0.5, 0.9}, want);
            for (double v : b.riemann_low)
                if (std::abs(v) > 0.1) curved_base_curved = true;
        }
        MetricSpec flat_ext = extend(conformal3("1"), ExtensionMode::LeviCivita);
        Report flat_ok = check_flat(flat_ext, SamplePlan::cube(6, -1, 1, 8), 1e-8);
        Signature sig = metric_signature_at(ext, {0.3, -0.2, 0.8, 0.4, -0.5, 0.9});
        bool sig_ok = sig.n_pos == 3 && sig.n_neg == 3 && sig.n_zero == 0;
        double dt = seconds_since(t0);
        bool ok = sym.pass && curved_base_curved && flat_ok.pass && sig_ok && dt < 30.0;
        std::string what =
            "doubled curved base parallel-curvature + flat-base and signature checks (" +
            std::to_string(dt) + " s)";
        if (!sym.pass)
            what += "; the doubled curved base is NOT parallel-curvature (max scaled "
                    "|grad R| = " +
                    std::to_string(sym.max_abs_residual) +
                    "), cross-checked symbolically - recorded discrepancy; flat-base "
                    "and signature clauses " +
                    ((flat_ok.pass && sig_ok) ? "hold" : "FAIL");
        line(3, ok, what);
    }

    // 4. invariant density: vanishing cases at 1e-9, closed-form comparisons
    //    documented (they differ from the computed density by a constant
    //    factor of +/-5), vanishing-condition cross-checks agree
    {
        MetricSpec hyp = conformal3("1/z^2");
        Report z1 = Report{};
        {
            auto pts = sample_points(upper_half(32), hyp.coords);
            double mx = 0;
            for (const auto& p : pts) mx = std::max(mx, std::abs(cs_density_at(hyp, p)));
            z1.pass = mx <= 1e-9;
        }
        Expr inv_z = parse_expr("1/z");
        Report vc = check_cs_vanishing(inv_z, inv_z, inv_z, {"x", "y", "z"},
                                       upper_half(32), 1e-9);
        bool cross_ok = !vc.notes.empty() &&
                        vc.notes[0].find("density vanishes") != std::string::npos;
        // closed-form comparisons: mismatches must carry the fitted-constant note
        bool documented = true;
        for (const char* name : {"kdv1_flat", "kdv_linear_example1", "darboux_exp_cs"}) {
            for (const auto& o : corpus_run(name)) {
                if (o.report.check != "cs_match") continue;
                if (o.report.pass) continue;
                bool noted = false;
                for (const auto& n : o.report.notes)
                    if (n.find("constant c =") != std::string::npos) noted = true;
                if (!o.matched() || !noted) documented = false;
            }
        }
        line(4, z1.pass && vc.pass && cross_ok && documented,
             "density vanishes where required; closed-form factor-of-5 offsets "
             "recorded with fitted constants; cross-checks agree");
    }

    // 5. the lambda = 1/4 family: curvature verdict and displayed Ricci entries
    {
        line(5, case_ok("sec4_lambda_quarter"),
             "quarter-curvature family verified, Ricci entries match the display");
    }

    // 6. all sixteen residual systems evaluate, frozen polynomial spot-checks
    //    and known solutions agree
    {
        bool ok = true;
        // one frozen value per arity class; the full table lives in the
        // residual test binary
        auto f3 = std::map<std::string, Expr>{{"A", parse_expr("1+x*y+z")},
                                              {"B", parse_expr("2+x*z+y")},
                                              {"C", parse_expr("3+x+y*z")}};
        auto r = residual_at(SystemId::Darboux, f3, {}, {0.3, -0.2, 0.5});
        ok = ok && std::abs(r[0] + 0.20240384615384616) < 1e-10;
        auto rk = residual_at(SystemId::Kdv, {{"l", parse_expr("x^3-2*x*z+z^2")}}, {},
                              {0.3, 0.5});
        ok = ok && std::abs(rk[0] - 6.3496300000000003) < 1e-10;
        for (SystemId id : all_systems()) {
            // every system must at least be wired: info + name round trip
            ok = ok && system_from_name(system_info(id).name) == id;
        }
        auto sol = std::map<std::string, Expr>{{"A", parse_expr("1/z")},
                                               {"B", parse_expr("1/z")},
                                               {"C", parse_expr("1/z")}};
        SamplePlan up = upper_half(32);
        ok = ok &&
             residual_scan(SystemId::LameFull, sol, {{"lambda", -1}}, up, 1e-8).pass;
        ok = ok && case_ok("normal_abc") && case_ok("gen_darboux_exp");
        line(6, ok,
             "all sixteen systems wired, frozen spot-checks and known solutions agree");
    }

    // 7. kernel invariants: curvature symmetries, both differential
    //    identities, inverse consistency, independent differencing
    {
        MetricSpec m;
        m.coords = {"x", "y", "z"};
        m.init_zero_metric();
        m.set_g(0, 0, parse_expr("2+sin(x*y)"));
        m.set_g(0, 1, parse_expr("0.3*z"));
        m.set_g(1, 1, parse_expr("2+x^2"));
        m.set_g(1, 2, parse_expr("0.1*x"));
        m.set_g(2, 2, parse_expr("1+y^2"));
        bool ok = true;
        auto pts = sample_points(SamplePlan::cube(3, 0.2, 1.0, 16), m.coords);
        for (const auto& p : pts) {
            BundleWant want;
            want.nabla_r = true;
            CurvatureBundle b = bundle_at(m, p, want);
            double scale = 1;
            for (double v : b.riemann_low) scale = std::max(scale, std::abs(v));
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    for (int k = 0; k < 3; ++k)
                        for (int l = 0; l < 3; ++l) {
                            double r0 = b.R(i, j, k, l);
                            ok = ok && std::abs(r0 + b.R(j, i, k, l)) < 1e-10 * scale;
                            ok = ok && std::abs(r0 + b.R(i, j, l, k)) < 1e-10 * scale;
                            ok = ok && std::abs(r0 - b.R(k, l, i, j)) < 1e-10 * scale;
                            ok = ok && std::abs(r0 + b.R(i, k, l, j) + b.R(i, l, j, k)) <
                                           1e-10 * scale;
                            for (int mm = 0; mm < 3; ++mm)
                                ok = ok &&
                                     std::abs(b.NablaR(mm, i, j, k, l) +
                                              b.NablaR(k, i, j, l, mm) +
                                              b.NablaR(l, i, j, mm, k)) < 1e-9 * scale;
                        }
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    double s = 0;
                    for (int k = 0; k < 3; ++k) s += b.G(i, k) * b.Ginv(k, j);
                    ok = ok && std::abs(s - (i == j ? 1.0 : 0.0)) < 1e-11;
                }
        }
        // independent finite-difference cross-check of the jet curvature
        {
            std::vector<double> p = {0.5, 0.6, 0.7};
            CurvatureBundle b = bundle_at(m, p);
            auto fd = fdtest::fd_riemann_low(m, p);
            for (int t = 0; t < 81; ++t)
                ok = ok && std::abs(b.riemann_low[t] - fd[t]) < 1e-4;
        }
        double dt = seconds_since(suite_t0);
        line(7, ok && dt < 300.0,
             "curvature symmetries, both differential identities, inverse "
             "consistency, and an independent differencing cross-check hold (total " +
                 std::to_string(dt) + " s)");
    }

    return failures == 0 ? 0 : 1;
}
