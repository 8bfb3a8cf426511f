#pragma once

// Pass/fail verdicts for the global geometric claims: constant curvature,
// flatness, covariantly constant curvature (symmetric space), and the
// vanishing condition for the Chern-Simons invariant of orthogonal metrics.

#include <algorithm>
#include <cmath>
#include <exception>
#include <optional>
#include <string>
#include <vector>

#include "curvlab/metric.hpp"
#include "curvlab/parallel.hpp"
#include "curvlab/report.hpp"
#include "curvlab/sample.hpp"
#include "curvlab/tensor.hpp"

namespace curvlab {

inline constexpr double kDefaultTol = 1e-8;

namespace detail {

// Residuals are pre-scaled by max(1, max |R_ijkl|, max |g|^2) at the point,
// leaving only roundoff and cancellation to the tolerance.
inline double residual_scale(const CurvatureBundle& b) {
    double maxr = 0, maxg = 0;
    for (double v : b.riemann_low) maxr = std::max(maxr, std::abs(v));
    for (double v : b.g) maxg = std::max(maxg, std::abs(v));
    return std::max({1.0, maxr, maxg * maxg});
}

template <typename Fn>
void checked_parallel_for(std::size_t count, std::vector<std::exception_ptr>& errs, Fn&& fn) {
    errs.assign(count, nullptr);
    parallel_for(count, [&](std::size_t i) {
        try {
            fn(i);
        } catch (...) {
            errs[i] = std::current_exception();
        }
    });
    for (const auto& e : errs)
        if (e) std::rethrow_exception(e);
}

struct Aggregate {
    double max_abs = 0, sum_abs = 0;
    int count = 0;
    void add(double v) {
        max_abs = std::max(max_abs, std::abs(v));
        sum_abs += std::abs(v);
        ++count;
    }
    double mean() const { return count ? sum_abs / count : 0.0; }
};

} // namespace detail

// Residual of R_ijkl - lambda (g_ik g_jl - g_il g_jk) over the plan.  When
// lambda is not supplied it is estimated per point by least squares
// (lambda_hat = <R,G>/<G,G> with G_ijkl = g_ik g_jl - g_il g_jk) and the
// mean estimate is used for the residuals.
inline Report check_constant_curvature(const MetricSpec& m, std::optional<double> lambda,
                                       const SamplePlan& plan, double tol = kDefaultTol,
                                       const std::string& case_name = "") {
    auto pts = sample_points(plan, m.coords, m.params);
    const int n = m.dim();

    std::vector<CurvatureBundle> bundles(pts.size());
    std::vector<std::exception_ptr> errs;
    detail::checked_parallel_for(pts.size(), errs,
                                 [&](std::size_t i) { bundles[i] = bundle_at(m, pts[i]); });

    auto gform = [&](const CurvatureBundle& b, int i, int j, int k, int l) {
        return b.G(i, k) * b.G(j, l) - b.G(i, l) * b.G(j, k);
    };

    Report rep;
    rep.case_name = case_name;
    rep.check = "constant_curvature";
    rep.n_points = static_cast<int>(pts.size());
    rep.tol = tol;

    double lam;
    if (lambda) {
        lam = *lambda;
        rep.lambda = lam;
    } else {
        double lo = 0, hi = 0, sum = 0;
        bool first = true;
        for (const auto& b : bundles) {
            double num = 0, den = 0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    for (int k = 0; k < n; ++k)
                        for (int l = 0; l < n; ++l) {
                            double G = gform(b, i, j, k, l);
                            num += b.R(i, j, k, l) * G;
                            den += G * G;
                        }
            double est = num / den;
            sum += est;
            if (first) {
                lo = hi = est;
                first = false;
            } else {
                lo = std::min(lo, est);
                hi = std::max(hi, est);
            }
        }
        lam = sum / static_cast<double>(bundles.size());
        rep.lambda = lam;
        rep.lambda_spread = hi - lo;
        rep.notes.push_back("lambda estimated per point by least squares");
    }

    detail::Aggregate agg;
    for (const auto& b : bundles) {
        double scale = detail::residual_scale(b);
        double worst = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    for (int l = 0; l < n; ++l)
                        worst = std::max(worst, std::abs(b.R(i, j, k, l) -
                                                         lam * gform(b, i, j, k, l)));
        agg.add(worst / scale);
    }
    rep.max_abs_residual = agg.max_abs;
    rep.mean_abs_residual = agg.mean();
    rep.pass = agg.max_abs <= tol;
    return rep;
}

inline Report check_flat(const MetricSpec& m, const SamplePlan& plan, double tol = kDefaultTol,
                         const std::string& case_name = "") {
    auto pts = sample_points(plan, m.coords, m.params);
    std::vector<double> worst(pts.size(), 0.0), scale(pts.size(), 1.0);
    std::vector<std::exception_ptr> errs;
    detail::checked_parallel_for(pts.size(), errs, [&](std::size_t i) {
        CurvatureBundle b = bundle_at(m, pts[i]);
        double w = 0;
        for (double v : b.riemann_low) w = std::max(w, std::abs(v));
        worst[i] = w;
        scale[i] = detail::residual_scale(b);
    });

    Report rep;
    rep.case_name = case_name;
    rep.check = "flat";
    rep.n_points = static_cast<int>(pts.size());
    rep.tol = tol;
    detail::Aggregate agg;
    for (std::size_t i = 0; i < pts.size(); ++i) agg.add(worst[i] / scale[i]);
    rep.max_abs_residual = agg.max_abs;
    rep.mean_abs_residual = agg.mean();
    rep.pass = agg.max_abs <= tol;
    return rep;
}

inline Report check_symmetric(const MetricSpec& m, const SamplePlan& plan,
                              double tol = kDefaultTol, const std::string& case_name = "") {
    auto pts = sample_points(plan, m.coords, m.params);
    std::vector<double> worst(pts.size(), 0.0), scale(pts.size(), 1.0);
    std::vector<std::exception_ptr> errs;
    detail::checked_parallel_for(pts.size(), errs, [&](std::size_t i) {
        BundleWant want;
        want.nabla_r = true;
        CurvatureBundle b = bundle_at(m, pts[i], want);
        double w = 0;
        for (double v : b.nabla_riemann) w = std::max(w, std::abs(v));
        worst[i] = w;
        scale[i] = detail::residual_scale(b);
    });

    Report rep;
    rep.case_name = case_name;
    rep.check = "symmetric";
    rep.n_points = static_cast<int>(pts.size());
    rep.tol = tol;
    detail::Aggregate agg;
    for (std::size_t i = 0; i < pts.size(); ++i) agg.add(worst[i] / scale[i]);
    rep.max_abs_residual = agg.max_abs;
    rep.mean_abs_residual = agg.mean();
    rep.pass = agg.max_abs <= tol;
    return rep;
}

// Vanishing condition for the Chern-Simons invariant of a diagonal metric
// diag(A^2, B^2, C^2): A_z B_x C_y - A_y B_z C_x = 0.  When the mixed
// second-derivative (Darboux) compatibility conditions also hold at the
// sampled points, the verdict is cross-checked against the Chern-Simons
// density of the assembled diagonal metric.
inline Report check_cs_vanishing(const Expr& A, const Expr& B, const Expr& C,
                                 const std::vector<std::string>& coords, const SamplePlan& plan,
                                 double tol = kDefaultTol, const std::string& case_name = "",
                                 const std::map<std::string, double>& params = {}) {
    if (coords.size() != 3) throw eval_error("check_cs_vanishing expects 3 coordinates");
    auto pts = sample_points(plan, coords, params);

    MetricSpec diag;
    diag.coords = coords;
    diag.params = params;
    diag.init_zero_metric();
    diag.set_g(0, 0, e_mul(A, A));
    diag.set_g(1, 1, e_mul(B, B));
    diag.set_g(2, 2, e_mul(C, C));

    Report rep;
    rep.case_name = case_name;
    rep.check = "cs_vanishing";
    rep.n_points = static_cast<int>(pts.size());
    rep.tol = tol;

    detail::Aggregate agg;
    double max_darboux = 0, max_cs = 0;
    for (const auto& p : pts) {
        Jet ja = eval_expr_at(A, coords, p, 2, params);
        Jet jb = eval_expr_at(B, coords, p, 2, params);
        Jet jc = eval_expr_at(C, coords, p, 2, params);
        double resid = ja.d(2) * jb.d(0) * jc.d(1) - ja.d(1) * jb.d(2) * jc.d(0);
        agg.add(resid);

        // Darboux compatibility: X_uv = (Y_v/Y) X_u + (Z_u/Z) X_v, cyclic.
        auto mixed = [&](const Jet& X, const Jet& Y, const Jet& Z, int u, int v) {
            MultiIndex a{};
            a[u] = 1;
            a[v] = 1;
            return X.partial(a) - (Y.d(v) / Y.value()) * X.d(u) -
                   (Z.d(u) / Z.value()) * X.d(v);
        };
        double d1 = mixed(ja, jb, jc, 1, 2);
        double d2 = mixed(jb, ja, jc, 0, 2);
        double d3 = mixed(jc, ja, jb, 0, 1);
        max_darboux = std::max({max_darboux, std::abs(d1), std::abs(d2), std::abs(d3)});
    }
    rep.max_abs_residual = agg.max_abs;
    rep.mean_abs_residual = agg.mean();
    rep.pass = agg.max_abs <= tol;

    if (max_darboux <= 1e-6) {
        for (const auto& p : pts) max_cs = std::max(max_cs, std::abs(cs_density_at(diag, p)));
        bool cs_zero = max_cs <= std::max(tol, 1e-8);
        rep.notes.push_back(std::string("cross-check: Darboux conditions hold; CS density ") +
                            (cs_zero ? "vanishes" : "does not vanish") +
                            " (max " + std::to_string(max_cs) + ")");
        if (cs_zero != rep.pass)
            rep.notes.push_back("cross-check disagrees with the vanishing condition");
    } else {
        rep.notes.push_back("cross-check skipped: Darboux conditions not satisfied here");
    }
    return rep;
}

} // namespace curvlab
