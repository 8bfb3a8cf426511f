#pragma once

// Pointwise residual evaluators for the differential systems the workbench
// verifies.  Each system is transcribed once, in fully written-out form;
// the residual vector holds the left-hand sides of the system's equations
// at a point.  Denominators that vanish raise singular_point_error, which
// residual_scan counts separately from large residuals.

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "curvlab/errors.hpp"
#include "curvlab/expr.hpp"
#include "curvlab/report.hpp"
#include "curvlab/sample.hpp"

namespace curvlab {

enum class SystemId {
    Darboux,
    LameFull,
    Kdv,
    KdvPair,
    Liouville,
    FEquation,
    SineGordon,
    SgLinear,
    BSystem,
    GenDarboux,
    NormalK,
    K1Linear,
    K2Linear,
    Theorem3Relations,
    PhiRelation,
    K1AbcSystem,
};

struct SystemInfo {
    const char* name;
    std::vector<std::string> coords;
    std::vector<std::string> fields;
    std::vector<std::string> params; // required parameter names
};

inline const SystemInfo& system_info(SystemId id) {
    static const std::map<SystemId, SystemInfo> infos = {
        {SystemId::Darboux, {"darboux", {"x", "y", "z"}, {"A", "B", "C"}, {}}},
        {SystemId::LameFull, {"lame_full", {"x", "y", "z"}, {"A", "B", "C"}, {"lambda"}}},
        {SystemId::Kdv, {"kdv", {"x", "z"}, {"l"}, {}}},
        {SystemId::KdvPair, {"kdv_pair", {"x", "z"}, {"l", "m"}, {}}},
        {SystemId::Liouville, {"liouville", {"x", "y"}, {"U"}, {}}},
        {SystemId::FEquation, {"f_equation", {"x", "y"}, {"F"}, {}}},
        {SystemId::SineGordon, {"sine_gordon", {"x", "y"}, {"u"}, {"lambda"}}},
        {SystemId::SgLinear, {"sg_linear", {"x", "y"}, {"A", "u"}, {"lambda"}}},
        {SystemId::BSystem, {"b_system", {"x", "y", "z"}, {"B"}, {"lambda"}}},
        {SystemId::GenDarboux, {"gen_darboux", {"x", "y", "z"}, {"A", "B", "C"}, {}}},
        {SystemId::NormalK, {"normal_k", {"x", "y", "z"}, {"K1", "K2", "K3"}, {}}},
        {SystemId::K1Linear, {"k1_linear", {"x", "y", "z"}, {"A", "B", "C", "K1"}, {}}},
        {SystemId::K2Linear,
         {"k2_linear", {"x", "y", "z"}, {"A", "B", "C", "K1", "K2"}, {}}},
        {SystemId::Theorem3Relations,
         {"theorem3_relations", {"x", "y", "z"}, {"A", "B", "C", "K1", "K2", "K3"}, {}}},
        {SystemId::PhiRelation,
         {"phi_relation", {"x", "y", "z"}, {"K1", "K2", "K3", "phi1", "phi2", "phi3"}, {}}},
        {SystemId::K1AbcSystem,
         {"k1_abc_system", {"x", "y", "z"}, {"K1", "a", "b", "c"}, {}}},
    };
    return infos.at(id);
}

inline SystemId system_from_name(const std::string& name) {
    for (SystemId id :
         {SystemId::Darboux, SystemId::LameFull, SystemId::Kdv, SystemId::KdvPair,
          SystemId::Liouville, SystemId::FEquation, SystemId::SineGordon, SystemId::SgLinear,
          SystemId::BSystem, SystemId::GenDarboux, SystemId::NormalK, SystemId::K1Linear,
          SystemId::K2Linear, SystemId::Theorem3Relations, SystemId::PhiRelation,
          SystemId::K1AbcSystem})
        if (name == system_info(id).name) return id;
    throw eval_error("unknown system id '" + name + "'");
}

inline std::vector<SystemId> all_systems() {
    return {SystemId::Darboux,   SystemId::LameFull, SystemId::Kdv,
            SystemId::KdvPair,   SystemId::Liouville, SystemId::FEquation,
            SystemId::SineGordon, SystemId::SgLinear, SystemId::BSystem,
            SystemId::GenDarboux, SystemId::NormalK,  SystemId::K1Linear,
            SystemId::K2Linear,  SystemId::Theorem3Relations, SystemId::PhiRelation,
            SystemId::K1AbcSystem};
}

namespace detail {

inline constexpr double kSingularEps = 1e-7;

struct FieldJets {
    std::map<std::string, Jet> jets;

    const Jet& operator()(const std::string& name) const {
        auto it = jets.find(name);
        if (it == jets.end()) throw eval_error("missing field '" + name + "'");
        return it->second;
    }
};

inline FieldJets eval_fields(SystemId sys, const std::map<std::string, Expr>& fields,
                             const std::map<std::string, double>& params,
                             const std::vector<double>& point) {
    const SystemInfo& info = system_info(sys);
    if (point.size() != info.coords.size())
        throw eval_error(std::string("system ") + info.name + " expects a " +
                         std::to_string(info.coords.size()) + "-dimensional point");
    for (const auto& p : info.params)
        if (!params.count(p))
            throw eval_error(std::string("system ") + info.name + " requires parameter '" + p +
                             "'");
    FieldJets fj;
    for (const auto& fname : info.fields) {
        auto it = fields.find(fname);
        if (it == fields.end())
            throw eval_error(std::string("system ") + info.name + " requires field '" + fname +
                             "'");
        fj.jets.emplace(fname, eval_expr_at(it->second, info.coords, point, 3, params));
    }
    return fj;
}

inline double d1(const Jet& j, int i) {
    MultiIndex a{};
    a[i] = 1;
    return j.partial(a);
}
inline double d2(const Jet& j, int i, int k) {
    MultiIndex a{};
    a[i] += 1;
    a[k] += 1;
    return j.partial(a);
}
inline double d3(const Jet& j, int i, int k, int l) {
    MultiIndex a{};
    a[i] += 1;
    a[k] += 1;
    a[l] += 1;
    return j.partial(a);
}

inline double safe_div(double num, double den, const char* what) {
    if (std::abs(den) < kSingularEps)
        throw singular_point_error(std::string("vanishing denominator (") + what +
                                   ") at sample point");
    return num / den;
}

} // namespace detail

inline std::vector<double> residual_at(SystemId sys, const std::map<std::string, Expr>& fields,
                                       const std::map<std::string, double>& params,
                                       const std::vector<double>& point) {
    using detail::d1;
    using detail::d2;
    using detail::d3;
    using detail::safe_div;
    detail::FieldJets f = detail::eval_fields(sys, fields, params, point);
    const int X = 0, Y = 1, Z = 2;

    switch (sys) {
        case SystemId::Darboux:
        case SystemId::LameFull: {
            const Jet &A = f("A"), &B = f("B"), &C = f("C");
            double a = A.value(), b = B.value(), c = C.value();
            std::vector<double> r;
            r.push_back(d2(A, Y, Z) - safe_div(d1(B, Z) * d1(A, Y), b, "B") -
                        safe_div(d1(C, Y) * d1(A, Z), c, "C"));
            r.push_back(d2(B, X, Z) - safe_div(d1(A, Z) * d1(B, X), a, "A") -
                        safe_div(d1(C, X) * d1(B, Z), c, "C"));
            r.push_back(d2(C, X, Y) - safe_div(d1(A, Y) * d1(C, X), a, "A") -
                        safe_div(d1(B, X) * d1(C, Y), b, "B"));
            if (sys == SystemId::LameFull) {
                double lam = params.at("lambda");
                r.push_back(lam * c * b + safe_div(d1(C, X) * d1(B, X), a * a, "A^2") +
                            safe_div(d2(B, Z, Z), c, "C") -
                            safe_div(d1(B, Z) * d1(C, Z), c * c, "C^2") +
                            safe_div(d2(C, Y, Y), b, "B") -
                            safe_div(d1(B, Y) * d1(C, Y), b * b, "B^2"));
                r.push_back(lam * a * c - safe_div(d1(A, Z) * d1(C, Z), c * c, "C^2") +
                            safe_div(d2(A, Z, Z), c, "C") +
                            safe_div(d1(A, Y) * d1(C, Y), b * b, "B^2") +
                            safe_div(d2(C, X, X), a, "A") -
                            safe_div(d1(A, X) * d1(C, X), a * a, "A^2"));
                r.push_back(lam * b * a - safe_div(d1(A, X) * d1(B, X), a * a, "A^2") +
                            safe_div(d2(B, X, X), a, "A") +
                            safe_div(d1(A, Z) * d1(B, Z), c * c, "C^2") +
                            safe_div(d2(A, Y, Y), b, "B") -
                            safe_div(d1(A, Y) * d1(B, Y), b * b, "B^2"));
            }
            return r;
        }
        case SystemId::Kdv: {
            const Jet& l = f("l");
            // coords are (x, z); z is axis 1 here
            return {d3(l, X, X, X) - 3.0 * l.value() * d1(l, X) + d1(l, Y)};
        }
        case SystemId::KdvPair: {
            const Jet &l = f("l"), &m = f("m");
            double e1 = d3(l, X, X, X) - 3.0 * l.value() * d1(l, X) + d1(l, Y);
            double e2 = d1(l, X) - d1(m, Y) + 2.0 * d1(l, X) * m.value() +
                        l.value() * d1(m, X);
            return {e1, e2};
        }
        case SystemId::Liouville: {
            const Jet& U = f("U");
            return {4.0 * d2(U, X, Y) + std::exp(2.0 * U.value())};
        }
        case SystemId::FEquation: {
            const Jet& F = f("F");
            double v = F.value();
            return {-4.0 * d1(F, Y) * d1(F, X) + 4.0 * v * d2(F, X, Y) + v * v * v * v};
        }
        case SystemId::SineGordon: {
            const Jet& u = f("u");
            return {d2(u, X, Y) + params.at("lambda") * std::sin(u.value())};
        }
        case SystemId::SgLinear: {
            const Jet &A = f("A"), &u = f("u");
            double lam = params.at("lambda");
            double su = std::sin(u.value()), cu = std::cos(u.value());
            double e1 = d2(A, X, Y) + lam * A.value() * cu;
            double e2 = d2(A, X, X) - safe_div(cu * d1(u, X) * d1(A, X), su, "sin u") +
                        lam * A.value() + safe_div(d1(u, X) * d1(A, Y), su, "sin u");
            double e3 = d2(A, Y, Y) - safe_div(cu * d1(u, Y) * d1(A, Y), su, "sin u") +
                        lam * A.value() + safe_div(d1(A, X) * d1(u, Y), su, "sin u");
            return {e1, e2, e3};
        }
        case SystemId::BSystem: {
            const Jet& B = f("B");
            double lam = params.at("lambda");
            double sb = std::sin(B.value()), cb = std::cos(B.value());
            double e1 = d2(B, X, Y) + 0.25 * sb * (-1.0 + 4.0 * lam);
            double e2 = d3(B, Y, Y, Z) - safe_div(cb * d1(B, Y) * d2(B, Y, Z), sb, "sin B") +
                        safe_div(d2(B, X, Z) * d1(B, Y), sb, "sin B") -
                        (0.25 - lam) * d1(B, Z);
            double e3 = d3(B, X, X, Z) - safe_div(cb * d1(B, X) * d2(B, X, Z), sb, "sin B") +
                        safe_div(d1(B, X) * d2(B, Y, Z), sb, "sin B") -
                        (0.25 - lam) * d1(B, Z);
            return {e1, e2, e3};
        }
        case SystemId::GenDarboux: {
            const Jet &A = f("A"), &B = f("B"), &C = f("C");
            double a = A.value(), b = B.value(), c = C.value();
            double e1 = d2(A, Y, Z) - safe_div(d1(B, Z) * d1(A, Y), b, "B") -
                        safe_div(d1(C, Y) * d1(A, Z), c, "C") -
                        2.0 * (d1(B, X) * c + b * d1(C, X));
            double e2 = d2(B, X, Z) - safe_div(d1(A, Z) * d1(B, X), a, "A") -
                        safe_div(d1(C, X) * d1(B, Z), c, "C") -
                        2.0 * (d1(A, Y) * c + a * d1(C, Y));
            double e3 = d2(C, X, Y) - safe_div(d1(A, Y) * d1(C, X), a, "A") -
                        safe_div(d1(B, X) * d1(C, Y), b, "B") -
                        2.0 * (d1(A, Z) * b + a * d1(B, Z));
            return {e1, e2, e3};
        }
        case SystemId::NormalK: {
            const Jet &K1 = f("K1"), &K2 = f("K2"), &K3 = f("K3");
            double k1 = K1.value(), k2 = K2.value(), k3 = K3.value();
            // As displayed, the coefficient on the first term differs from 3
            // in the first two equations; uniform_coeffs=1 switches every
            // coefficient to 3 for sensitivity checks.
            bool uniform = params.count("uniform_coeffs") && params.at("uniform_coeffs") != 0;
            double c1 = uniform ? 3.0 : 1.0;
            double e1 = c1 * (k2 - k3) * d1(K1, X) + 3.0 * (k3 - k1) * d1(K2, X) +
                        3.0 * (k1 - k2) * d1(K3, X);
            double e2 = 3.0 * (k2 - k3) * d1(K1, Y) + c1 * (k3 - k1) * d1(K2, Y) +
                        3.0 * (k1 - k2) * d1(K3, Y);
            double e3 = 3.0 * (k2 - k3) * d1(K1, Z) + 3.0 * (k3 - k1) * d1(K2, Z) +
                        3.0 * (k1 - k2) * d1(K3, Z);
            return {e1, e2, e3};
        }
        case SystemId::K1Linear: {
            const Jet &A = f("A"), &B = f("B"), &C = f("C"), &K1 = f("K1");
            double a = A.value(), b = B.value(), c = C.value();
            double e1 = d2(K1, X, Y) + safe_div(d1(A, Y), a, "A") * d1(K1, X) +
                        (safe_div(d1(A, X), a, "A") + safe_div(d1(B, X), b, "B") -
                         safe_div(d2(A, X, Y), d1(A, Y), "A_y")) *
                            d1(K1, Y);
            double e2 = d2(K1, X, Z) + safe_div(d1(A, Z), a, "A") * d1(K1, X) +
                        (safe_div(d1(C, X), c, "C") + safe_div(d1(A, X), a, "A") -
                         safe_div(d2(A, X, Z), d1(A, Z), "A_z")) *
                            d1(K1, Z);
            double e3 = d2(K1, Y, Z) +
                        (safe_div(d1(B, Z), b, "B") + safe_div(d1(A, Z), a, "A") -
                         safe_div(d2(A, Y, Z), d1(A, Y), "A_y")) *
                            d1(K1, Y) +
                        (-safe_div(d1(A, Y) * d1(B, Z), d1(A, Z) * b, "A_z B") +
                         safe_div(d1(A, Y), a, "A")) *
                            d1(K1, Z);
            return {e1, e2, e3};
        }
        case SystemId::K2Linear: {
            const Jet &A = f("A"), &B = f("B"), &C = f("C"), &K1 = f("K1"), &K2 = f("K2");
            double a = A.value(), b = B.value(), c = C.value();
            double e1 = d2(K2, X, Y) + safe_div(d1(B, X), b, "B") * d1(K2, Y) +
                        (safe_div(d1(B, Y), b, "B") + safe_div(d1(A, Y), a, "A") -
                         safe_div(d2(B, X, Y), d1(B, Y), "B_y")) *
                            d1(K2, X);
            double e2 = d2(K2, X, Z) +
                        (safe_div(d1(B, Z), b, "B") -
                         safe_div(d1(C, X) * d1(B, Z), c * d1(B, X), "C B_x")) *
                            d1(K2, X) +
                        (safe_div(d1(B, X), b, "B") -
                         safe_div(d2(B, X, Z), d1(B, Z), "B_z") +
                         safe_div(d1(C, X), c, "C")) *
                            d1(K2, Z);
            // Third equation transcribed as displayed, including the
            // mixed K1 derivative and the two d/dz K2 terms.
            double e3 = d2(K1, Y, Z) + safe_div(d1(B, Z), b, "B") * d1(K2, Z) +
                        (safe_div(d1(C, Y), c, "C") + safe_div(d1(B, Y), b, "B") -
                         safe_div(d2(B, Y, Z), d1(B, Z), "B_z")) *
                            d1(K2, Z);
            return {e1, e2, e3};
        }
        case SystemId::Theorem3Relations: {
            const Jet &A = f("A"), &B = f("B"), &C = f("C");
            const Jet &K1 = f("K1"), &K2 = f("K2"), &K3 = f("K3");
            double a = A.value(), b = B.value(), c = C.value();
            double k1 = K1.value(), k2 = K2.value(), k3 = K3.value();
            std::vector<double> r;
            r.push_back(d1(K1, Y) - safe_div(d1(A, Y) * (k2 - k1), a, "A"));
            r.push_back(d1(K1, Z) + safe_div(d1(A, Z) * (-k3 + k1), a, "A"));
            r.push_back(d1(K2, X) + safe_div(d1(B, X) * (k2 - k1), b, "B"));
            r.push_back(d1(K2, Z) + safe_div(d1(B, Z) * (k2 - k3), b, "B"));
            r.push_back(d1(K3, X) - safe_div(d1(C, X) * (-k3 + k1), c, "C"));
            r.push_back(d1(K3, Y) - safe_div(d1(C, Y) * (k2 - k3), c, "C"));
            return r;
        }
        case SystemId::PhiRelation: {
            double k1 = f("K1").value(), k2 = f("K2").value(), k3 = f("K3").value();
            double p1 = f("phi1").value(), p2 = f("phi2").value(), p3 = f("phi3").value();
            return {k1 * (p2 - p3) + k2 * (p3 - p1) + k3 * (p1 - p2)};
        }
        case SystemId::K1AbcSystem: {
            const Jet &K1 = f("K1"), &a = f("a"), &b = f("b"), &c = f("c");
            double av = a.value(), bv = b.value(), cv = c.value();
            double ap = d1(a, X), bp = d1(b, Y), cp = d1(c, Z);
            double e1 = d2(K1, X, Y) -
                        0.5 * safe_div(-d1(K1, X) * bp + 3.0 * ap * d1(K1, Y), av - bv,
                                       "a-b");
            double e2 = d2(K1, X, Z) -
                        0.5 * safe_div(3.0 * ap * d1(K1, Z) - cp * d1(K1, X), av - cv,
                                       "a-c");
            double e3 = d2(K1, Y, Z) -
                        0.5 * safe_div(-d1(K1, Y) * cp + d1(K1, Z) * bp, bv - cv, "b-c");
            return {e1, e2, e3};
        }
    }
    throw eval_error("unhandled system id");
}

// Max-abs aggregation of residual_at over a sample plan.  Singular points
// are skipped and counted; the scan passes only when the residual stays
// within tolerance and at least half of the points were non-singular.
inline Report residual_scan(SystemId sys, const std::map<std::string, Expr>& fields,
                            const std::map<std::string, double>& params,
                            const SamplePlan& plan, double tol = 1e-8,
                            const std::string& case_name = "") {
    const SystemInfo& info = system_info(sys);
    auto pts = sample_points(plan, info.coords, params);

    Report rep;
    rep.case_name = case_name;
    rep.check = std::string("residual:") + info.name;
    rep.tol = tol;

    double max_abs = 0, sum = 0;
    int n_ok = 0, n_sing = 0, n_res = 0;
    for (const auto& p : pts) {
        try {
            auto r = residual_at(sys, fields, params, p);
            for (double v : r) {
                max_abs = std::max(max_abs, std::abs(v));
                sum += std::abs(v);
                ++n_res;
            }
            ++n_ok;
        } catch (const singular_point_error&) {
            ++n_sing;
        }
    }
    if (n_ok == 0) throw eval_error("all sample points were singular for this system");

    rep.n_points = n_ok;
    rep.max_abs_residual = max_abs;
    rep.mean_abs_residual = n_res ? sum / n_res : 0.0;
    rep.pass = max_abs <= tol && n_ok * 2 >= static_cast<int>(pts.size());
    if (n_sing > 0)
        rep.notes.push_back(std::to_string(n_sing) + " singular points skipped");
    return rep;
}

} // namespace curvlab
