#pragma once

// Doubling construction: from a 3-dimensional metric's connection build the
// 6-dimensional metric
//
//   -2 Gamma^i_{jk} psi_i dx^j dx^k - 2 dx^i dpsi_i
//
// on coordinates (x, y, z, psi1, psi2, psi3).  The connection coefficients
// are assembled symbolically (with Deriv nodes), so the result is an
// ordinary MetricSpec that the curvature code can consume; it transparently
// bumps the jet order by the Deriv depth.
//
// Two "modified" modes add three off-diagonal connection components to the
// Levi-Civita connection of a diagonal base diag(A^2, B^2, C^2):
//   Gamma^2_{13} = C*A/B,  Gamma^3_{12} = A*B/C,  Gamma^1_{23} = B*C/A.
// In the minus mode those components carry a formal unit e with e^2 = -1;
// curvature is computed over the ring of pairs (even, odd) = even + e*odd,
// directly from the torsion-free connection table rather than from a metric.

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "curvlab/errors.hpp"
#include "curvlab/expr.hpp"
#include "curvlab/metric.hpp"
#include "curvlab/tensor.hpp"

namespace curvlab {

enum class ExtensionMode { LeviCivita, ModifiedPlus, ModifiedMinus };

inline ExtensionMode extension_mode_from_name(const std::string& s) {
    if (s == "lc") return ExtensionMode::LeviCivita;
    if (s == "mod+") return ExtensionMode::ModifiedPlus;
    if (s == "mod-") return ExtensionMode::ModifiedMinus;
    throw eval_error("unknown extension mode '" + s + "' (expected lc, mod+ or mod-)");
}

inline const char* extension_mode_name(ExtensionMode m) {
    switch (m) {
        case ExtensionMode::LeviCivita: return "lc";
        case ExtensionMode::ModifiedPlus: return "mod+";
        case ExtensionMode::ModifiedMinus: return "mod-";
    }
    return "?";
}

namespace detail {

// Symbolic Christoffel symbols of a 3D metric, index order [i][j][k] as in
// JetBundle.  Diagonal metrics get the short closed forms; the general case
// goes through the adjugate/determinant inverse.
inline std::vector<Expr> christoffel_exprs(const MetricSpec& m) {
    const int n = m.dim();
    if (n != 3) throw eval_error("symbolic connection requires a 3-dimensional metric");
    std::vector<Expr> gam(static_cast<std::size_t>(n) * n * n, e_num(0));
    auto at = [&](int i, int j, int k) -> Expr& { return gam[(i * n + j) * n + k]; };

    if (m.is_diagonal()) {
        for (int i = 0; i < n; ++i) {
            Expr gii = m.g[i][i];
            Expr two_gii = e_mul(e_num(2), gii);
            for (int j = 0; j < n; ++j) {
                if (j == i) {
                    at(i, i, i) = e_div(e_d(gii, i), two_gii);
                } else {
                    Expr v = e_div(e_d(gii, j), two_gii);
                    at(i, i, j) = v;
                    at(i, j, i) = v;
                    at(i, j, j) = e_neg(e_div(e_d(m.g[j][j], i), two_gii));
                }
            }
        }
        return gam;
    }

    auto g = [&](int i, int j) { return m.g[i][j]; };
    auto minor2 = [&](int r0, int r1, int c0, int c1) {
        return e_sub(e_mul(g(r0, c0), g(r1, c1)), e_mul(g(r0, c1), g(r1, c0)));
    };
    Expr det = e_add(e_sub(e_mul(g(0, 0), minor2(1, 2, 1, 2)),
                           e_mul(g(0, 1), minor2(1, 2, 0, 2))),
                     e_mul(g(0, 2), minor2(1, 2, 0, 1)));
    std::vector<std::vector<Expr>> ginv(3, std::vector<Expr>(3));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            int r0 = (j + 1) % 3, r1 = (j + 2) % 3;
            int c0 = (i + 1) % 3, c1 = (i + 2) % 3;
            // cofactor expansion keeps the sign inside the index cycling
            Expr cof = e_sub(e_mul(g(r0, c0), g(r1, c1)), e_mul(g(r0, c1), g(r1, c0)));
            ginv[i][j] = e_div(cof, det);
        }

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = j; k < n; ++k) {
                Expr s = e_num(0);
                for (int mm = 0; mm < n; ++mm) {
                    Expr t = e_sub(e_add(e_d(g(j, mm), k), e_d(g(k, mm), j)),
                                   e_d(g(j, k), mm));
                    s = e_add(s, e_mul(ginv[i][mm], t));
                }
                Expr v = e_mul(e_num(0.5), s);
                at(i, j, k) = v;
                at(i, k, j) = v;
            }
    return gam;
}

// The three added off-diagonal connection components of the modified modes,
// as a sparse list {upper, lower1, lower2, expr}; lower indices symmetric.
inline std::vector<std::array<int, 3>> extra_gamma_slots() {
    return {{1, 0, 2}, {2, 0, 1}, {0, 1, 2}};
}

inline Expr extra_gamma_expr(const MetricSpec& base, int which) {
    Expr A = e_call(Func::Sqrt, base.g[0][0]);
    Expr B = e_call(Func::Sqrt, base.g[1][1]);
    Expr C = e_call(Func::Sqrt, base.g[2][2]);
    switch (which) {
        case 0: return e_div(e_mul(C, A), B); // Gamma^2_{13}
        case 1: return e_div(e_mul(A, B), C); // Gamma^3_{12}
        case 2: return e_div(e_mul(B, C), A); // Gamma^1_{23}
    }
    throw eval_error("bad extra connection slot");
}

} // namespace detail

// 6D metric from the base connection.  Modified modes require a diagonal
// base; the minus mode stores the same real component magnitudes as the
// plus mode (its formal-unit weighting only enters curvature products, via
// connection_curvature_at below).
inline MetricSpec extend(const MetricSpec& base, ExtensionMode mode) {
    if (base.dim() != 3) throw eval_error("extension requires a 3-dimensional base metric");
    if (mode != ExtensionMode::LeviCivita && !base.is_diagonal())
        throw eval_error("modified extension modes require a diagonal base metric");

    MetricSpec ext;
    ext.coords = base.coords;
    for (int i = 1; i <= 3; ++i) {
        std::string name = "psi" + std::to_string(i);
        for (const auto& c : base.coords)
            if (c == name)
                throw eval_error("base coordinate '" + name +
                                 "' collides with an extension coordinate");
        ext.coords.push_back(name);
    }
    ext.params = base.params;
    ext.init_zero_metric();

    std::vector<Expr> gam = detail::christoffel_exprs(base);
    auto psi = [](int i) { return e_var("psi" + std::to_string(i + 1)); };

    for (int j = 0; j < 3; ++j)
        for (int k = j; k < 3; ++k) {
            Expr s = e_num(0);
            for (int i = 0; i < 3; ++i) s = e_add(s, e_mul(gam[(i * 3 + j) * 3 + k], psi(i)));
            if (mode != ExtensionMode::LeviCivita)
                for (int w = 0; w < 3; ++w) {
                    auto slot = detail::extra_gamma_slots()[w];
                    if ((slot[1] == j && slot[2] == k) || (slot[1] == k && slot[2] == j))
                        s = e_add(s, e_mul(detail::extra_gamma_expr(base, w), psi(slot[0])));
                }
            if (!s.is_number(0)) ext.set_g(j, k, e_mul(e_num(-2), s));
        }
    for (int i = 0; i < 3; ++i) ext.set_g(i, 3 + i, e_num(-1));
    return ext;
}

// Inertia (n_pos, n_neg, n_zero) of the metric matrix at a point, via the
// cyclic Jacobi eigenvalue method on the symmetric value matrix.
struct Signature {
    int n_pos = 0, n_neg = 0, n_zero = 0;
};

inline Signature metric_signature_at(const MetricSpec& m, const std::vector<double>& point) {
    const int n = m.dim();
    std::vector<double> a(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            a[i * n + j] = m.g[i][j].empty() ? 0.0
                                             : eval_value(m.g[i][j], m.coords, point, m.params);
    double scale = 0;
    for (double v : a) scale = std::max(scale, std::abs(v));
    if (scale == 0) return {0, 0, n};

    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += a[p * n + q] * a[p * n + q];
        if (off < 1e-28 * scale * scale) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                double apq = a[p * n + q];
                if (std::abs(apq) < 1e-300) continue;
                double theta = (a[q * n + q] - a[p * n + p]) / (2 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1));
                double c = 1.0 / std::sqrt(t * t + 1), s = t * c;
                for (int k = 0; k < n; ++k) {
                    double akp = a[k * n + p], akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = a[p * n + k], aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
    }
    Signature sig;
    for (int i = 0; i < n; ++i) {
        double ev = a[i * n + i];
        if (ev > 1e-10 * scale)
            ++sig.n_pos;
        else if (ev < -1e-10 * scale)
            ++sig.n_neg;
        else
            ++sig.n_zero;
    }
    return sig;
}

// ---- curvature of the modified (non-metric, torsion-free) connection ----

// Pair scalars a + e*b with e^2 = sigma; sigma = -1 makes e an imaginary
// unit, sigma = +1 a split unit.  The extra connection components are
// pure-odd, the Levi-Civita components pure-even.
namespace detail {

struct SJet {
    Jet ev, od;
};

inline SJet sj(const Jet& e, const Jet& o) { return {e, o}; }
inline SJet operator+(const SJet& a, const SJet& b) { return {a.ev + b.ev, a.od + b.od}; }
inline SJet operator-(const SJet& a, const SJet& b) { return {a.ev - b.ev, a.od - b.od}; }
inline SJet smul(const SJet& a, const SJet& b, double sigma) {
    return {a.ev * b.ev + (a.od * b.od) * sigma, a.ev * b.od + a.od * b.ev};
}
inline SJet struncated(const SJet& a, int o) { return {a.ev.truncated(o), a.od.truncated(o)}; }
inline SJet sderiv(const SJet& a, int axis) {
    return {a.ev.derivative(axis), a.od.derivative(axis)};
}

} // namespace detail

// Raised curvature (and optionally its covariant derivative) of the
// connection defined by a modified extension mode, evaluated on the 3D
// base.  Components are reported as (even, odd) pairs; for the minus mode
// the odd part is the coefficient of the imaginary unit.
struct ConnectionCurvature {
    std::vector<double> point;
    double sigma = 1.0;
    int n = 3;
    std::vector<double> gamma_ev, gamma_od;     // n^3
    std::vector<double> riemann_ev, riemann_od; // n^4, raised R^i_{jkl}
    std::vector<double> nabla_ev, nabla_od;     // n^5, [m][i][j][k][l]; optional

    double max_abs_riemann() const {
        double w = 0;
        for (double v : riemann_ev) w = std::max(w, std::abs(v));
        for (double v : riemann_od) w = std::max(w, std::abs(v));
        return w;
    }
    double max_abs_nabla() const {
        double w = 0;
        for (double v : nabla_ev) w = std::max(w, std::abs(v));
        for (double v : nabla_od) w = std::max(w, std::abs(v));
        return w;
    }
};

inline ConnectionCurvature connection_curvature_at(const MetricSpec& base, ExtensionMode mode,
                                                   const std::vector<double>& point,
                                                   bool want_nabla = true) {
    if (base.dim() != 3)
        throw eval_error("connection curvature requires a 3-dimensional base metric");
    if (mode == ExtensionMode::LeviCivita)
        throw eval_error("connection curvature path is for the modified modes");
    if (!base.is_diagonal())
        throw eval_error("modified extension modes require a diagonal base metric");
    const double sigma = mode == ExtensionMode::ModifiedPlus ? 1.0 : -1.0;
    const int n = 3;

    detail::JetBundle jb = detail::make_jet_bundle(base, point, want_nabla ? 3 : 2);
    int og = jb.gamma[0].order();

    std::vector<detail::SJet> gam(
        static_cast<std::size_t>(n) * n * n,
        detail::sj(Jet::constant(0, n, og), Jet::constant(0, n, og)));
    for (int i = 0; i < n * n * n; ++i) gam[i].ev = jb.gamma[i];
    for (int w = 0; w < 3; ++w) {
        auto slot = detail::extra_gamma_slots()[w];
        Jet v = eval_expr(detail::extra_gamma_expr(base, w), jb.coord_jets, base.params)
                    .truncated(og);
        gam[(slot[0] * n + slot[1]) * n + slot[2]].od = v;
        gam[(slot[0] * n + slot[2]) * n + slot[1]].od = v;
    }
    auto G = [&](int i, int j, int k) -> const detail::SJet& {
        return gam[(i * n + j) * n + k];
    };

    int o2 = og - 1;
    std::vector<detail::SJet> r(
        static_cast<std::size_t>(n) * n * n * n,
        detail::sj(Jet::constant(0, n, o2), Jet::constant(0, n, o2)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = k + 1; l < n; ++l) {
                    detail::SJet v = sderiv(G(i, j, l), k) - sderiv(G(i, j, k), l);
                    for (int mm = 0; mm < n; ++mm)
                        v = v + struncated(smul(G(i, k, mm), G(mm, j, l), sigma), o2) -
                            struncated(smul(G(i, l, mm), G(mm, j, k), sigma), o2);
                    r[((i * n + j) * n + k) * n + l] = v;
                    r[((i * n + j) * n + l) * n + k] =
                        detail::sj(-v.ev, -v.od);
                }

    ConnectionCurvature out;
    out.point = point;
    out.sigma = sigma;
    out.gamma_ev.resize(gam.size());
    out.gamma_od.resize(gam.size());
    for (std::size_t i = 0; i < gam.size(); ++i) {
        out.gamma_ev[i] = gam[i].ev.value();
        out.gamma_od[i] = gam[i].od.value();
    }
    out.riemann_ev.resize(r.size());
    out.riemann_od.resize(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        out.riemann_ev[i] = r[i].ev.value();
        out.riemann_od[i] = r[i].od.value();
    }

    if (want_nabla) {
        auto R = [&](int i, int j, int k, int l) -> const detail::SJet& {
            return r[((i * n + j) * n + k) * n + l];
        };
        out.nabla_ev.assign(static_cast<std::size_t>(n) * n * n * n * n, 0.0);
        out.nabla_od.assign(out.nabla_ev.size(), 0.0);
        for (int mm = 0; mm < n; ++mm)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    for (int k = 0; k < n; ++k)
                        for (int l = 0; l < n; ++l) {
                            double ve = R(i, j, k, l).ev.d(mm);
                            double vo = R(i, j, k, l).od.d(mm);
                            auto add = [&](double w, const detail::SJet& a,
                                           const detail::SJet& b) {
                                // w * (a*b) with the e^2 = sigma rule, values
                                ve += w * (a.ev.value() * b.ev.value() +
                                           sigma * a.od.value() * b.od.value());
                                vo += w * (a.ev.value() * b.od.value() +
                                           a.od.value() * b.ev.value());
                            };
                            for (int p = 0; p < n; ++p) {
                                add(+1.0, G(i, mm, p), R(p, j, k, l));
                                add(-1.0, G(p, mm, j), R(i, p, k, l));
                                add(-1.0, G(p, mm, k), R(i, j, p, l));
                                add(-1.0, G(p, mm, l), R(i, j, k, p));
                            }
                            std::size_t idx =
                                (((static_cast<std::size_t>(mm) * n + i) * n + j) * n + k) * n +
                                l;
                            out.nabla_ev[idx] = ve;
                            out.nabla_od[idx] = vo;
                        }
    }
    return out;
}

} // namespace curvlab
