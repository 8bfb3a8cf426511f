#pragma once

// Pointwise connection and curvature data for a MetricSpec: Christoffel
// symbols, the lowered Riemann tensor, Ricci, scalar curvature, the
// covariant derivative of Riemann, the gravitational Chern-Simons density,
// and the Laplace operator acting on 1-forms.
//
// Everything is computed in jet arithmetic: the metric components are
// evaluated as jets of sufficient order, the inverse metric is obtained by
// Gauss-Jordan elimination over jets, and all derivatives are read off
// exactly.  Sign convention: R^i_{jkl} = d_k G^i_{jl} - d_l G^i_{jk}
// + G^i_{km} G^m_{jl} - G^i_{lm} G^m_{jk}, lowered with the first index.
// With this convention the hyperbolic metric delta_ij / z^2 satisfies
// R_ijkl = lambda (g_ik g_jl - g_il g_jk) with lambda = -1, which is the
// calibration case; no extra sign flip is applied (see the tensor tests).

#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "curvlab/errors.hpp"
#include "curvlab/expr.hpp"
#include "curvlab/metric.hpp"

namespace curvlab {

struct BundleWant {
    bool nabla_r = false;
    bool cs = false;
};

struct CurvatureBundle {
    std::vector<double> point;
    int n = 0;
    std::vector<double> g, g_inv;         // n*n
    std::vector<double> gamma;            // n^3, [i][j][k] -> (i*n+j)*n+k
    std::vector<double> riemann_low;      // n^4, fully lowered R_ijkl
    std::vector<double> ricci;            // n*n
    double scalar = 0;
    std::vector<double> nabla_riemann;    // n^5, [m][i][j][k][l]; empty unless requested
    std::optional<double> cs;             // unnormalized density

    double G(int i, int j) const { return g[i * n + j]; }
    double Ginv(int i, int j) const { return g_inv[i * n + j]; }
    double Gamma(int i, int j, int k) const { return gamma[(i * n + j) * n + k]; }
    double R(int i, int j, int k, int l) const {
        return riemann_low[((i * n + j) * n + k) * n + l];
    }
    double Ric(int a, int b) const { return ricci[a * n + b]; }
    double NablaR(int m, int i, int j, int k, int l) const {
        return nabla_riemann[(((m * n + i) * n + j) * n + k) * n + l];
    }
};

namespace detail {

// Gauss-Jordan inversion of a jet-valued matrix, pivoting on the constant
// terms.  Throws singular_metric_error when a pivot degenerates.
inline std::vector<Jet> invert_jet_matrix(std::vector<Jet> a, int n) {
    int nv = a[0].nvars(), ord = a[0].order();
    std::vector<Jet> inv(static_cast<std::size_t>(n) * n, Jet::constant(0.0, nv, ord));
    for (int i = 0; i < n; ++i) inv[i * n + i] = Jet::constant(1.0, nv, ord);

    double scale = 0;
    for (const auto& j : a) scale = std::max(scale, std::abs(j.value()));
    if (scale == 0) throw singular_metric_error("metric is identically zero at point");

    for (int col = 0; col < n; ++col) {
        int piv = -1;
        double best = 0;
        for (int r = col; r < n; ++r) {
            double v = std::abs(a[r * n + col].value());
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (piv < 0 || best < 1e-12 * scale)
            throw singular_metric_error("singular metric at evaluation point");
        if (piv != col)
            for (int c = 0; c < n; ++c) {
                std::swap(a[piv * n + c], a[col * n + c]);
                std::swap(inv[piv * n + c], inv[col * n + c]);
            }
        Jet pr = a[col * n + col].reciprocal();
        for (int c = 0; c < n; ++c) {
            a[col * n + c] = a[col * n + c] * pr;
            inv[col * n + c] = inv[col * n + c] * pr;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            Jet f = a[r * n + col];
            if (f.value() == 0 && f.is_constant()) continue;
            for (int c = 0; c < n; ++c) {
                a[r * n + c] = a[r * n + c] - f * a[col * n + c];
                inv[r * n + c] = inv[r * n + c] - f * inv[col * n + c];
            }
        }
    }
    return inv;
}

// Jet-level bundle shared by bundle_at, cs_density_at and the 1-form
// Laplacian.  `order` is the jet order of the metric evaluation after the
// Deriv-depth bump.
struct JetBundle {
    int n;
    int order;                 // order of the g jets
    std::vector<Jet> g;        // n*n at `order`
    std::vector<Jet> ginv;     // n*n at `order`
    std::vector<Jet> gamma;    // n^3 at order-1
    std::map<std::string, Jet> coord_jets; // at `order`

    const Jet& G(int i, int j) const { return g[i * n + j]; }
    const Jet& Gi(int i, int j) const { return ginv[i * n + j]; }
    const Jet& Gam(int i, int j, int k) const { return gamma[(i * n + j) * n + k]; }
};

inline JetBundle make_jet_bundle(const MetricSpec& m, const std::vector<double>& point,
                                 int base_order) {
    JetBundle jb;
    jb.n = m.dim();
    if (static_cast<int>(point.size()) != jb.n)
        throw eval_error("point dimension does not match metric");
    jb.order = base_order + m.deriv_depth();
    for (int i = 0; i < jb.n; ++i)
        jb.coord_jets.emplace(m.coords[i], Jet::variable(point[i], i, jb.n, jb.order));

    jb.g.assign(static_cast<std::size_t>(jb.n) * jb.n, Jet());
    for (int i = 0; i < jb.n; ++i)
        for (int j = i; j < jb.n; ++j) {
            Jet v = m.g[i][j].empty() ? Jet::constant(0.0, jb.n, jb.order)
                                      : eval_expr(m.g[i][j], jb.coord_jets, m.params);
            jb.g[i * jb.n + j] = v;
            jb.g[j * jb.n + i] = v;
        }

    jb.ginv = invert_jet_matrix(jb.g, jb.n);

    int o1 = jb.order - 1;
    const int n = jb.n;
    // dg[m][j][k] = d_m g_jk at order-1
    std::vector<Jet> dg(static_cast<std::size_t>(n) * n * n, Jet());
    for (int mm = 0; mm < n; ++mm)
        for (int j = 0; j < n; ++j)
            for (int k = j; k < n; ++k) {
                Jet d = jb.g[j * n + k].derivative(mm);
                dg[(mm * n + j) * n + k] = d;
                dg[(mm * n + k) * n + j] = d;
            }
    std::vector<Jet> ginv1(jb.ginv.size(), Jet());
    for (std::size_t i = 0; i < jb.ginv.size(); ++i) ginv1[i] = jb.ginv[i].truncated(o1);

    jb.gamma.assign(static_cast<std::size_t>(n) * n * n, Jet::constant(0.0, n, o1));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = j; k < n; ++k) {
                Jet s = Jet::constant(0.0, n, o1);
                for (int mm = 0; mm < n; ++mm) {
                    Jet t = dg[(j * n + mm) * n + k] + dg[(k * n + mm) * n + j] -
                            dg[(mm * n + j) * n + k];
                    if (ginv1[i * n + mm].is_constant() && ginv1[i * n + mm].value() == 0)
                        continue;
                    s = s + ginv1[i * n + mm] * t;
                }
                s = s * 0.5;
                jb.gamma[(i * n + j) * n + k] = s;
                jb.gamma[(i * n + k) * n + j] = s;
            }
    return jb;
}

// Raised Riemann tensor R^i_{jkl} as jets of order (gamma order - 1).
inline std::vector<Jet> raised_riemann(const JetBundle& jb) {
    const int n = jb.n;
    int o2 = jb.gamma[0].order() - 1;
    std::vector<Jet> r(static_cast<std::size_t>(n) * n * n * n, Jet::constant(0.0, n, o2));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = k + 1; l < n; ++l) {
                    Jet v = jb.Gam(i, j, l).derivative(k) - jb.Gam(i, j, k).derivative(l);
                    for (int mm = 0; mm < n; ++mm)
                        v = v + (jb.Gam(i, k, mm) * jb.Gam(mm, j, l)).truncated(o2) -
                            (jb.Gam(i, l, mm) * jb.Gam(mm, j, k)).truncated(o2);
                    r[((i * n + j) * n + k) * n + l] = v;
                    r[((i * n + j) * n + l) * n + k] = -v;
                }
    return r;
}

} // namespace detail

inline CurvatureBundle bundle_at(const MetricSpec& m, const std::vector<double>& point,
                                 BundleWant want = {}) {
    const int n = m.dim();
    int base_order = want.nabla_r ? 3 : 2;
    detail::JetBundle jb = detail::make_jet_bundle(m, point, base_order);

    CurvatureBundle b;
    b.point = point;
    b.n = n;
    b.g.resize(static_cast<std::size_t>(n) * n);
    b.g_inv.resize(b.g.size());
    for (int i = 0; i < n * n; ++i) {
        b.g[i] = jb.g[i].value();
        b.g_inv[i] = jb.ginv[i].value();
    }
    b.gamma.resize(static_cast<std::size_t>(n) * n * n);
    for (std::size_t i = 0; i < b.gamma.size(); ++i) b.gamma[i] = jb.gamma[i].value();

    std::vector<Jet> rup = detail::raised_riemann(jb);
    int o2 = rup[0].order();

    // Lowered Riemann as jets (first-order coefficients feed nabla_r).
    std::vector<Jet> rlow(rup.size(), Jet::constant(0.0, n, o2));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = k + 1; l < n; ++l) {
                    Jet v = Jet::constant(0.0, n, o2);
                    for (int mm = 0; mm < n; ++mm) {
                        const Jet& rm = rup[((mm * n + j) * n + k) * n + l];
                        if (rm.is_constant() && rm.value() == 0) continue;
                        v = v + (jb.G(i, mm).truncated(o2) * rm).truncated(o2);
                    }
                    rlow[((i * n + j) * n + k) * n + l] = v;
                    rlow[((i * n + j) * n + l) * n + k] = -v;
                }

    b.riemann_low.resize(rlow.size());
    for (std::size_t i = 0; i < rlow.size(); ++i) b.riemann_low[i] = rlow[i].value();

    b.ricci.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c) {
            double s = 0;
            for (int mm = 0; mm < n; ++mm) s += rup[((mm * n + a) * n + mm) * n + c].value();
            b.ricci[a * n + c] = s;
        }
    b.scalar = 0;
    for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c) b.scalar += b.Ginv(a, c) * b.Ric(a, c);

    if (want.nabla_r) {
        b.nabla_riemann.assign(static_cast<std::size_t>(n) * n * n * n * n, 0.0);
        for (int mm = 0; mm < n; ++mm)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    for (int k = 0; k < n; ++k)
                        for (int l = 0; l < n; ++l) {
                            double v = rlow[((i * n + j) * n + k) * n + l].d(mm);
                            for (int p = 0; p < n; ++p) {
                                v -= b.Gamma(p, mm, i) * b.R(p, j, k, l);
                                v -= b.Gamma(p, mm, j) * b.R(i, p, k, l);
                                v -= b.Gamma(p, mm, k) * b.R(i, j, p, l);
                                v -= b.Gamma(p, mm, l) * b.R(i, j, k, p);
                            }
                            b.nabla_riemann[(((mm * n + i) * n + j) * n + k) * n + l] = v;
                        }
    }

    if (want.cs) {
        if (n != 3) throw eval_error("Chern-Simons density requires a 3-dimensional metric");
        // epsilon^{ijk} (G^p_{iq} d_j G^q_{kp} + (2/3) G^p_{iq} G^q_{jr} G^r_{kp})
        static const int eps[6][4] = {{0, 1, 2, 1}, {1, 2, 0, 1}, {2, 0, 1, 1},
                                      {0, 2, 1, -1}, {2, 1, 0, -1}, {1, 0, 2, -1}};
        double cs = 0;
        for (const auto& e : eps) {
            int i = e[0], j = e[1], k = e[2];
            double sgn = e[3];
            double t1 = 0, t2 = 0;
            for (int p = 0; p < 3; ++p)
                for (int q = 0; q < 3; ++q) {
                    t1 += jb.Gam(p, i, q).value() * jb.Gam(q, k, p).d(j);
                    for (int r = 0; r < 3; ++r)
                        t2 += jb.Gam(p, i, q).value() * jb.Gam(q, j, r).value() *
                              jb.Gam(r, k, p).value();
                }
            cs += sgn * (t1 + (2.0 / 3.0) * t2);
        }
        b.cs = cs;
    }

    return b;
}

inline double metric_det_at(const MetricSpec& m, const std::vector<double>& point) {
    const int n = m.dim();
    std::vector<double> a(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            a[i * n + j] = m.g[i][j].empty() ? 0.0
                                             : eval_value(m.g[i][j], m.coords, point, m.params);
    double det = 1.0;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
        if (a[piv * n + col] == 0) return 0.0;
        if (piv != col) {
            for (int c = 0; c < n; ++c) std::swap(a[piv * n + c], a[col * n + c]);
            det = -det;
        }
        det *= a[col * n + col];
        for (int r = col + 1; r < n; ++r) {
            double f = a[r * n + col] / a[col * n + col];
            for (int c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
        }
    }
    return det;
}

// Gravitational Chern-Simons density.  The covariant-looking `;` in the
// defining expression is implemented as a partial derivative; `normalized`
// divides by sqrt(|det g|).  The 1/(4 pi^2) action prefactor is excluded.
inline double cs_density_at(const MetricSpec& m, const std::vector<double>& point,
                            bool normalized = false) {
    if (m.dim() != 3)
        throw eval_error("Chern-Simons density requires a 3-dimensional metric");
    BundleWant want;
    want.cs = true;
    CurvatureBundle b = bundle_at(m, point, want);
    double cs = *b.cs;
    if (normalized) {
        double det = metric_det_at(m, point);
        if (det == 0) throw singular_metric_error("singular metric in CS normalization");
        cs /= std::sqrt(std::abs(det));
    }
    return cs;
}

// Residual of the 1-form eigenvalue problem
//   g^{ij} nabla_i nabla_j A_k - R^l_k A_l + lambda A_k
// evaluated componentwise; all three components vanish iff the eigenvalue
// equation holds at the point.
inline std::array<double, 3> laplace_one_form_at(const MetricSpec& m,
                                                 const std::array<Expr, 3>& w,
                                                 const std::vector<double>& point,
                                                 double lambda) {
    if (m.dim() != 3) throw eval_error("1-form Laplacian requires a 3-dimensional metric");
    detail::JetBundle jb = detail::make_jet_bundle(m, point, 3);
    const int n = 3;
    int o1 = jb.order - 1;

    std::array<Jet, 3> Afull;
    std::array<Jet, 3> A;
    for (int k = 0; k < 3; ++k) {
        Afull[k] = eval_expr(w[k], jb.coord_jets, m.params);
        A[k] = Afull[k].truncated(o1);
    }

    // T_{ik} = nabla_i A_k
    std::vector<Jet> T(9, Jet());
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            Jet v = Afull[k].derivative(i).truncated(o1);
            for (int mm = 0; mm < n; ++mm) v = v - (jb.Gam(i, k, mm) * A[mm]).truncated(o1);
            T[i * n + k] = v;
        }

    // S_{jik} = nabla_j T_{ik} (values only)
    std::array<double, 3> lap{};
    for (int k = 0; k < n; ++k) {
        double s = 0;
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                double v = T[i * n + k].d(j);
                for (int p = 0; p < n; ++p) {
                    v -= jb.Gam(j, i, p).value() * T[p * n + k].value();
                    v -= jb.Gam(j, k, p).value() * T[i * n + p].value();
                }
                s += jb.Gi(j, i).value() * v;
            }
        lap[k] = s;
    }

    // Ricci with one index raised
    CurvatureBundle b = bundle_at(m, point);
    std::array<double, 3> res{};
    for (int k = 0; k < n; ++k) {
        double v = lap[k] + lambda * A[k].value();
        for (int l = 0; l < n; ++l) {
            double rlk = 0;
            for (int mm = 0; mm < n; ++mm) rlk += b.Ginv(l, mm) * b.Ric(mm, k);
            v -= rlk * A[l].value();
        }
        res[k] = v;
    }
    return res;
}

} // namespace curvlab
