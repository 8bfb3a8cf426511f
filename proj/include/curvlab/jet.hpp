#pragma once

// Multivariate truncated-Taylor arithmetic ("jets").  A jet stores the
// Taylor coefficients c_alpha = d^alpha f / alpha! of a function at a point,
// for all multi-indices |alpha| <= order, so every arithmetic operation
// propagates exact partial derivatives up to the truncation order.

#include <array>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <string>
#include <vector>

#include "curvlab/errors.hpp"

namespace curvlab {

inline constexpr int kMaxVars = 6;
inline constexpr int kMaxOrder = 4;

using MultiIndex = std::array<std::uint8_t, kMaxVars>;

namespace detail {

inline int multi_degree(const MultiIndex& a) {
    int d = 0;
    for (int i = 0; i < kMaxVars; ++i) d += a[i];
    return d;
}

// Coefficient layout shared by all jets with the same (nvars, order):
// graded ordering (by total degree, then array-lexicographic), a packed
// position lookup, and a precomputed multiplication table.
struct JetLayout {
    int nvars = 0;
    int order = 0;
    std::vector<MultiIndex> exps;
    std::vector<int> pos;   // indexed by packed exponent, -1 if absent
    int pack_stride = 1;    // order + 1

    struct MulEntry {
        std::uint16_t a, b, c; // c_c += a_a * b_b
    };
    std::vector<MulEntry> mul;

    int pack(const MultiIndex& a) const {
        int p = 0;
        for (int i = nvars - 1; i >= 0; --i) p = p * pack_stride + a[i];
        return p;
    }

    int position(const MultiIndex& a) const {
        for (int i = nvars; i < kMaxVars; ++i)
            if (a[i] != 0) return -1;
        if (multi_degree(a) > order) return -1;
        return pos[pack(a)];
    }

    static const JetLayout& get(int nvars, int order);
};

inline JetLayout build_layout(int nvars, int order) {
    JetLayout L;
    L.nvars = nvars;
    L.order = order;
    L.pack_stride = order + 1;

    // Enumerate by degree, lexicographic within a degree.
    for (int deg = 0; deg <= order; ++deg) {
        MultiIndex a{};
        // iterate over all tuples with entries in [0, deg] summing to deg
        std::vector<MultiIndex> of_degree;
        a.fill(0);
        // simple odometer over nvars slots
        std::array<int, kMaxVars> v{};
        int i = 0;
        v.fill(0);
        while (true) {
            int s = 0;
            for (int k = 0; k < nvars; ++k) s += v[k];
            if (s == deg) {
                MultiIndex m{};
                for (int k = 0; k < nvars; ++k) m[k] = static_cast<std::uint8_t>(v[k]);
                of_degree.push_back(m);
            }
            // advance
            for (i = nvars - 1; i >= 0; --i) {
                if (v[i] < deg) {
                    ++v[i];
                    for (int k = i + 1; k < nvars; ++k) v[k] = 0;
                    break;
                }
            }
            if (i < 0) break;
        }
        for (const auto& m : of_degree) L.exps.push_back(m);
    }

    int packed_size = 1;
    for (int k = 0; k < nvars; ++k) packed_size *= L.pack_stride;
    L.pos.assign(packed_size, -1);
    for (std::size_t k = 0; k < L.exps.size(); ++k) L.pos[L.pack(L.exps[k])] = static_cast<int>(k);

    for (std::size_t ia = 0; ia < L.exps.size(); ++ia) {
        int da = multi_degree(L.exps[ia]);
        for (std::size_t ib = 0; ib < L.exps.size(); ++ib) {
            if (da + multi_degree(L.exps[ib]) > order) continue;
            MultiIndex c{};
            for (int k = 0; k < nvars; ++k)
                c[k] = static_cast<std::uint8_t>(L.exps[ia][k] + L.exps[ib][k]);
            int ic = L.pos[L.pack(c)];
            L.mul.push_back({static_cast<std::uint16_t>(ia), static_cast<std::uint16_t>(ib),
                             static_cast<std::uint16_t>(ic)});
        }
    }
    return L;
}

inline const JetLayout& JetLayout::get(int nvars, int order) {
    if (nvars < 1 || nvars > kMaxVars)
        throw eval_error("jet nvars out of range: " + std::to_string(nvars));
    if (order < 0 || order > kMaxOrder)
        throw eval_error("jet order out of range: " + std::to_string(order));
    static std::array<JetLayout, kMaxVars * (kMaxOrder + 1)> cache;
    static std::array<std::once_flag, kMaxVars * (kMaxOrder + 1)> flags;
    int key = (nvars - 1) * (kMaxOrder + 1) + order;
    std::call_once(flags[key], [&] { cache[key] = build_layout(nvars, order); });
    return cache[key];
}

inline double factorial(int n) {
    static const double f[] = {1, 1, 2, 6, 24};
    return f[n];
}

inline double multi_factorial(const MultiIndex& a) {
    double r = 1;
    for (int i = 0; i < kMaxVars; ++i) r *= factorial(a[i]);
    return r;
}

} // namespace detail

enum class Func { Exp, Ln, Sqrt, Sin, Cos, Tan, Atan, Sinh, Cosh, Tanh, Sign };

inline const char* func_name(Func f) {
    switch (f) {
        case Func::Exp: return "exp";
        case Func::Ln: return "ln";
        case Func::Sqrt: return "sqrt";
        case Func::Sin: return "sin";
        case Func::Cos: return "cos";
        case Func::Tan: return "tan";
        case Func::Atan: return "atan";
        case Func::Sinh: return "sinh";
        case Func::Cosh: return "cosh";
        case Func::Tanh: return "tanh";
        case Func::Sign: return "sign";
    }
    return "?";
}

class Jet {
  public:
    Jet() : layout_(&detail::JetLayout::get(1, 0)), c_(1, 0.0) {}

    static Jet constant(double v, int nvars, int order) {
        Jet j(nvars, order);
        j.c_[0] = v;
        return j;
    }

    static Jet variable(double point_value, int var_index, int nvars, int order) {
        if (var_index < 0 || var_index >= nvars)
            throw eval_error("lift_variable: var_index " + std::to_string(var_index) +
                             " out of range for nvars " + std::to_string(nvars));
        Jet j(nvars, order);
        j.c_[0] = point_value;
        if (order >= 1) {
            MultiIndex e{};
            e[var_index] = 1;
            j.c_[static_cast<std::size_t>(j.layout_->position(e))] = 1.0;
        }
        return j;
    }

    int nvars() const { return layout_->nvars; }
    int order() const { return layout_->order; }
    double value() const { return c_[0]; }
    std::size_t size() const { return c_.size(); }
    double coeff(std::size_t i) const { return c_[i]; }
    const MultiIndex& exponent(std::size_t i) const { return layout_->exps[i]; }

    // d^alpha f (the derivative itself, not the Taylor coefficient).
    double partial(const MultiIndex& alpha) const {
        int p = layout_->position(alpha);
        if (p < 0)
            throw eval_error("extract: multi-index degree exceeds jet order");
        return c_[static_cast<std::size_t>(p)] * detail::multi_factorial(alpha);
    }

    double partial(std::initializer_list<int> alpha) const {
        MultiIndex a{};
        int i = 0;
        for (int v : alpha) a[i++] = static_cast<std::uint8_t>(v);
        return partial(a);
    }

    // First derivative along one axis (convenience for tensor code).
    double d(int axis) const {
        MultiIndex a{};
        a[axis] = 1;
        return partial(a);
    }

    bool is_constant(double tol = 0.0) const {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (std::abs(c_[i]) > tol) return false;
        return true;
    }

    // Jet of df/dx_axis, one order lower.
    Jet derivative(int axis) const {
        if (axis < 0 || axis >= nvars())
            throw eval_error("derivative: axis out of range");
        if (order() == 0)
            throw eval_error("derivative: jet has order 0");
        Jet r(nvars(), order() - 1);
        for (std::size_t i = 0; i < r.c_.size(); ++i) {
            MultiIndex a = r.layout_->exps[i];
            int ai = a[axis];
            a[axis] = static_cast<std::uint8_t>(ai + 1);
            int p = layout_->position(a);
            r.c_[i] = c_[static_cast<std::size_t>(p)] * (ai + 1);
        }
        return r;
    }

    // Same coefficients up to new_order (graded layout: a prefix copy).
    Jet truncated(int new_order) const {
        if (new_order >= order()) return *this;
        Jet r(nvars(), new_order);
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = c_[i];
        return r;
    }

    // Re-embed into a higher order with zero top coefficients.  The padded
    // coefficients are not exact derivatives; errors introduced this way
    // only ever propagate to coefficients of equal or higher total degree.
    Jet padded(int new_order) const {
        if (new_order <= order()) return truncated(new_order);
        Jet r(nvars(), new_order);
        for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i];
        return r;
    }

    Jet operator-() const {
        Jet r = *this;
        for (double& v : r.c_) v = -v;
        return r;
    }

    friend Jet operator+(const Jet& a, const Jet& b) {
        a.check_same(b);
        Jet r = a;
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
        return r;
    }

    friend Jet operator-(const Jet& a, const Jet& b) {
        a.check_same(b);
        Jet r = a;
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] -= b.c_[i];
        return r;
    }

    friend Jet operator*(const Jet& a, const Jet& b) {
        a.check_same(b);
        Jet r(a.nvars(), a.order());
        for (const auto& e : a.layout_->mul) r.c_[e.c] += a.c_[e.a] * b.c_[e.b];
        return r;
    }

    friend Jet operator/(const Jet& a, const Jet& b) { return a * b.reciprocal(); }

    friend Jet operator+(const Jet& a, double s) {
        Jet r = a;
        r.c_[0] += s;
        return r;
    }
    friend Jet operator+(double s, const Jet& a) { return a + s; }
    friend Jet operator-(const Jet& a, double s) { return a + (-s); }
    friend Jet operator-(double s, const Jet& a) { return (-a) + s; }
    friend Jet operator*(const Jet& a, double s) {
        Jet r = a;
        for (double& v : r.c_) v *= s;
        return r;
    }
    friend Jet operator*(double s, const Jet& a) { return a * s; }
    friend Jet operator/(const Jet& a, double s) { return a * (1.0 / s); }
    friend Jet operator/(double s, const Jet& a) { return a.reciprocal() * s; }

    Jet reciprocal() const {
        double a0 = c_[0];
        if (a0 == 0.0)
            throw domain_error("division by a jet with zero constant term");
        std::array<double, kMaxOrder + 1> g{};
        double p = 1.0 / a0;
        for (int k = 0; k <= order(); ++k) {
            g[k] = p;
            p *= -1.0 / a0;
        }
        return compose_series(g);
    }

    // Integer power by repeated multiplication; negative via reciprocal.
    Jet powi(long long n) const {
        if (n < 0) return reciprocal().powi(-n);
        Jet acc = Jet::constant(1.0, nvars(), order());
        Jet base = *this;
        while (n > 0) {
            if (n & 1) acc = acc * base;
            base = base * base;
            n >>= 1;
        }
        return acc;
    }

    Jet apply(Func f) const;

    // result = sum_k g[k] * (this - value())^k, truncated.  g[k] must be
    // f^(k)(value())/k! for the univariate function being composed.
    Jet compose_series(const std::array<double, kMaxOrder + 1>& g) const {
        Jet delta = *this;
        delta.c_[0] = 0.0;
        // Horner over the nilpotent part
        Jet acc = Jet::constant(g[order()], nvars(), order());
        for (int k = order() - 1; k >= 0; --k) {
            acc = acc * delta;
            acc.c_[0] += g[k];
        }
        return acc;
    }

  private:
    Jet(int nvars, int order)
        : layout_(&detail::JetLayout::get(nvars, order)), c_(layout_->exps.size(), 0.0) {}

    void check_same(const Jet& b) const {
        if (layout_ != b.layout_)
            throw eval_error("jet arithmetic on mismatched (nvars, order)");
    }

    const detail::JetLayout* layout_;
    std::vector<double> c_;
};

inline Jet Jet::apply(Func f) const {
    const double x = c_[0];
    const int ord = order();
    std::array<double, kMaxOrder + 1> g{};
    switch (f) {
        case Func::Exp: {
            double e = std::exp(x);
            for (int k = 0; k <= ord; ++k) g[k] = e / detail::factorial(k);
            break;
        }
        case Func::Ln: {
            if (x <= 0.0)
                throw domain_error("ln of nonpositive constant term " + std::to_string(x));
            g[0] = std::log(x);
            double p = 1.0 / x;
            for (int k = 1; k <= ord; ++k) {
                g[k] = ((k % 2 == 1) ? 1.0 : -1.0) * p / k;
                p /= x;
            }
            break;
        }
        case Func::Sqrt: {
            if (x <= 0.0)
                throw domain_error("sqrt of nonpositive constant term " + std::to_string(x));
            double s = std::sqrt(x);
            g[0] = s;
            if (ord >= 1) g[1] = 0.5 / s;
            if (ord >= 2) g[2] = -1.0 / (8.0 * x * s);
            if (ord >= 3) g[3] = 1.0 / (16.0 * x * x * s);
            if (ord >= 4) g[4] = -5.0 / (128.0 * x * x * x * s);
            break;
        }
        case Func::Sin: {
            double s = std::sin(x), c = std::cos(x);
            double d[5] = {s, c, -s, -c, s};
            for (int k = 0; k <= ord; ++k) g[k] = d[k] / detail::factorial(k);
            break;
        }
        case Func::Cos: {
            double s = std::sin(x), c = std::cos(x);
            double d[5] = {c, -s, -c, s, c};
            for (int k = 0; k <= ord; ++k) g[k] = d[k] / detail::factorial(k);
            break;
        }
        case Func::Sinh: {
            double s = std::sinh(x), c = std::cosh(x);
            double d[5] = {s, c, s, c, s};
            for (int k = 0; k <= ord; ++k) g[k] = d[k] / detail::factorial(k);
            break;
        }
        case Func::Cosh: {
            double s = std::sinh(x), c = std::cosh(x);
            double d[5] = {c, s, c, s, c};
            for (int k = 0; k <= ord; ++k) g[k] = d[k] / detail::factorial(k);
            break;
        }
        case Func::Tan: {
            // t' = 1 + t^2
            double t0 = std::tan(x);
            double t1 = 1 + t0 * t0;
            double t2 = 2 * t0 * t1;
            double t3 = 2 * t1 * t1 + 2 * t0 * t2;
            double t4 = 6 * t1 * t2 + 2 * t0 * t3;
            double d[5] = {t0, t1, t2, t3, t4};
            for (int k = 0; k <= ord; ++k) g[k] = d[k] / detail::factorial(k);
            break;
        }
        case Func::Tanh: {
            // t' = 1 - t^2
            double t0 = std::tanh(x);
            double t1 = 1 - t0 * t0;
            double t2 = -2 * t0 * t1;
            double t3 = -2 * t1 * t1 - 2 * t0 * t2;
            double t4 = -6 * t1 * t2 - 2 * t0 * t3;
            double d[5] = {t0, t1, t2, t3, t4};
            for (int k = 0; k <= ord; ++k) g[k] = d[k] / detail::factorial(k);
            break;
        }
        case Func::Atan: {
            double w = 1 + x * x;
            g[0] = std::atan(x);
            if (ord >= 1) g[1] = 1.0 / w;
            if (ord >= 2) g[2] = -x / (w * w);
            if (ord >= 3) g[3] = (3 * x * x - 1) / (3 * w * w * w);
            if (ord >= 4) g[4] = (x - x * x * x) / (w * w * w * w);
            break;
        }
        case Func::Sign: {
            if (x == 0.0)
                throw domain_error("sign of a jet with zero constant term");
            // Locally constant off the zero locus.
            return Jet::constant(x > 0 ? 1.0 : -1.0, nvars(), ord);
        }
    }
    return compose_series(g);
}

// Jet power with a jet exponent.  Integer constant exponents use repeated
// multiplication; anything else goes through exp(b ln a), requiring a
// positive base.
inline Jet jet_pow(const Jet& a, const Jet& b) {
    if (b.is_constant()) {
        double e = b.value();
        double r = std::round(e);
        if (std::abs(e - r) < 1e-12 && std::abs(r) < 1e9)
            return a.powi(static_cast<long long>(r));
    }
    return (b * a.apply(Func::Ln)).apply(Func::Exp);
}

} // namespace curvlab
