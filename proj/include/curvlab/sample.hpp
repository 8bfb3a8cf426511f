#pragma once

// Deterministic sample plans: per-coordinate boxes, a fixed PRNG seed, and
// exclusion predicates whose zero-neighborhood (|value| < 1e-3) is rejected.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "curvlab/errors.hpp"
#include "curvlab/expr.hpp"

namespace curvlab {

struct SamplePlan {
    std::vector<std::pair<double, double>> boxes;
    int n_points = 64;
    std::uint64_t seed = 42;
    std::vector<Expr> exclusions;

    static SamplePlan cube(int dim, double lo, double hi, int n_points = 64,
                           std::uint64_t seed = 42) {
        SamplePlan p;
        p.boxes.assign(dim, {lo, hi});
        p.n_points = n_points;
        p.seed = seed;
        return p;
    }
};

inline constexpr double kExclusionRadius = 1e-3;

// Same plan, same points, always.
inline std::vector<std::vector<double>> sample_points(const SamplePlan& plan,
                                                      const std::vector<std::string>& coords,
                                                      const std::map<std::string, double>& params = {}) {
    if (plan.boxes.size() != coords.size())
        throw eval_error("sample plan box count does not match coordinate count");
    std::mt19937_64 rng(plan.seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<std::vector<double>> pts;
    pts.reserve(plan.n_points);
    const int max_attempts = plan.n_points * 1000 + 1000;
    int attempts = 0;
    while (static_cast<int>(pts.size()) < plan.n_points) {
        if (++attempts > max_attempts)
            throw eval_error("sample plan produced no valid points (exclusions too tight)");
        std::vector<double> p(coords.size());
        for (std::size_t i = 0; i < coords.size(); ++i) {
            auto [lo, hi] = plan.boxes[i];
            p[i] = lo + (hi - lo) * uni(rng);
        }
        bool ok = true;
        for (const Expr& ex : plan.exclusions) {
            if (std::abs(eval_value(ex, coords, p, params)) < kExclusionRadius) {
                ok = false;
                break;
            }
        }
        if (ok) pts.push_back(std::move(p));
    }
    return pts;
}

} // namespace curvlab
