#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace curvlab {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Syntax error while parsing an expression or a metric file.
struct parse_error : error {
    parse_error(const std::string& what, std::size_t offset)
        : error(what + " (at offset " + std::to_string(offset) + ")"), offset(offset) {}
    std::size_t offset;
};

// Unbound identifier, dimension mismatch, and similar evaluation failures.
struct eval_error : error {
    using error::error;
};

// Argument outside an elementary function's domain (ln of a nonpositive
// value, sign at zero, division by a jet with zero constant term).
struct domain_error : eval_error {
    using eval_error::eval_error;
};

// A residual system hit a vanishing denominator at the sample point.
// Distinct from a large residual: the equation is not defined there.
struct singular_point_error : eval_error {
    using eval_error::eval_error;
};

// Metric not invertible at the evaluation point.
struct singular_metric_error : eval_error {
    using eval_error::eval_error;
};

} // namespace curvlab
