#pragma once

#include <cmath>
#include <stdexcept>

#include "jrp/instance.hpp"

namespace jrp {

/// Long-run average cost K/t + H*t of ordering every t time units.
inline double eoq_cost(const Commodity& c, double t) {
    if (!(t > 0.0)) throw std::domain_error("eoq_cost: time interval must be positive");
    return c.k / t + c.h * t;
}

/// Unique minimizer sqrt(K/H) of the EOQ cost curve.
inline double eoq_minimizer(const Commodity& c) {
    return std::sqrt(c.k / c.h);
}

/// Bound factor (1/2)(sqrt(b/a) + sqrt(a/b)) relating the cheaper endpoint of
/// [a, b] to any interior point of the EOQ curve.
inline double endpoint_bound(double a, double b) {
    if (!(a > 0.0) || a > b) throw std::invalid_argument("endpoint_bound: need 0 < a <= b");
    return 0.5 * (std::sqrt(b / a) + std::sqrt(a / b));
}

}  // namespace jrp
