#pragma once

#include <cstdint>
#include <vector>

#include "jrp/rational.hpp"

namespace jrp {

/// Horizon convention for counting joint orders. Closed counts multiples in
/// [0, horizon]; half-open counts multiples in [0, horizon). One full period
/// under the half-open convention reproduces the asymptotic density exactly.
enum class Convention { closed, half_open };

struct OracleLimits {
    std::uint64_t max_points = 10'000'000;  // generated-point cap for counting
    std::size_t max_subset_n = 20;          // inclusion-exclusion cap (2^n terms)
};

struct DensityResult {
    Rational value;            // joint orders per unit time
    std::uint64_t term_count;  // inclusion-exclusion terms evaluated
};

/// Exact cardinality of the union of multiple sets of the given intervals
/// within the horizon. Computed on a common integer scale, so there are no
/// floating comparisons. Throws budget_error past limits.max_points.
std::uint64_t count_joint_orders(const std::vector<Rational>& intervals, const Rational& horizon,
                                 Convention convention, const OracleLimits& limits = {});

/// Asymptotic joint-order density by inclusion-exclusion over nonempty
/// subsets: sum (-1)^(|N|+1) / lcm(N). Throws budget_error when the subset
/// count exceeds 2^limits.max_subset_n.
DensityResult exact_density(const std::vector<Rational>& intervals, const OracleLimits& limits = {});

/// Two-interval density 1/a + 1/b - 1/lcm(a, b).
Rational pair_density(const Rational& t_min, const Rational& t_f);

/// Density measured by counting over `periods` full common periods with the
/// half-open convention; equals exact_density for every periods >= 1.
Rational empirical_density(const std::vector<Rational>& intervals, std::uint64_t periods,
                           const OracleLimits& limits = {});

}  // namespace jrp
