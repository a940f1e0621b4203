#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "jrp/instance.hpp"
#include "jrp/policy.hpp"
#include "jrp/rational.hpp"

namespace jrp {

/// Power-of-2 policy: interval i equals 2^exponents[i] * base with the
/// minimal exponent normalized to 0, so base is the minimal interval and the
/// joint cost is exactly K0 / base.
struct Pow2Policy {
    double base = 0.0;
    std::vector<int> exponents;

    std::vector<double> intervals() const;
    double value(std::size_t i) const;
};

/// Nearest-in-log rounding of each source interval onto the grid
/// {base * 2^k} with base = min(source) * 2^stride(-offset); offset in [0, 1).
/// Guarantees: each ratio rounded/source lies in [2^-1/2, 2^1/2] and the
/// relative order of intervals is preserved.
Pow2Policy pow2_round_with_offset(const std::vector<double>& source, double offset);

/// Randomized rounding with a log-uniform base offset. Over the draw,
/// E[rounded/source] = E[source/rounded] = 1/(sqrt(2) ln 2) per interval.
Pow2Policy randomized_pow2_round(const std::vector<double>& source, std::mt19937_64& rng);

/// Derandomized rounding: scans every offset breakpoint where some exponent
/// changes plus the per-segment closed-form base optimum, and returns the
/// cheapest policy under F. When source solves the variable-base relaxation,
/// the result costs at most 1/(sqrt(2) ln 2) times the relaxation value.
Pow2Policy deterministic_pow2_round(const std::vector<double>& source, const Instance& inst);

/// Converts to a common-base policy with exact dyadic intervals.
Policy pow2_to_policy(const Pow2Policy& p);

struct FixedBaseOptions {
    std::uint64_t subset_budget = 1u << 20;  // case-1 guesses before truncation
    std::size_t full_grid_limit = 16;        // grid size with guaranteed full enumeration
};

struct FixedBaseResult {
    Policy policy;
    double cost = 0.0;
    bool truncated = false;
};

/// Fixed-base solver: all intervals restricted to integer multiples of delta.
/// Case 1 guesses the minimal interval rho*delta (rho <= ceil(1/eps)) and a
/// representative subset of the near-minimal grid; case 2 solves the floored
/// variable-base relaxation, rounds to powers of two, and lifts the base onto
/// the delta grid. Returns the cheaper branch.
FixedBaseResult fixed_base_solve(const Instance& inst, const Rational& delta, double eps,
                                 const FixedBaseOptions& opts = {});

}  // namespace jrp
