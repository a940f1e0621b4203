#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "jrp/instance.hpp"
#include "jrp/rational.hpp"

namespace jrp {

/// A point in time carried both ways: the double drives cost arithmetic, the
/// optional exact rational drives structural/oracle paths. Conversions between
/// the two representations are explicit, never implicit.
struct TimeValue {
    double value = 0.0;
    std::optional<Rational> exact;

    static TimeValue of(double v) { return {v, std::nullopt}; }
    static TimeValue of(Rational r) {
        TimeValue t;
        t.value = r.to_double();
        t.exact = std::move(r);
        return t;
    }
};

struct GeneralStructure {};

/// Joint orders at integer multiples of delta; every interval is an exact
/// integer multiple of delta.
struct CommonBaseStructure {
    Rational delta;
};

/// Joint orders at the union of integer multiples of the representatives;
/// every interval is an exact multiple of the representative it is assigned
/// to. `component` partitions the representatives for additive joint-cost
/// estimation.
struct RepresentativeSetStructure {
    std::vector<Rational> reps;
    std::vector<int> component;      // component id per representative
    std::vector<int> assignment;     // per-commodity representative index
    double eps = 0.0;                // accuracy parameter behind the estimate
};

using PolicyStructure = std::variant<GeneralStructure, CommonBaseStructure, RepresentativeSetStructure>;

struct Policy {
    std::vector<TimeValue> intervals;
    PolicyStructure structure = GeneralStructure{};

    std::size_t size() const { return intervals.size(); }
    double min_interval() const;
    bool all_exact() const;
    std::vector<double> values() const;
    std::vector<Rational> exact_values() const;  // throws if any interval is floating-only

    static Policy general(const std::vector<double>& intervals);
    static Policy general_exact(const std::vector<Rational>& intervals);
    static Policy common_base(const Rational& delta, const std::vector<BigInt>& multipliers);
};

enum class JointMethod { exact_lcm, base_formula, component_estimate };

struct CostBreakdown {
    double joint = 0.0;
    double eoq = 0.0;
    double total = 0.0;
    JointMethod joint_method = JointMethod::exact_lcm;
    // Certified enclosure of the true joint cost; tight except under
    // component_estimate, where it is the [(1-eps)*estimate, estimate] sandwich.
    double joint_lo = 0.0;
    double joint_hi = 0.0;
};

/// Evaluates F(T) = J(T) + sum_i C_i(T_i), dispatching the joint term on the
/// policy structure: common base -> K0/delta, representative set ->
/// per-component estimate, general rational -> exact inclusion-exclusion
/// oracle. General policies with floating-only intervals are rejected.
CostBreakdown total_cost(const Instance& inst, const Policy& p);

std::string policy_to_json(const Policy& p);
Policy parse_policy(const std::string& json_text);
Policy load_policy(const std::string& path);

}  // namespace jrp
