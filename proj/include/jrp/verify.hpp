#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace jrp::verify {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// core
CheckResult eoq_convexity(std::uint64_t seed, int samples);
CheckResult eoq_scaling_identity(std::uint64_t seed, int samples);
CheckResult eoq_endpoint_bound(std::uint64_t seed, int samples);
CheckResult eoq_minimizer_argmin(std::uint64_t seed, int grid_points);

// joint_order_oracle
CheckResult oracle_equivalence(std::uint64_t seed, int policies, int max_n, int max_den);
CheckResult oracle_bounds(std::uint64_t seed, int policies);

// relaxations
CheckResult relaxation_dominance(std::uint64_t seed, int instances, int points);
CheckResult rc_kkt(std::uint64_t seed, int instances);
CheckResult lp_vertex_oracle(std::uint64_t seed, int models);

// pow2_rounding
CheckResult pow2_guarantee(std::uint64_t seed, int instances, int max_n);
CheckResult pow2_expectations(std::uint64_t seed, int samples);
CheckResult fixed_base_divisibility(std::uint64_t seed, int instances);
CheckResult fixed_base_grid_oracle(std::uint64_t seed, int instances, int max_n, int grid_max);

// evenly_spaced
CheckResult claim_4_2_sweep(int max_den);
CheckResult theta_mixture_arithmetic();
CheckResult policy_b_contract(std::uint64_t seed, int instances);
CheckResult evenly_grid_consistency(std::uint64_t seed, int instances);

// eptas
CheckResult claim_2_5_grid(int step_count);
CheckResult eptas_reference_properties(std::uint64_t seed, int references);
CheckResult eptas_bracket(std::uint64_t seed, int instances, std::uint64_t budget);

// resource_constrained
CheckResult shift_claims_monte_carlo(std::uint64_t seed, int samples);
CheckResult rc_general_suite(std::uint64_t seed, int instances, int trials);
CheckResult rc_ptas_statistics(std::uint64_t seed, int rounds);

// harness
CheckResult harness_reproducibility(std::uint64_t seed);
CheckResult parallel_consistency(std::uint64_t seed);

/// Full verification sweep; quick mode shrinks the sampling counts.
std::vector<CheckResult> run_all(std::uint64_t seed, bool quick);

}  // namespace jrp::verify
