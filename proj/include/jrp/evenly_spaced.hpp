#pragma once

#include <random>
#include <vector>

#include "jrp/instance.hpp"
#include "jrp/policy.hpp"
#include "jrp/pow2.hpp"
#include "jrp/rational.hpp"

namespace jrp {

/// Joint orders at every integer multiple of the spacing delta; interval i is
/// multipliers[i] * delta, so the joint cost is exactly K0 / delta.
struct EvenlySpacedPolicy {
    double delta = 0.0;
    std::vector<long long> multipliers;
    bool k0_degenerate = false;  // K0 = 0: spacing chosen only to snap EOQ points

    std::vector<double> intervals() const;
};

Policy evenly_spaced_to_policy(const EvenlySpacedPolicy& p);

/// Best evenly-spaced policy up to (1+eps)^2: sweeps the spacing over a
/// geometric grid spanning [K0/OPT~, (1/eps) K0/OPT~] where OPT~ is the
/// deterministic power-of-2 upper bound, refining each bracket with the
/// closed-form spacing optimum for the locally best multipliers.
EvenlySpacedPolicy best_evenly_spaced(const Instance& inst, double eps);

/// Randomized power-of-2 rounding of an arbitrary reference policy.
Pow2Policy construct_policy_A(const std::vector<double>& reference, std::mt19937_64& rng);

/// Deterministic construction with spacing T_min / spacing_divisor: each
/// interval rounds to the C_i-cheaper neighbouring multiple. With the default
/// divisor 3 every multiplier is >= 3, so the per-commodity EOQ loss is at
/// most (1/2)(sqrt(4/3) + sqrt(3/4)).
EvenlySpacedPolicy construct_policy_B(const Instance& inst, const std::vector<double>& reference,
                                      int spacing_divisor = 3);

struct ThetaMixture {
    double joint_coeff = 0.0;  // theta/(sqrt2 ln2) * 5/6 + (1-theta) * 5/2
    double eoq_coeff = 0.0;    // theta/(sqrt2 ln2) + (1-theta) * (1/2)(sqrt(4/3)+sqrt(3/4))
    double bound() const { return joint_coeff > eoq_coeff ? joint_coeff : eoq_coeff; }
};

/// Mixture coefficients of the randomized A/B selection; at the default
/// theta = 0.89755 both coefficients stay below 1.01915.
ThetaMixture theta_mixture_bound(double theta = 0.89755);

/// Checks the pair-density lower bound (6/5)/t_min for a fractional t_f in
/// [t_min, 3 t_min). Preconditions are enforced; the check itself must hold
/// for every admissible pair.
bool verify_claim_4_2(const Rational& t_min, const Rational& t_f);

}  // namespace jrp
