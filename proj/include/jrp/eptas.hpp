#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "jrp/instance.hpp"
#include "jrp/policy.hpp"
#include "jrp/rational.hpp"

namespace jrp {

/// Geometric segmentation of [T~_min, (1/eps) T~_min] by powers of a snapped
/// 1+eps ratio, together with the guessed set of active segments. Segment 1
/// holds the minimal interval and is always active.
struct SegmentStructure {
    Rational t_min_estimate;
    double eps = 0.0;
    Rational ratio;           // exact snapped 1+eps
    int segment_count = 0;    // L: minimal l with ratio^l >= 1/eps
    double psi = 0.0;         // alignment parameter (2/eps^3) ln^2(1/eps)
    std::vector<int> active;  // ascending segment ids; front() == 1
};

/// Forest edge between active positions a < b carrying the guessed multiples:
/// mult_a * R_a = mult_b * R_b, both at most psi, coprime.
struct ForestEdge {
    int a = 0, b = 0;
    long long mult_a = 1, mult_b = 1;
};

struct Configuration {
    SegmentStructure segments;
    std::vector<ForestEdge> edges;  // acyclic over active positions
    std::vector<int> component;     // per active position
    std::vector<int> sources;       // per component: active position of its source
    std::uint64_t index = 0;        // position in the deterministic stream
};

/// Representatives propagated from each tree source through the exact edge
/// ratios; all alignment equations hold exactly in rational arithmetic.
struct RepresentativeSet {
    std::vector<int> segment;       // active segment id per representative
    std::vector<Rational> values;   // R~ per representative
    std::vector<int> component;
    std::vector<int> sources;       // per component: index into values
    std::vector<Rational> gamma;    // per component scaling witness (reference-derived)
    Rational t_min_estimate;
    double eps = 0.0;
};

double eptas_psi(double eps);
int eptas_segment_count(double eps, const Rational& ratio);

/// All acyclic edge subsets of the complete graph on m vertices, in
/// lexicographic order over the edge list ((0,1), (0,2), ..., (m-2,m-1)).
std::vector<std::vector<std::pair<int, int>>> enumerate_forests(int m);

/// Near-optimal policy for the regime where joint ordering is cheap: joint
/// orders every Delta = K0/(eps * opt_estimate), EOQ minimizers rounded up
/// onto that grid. The joint cost is exactly eps * opt_estimate.
Policy cheap_regime_policy(const Instance& inst, double eps, double opt_estimate);

struct EnumerationOptions {
    std::uint64_t budget = 100'000;
    std::uint64_t snap_denominator_cap = 1'000'000;
};

/// Streams (t_min candidate, active set, forest, edge multiples) guesses in a
/// deterministic order: t_min descending over a snapped (1-eps)-geometric
/// grid, active sets by increasing bitmask, forests lexicographic by edge
/// list, multiples lexicographic. Returns false when the budget truncated the
/// stream.
bool for_each_configuration(const Instance& inst, double eps, double opt_estimate,
                            const EnumerationOptions& opts,
                            const std::function<void(const Configuration&)>& fn);

RepresentativeSet propagate_representatives(const Configuration& cfg);

/// Final policy for one configuration: every commodity takes the C_i-cheapest
/// option among the representatives and one large interval — the EOQ
/// minimizer (or (1/eps) T~_min, whichever is larger) rounded up onto the
/// segment-1 representative's grid.
Policy assemble_policy(const Instance& inst, const RepresentativeSet& reps);

struct JointEstimate {
    double estimate = 0.0;  // K0 * sum of per-component densities (upper end)
    double lo = 0.0;        // (1 - eps) * estimate
    double hi = 0.0;
    Rational exact_component_sum;
};

/// Per-component exact densities summed; the true joint cost of the union
/// lies in [(1-eps), 1] times the returned estimate.
JointEstimate component_cost_estimate(const RepresentativeSet& reps, double k0);

/// Within every component the exact lcm of the representatives is at most
/// psi^(k-1) times the source representative.
bool component_lcm_bounded(const RepresentativeSet& reps, double psi);

struct EptasResult {
    Policy policy;
    double cost = 0.0;
    bool truncated = false;
    std::string winner;  // which candidate family produced the policy
    std::optional<Configuration> config;
};

/// Runs the cheap regime and the full enumeration unconditionally (the true
/// regime test depends on the unknown optimal joint cost), seeds the pool
/// with the deterministic power-of-2 and evenly-spaced policies, and returns
/// the cheapest candidate under exact joint evaluation.
EptasResult eptas_solve(const Instance& inst, double eps, const EnumerationOptions& opts = {});

/// Builds the configuration a given (rational) reference policy induces:
/// actual active segments, first-interval representatives, the psi-alignment
/// forest, exact edge multiples, and the propagated representatives with
/// their per-component scaling witnesses.
struct DerivedConfiguration {
    Configuration config;
    RepresentativeSet reps;
    std::vector<Rational> optimal_reps;  // reference representative per active segment
};

DerivedConfiguration derive_configuration(const std::vector<Rational>& reference, double eps,
                                          const Rational& t_min_estimate);

}  // namespace jrp
