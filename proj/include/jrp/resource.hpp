#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "jrp/eptas.hpp"
#include "jrp/instance.hpp"
#include "jrp/policy.hpp"
#include "jrp/relaxations.hpp"

namespace jrp {

/// Small commodities sit within a factor 8/7 of the relaxation's minimal
/// interval; the rest are large. Cost masses refer to the relaxation solution.
struct Classification {
    std::vector<int> small, large;
    double c_small = 0.0, c_large = 0.0;
};

Classification classify_commodities(const Instance& inst, const RelaxationSolution& relax);

/// Largest per-constraint load ratio max_d (sum_i alpha_id / T_i) / beta_d;
/// zero when the instance has no resource rows. Feasible iff <= 1.
double resource_utilization(const Instance& inst, const std::vector<double>& intervals);

/// Joint orders every Delta = (8/7) T*_min, all intervals rounded up onto
/// that grid. Rounding up preserves resource feasibility; the joint cost is
/// exactly (7/8) K0 / T*_min.
Policy right_shift_policy(const Instance& inst, const RelaxationSolution& relax);

/// Joint orders every Delta_U = T*_min e^-U for the given draw u in [0, ln 2);
/// all intervals rounded up onto that grid, hence feasible for every draw.
Policy shift_policy_with_draw(const Instance& inst, const RelaxationSolution& relax, double u);
Policy randomized_shift_policy(const Instance& inst, const RelaxationSolution& relax,
                               std::mt19937_64& rng);

struct RcSolveResult {
    Policy policy;
    double cost = 0.0;
    double opt_rc = 0.0;            // relaxation lower bound
    double right_shift_cost = 0.0;  // F of the deterministic candidate
    double mean_min_ratio = 0.0;    // empirical E[min(F_A, F_B)] / OPT(RC)
};

/// Solves (RC), then keeps the cheaper of the right-shift policy and `trials`
/// randomized-shift draws.
RcSolveResult rc_solve(const Instance& inst, int trials, std::mt19937_64& rng);

struct DiscretizationCandidate {
    enum class Tag { representative, grid, large_cap };
    Rational value;
    Tag tag = Tag::representative;
    int grid_power = 0;  // p for grid candidates
};

struct DiscretizationSets {
    std::vector<std::vector<DiscretizationCandidate>> sets;  // candidate intervals per commodity
    std::vector<double> t_lb;                                // max_d alpha_id / beta_d, 0 if free
    RepresentativeSet reps;
    double eps = 0.0;
};

struct DiscretizeOptions {
    std::size_t per_commodity_cap = 64;
};

/// Candidate interval lists: the representatives, the (1+eps)-geometric
/// resource-lower-bound grid rounded up onto the segment-1 representative
/// (only from (1/eps) T~_min upward), and the single large cap. Every
/// non-representative candidate is an exact multiple of the segment-1
/// representative.
DiscretizationSets discretize(const Instance& inst, double eps, const RepresentativeSet& reps,
                              const DiscretizeOptions& opts = {});

struct GuessOptions {
    std::uint64_t guess_budget = 2'000;    // LP solves across guesses
    int retries = 30;                      // rounding attempts per guess
    double opt_estimate = -1.0;            // expensive threshold scale; <0: derive internally
    double heavy_delta = -1.0;             // <0: eps^4 / D^2
    double expensive_threshold = -1.0;     // <0: eps^4 * opt_estimate
};

struct RoundingStats {
    int trials = 0;
    int cost_over = 0;              // realized EOQ cost above (1+eps) OPT(LP)
    int violation_over = 0;         // some constraint above (1+3eps) beta
    int accepted_trial = -1;
};

struct GuessRoundResult {
    bool found = false;
    Policy policy;  // final policy, scaled by 1+3eps, truly feasible
    double cost = 0.0;
    LpModel lp_model;
    LpSolution lp;
    RoundingStats stats;
    std::size_t guesses_tried = 0;
    bool guess_budget_exhausted = false;
    bool plain_guess = false;          // winner came from the unfixed relaxation
    std::vector<int> heavy_selected;   // per constraint: heavy pairs the policy picked
    int expensive_selected = 0;        // expensive pairs the policy picked
    std::string diagnosis;  // populated when no guess produced a policy
};

/// Enumerates heavy/expensive pair guesses by increasing cardinality (the
/// empty guess first), solves the fixed LP with (1+eps)-relaxed capacities,
/// rounds commodities independently by the fractional row distributions, and
/// accepts a draw once it is simultaneously (1+eps)-cheap and
/// (1+3eps)-feasible. The accepted draw is scaled by 1+3eps, which makes it
/// feasible outright. Returns the cheapest result across guesses.
GuessRoundResult guess_and_round(const Instance& inst, double eps, const DiscretizationSets& sets,
                                 const GuessOptions& opts, std::mt19937_64& rng);

/// One independent categorical rounding draw from an LP solution, plus the
/// helpers the statistical acceptance checks need.
std::vector<int> round_lp_solution(const DiscretizationSets& sets, const LpSolution& lp,
                                   std::mt19937_64& rng);

struct RcPtasResult {
    Policy policy;
    double cost = 0.0;
    bool found = false;
    bool fallback_used = false;  // single-base representative fallback
    GuessRoundResult best;
};

/// Section-6 pipeline on the single-base representative fallback: sweeps the
/// T~_min grid, discretizes, and keeps the cheapest guess-and-round result.
RcPtasResult rc_ptas_solve(const Instance& inst, double eps, const GuessOptions& opts,
                           std::mt19937_64& rng);

}  // namespace jrp
