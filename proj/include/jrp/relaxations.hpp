#pragma once

#include <optional>
#include <vector>

#include "jrp/instance.hpp"

namespace jrp {

/// Optimal solution of one of the convex relaxations. t_min lower-bounds all
/// intervals; value lower-bounds the long-run cost of every policy on the
/// same instance (every feasible policy satisfies J(T) >= K0 / T_min).
struct RelaxationSolution {
    double t_min = 0.0;
    std::vector<double> intervals;
    double value = 0.0;
    double kkt_residual = 0.0;
};

/// Variable-base convex relaxation with an optional floor on the common base:
///   min K0/T_min + sum_i (K_i/T_i + H_i T_i)   s.t.  T_i >= T_min >= floor.
/// Solved exactly by scanning the EOQ-minimizer breakpoints: on each segment
/// the clamped commodities yield a closed-form optimum in T_min.
RelaxationSolution solve_variable_base(const Instance& inst,
                                       std::optional<double> floor = std::nullopt);

struct BarrierOptions {
    double mu_initial = 1.0;
    double mu_shrink = 0.2;
    double newton_tol = 1e-10;
    int newton_cap = 500;
};

/// Resource-constrained convex relaxation (adds sum_i alpha_id / T_i <= beta_d).
/// Solved in y_i = 1/T_i coordinates by log-barrier damped Newton descent.
/// Falls back to solve_variable_base when no resource rows are present.
RelaxationSolution solve_rc(const Instance& inst, const BarrierOptions& opts = {});

/// Small dense LP:  min c.x  s.t.  equality rows, inequality rows (<=),
/// optional per-variable fixings, x >= 0.
struct LpRow {
    std::vector<double> coeff;
    double rhs = 0.0;
};

struct LpModel {
    std::size_t cols = 0;
    std::vector<double> objective;
    std::vector<LpRow> equalities;
    std::vector<LpRow> inequalities;
    std::vector<std::optional<double>> fixings;  // empty or per-column
};

struct LpSolution {
    bool feasible = false;
    std::vector<double> x;
    double objective = 0.0;
    bool used_exact_fallback = false;
};

/// Two-phase dense simplex with Bland's rule. When floating pivots stall
/// (iteration counter past the cycling cap) the model is re-solved in exact
/// rational arithmetic. Infeasibility is reported, not thrown: a wrong
/// guess upstream is an expected outcome.
LpSolution solve_lp(const LpModel& model);

}  // namespace jrp
