#include "jrp/resource.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "jrp/eoq.hpp"
#include "jrp/errors.hpp"
#include "jrp/oracle.hpp"
#include "jrp/pow2.hpp"

namespace jrp {

Classification classify_commodities(const Instance& inst, const RelaxationSolution& relax) {
    if (relax.intervals.size() != inst.size())
        throw std::invalid_argument("classify_commodities: size mismatch");
    Classification c;
    const double threshold = relax.t_min * (8.0 / 7.0) * (1.0 + 1e-12);
    for (std::size_t i = 0; i < inst.size(); ++i) {
        const double cost = eoq_cost(inst.commodities[i], relax.intervals[i]);
        if (relax.intervals[i] <= threshold) {
            c.small.push_back(static_cast<int>(i));
            c.c_small += cost;
        } else {
            c.large.push_back(static_cast<int>(i));
            c.c_large += cost;
        }
    }
    return c;
}

double resource_utilization(const Instance& inst, const std::vector<double>& intervals) {
    if (!inst.resources) return 0.0;
    const auto& res = *inst.resources;
    double worst = 0.0;
    for (std::size_t d = 0; d < res.beta.size(); ++d) {
        double load = 0.0;
        for (std::size_t i = 0; i < intervals.size(); ++i) load += res.alpha[d][i] / intervals[i];
        worst = std::max(worst, load / res.beta[d]);
    }
    return worst;
}

namespace {

Policy shift_onto_grid(const Instance& inst, const RelaxationSolution& relax, double delta) {
    const Rational grid = Rational::from_double_exact(delta);
    std::vector<BigInt> multipliers;
    multipliers.reserve(inst.size());
    for (double t : relax.intervals) {
        multipliers.push_back((Rational::from_double_exact(t) / grid).ceil());
    }
    return Policy::common_base(grid, multipliers);
}

}  // namespace

Policy right_shift_policy(const Instance& inst, const RelaxationSolution& relax) {
    return shift_onto_grid(inst, relax, relax.t_min * (8.0 / 7.0));
}

Policy shift_policy_with_draw(const Instance& inst, const RelaxationSolution& relax, double u) {
    if (!(u >= 0.0) || !(u < std::log(2.0) * (1.0 + 1e-12)))
        throw std::invalid_argument("shift_policy_with_draw: u must lie in [0, ln 2)");
    return shift_onto_grid(inst, relax, relax.t_min * std::exp(-u));
}

Policy randomized_shift_policy(const Instance& inst, const RelaxationSolution& relax,
                               std::mt19937_64& rng) {
    const double u01 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return shift_policy_with_draw(inst, relax, u01 * std::log(2.0));
}

RcSolveResult rc_solve(const Instance& inst, int trials, std::mt19937_64& rng) {
    inst.validate();
    if (!inst.resources) throw std::invalid_argument("rc_solve: instance has no resource rows");
    if (trials < 1) throw std::invalid_argument("rc_solve: need at least one trial");

    const RelaxationSolution relax = solve_rc(inst);
    RcSolveResult out;
    out.opt_rc = relax.value;

    Policy right = right_shift_policy(inst, relax);
    out.right_shift_cost = total_cost(inst, right).total;
    out.policy = std::move(right);
    out.cost = out.right_shift_cost;

    double sum_min = 0.0;
    for (int t = 0; t < trials; ++t) {
        Policy drawn = randomized_shift_policy(inst, relax, rng);
        const double cost = total_cost(inst, drawn).total;
        sum_min += std::min(out.right_shift_cost, cost);
        if (cost < out.cost) {
            out.cost = cost;
            out.policy = std::move(drawn);
        }
    }
    out.mean_min_ratio = sum_min / static_cast<double>(trials) / relax.value;
    return out;
}

DiscretizationSets discretize(const Instance& inst, double eps, const RepresentativeSet& reps,
                              const DiscretizeOptions& opts) {
    inst.validate();
    if (reps.values.empty() || reps.segment.front() != 1)
        throw std::invalid_argument("discretize: segment 1 must be active");
    const std::size_t n = inst.size();
    const Rational& r1 = reps.values.front();
    const double t_min = reps.t_min_estimate.to_double();
    const double large_floor = t_min / eps;

    DiscretizationSets out;
    out.reps = reps;
    out.eps = eps;
    out.t_lb.assign(n, 0.0);
    out.sets.resize(n);

    for (std::size_t i = 0; i < n; ++i) {
        auto& list = out.sets[i];
        for (const auto& r : reps.values) {
            list.push_back({r, DiscretizationCandidate::Tag::representative, 0});
        }
        if (inst.resources) {
            for (std::size_t d = 0; d < inst.resources->beta.size(); ++d) {
                out.t_lb[i] = std::max(out.t_lb[i],
                                       inst.resources->alpha[d][i] / inst.resources->beta[d]);
            }
        }
        if (out.t_lb[i] > 0.0) {
            // (1+eps)-geometric grid over [T_lb, (n/eps) T_lb], rounded up onto
            // the segment-1 representative; only points past (1/eps) T~_min
            // matter, smaller ones are covered by the representatives.
            const double top = static_cast<double>(n) / eps * out.t_lb[i];
            double point = out.t_lb[i];
            for (int p = 1; point < top * (1.0 + eps); ++p, point *= 1.0 + eps) {
                if (point < large_floor) continue;
                const Rational value = ceil_to_multiple(Rational::from_double_exact(point), r1);
                list.push_back({value, DiscretizationCandidate::Tag::grid, p});
            }
        }
        const double t_max = std::max(large_floor, eoq_minimizer(inst.commodities[i]));
        list.push_back({ceil_to_multiple(Rational::from_double_exact(t_max), r1),
                        DiscretizationCandidate::Tag::large_cap, 0});

        // Dedupe identical values, keeping the first provenance tag.
        std::vector<DiscretizationCandidate> unique;
        for (const auto& cand : list) {
            bool seen = false;
            for (const auto& kept : unique) seen = seen || kept.value == cand.value;
            if (!seen) unique.push_back(cand);
        }
        if (unique.size() > opts.per_commodity_cap) unique.resize(opts.per_commodity_cap);
        list = std::move(unique);
    }
    return out;
}

namespace {

struct PairRef {
    int commodity;
    int candidate;
};

struct GuessSpace {
    std::vector<PairRef> forceable;               // heavy or expensive pairs
    std::vector<std::vector<bool>> heavy;         // [d][column]
    std::vector<bool> expensive;                  // [column]
};

}  // namespace

std::vector<int> round_lp_solution(const DiscretizationSets& sets, const LpSolution& lp,
                                   std::mt19937_64& rng) {
    std::vector<int> picks(sets.sets.size(), 0);
    std::size_t col = 0;
    for (std::size_t i = 0; i < sets.sets.size(); ++i) {
        const std::size_t width = sets.sets[i].size();
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        double acc = 0.0;
        int pick = static_cast<int>(width) - 1;
        for (std::size_t k = 0; k < width; ++k) {
            acc += std::max(0.0, lp.x[col + k]);
            if (u < acc) {
                pick = static_cast<int>(k);
                break;
            }
        }
        picks[i] = pick;
        col += width;
    }
    return picks;
}

GuessRoundResult guess_and_round(const Instance& inst, double eps, const DiscretizationSets& sets,
                                 const GuessOptions& opts, std::mt19937_64& rng) {
    inst.validate();
    const std::size_t n = inst.size();
    const std::size_t d_count = inst.constraint_count();
    if (sets.sets.size() != n) throw std::invalid_argument("guess_and_round: set count mismatch");

    double opt_estimate = opts.opt_estimate;
    if (opt_estimate <= 0.0) {
        // Any upper bound on the discrete optimum works as the expensive-pair
        // scale; the deterministic power-of-2 policy is always available.
        const RelaxationSolution base = inst.resources ? solve_rc(inst) : solve_variable_base(inst);
        opt_estimate = total_cost(inst, right_shift_policy(inst, base)).total;
    }
    const double delta = opts.heavy_delta > 0.0
                             ? opts.heavy_delta
                             : std::pow(eps, 4) / std::max<double>(1, d_count * d_count);
    const double expensive_threshold = opts.expensive_threshold > 0.0
                                           ? opts.expensive_threshold
                                           : std::pow(eps, 4) * opt_estimate;

    // Flatten candidate columns.
    std::vector<std::size_t> col_base(n);
    std::size_t cols = 0;
    for (std::size_t i = 0; i < n; ++i) {
        col_base[i] = cols;
        cols += sets.sets[i].size();
    }

    GuessSpace space;
    space.heavy.assign(d_count, std::vector<bool>(cols, false));
    space.expensive.assign(cols, false);
    std::vector<double> col_cost(cols), col_rate(cols);
    std::vector<int> col_commodity(cols);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < sets.sets[i].size(); ++k) {
            const std::size_t col = col_base[i] + k;
            const double t = sets.sets[i][k].value.to_double();
            col_cost[col] = eoq_cost(inst.commodities[i], t);
            col_rate[col] = 1.0 / t;
            col_commodity[col] = static_cast<int>(i);
            bool forceable = false;
            for (std::size_t d = 0; d < d_count; ++d) {
                const double load = inst.resources->alpha[d][i] / t;
                if (load > delta * inst.resources->beta[d]) {
                    space.heavy[d][col] = true;
                    forceable = true;
                }
            }
            if (col_cost[col] > expensive_threshold) {
                space.expensive[col] = true;
                forceable = true;
            }
            if (forceable) space.forceable.push_back({static_cast<int>(i), static_cast<int>(k)});
        }
    }

    const auto build_model = [&](const std::vector<std::size_t>& forced, bool plain) {
        LpModel model;
        model.cols = cols;
        model.objective = col_cost;
        model.fixings.assign(cols, std::nullopt);
        // Forced pairs take value 1; all other heavy/expensive pairs take 0.
        // The plain guess carries no fixings at all.
        std::vector<bool> is_forced(cols, false);
        for (std::size_t f : forced) {
            const PairRef& p = space.forceable[f];
            is_forced[col_base[p.commodity] + p.candidate] = true;
        }
        for (std::size_t col = 0; col < cols && !plain; ++col) {
            bool constrained = space.expensive[col];
            for (std::size_t d = 0; d < d_count && !constrained; ++d) {
                constrained = space.heavy[d][col];
            }
            if (!constrained) continue;
            model.fixings[col] = is_forced[col] ? 1.0 : 0.0;
        }
        for (std::size_t i = 0; i < n; ++i) {
            LpRow row;
            row.coeff.assign(cols, 0.0);
            for (std::size_t k = 0; k < sets.sets[i].size(); ++k) row.coeff[col_base[i] + k] = 1.0;
            row.rhs = 1.0;
            model.equalities.push_back(std::move(row));
        }
        for (std::size_t d = 0; d < d_count; ++d) {
            LpRow row;
            row.coeff.assign(cols, 0.0);
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t k = 0; k < sets.sets[i].size(); ++k) {
                    row.coeff[col_base[i] + k] = inst.resources->alpha[d][i] * col_rate[col_base[i] + k];
                }
            }
            row.rhs = (1.0 + eps) * inst.resources->beta[d];
            model.inequalities.push_back(std::move(row));
        }
        return model;
    };

    GuessRoundResult best;
    best.cost = std::numeric_limits<double>::infinity();
    const Rational scale = Rational::from_double_exact(1.0 + 3.0 * eps);

    const auto try_guess = [&](const std::vector<std::size_t>& forced, bool plain) {
        ++best.guesses_tried;
        LpModel model = build_model(forced, plain);
        LpSolution lp = solve_lp(model);
        if (!lp.feasible) return;

        RoundingStats stats;
        std::vector<int> accepted;
        for (int trial = 0; trial < opts.retries; ++trial) {
            const std::vector<int> picks = round_lp_solution(sets, lp, rng);
            ++stats.trials;
            double cost = 0.0;
            for (std::size_t i = 0; i < n; ++i) cost += col_cost[col_base[i] + picks[i]];
            bool cost_ok = cost <= (1.0 + eps) * lp.objective * (1.0 + 1e-12);
            bool feasible_ok = true;
            for (std::size_t d = 0; d < d_count && feasible_ok; ++d) {
                double load = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    load += inst.resources->alpha[d][i] * col_rate[col_base[i] + picks[i]];
                }
                feasible_ok = load <= (1.0 + 3.0 * eps) * inst.resources->beta[d] * (1.0 + 1e-12);
            }
            if (!cost_ok) ++stats.cost_over;
            if (!feasible_ok) ++stats.violation_over;
            if (cost_ok && feasible_ok && accepted.empty()) {
                accepted = picks;
                stats.accepted_trial = trial;
                break;  // the Lemma event occurred; no need for more draws
            }
        }
        if (accepted.empty()) return;

        // Scale by 1+3eps: the accepted draw was (1+3eps)-feasible, so the
        // scaled policy is feasible outright. The representative structure is
        // scaled with it, keeping every interval an exact multiple.
        Policy p;
        RepresentativeSetStructure rs;
        for (const auto& r : sets.reps.values) rs.reps.push_back(r * scale);
        rs.component = sets.reps.component;
        rs.eps = sets.eps;
        rs.assignment.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const auto& cand = sets.sets[i][accepted[i]];
            rs.assignment[i] =
                cand.tag == DiscretizationCandidate::Tag::representative ? accepted[i] : 0;
            p.intervals.push_back(TimeValue::of(cand.value * scale));
        }
        p.structure = std::move(rs);
        const double cost = total_cost(inst, p).total;
        if (cost < best.cost) {
            best.found = true;
            best.cost = cost;
            best.policy = std::move(p);
            best.stats = stats;
            best.plain_guess = plain;
            best.heavy_selected.assign(d_count, 0);
            best.expensive_selected = 0;
            for (std::size_t i = 0; i < n; ++i) {
                const std::size_t col = col_base[i] + accepted[i];
                for (std::size_t d = 0; d < d_count; ++d) {
                    if (space.heavy[d][col]) ++best.heavy_selected[d];
                }
                if (space.expensive[col]) ++best.expensive_selected;
            }
            best.lp_model = std::move(model);
            best.lp = std::move(lp);
        }
    };

    // The plain relaxation first, then proper guesses in increasing
    // cardinality (the empty fixing set leads). A guess forces at most one
    // pair per commodity.
    std::uint64_t used = 1;
    try_guess({}, /*plain=*/true);
    const std::size_t f_count = space.forceable.size();
    std::vector<std::size_t> combo;
    const auto enumerate = [&](auto&& self, std::size_t start, std::size_t remaining) -> bool {
        if (remaining == 0) {
            if (used++ >= opts.guess_budget) return false;
            try_guess(combo, /*plain=*/false);
            return true;
        }
        for (std::size_t f = start; f + remaining <= f_count; ++f) {
            bool clash = false;
            for (std::size_t chosen : combo) {
                clash = clash || space.forceable[chosen].commodity == space.forceable[f].commodity;
            }
            if (clash) continue;
            combo.push_back(f);
            const bool go = self(self, f + 1, remaining - 1);
            combo.pop_back();
            if (!go) return false;
        }
        return true;
    };
    for (std::size_t cardinality = 0; cardinality <= std::min(f_count, n); ++cardinality) {
        combo.clear();
        if (!enumerate(enumerate, 0, cardinality)) {
            best.guess_budget_exhausted = true;
            break;
        }
    }

    if (!best.found) {
        best.diagnosis = "no guess produced an accepted rounding after " +
                         std::to_string(best.guesses_tried) + " guesses (budget " +
                         std::to_string(opts.guess_budget) + ", " +
                         std::to_string(f_count) + " forceable pairs)";
    }
    return best;
}

RcPtasResult rc_ptas_solve(const Instance& inst, double eps, const GuessOptions& opts,
                           std::mt19937_64& rng) {
    inst.validate();
    if (!(eps > 0.0) || !(eps < 0.5))
        throw std::invalid_argument("rc_ptas_solve: eps must lie in (0, 1/2)");

    double opt_estimate = opts.opt_estimate;
    if (opt_estimate <= 0.0) {
        if (inst.resources) {
            std::mt19937_64 est_rng(rng());
            opt_estimate = rc_solve(inst, 16, est_rng).cost;
        } else {
            const RelaxationSolution relax = solve_variable_base(inst);
            opt_estimate = total_cost(inst, pow2_to_policy(deterministic_pow2_round(
                                                relax.intervals, inst))).total;
        }
    }

    RcPtasResult out;
    out.fallback_used = true;  // single-base representatives
    out.cost = std::numeric_limits<double>::infinity();
    if (inst.k0 == 0.0) {
        // Degenerate joint cost: a single tiny base still carries the grid.
        double t_small = std::numeric_limits<double>::infinity();
        for (const auto& c : inst.commodities) t_small = std::min(t_small, eoq_minimizer(c));
        RepresentativeSet reps;
        reps.segment = {1};
        reps.t_min_estimate = Rational::from_double_snapped(t_small * eps);
        reps.values = {reps.t_min_estimate};
        reps.component = {0};
        reps.sources = {0};
        reps.eps = eps;
        GuessOptions guess_opts = opts;
        guess_opts.opt_estimate = opt_estimate;
        GuessRoundResult r = guess_and_round(inst, eps, discretize(inst, eps, reps), guess_opts, rng);
        if (r.found) {
            out.found = true;
            out.cost = r.cost;
            out.policy = r.policy;
            out.best = std::move(r);
        }
        return out;
    }

    const Rational ratio = Rational::from_double_snapped(1.0 + eps);
    const Rational shrink = Rational::from_double_snapped(1.0 - eps);
    const double lo = inst.k0 / opt_estimate;
    const double hi = static_cast<double>(inst.size()) / (eps * eps) * lo;
    Rational t = Rational::from_double_snapped(hi);
    const Rational lo_bound = Rational::from_double_exact(lo * (1.0 - 1e-12));
    std::vector<Rational> grid;
    while (t >= lo_bound && grid.size() < 200) {
        grid.push_back(t);
        t *= shrink;
    }

    GuessOptions guess_opts = opts;
    guess_opts.opt_estimate = opt_estimate;
    guess_opts.guess_budget = std::max<std::uint64_t>(1, opts.guess_budget / std::max<std::size_t>(1, grid.size()));
    for (const auto& t_min : grid) {
        RepresentativeSet reps;
        reps.segment = {1};
        reps.t_min_estimate = t_min;
        reps.values = {ratio * t_min};
        reps.component = {0};
        reps.sources = {0};
        reps.eps = eps;
        GuessRoundResult r = guess_and_round(inst, eps, discretize(inst, eps, reps), guess_opts, rng);
        if (r.found && r.cost < out.cost) {
            out.found = true;
            out.cost = r.cost;
            out.policy = r.policy;
            out.best = std::move(r);
        }
    }
    return out;
}

}  // namespace jrp
