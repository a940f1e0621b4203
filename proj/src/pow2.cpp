#include "jrp/pow2.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "jrp/eoq.hpp"
#include "jrp/errors.hpp"
#include "jrp/oracle.hpp"
#include "jrp/relaxations.hpp"

namespace jrp {

std::vector<double> Pow2Policy::intervals() const {
    std::vector<double> out(exponents.size());
    for (std::size_t i = 0; i < exponents.size(); ++i) out[i] = value(i);
    return out;
}

double Pow2Policy::value(std::size_t i) const { return std::ldexp(base, exponents[i]); }

namespace {

void require_positive(const std::vector<double>& source) {
    if (source.empty()) throw std::invalid_argument("pow2: empty source vector");
    for (double t : source) {
        if (!(t > 0.0)) throw std::invalid_argument("pow2: source intervals must be positive");
    }
}

Pow2Policy normalize(double raw_base, std::vector<int> ks) {
    const int k_min = *std::min_element(ks.begin(), ks.end());
    Pow2Policy p;
    p.base = std::ldexp(raw_base, k_min);
    p.exponents = std::move(ks);
    for (int& k : p.exponents) k -= k_min;
    return p;
}

void check_rounding_contract(const std::vector<double>& source, const Pow2Policy& p) {
    const double lo = std::exp2(-0.5) * (1.0 - 1e-9);
    const double hi = std::exp2(0.5) * (1.0 + 1e-9);
    for (std::size_t i = 0; i < source.size(); ++i) {
        const double ratio = p.value(i) / source[i];
        if (!(ratio >= lo && ratio <= hi))
            throw std::logic_error("pow2 rounding violated the sqrt(2) ratio bound");
        for (std::size_t j = i + 1; j < source.size(); ++j) {
            const bool src_le = source[i] <= source[j];
            const bool out_le = p.value(i) <= p.value(j);
            if (src_le != out_le && source[i] != source[j] && p.value(i) != p.value(j))
                throw std::logic_error("pow2 rounding violated order preservation");
        }
    }
}

}  // namespace

Pow2Policy pow2_round_with_offset(const std::vector<double>& source, double offset) {
    require_positive(source);
    if (!(offset >= 0.0) || offset >= 1.0)
        throw std::invalid_argument("pow2_round_with_offset: offset must lie in [0, 1)");
    const double t_min = *std::min_element(source.begin(), source.end());
    const double raw_base = t_min * std::exp2(-offset);
    std::vector<int> ks(source.size());
    for (std::size_t i = 0; i < source.size(); ++i) {
        ks[i] = static_cast<int>(std::floor(std::log2(source[i] / t_min) + offset + 0.5));
    }
    Pow2Policy p = normalize(raw_base, std::move(ks));
    check_rounding_contract(source, p);
    return p;
}

Pow2Policy randomized_pow2_round(const std::vector<double>& source, std::mt19937_64& rng) {
    const double offset = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return pow2_round_with_offset(source, offset);
}

Pow2Policy deterministic_pow2_round(const std::vector<double>& source, const Instance& inst) {
    require_positive(source);
    if (source.size() != inst.size())
        throw std::invalid_argument("deterministic_pow2_round: source size mismatch");
    const double t_min = *std::min_element(source.begin(), source.end());
    const std::size_t n = source.size();

    std::vector<double> log_offsets(n);
    for (std::size_t i = 0; i < n; ++i) log_offsets[i] = std::log2(source[i] / t_min);

    // Offsets where some exponent floor(c_i + y + 1/2) jumps.
    std::vector<double> cuts{0.0};
    for (double c : log_offsets) {
        double y = std::ceil(c + 0.5) - (c + 0.5);
        if (y >= 1.0) y -= 1.0;
        if (y > 0.0 && y < 1.0) cuts.push_back(y);
    }
    cuts.push_back(1.0);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    double best_cost = std::numeric_limits<double>::infinity();
    double best_v = t_min;
    std::vector<int> best_ks(n, 0);

    std::vector<int> ks(n);
    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
        const double y_mid = 0.5 * (cuts[s] + cuts[s + 1]);
        for (std::size_t i = 0; i < n; ++i) {
            ks[i] = static_cast<int>(std::floor(log_offsets[i] + y_mid + 0.5));
        }
        const int k_min = *std::min_element(ks.begin(), ks.end());
        // With exponents fixed, F is convex in the free base v = t_min * 2^-y;
        // the segment minimum is the clamped stationary point or an endpoint.
        double k_num = inst.k0 * std::exp2(static_cast<double>(-k_min));
        double h_den = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            k_num += inst.commodities[i].k * std::exp2(static_cast<double>(-ks[i]));
            h_den += inst.commodities[i].h * std::exp2(static_cast<double>(ks[i]));
        }
        const double v_lo = t_min * std::exp2(-cuts[s + 1]);
        const double v_hi = t_min * std::exp2(-cuts[s]);
        double candidates[3] = {v_lo, v_hi, v_hi};
        if (h_den > 0.0 && k_num > 0.0) {
            candidates[2] = std::clamp(std::sqrt(k_num / h_den), v_lo, v_hi);
        }
        for (double v : candidates) {
            const double cost = k_num / v + h_den * v;
            if (cost < best_cost) {
                best_cost = cost;
                best_v = v;
                best_ks = ks;
            }
        }
    }
    return normalize(best_v, std::move(best_ks));
}

Policy pow2_to_policy(const Pow2Policy& p) {
    const Rational base = Rational::from_double_exact(p.base);
    std::vector<BigInt> multipliers;
    multipliers.reserve(p.exponents.size());
    for (int q : p.exponents) multipliers.push_back(BigInt(1) << q);
    return Policy::common_base(base, multipliers);
}

namespace {

bool advance_combination(std::vector<std::size_t>& pick, std::size_t m) {
    const std::size_t c = pick.size();
    for (std::size_t i = c; i-- > 0;) {
        if (pick[i] < m - c + i) {
            ++pick[i];
            for (std::size_t j = i + 1; j < c; ++j) pick[j] = pick[j - 1] + 1;
            return true;
        }
    }
    return false;
}

// Visits every subset of {0..m-1} in increasing cardinality, lexicographic
// within a cardinality. Returns false when the budget ran out first, so small
// representative guesses are always covered before truncation.
template <class Fn>
bool for_each_subset_by_cardinality(std::size_t m, std::uint64_t budget, Fn&& fn) {
    std::uint64_t used = 0;
    for (std::size_t c = 0; c <= m; ++c) {
        std::vector<std::size_t> pick(c);
        std::iota(pick.begin(), pick.end(), std::size_t{0});
        while (true) {
            if (used++ >= budget) return false;
            fn(pick);
            if (pick.empty() || !advance_combination(pick, m)) break;
        }
    }
    return true;
}

}  // namespace

FixedBaseResult fixed_base_solve(const Instance& inst, const Rational& delta, double eps,
                                 const FixedBaseOptions& opts) {
    inst.validate();
    if (!delta.positive()) throw std::invalid_argument("fixed_base_solve: delta must be positive");
    if (!(eps > 0.0) || !(eps < 0.5))
        throw std::invalid_argument("fixed_base_solve: eps must lie in (0, 1/2)");
    const int inv_eps = static_cast<int>(std::ceil(1.0 / eps));
    const std::size_t n = inst.size();

    FixedBaseResult best;
    best.cost = std::numeric_limits<double>::infinity();
    const auto consider = [&](Policy p) {
        const double cost = total_cost(inst, p).total;
        if (cost < best.cost) {
            best.cost = cost;
            best.policy = std::move(p);
        }
    };

    // Case 1: minimal interval rho * delta for some rho <= ceil(1/eps); guess
    // which near-minimal grid points carry a time interval. The large option
    // is a multiple of the minimal grid point, so it adds no joint orders.
    for (int rho = 1; rho <= inv_eps; ++rho) {
        const Rational t_min = Rational(rho) * delta;
        const std::size_t grid_size = static_cast<std::size_t>(rho) * (inv_eps - 1) + 1;
        std::vector<Rational> grid;
        grid.reserve(grid_size);
        for (std::size_t m = 0; m < grid_size; ++m) {
            grid.push_back(t_min + Rational(static_cast<long long>(m)) * delta);
        }
        std::vector<std::vector<double>> grid_cost(n, std::vector<double>(grid_size));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t m = 0; m < grid_size; ++m) {
                grid_cost[i][m] = eoq_cost(inst.commodities[i], grid[m].to_double());
            }
        }
        std::vector<Rational> bars(n);
        std::vector<double> bar_costs(n);
        for (std::size_t i = 0; i < n; ++i) {
            const Rational snapped = ceil_to_multiple(
                Rational::from_double_exact(eoq_minimizer(inst.commodities[i])), t_min);
            const Rational cap = Rational(inv_eps) * t_min;
            bars[i] = snapped < cap ? cap : snapped;
            bar_costs[i] = eoq_cost(inst.commodities[i], bars[i].to_double());
        }

        const std::uint64_t budget =
            grid.size() <= opts.full_grid_limit ? std::numeric_limits<std::uint64_t>::max()
                                                : opts.subset_budget;
        const bool complete = for_each_subset_by_cardinality(
            grid.size() - 1, budget, [&](const std::vector<std::size_t>& pick) {
                std::vector<Rational> reps{grid[0]};
                std::vector<std::size_t> rep_grid_index{0};
                for (std::size_t idx : pick) {
                    reps.push_back(grid[idx + 1]);
                    rep_grid_index.push_back(idx + 1);
                }
                Policy p;
                std::vector<int> assignment(n);
                double eoq_total = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    double best_c = bar_costs[i];
                    Rational choice = bars[i];
                    assignment[i] = 0;  // the bar is a multiple of reps[0]
                    for (std::size_t r = 0; r < reps.size(); ++r) {
                        const double c = grid_cost[i][rep_grid_index[r]];
                        if (c < best_c) {
                            best_c = c;
                            choice = reps[r];
                            assignment[i] = static_cast<int>(r);
                        }
                    }
                    eoq_total += best_c;
                    p.intervals.push_back(TimeValue::of(choice));
                }
                RepresentativeSetStructure rs;
                rs.reps = std::move(reps);
                rs.component.assign(rs.reps.size(), 0);
                rs.assignment = std::move(assignment);
                rs.eps = 0.0;  // one component: the joint term is exact
                p.structure = std::move(rs);
                consider(std::move(p));
            });
        best.truncated = best.truncated || !complete;
    }

    // Case 2: minimal interval beyond the guessing range; round the floored
    // relaxation to powers of two and lift the base onto the delta grid.
    {
        const double floor_value = (Rational(inv_eps) * delta).to_double();
        const RelaxationSolution relax = solve_variable_base(inst, floor_value);
        const Pow2Policy rounded = deterministic_pow2_round(relax.intervals, inst);
        const Rational lifted_base =
            ceil_to_multiple(Rational::from_double_exact(rounded.base), delta);
        std::vector<BigInt> multipliers;
        for (int q : rounded.exponents) multipliers.push_back(BigInt(1) << q);
        consider(Policy::common_base(lifted_base, multipliers));
    }

    return best;
}

}  // namespace jrp
