#include "jrp/evenly_spaced.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "jrp/eoq.hpp"
#include "jrp/oracle.hpp"
#include "jrp/parallel.hpp"
#include "jrp/relaxations.hpp"

namespace jrp {

std::vector<double> EvenlySpacedPolicy::intervals() const {
    std::vector<double> out(multipliers.size());
    for (std::size_t i = 0; i < multipliers.size(); ++i) {
        out[i] = static_cast<double>(multipliers[i]) * delta;
    }
    return out;
}

Policy evenly_spaced_to_policy(const EvenlySpacedPolicy& p) {
    const Rational delta = Rational::from_double_exact(p.delta);
    std::vector<BigInt> multipliers;
    multipliers.reserve(p.multipliers.size());
    for (long long m : p.multipliers) multipliers.push_back(BigInt(m));
    return Policy::common_base(delta, multipliers);
}

namespace {

long long snap_multiplier(const Commodity& c, double delta) {
    const double target = eoq_minimizer(c) / delta;
    const long long lo = std::max<long long>(1, static_cast<long long>(std::floor(target)));
    const long long hi = std::max<long long>(lo, static_cast<long long>(std::ceil(target)));
    const double cost_lo = eoq_cost(c, static_cast<double>(lo) * delta);
    const double cost_hi = eoq_cost(c, static_cast<double>(hi) * delta);
    return cost_lo <= cost_hi ? lo : hi;
}

double spacing_cost(const Instance& inst, double delta, std::vector<long long>& multipliers) {
    double cost = inst.k0 / delta;
    for (std::size_t i = 0; i < inst.size(); ++i) {
        multipliers[i] = snap_multiplier(inst.commodities[i], delta);
        cost += eoq_cost(inst.commodities[i], static_cast<double>(multipliers[i]) * delta);
    }
    return cost;
}

}  // namespace

EvenlySpacedPolicy best_evenly_spaced(const Instance& inst, double eps) {
    inst.validate();
    if (!(eps > 0.0) || !(eps < 0.5))
        throw std::invalid_argument("best_evenly_spaced: eps must lie in (0, 1/2)");

    EvenlySpacedPolicy out;
    out.multipliers.resize(inst.size());

    if (inst.k0 == 0.0) {
        // No joint cost: any spacing works, so pick one fine enough that every
        // snapped interval sits within (1 +- eps) of its EOQ minimizer.
        double t_small = std::numeric_limits<double>::infinity();
        for (const auto& c : inst.commodities) t_small = std::min(t_small, eoq_minimizer(c));
        out.delta = t_small * eps / (1.0 + eps);
        out.k0_degenerate = true;
        spacing_cost(inst, out.delta, out.multipliers);
        return out;
    }

    const RelaxationSolution relax = solve_variable_base(inst);
    const Pow2Policy pow2 = deterministic_pow2_round(relax.intervals, inst);
    const double opt_estimate = total_cost(inst, pow2_to_policy(pow2)).total;

    const double lo = inst.k0 / opt_estimate;
    const double hi = lo / eps;
    std::vector<double> grid;
    for (double d = lo; d <= hi * (1.0 + 1e-12); d *= 1.0 + eps) grid.push_back(d);

    struct Candidate {
        double cost = std::numeric_limits<double>::infinity();
        double delta = 0.0;
    };
    std::vector<Candidate> sweep(grid.size());
    parallel::for_each_index(grid.size(), [&](std::size_t g) {
        std::vector<long long> mult(inst.size());
        double delta = grid[g];
        double cost = spacing_cost(inst, delta, mult);
        Candidate best{cost, delta};
        // Bracket refinement: for the current multipliers the cost is convex
        // in delta with stationary point sqrt((K0 + sum K_i/k_i)/(sum H_i k_i)).
        for (int round = 0; round < 3; ++round) {
            double k_num = inst.k0, h_den = 0.0;
            for (std::size_t i = 0; i < inst.size(); ++i) {
                k_num += inst.commodities[i].k / static_cast<double>(mult[i]);
                h_den += inst.commodities[i].h * static_cast<double>(mult[i]);
            }
            const double stationary = std::sqrt(k_num / h_den);
            if (!(stationary > 0.0) || stationary == delta) break;
            delta = stationary;
            cost = spacing_cost(inst, delta, mult);
            if (cost < best.cost) best = {cost, delta};
        }
        sweep[g] = best;
    });

    Candidate winner;
    for (const auto& c : sweep) {
        if (c.cost < winner.cost || (c.cost == winner.cost && c.delta < winner.delta)) winner = c;
    }
    out.delta = winner.delta;
    spacing_cost(inst, out.delta, out.multipliers);
    return out;
}

Pow2Policy construct_policy_A(const std::vector<double>& reference, std::mt19937_64& rng) {
    return randomized_pow2_round(reference, rng);
}

EvenlySpacedPolicy construct_policy_B(const Instance& inst, const std::vector<double>& reference,
                                      int spacing_divisor) {
    if (reference.size() != inst.size())
        throw std::invalid_argument("construct_policy_B: reference size mismatch");
    if (spacing_divisor < 1) throw std::invalid_argument("construct_policy_B: divisor must be >= 1");
    double t_min = std::numeric_limits<double>::infinity();
    for (double t : reference) {
        if (!(t > 0.0)) throw std::invalid_argument("construct_policy_B: reference must be positive");
        t_min = std::min(t_min, t);
    }
    EvenlySpacedPolicy out;
    out.delta = t_min / static_cast<double>(spacing_divisor);
    out.multipliers.resize(inst.size());
    for (std::size_t i = 0; i < inst.size(); ++i) {
        const double target = reference[i] / out.delta;
        const long long lo = std::max<long long>(1, static_cast<long long>(std::floor(target)));
        const long long hi = std::max<long long>(lo, static_cast<long long>(std::ceil(target)));
        const double cost_lo = eoq_cost(inst.commodities[i], static_cast<double>(lo) * out.delta);
        const double cost_hi = eoq_cost(inst.commodities[i], static_cast<double>(hi) * out.delta);
        out.multipliers[i] = cost_lo <= cost_hi ? lo : hi;
    }
    return out;
}

ThetaMixture theta_mixture_bound(double theta) {
    if (!(theta >= 0.0) || !(theta <= 1.0))
        throw std::invalid_argument("theta_mixture_bound: theta must lie in [0, 1]");
    const double tb = 1.0 / (std::sqrt(2.0) * std::log(2.0));
    const double neighbour = 0.5 * (std::sqrt(4.0 / 3.0) + std::sqrt(3.0 / 4.0));
    ThetaMixture m;
    m.joint_coeff = theta * tb * (5.0 / 6.0) + (1.0 - theta) * 2.5;
    m.eoq_coeff = theta * tb + (1.0 - theta) * neighbour;
    return m;
}

bool verify_claim_4_2(const Rational& t_min, const Rational& t_f) {
    if (!t_min.positive() || !t_f.positive())
        throw std::invalid_argument("verify_claim_4_2: intervals must be positive");
    if (t_f < t_min) throw std::invalid_argument("verify_claim_4_2: need t_f >= t_min");
    if (!(t_f < Rational(3) * t_min))
        throw std::invalid_argument("verify_claim_4_2: need t_f < 3 t_min");
    if (divides(t_min, t_f))
        throw std::invalid_argument("verify_claim_4_2: t_f must be fractional w.r.t. t_min");
    return pair_density(t_min, t_f) >= Rational(6, 5) / t_min;
}

}  // namespace jrp
