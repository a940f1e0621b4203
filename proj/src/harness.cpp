#include "jrp/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "jrp/eoq.hpp"
#include "jrp/eptas.hpp"
#include "jrp/errors.hpp"
#include "jrp/evenly_spaced.hpp"
#include "jrp/parallel.hpp"
#include "jrp/policy.hpp"
#include "jrp/pow2.hpp"
#include "jrp/relaxations.hpp"
#include "jrp/resource.hpp"

namespace jrp {

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
    if (!(lo > 0.0) || hi < lo) throw std::invalid_argument("log_uniform: need 0 < lo <= hi");
    return lo * std::exp(uniform01(rng) * std::log(hi / lo));
}

Instance generate_instance(const GeneratorParams& params, std::mt19937_64& rng) {
    Instance inst;
    const int n = params.n_min +
                  static_cast<int>(uniform01(rng) * static_cast<double>(params.n_max - params.n_min + 1));
    inst.k0 = log_uniform(rng, params.k0_lo, params.k0_hi);
    for (int i = 0; i < std::max(1, n); ++i) {
        inst.commodities.push_back(
            {log_uniform(rng, params.k_lo, params.k_hi), log_uniform(rng, params.h_lo, params.h_hi)});
    }
    if (params.resource_rows > 0) {
        Resources res;
        for (int d = 0; d < params.resource_rows; ++d) {
            std::vector<double> row(inst.size(), 0.0);
            bool any = false;
            for (std::size_t i = 0; i < inst.size(); ++i) {
                if (uniform01(rng) < params.alpha_density) {
                    row[i] = log_uniform(rng, 0.1, 10.0);
                    any = true;
                }
            }
            if (!any) row[static_cast<std::size_t>(uniform01(rng) * inst.size())] = 1.0;
            // Consumption of the unconstrained EOQ optimum fixes the scale.
            double load = 0.0;
            for (std::size_t i = 0; i < inst.size(); ++i) {
                load += row[i] / eoq_minimizer(inst.commodities[i]);
            }
            const bool binding = uniform01(rng) < params.violation_prob;
            const double factor = binding ? 0.3 + 0.6 * uniform01(rng)    // beta below the load
                                          : 1.5 + 2.0 * uniform01(rng);   // slack row
            res.alpha.push_back(std::move(row));
            res.beta.push_back(load * factor);
        }
        inst.resources = std::move(res);
    }
    inst.validate();
    return inst;
}

namespace {

struct Cell {
    int instance_id;
    std::string algo;
    double eps;
};

ResultRow solve_cell(const Instance& inst, const Cell& cell, const ExperimentSpec& spec,
                     std::uint64_t cell_seed) {
    ResultRow row;
    row.instance_id = cell.instance_id;
    row.algo = cell.algo;
    row.eps = cell.eps;
    const auto start = std::chrono::steady_clock::now();
    try {
        std::mt19937_64 rng(cell_seed);
        Policy policy;
        std::string flags;
        if (cell.algo == "pow2") {
            const RelaxationSolution relax = solve_variable_base(inst);
            policy = pow2_to_policy(deterministic_pow2_round(relax.intervals, inst));
        } else if (cell.algo == "fixed-base") {
            const FixedBaseResult r = fixed_base_solve(inst, Rational(1), cell.eps);
            policy = r.policy;
            if (r.truncated) flags += "budget-truncated;";
        } else if (cell.algo == "evenly") {
            const EvenlySpacedPolicy p = best_evenly_spaced(inst, cell.eps);
            policy = evenly_spaced_to_policy(p);
            if (p.k0_degenerate) flags += "k0-degenerate;";
        } else if (cell.algo == "eptas") {
            EnumerationOptions opts;
            opts.budget = spec.budget;
            const EptasResult r = eptas_solve(inst, cell.eps, opts);
            policy = r.policy;
            if (r.truncated) flags += "budget-truncated;";
        } else if (cell.algo == "rc") {
            policy = rc_solve(inst, spec.trials, rng).policy;
        } else if (cell.algo == "rc-ptas") {
            GuessOptions opts;
            opts.guess_budget = spec.budget;
            const RcPtasResult r = rc_ptas_solve(inst, cell.eps, opts, rng);
            if (!r.found) throw solver_error("rc-ptas: " + r.best.diagnosis);
            policy = r.policy;
            if (r.fallback_used) flags += "fallback-used;";
        } else {
            throw std::invalid_argument("unknown algorithm: " + cell.algo);
        }
        row.cost = total_cost(inst, policy).total;
        row.lower_bound = inst.resources ? solve_rc(inst).value : solve_variable_base(inst).value;
        row.ratio = row.cost / row.lower_bound;
        row.flags = flags;
    } catch (const std::exception& e) {
        row.error = true;
        row.error_msg = e.what();
    }
    row.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                               start)
                         .count();
    return row;
}

}  // namespace

std::vector<ResultRow> run_experiment(const ExperimentSpec& spec) {
    std::vector<Instance> instances;
    std::mt19937_64 gen_rng(spec.seed);
    for (int i = 0; i < spec.instances; ++i) instances.push_back(generate_instance(spec.gen, gen_rng));

    std::vector<Cell> cells;
    for (int i = 0; i < spec.instances; ++i) {
        for (const auto& algo : spec.algos) {
            for (double eps : spec.epsilons) cells.push_back({i, algo, eps});
        }
    }
    std::vector<ResultRow> rows(cells.size());
    parallel::for_each_index(cells.size(), [&](std::size_t c) {
        rows[c] = solve_cell(instances[cells[c].instance_id], cells[c], spec,
                             parallel::mix_seed(spec.seed, c));
    });

    if (!spec.out.empty()) {
        std::ofstream csv(spec.out + ".csv");
        csv << rows_to_csv(rows);
        std::ofstream js(spec.out + ".json");
        js << rows_to_json(rows);
    }
    return rows;
}

std::string rows_to_csv(const std::vector<ResultRow>& rows) {
    std::ostringstream out;
    out << "instance_id,algo,eps,cost,lower_bound,ratio,runtime_ms,flags,error,error_msg\n";
    out.precision(17);
    for (const auto& r : rows) {
        out << r.instance_id << ',' << r.algo << ',' << r.eps << ',' << r.cost << ','
            << r.lower_bound << ',' << r.ratio << ',' << r.runtime_ms << ',' << r.flags << ','
            << (r.error ? 1 : 0) << ',' << r.error_msg << '\n';
    }
    return out.str();
}

std::string rows_to_json(const std::vector<ResultRow>& rows) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : rows) {
        j.push_back({{"instance_id", r.instance_id},
                     {"algo", r.algo},
                     {"eps", r.eps},
                     {"cost", r.cost},
                     {"lower_bound", r.lower_bound},
                     {"ratio", r.ratio},
                     {"runtime_ms", r.runtime_ms},
                     {"flags", r.flags},
                     {"error", r.error},
                     {"error_msg", r.error_msg}});
    }
    return j.dump(2);
}

std::string summarize(const std::vector<ResultRow>& rows) {
    struct Stats {
        double max_ratio = 0.0, sum_ratio = 0.0;
        int count = 0, errors = 0;
    };
    std::map<std::string, Stats> by_algo;
    for (const auto& r : rows) {
        auto& s = by_algo[r.algo];
        if (r.error) {
            ++s.errors;
            continue;
        }
        s.max_ratio = std::max(s.max_ratio, r.ratio);
        s.sum_ratio += r.ratio;
        ++s.count;
    }
    std::ostringstream out;
    out << "algo            rows  errors  mean_ratio  max_ratio\n";
    for (const auto& [algo, s] : by_algo) {
        out << algo;
        for (std::size_t pad = algo.size(); pad < 16; ++pad) out << ' ';
        out << s.count << "     " << s.errors << "       ";
        out.precision(6);
        out << (s.count > 0 ? s.sum_ratio / s.count : 0.0) << "    " << s.max_ratio << '\n';
    }
    return out.str();
}

}  // namespace jrp
