#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "jrp/eptas.hpp"
#include "jrp/evenly_spaced.hpp"
#include "jrp/harness.hpp"
#include "jrp/oracle.hpp"
#include "jrp/parallel.hpp"
#include "jrp/policy.hpp"
#include "jrp/pow2.hpp"
#include "jrp/relaxations.hpp"
#include "jrp/resource.hpp"
#include "jrp/verify.hpp"

namespace {

using namespace jrp;

int run_solve(const std::string& instance_path, const std::string& algo, double eps,
              const std::string& delta_text, std::uint64_t seed, int trials, std::uint64_t budget,
              const std::string& out_path) {
    std::vector<std::string> warnings;
    const Instance inst = load_instance(instance_path, &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";

    std::mt19937_64 rng(seed);
    Policy policy;
    std::string flags;
    if (algo == "pow2") {
        const RelaxationSolution relax = solve_variable_base(inst);
        policy = pow2_to_policy(deterministic_pow2_round(relax.intervals, inst));
    } else if (algo == "fixed-base") {
        const FixedBaseResult r = fixed_base_solve(inst, Rational::parse(delta_text), eps);
        policy = r.policy;
        if (r.truncated) flags = "budget-truncated";
    } else if (algo == "evenly") {
        const EvenlySpacedPolicy p = best_evenly_spaced(inst, eps);
        policy = evenly_spaced_to_policy(p);
        if (p.k0_degenerate) flags = "k0-degenerate";
    } else if (algo == "eptas") {
        EnumerationOptions opts;
        opts.budget = budget;
        const EptasResult r = eptas_solve(inst, eps, opts);
        policy = r.policy;
        if (r.truncated) flags = "budget-truncated";
        std::cerr << "winner: " << r.winner << "\n";
        if (r.config) {
            std::cerr << "configuration: t_min=" << r.config->segments.t_min_estimate.str()
                      << " active={";
            for (int s : r.config->segments.active) std::cerr << s << ",";
            std::cerr << "} edges=";
            for (const auto& e : r.config->edges) {
                std::cerr << "(" << e.a << "-" << e.b << ":" << e.mult_a << "/" << e.mult_b << ")";
            }
            std::cerr << "\n";
        }
    } else if (algo == "rc") {
        const RcSolveResult r = rc_solve(inst, trials, rng);
        policy = r.policy;
        std::cerr << "OPT(RC) = " << r.opt_rc << ", right-shift cost = " << r.right_shift_cost
                  << ", mean min-ratio = " << r.mean_min_ratio << "\n";
    } else if (algo == "rc-ptas") {
        GuessOptions opts;
        opts.guess_budget = budget;
        const RcPtasResult r = rc_ptas_solve(inst, eps, opts, rng);
        if (!r.found) {
            std::cerr << "error: " << r.best.diagnosis << "\n";
            return 1;
        }
        policy = r.policy;
        if (r.fallback_used) flags = "fallback-used";
    } else {
        std::cerr << "error: unknown algorithm " << algo << "\n";
        return 2;
    }

    const CostBreakdown cost = total_cost(inst, policy);
    const double lb = inst.resources ? solve_rc(inst).value : solve_variable_base(inst).value;
    std::cout.precision(12);
    std::cout << "algo: " << algo << "\n"
              << "joint: " << cost.joint << "\n"
              << "eoq: " << cost.eoq << "\n"
              << "total: " << cost.total << "\n"
              << "lower_bound: " << lb << "\n"
              << "ratio: " << cost.total / lb << "\n";
    if (!flags.empty()) std::cout << "flags: " << flags << "\n";
    const std::string json = policy_to_json(policy);
    if (out_path.empty()) {
        std::cout << json << "\n";
    } else {
        std::ofstream out(out_path);
        out << json;
        std::cout << "policy written to " << out_path << "\n";
    }
    return 0;
}

int run_density(const std::string& policy_path) {
    const Policy policy = load_policy(policy_path);
    const Rational density = exact_density(policy.exact_values()).value;
    std::cout << density.str() << "\n";
    std::cout.precision(15);
    std::cout << density.to_double() << "\n";
    return 0;
}

int run_verify(std::uint64_t seed, bool quick) {
    const auto results = verify::run_all(seed, quick);
    bool all_pass = true;
    for (const auto& r : results) {
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.detail << "\n";
        all_pass = all_pass && r.pass;
    }
    std::cout << (all_pass ? "verification passed" : "verification FAILED") << "\n";
    return all_pass ? 0 : 1;
}

int run_bench(int instances, std::uint64_t seed, const std::string& out, bool quick) {
    ExperimentSpec spec;
    spec.instances = instances;
    spec.algos = {"pow2", "evenly", "eptas", "fixed-base"};
    spec.epsilons = {0.5};
    spec.seed = seed;
    spec.budget = quick ? 2'000 : 50'000;
    spec.out = out;

    const auto timed = [&](const char* threads) {
        setenv("JRP_THREADS", threads, 1);
        const auto start = std::chrono::steady_clock::now();
        auto rows = run_experiment(spec);
        const double ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - start)
                              .count();
        unsetenv("JRP_THREADS");
        return std::pair<std::vector<ResultRow>, double>(std::move(rows), ms);
    };

    auto [serial_rows, serial_ms] = timed("1");
    const int hw = parallel::thread_budget();
    auto [parallel_rows, parallel_ms] = timed(std::to_string(hw).c_str());

    bool identical = serial_rows.size() == parallel_rows.size();
    for (std::size_t i = 0; identical && i < serial_rows.size(); ++i) {
        identical = serial_rows[i].cost == parallel_rows[i].cost &&
                    serial_rows[i].ratio == parallel_rows[i].ratio;
    }
    std::cout << summarize(parallel_rows);
    std::cout << "\nserial (1 thread):    " << serial_ms << " ms\n"
              << "parallel (" << hw << " threads): " << parallel_ms << " ms\n"
              << "speedup:              " << serial_ms / parallel_ms << "x\n"
              << "results identical:    " << (identical ? "yes" : "NO") << "\n";
    return identical ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"joint replenishment policy toolkit"};
    app.require_subcommand(1);

    std::string instance_path, policy_path, algo = "eptas", delta_text = "1", out_path;
    double eps = 0.5;
    std::uint64_t seed = 1, budget = 100'000;
    int trials = 64, instances = 10;
    bool quick = false;

    auto* solve = app.add_subcommand("solve", "construct a replenishment policy");
    solve->add_option("--instance", instance_path, "instance JSON file")->required();
    solve->add_option("--algo", algo, "pow2 | fixed-base | evenly | eptas | rc | rc-ptas");
    solve->add_option("--epsilon", eps, "accuracy parameter in (0, 1/2)");
    solve->add_option("--delta", delta_text, "fixed base as num/den (fixed-base only)");
    solve->add_option("--seed", seed, "random seed");
    solve->add_option("--trials", trials, "randomized-shift draws (rc only)");
    solve->add_option("--budget", budget, "enumeration budget");
    solve->add_option("--out", out_path, "write the policy JSON here");

    auto* density = app.add_subcommand("density", "exact joint-order density of a policy");
    density->add_option("--policy", policy_path, "policy JSON file")->required();

    auto* verify_cmd = app.add_subcommand("verify", "run the module invariant suites");
    verify_cmd->add_option("--seed", seed, "random seed");
    verify_cmd->add_flag("--quick", quick, "smaller sampling counts");

    auto* bench = app.add_subcommand("bench", "benchmark table and serial-vs-parallel comparison");
    bench->add_option("--instances", instances, "generated instances");
    bench->add_option("--seed", seed, "random seed");
    bench->add_option("--out", out_path, "CSV/JSON output path prefix");
    bench->add_flag("--quick", quick, "smaller workload");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) {
            return run_solve(instance_path, algo, eps, delta_text, seed, trials, budget, out_path);
        }
        if (density->parsed()) return run_density(policy_path);
        if (verify_cmd->parsed()) return run_verify(seed, quick);
        if (bench->parsed()) return run_bench(instances, seed, out_path, quick);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
