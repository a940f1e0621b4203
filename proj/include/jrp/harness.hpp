#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "jrp/instance.hpp"

namespace jrp {

struct GeneratorParams {
    int n_min = 2, n_max = 6;
    double k_lo = 0.1, k_hi = 10.0;    // per-commodity ordering cost, log-uniform
    double h_lo = 0.1, h_hi = 10.0;    // holding coefficient, log-uniform
    double k0_lo = 0.5, k0_hi = 20.0;  // joint ordering cost, log-uniform
    int resource_rows = 0;             // D; 0 disables resources
    double alpha_density = 1.0;        // probability an alpha entry is positive
    double violation_prob = 1.0;       // chance a row binds at the unconstrained optimum
};

/// Draws a random instance. Resource capacities are scaled against the
/// unconstrained EOQ consumption so each row binds with violation_prob.
Instance generate_instance(const GeneratorParams& params, std::mt19937_64& rng);

/// Uniform double in [0, 1) from the raw engine; fixed bit recipe so streams
/// are identical across platforms.
double uniform01(std::mt19937_64& rng);
double log_uniform(std::mt19937_64& rng, double lo, double hi);

struct ExperimentSpec {
    GeneratorParams gen;
    int instances = 10;
    std::vector<std::string> algos;  // pow2, fixed-base, evenly, eptas, rc, rc-ptas
    std::vector<double> epsilons = {0.5};
    std::uint64_t seed = 1;
    int trials = 64;            // randomized-shift draws for rc
    std::uint64_t budget = 100'000;
    std::string out;            // path prefix; empty disables file output
};

struct ResultRow {
    int instance_id = 0;
    std::string algo;
    double eps = 0.0;
    double cost = 0.0;
    double lower_bound = 0.0;
    double ratio = 0.0;
    double runtime_ms = 0.0;
    std::string flags;
    bool error = false;
    std::string error_msg;
};

/// Runs every (instance, algorithm, epsilon) cell; rows are computed
/// concurrently but always reported in (instance, algo, eps) order, and the
/// full table is a pure function of the spec (runtime column aside).
/// Individual solver failures become flagged rows, never aborts.
std::vector<ResultRow> run_experiment(const ExperimentSpec& spec);

std::string rows_to_csv(const std::vector<ResultRow>& rows);
std::string rows_to_json(const std::vector<ResultRow>& rows);
std::string summarize(const std::vector<ResultRow>& rows);

}  // namespace jrp
