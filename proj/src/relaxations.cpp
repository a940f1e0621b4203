#include "jrp/relaxations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "jrp/eoq.hpp"
#include "jrp/errors.hpp"

namespace jrp {

namespace {

double segment_objective(const Instance& inst, double t_min, const std::vector<double>& minimizers) {
    double value = inst.k0 > 0.0 ? inst.k0 / t_min : 0.0;
    for (std::size_t i = 0; i < inst.size(); ++i) {
        value += eoq_cost(inst.commodities[i], std::max(t_min, minimizers[i]));
    }
    return value;
}

}  // namespace

RelaxationSolution solve_variable_base(const Instance& inst, std::optional<double> floor) {
    inst.validate();
    if (floor && !(*floor > 0.0)) throw std::invalid_argument("solve_variable_base: floor must be positive");

    std::vector<double> minimizers(inst.size());
    for (std::size_t i = 0; i < inst.size(); ++i) minimizers[i] = eoq_minimizer(inst.commodities[i]);

    const double lo = floor.value_or(0.0);
    std::vector<double> bounds;
    bounds.push_back(lo);
    for (double t : minimizers) {
        if (t > lo) bounds.push_back(t);
    }
    std::sort(bounds.begin(), bounds.end());
    bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());

    double best_t = -1.0, best_value = std::numeric_limits<double>::infinity();
    const auto consider = [&](double t_min) {
        if (!(t_min > 0.0)) return;
        const double v = segment_objective(inst, t_min, minimizers);
        if (v < best_value) {
            best_value = v;
            best_t = t_min;
        }
    };

    // On each breakpoint segment the clamped set is fixed, so the objective is
    // (K0 + sum K_A)/T + (sum H_A) T + const with a closed-form minimizer.
    for (std::size_t s = 0; s < bounds.size(); ++s) {
        const double seg_lo = bounds[s];
        const double seg_hi = s + 1 < bounds.size() ? bounds[s + 1]
                                                    : std::numeric_limits<double>::infinity();
        double k_active = inst.k0, h_active = 0.0;
        for (std::size_t i = 0; i < inst.size(); ++i) {
            if (minimizers[i] <= seg_lo * (1.0 + 1e-15)) {
                k_active += inst.commodities[i].k;
                h_active += inst.commodities[i].h;
            }
        }
        if (seg_lo > 0.0) consider(seg_lo);
        if (std::isfinite(seg_hi)) consider(seg_hi);
        if (h_active > 0.0 && k_active > 0.0) {
            const double stationary = std::sqrt(k_active / h_active);
            consider(std::clamp(stationary, std::max(seg_lo, 1e-300), seg_hi));
        }
    }
    if (best_t <= 0.0) {
        // No positive candidate (K0 = 0, no floor): the problem decouples.
        best_t = *std::min_element(minimizers.begin(), minimizers.end());
        best_value = segment_objective(inst, best_t, minimizers);
    }

    RelaxationSolution out;
    out.t_min = best_t;
    out.value = best_value;
    out.kkt_residual = 0.0;
    out.intervals.resize(inst.size());
    for (std::size_t i = 0; i < inst.size(); ++i) {
        out.intervals[i] = std::max(best_t, minimizers[i]);
    }
    return out;
}

namespace {

// Dense SPD solve via Cholesky; dimensions here are tiny.
bool cholesky_solve(std::vector<std::vector<double>> a, std::vector<double> b,
                    std::vector<double>& x) {
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i) a[i][i] += 1e-13 * (1.0 + std::fabs(a[i][i]));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double sum = a[i][j];
            for (std::size_t k = 0; k < j; ++k) sum -= a[i][k] * a[j][k];
            if (i == j) {
                if (sum <= 0.0) return false;
                a[i][i] = std::sqrt(sum);
            } else {
                a[i][j] = sum / a[j][j];
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        double sum = b[i];
        for (std::size_t k = 0; k < i; ++k) sum -= a[i][k] * x[k];
        x[i] = sum / a[i][i];
    }
    for (std::size_t ii = n; ii > 0; --ii) {
        const std::size_t i = ii - 1;
        double sum = x[i];
        for (std::size_t k = i + 1; k < n; ++k) sum -= a[k][i] * x[k];
        x[i] = sum / a[i][i];
    }
    return true;
}

struct RcProblem {
    const Instance& inst;
    bool has_joint;  // K0 > 0: carry the rate variable y0 >= y_i
    std::size_t n, dim;

    explicit RcProblem(const Instance& inst_)
        : inst(inst_), has_joint(inst_.k0 > 0.0), n(inst_.size()), dim(n + (has_joint ? 1 : 0)) {}

    double objective(const std::vector<double>& y) const {
        double f = has_joint ? inst.k0 * y[n] : 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            f += inst.commodities[i].k * y[i] + inst.commodities[i].h / y[i];
        }
        return f;
    }

    bool interior(const std::vector<double>& y) const {
        for (std::size_t i = 0; i < n; ++i) {
            if (!(y[i] > 0.0)) return false;
            if (has_joint && !(y[n] - y[i] > 0.0)) return false;
        }
        const auto& res = *inst.resources;
        for (std::size_t d = 0; d < res.beta.size(); ++d) {
            double load = 0.0;
            for (std::size_t i = 0; i < n; ++i) load += res.alpha[d][i] * y[i];
            if (!(res.beta[d] - load > 0.0)) return false;
        }
        return true;
    }

    double barrier_value(const std::vector<double>& y, double mu) const {
        double psi = objective(y);
        const auto& res = *inst.resources;
        for (std::size_t d = 0; d < res.beta.size(); ++d) {
            double load = 0.0;
            for (std::size_t i = 0; i < n; ++i) load += res.alpha[d][i] * y[i];
            psi -= mu * std::log(res.beta[d] - load);
        }
        if (has_joint) {
            for (std::size_t i = 0; i < n; ++i) psi -= mu * std::log(y[n] - y[i]);
        }
        return psi;
    }

    void derivatives(const std::vector<double>& y, double mu, std::vector<double>& grad,
                     std::vector<std::vector<double>>& hess) const {
        grad.assign(dim, 0.0);
        hess.assign(dim, std::vector<double>(dim, 0.0));
        for (std::size_t i = 0; i < n; ++i) {
            const auto& c = inst.commodities[i];
            grad[i] += c.k - c.h / (y[i] * y[i]);
            hess[i][i] += 2.0 * c.h / (y[i] * y[i] * y[i]);
        }
        if (has_joint) {
            grad[n] += inst.k0;
            for (std::size_t i = 0; i < n; ++i) {
                const double w = y[n] - y[i];
                grad[i] += mu / w;
                grad[n] -= mu / w;
                const double w2 = mu / (w * w);
                hess[i][i] += w2;
                hess[n][n] += w2;
                hess[i][n] -= w2;
                hess[n][i] -= w2;
            }
        }
        const auto& res = *inst.resources;
        for (std::size_t d = 0; d < res.beta.size(); ++d) {
            double load = 0.0;
            for (std::size_t i = 0; i < n; ++i) load += res.alpha[d][i] * y[i];
            const double s = res.beta[d] - load;
            for (std::size_t i = 0; i < n; ++i) {
                if (res.alpha[d][i] == 0.0) continue;
                grad[i] += mu * res.alpha[d][i] / s;
                for (std::size_t j = 0; j < n; ++j) {
                    if (res.alpha[d][j] == 0.0) continue;
                    hess[i][j] += mu * res.alpha[d][i] * res.alpha[d][j] / (s * s);
                }
            }
        }
    }
};

}  // namespace

RelaxationSolution solve_rc(const Instance& inst, const BarrierOptions& opts) {
    inst.validate();
    if (!inst.resources || inst.resources->beta.empty()) return solve_variable_base(inst);

    const RcProblem prob(inst);
    const auto& res = *inst.resources;
    const std::size_t n = prob.n;

    // Uniform interior start: half of the tightest per-row capacity, capped at
    // the fastest EOQ rate.
    double start = std::numeric_limits<double>::infinity();
    for (std::size_t d = 0; d < res.beta.size(); ++d) {
        double total = 0.0;
        for (double a : res.alpha[d]) total += a;
        if (total > 0.0) start = std::min(start, res.beta[d] / (2.0 * total));
    }
    for (std::size_t i = 0; i < n; ++i) {
        start = std::min(start, 1.0 / eoq_minimizer(inst.commodities[i]));
    }
    std::vector<double> y(prob.dim, start);
    if (prob.has_joint) y[n] = 2.0 * start;

    double mu = opts.mu_initial;
    int newton_steps = 0;
    std::vector<double> grad, step(prob.dim);
    std::vector<std::vector<double>> hess;
    const std::size_t constraint_count = res.beta.size() + (prob.has_joint ? n : 0);

    while (true) {
        for (;;) {
            prob.derivatives(y, mu, grad, hess);
            std::vector<double> rhs(prob.dim);
            for (std::size_t i = 0; i < prob.dim; ++i) rhs[i] = -grad[i];
            if (!cholesky_solve(hess, rhs, step)) {
                throw solver_error("solve_rc: Hessian factorization failed");
            }
            double decrement = 0.0;
            for (std::size_t i = 0; i < prob.dim; ++i) decrement -= grad[i] * step[i];
            const double psi0 = prob.barrier_value(y, mu);
            if (decrement / 2.0 <= opts.newton_tol * (1.0 + std::fabs(psi0))) break;
            if (++newton_steps > opts.newton_cap) {
                throw solver_error("solve_rc: Newton iteration cap exceeded at mu=" +
                                   std::to_string(mu) + ", decrement=" + std::to_string(decrement));
            }
            double t = 1.0;
            std::vector<double> trial(prob.dim);
            for (int back = 0; back < 60; ++back) {
                for (std::size_t i = 0; i < prob.dim; ++i) trial[i] = y[i] + t * step[i];
                if (prob.interior(trial) &&
                    prob.barrier_value(trial, mu) <= psi0 - 0.25 * t * decrement) {
                    break;
                }
                t *= 0.5;
            }
            for (std::size_t i = 0; i < prob.dim; ++i) y[i] += t * step[i];
        }
        const double scale = 1.0 + std::fabs(prob.objective(y));
        if (mu * static_cast<double>(constraint_count) <= 1e-10 * scale) break;
        mu *= opts.mu_shrink;
    }

    RelaxationSolution out;
    out.value = prob.objective(y);
    out.intervals.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.intervals[i] = 1.0 / y[i];
    out.t_min = prob.has_joint ? 1.0 / y[n]
                               : *std::min_element(out.intervals.begin(), out.intervals.end());

    // KKT residual of the original program with the barrier multipliers.
    prob.derivatives(y, mu, grad, hess);
    double stat = 0.0, fgrad = 0.0;
    for (std::size_t i = 0; i < prob.dim; ++i) stat = std::max(stat, std::fabs(grad[i]));
    for (std::size_t i = 0; i < n; ++i) {
        fgrad = std::max(fgrad, std::fabs(inst.commodities[i].k -
                                          inst.commodities[i].h / (y[i] * y[i])));
    }
    const double comp = mu * static_cast<double>(constraint_count) /
                        (1.0 + std::fabs(out.value));
    out.kkt_residual = std::max(stat / (1.0 + fgrad), comp);
    return out;
}

}  // namespace jrp
