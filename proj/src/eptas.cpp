#include "jrp/eptas.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

#include "jrp/eoq.hpp"
#include "jrp/errors.hpp"
#include "jrp/evenly_spaced.hpp"
#include "jrp/oracle.hpp"
#include "jrp/parallel.hpp"
#include "jrp/pow2.hpp"
#include "jrp/relaxations.hpp"

namespace jrp {

double eptas_psi(double eps) {
    const double l = std::log(1.0 / eps);
    return 2.0 / (eps * eps * eps) * l * l;
}

int eptas_segment_count(double eps, const Rational& ratio) {
    const Rational cap = Rational::from_double_exact(1.0 / eps);
    Rational power = ratio;
    int count = 1;
    while (power < cap) {
        power *= ratio;
        ++count;
    }
    return count;
}

Policy cheap_regime_policy(const Instance& inst, double eps, double opt_estimate) {
    inst.validate();
    if (!(eps > 0.0) || !(eps < 0.5))
        throw std::invalid_argument("cheap_regime_policy: eps must lie in (0, 1/2)");
    if (!(opt_estimate > 0.0))
        throw std::invalid_argument("cheap_regime_policy: opt_estimate must be positive");
    if (inst.k0 == 0.0) {
        std::vector<Rational> eoq;
        for (const auto& c : inst.commodities) {
            eoq.push_back(Rational::from_double_exact(eoq_minimizer(c)));
        }
        return Policy::general_exact(eoq);
    }
    const Rational delta = Rational::from_double_exact(inst.k0 / (eps * opt_estimate));
    Policy p;
    p.structure = CommonBaseStructure{delta};
    for (const auto& c : inst.commodities) {
        const Rational t =
            ceil_to_multiple(Rational::from_double_exact(eoq_minimizer(c)), delta);
        p.intervals.push_back(TimeValue::of(t));
    }
    return p;
}

namespace {

struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int v) { return parent[v] == v ? v : parent[v] = find(parent[v]); }
    bool join(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (b < a) std::swap(a, b);
        parent[b] = a;  // keep the smallest position as the root
        return true;
    }
};

void finish_components(Configuration& cfg) {
    const int m = static_cast<int>(cfg.segments.active.size());
    Dsu dsu(m);
    for (const auto& e : cfg.edges) dsu.join(e.a, e.b);
    cfg.component.assign(m, -1);
    cfg.sources.clear();
    std::map<int, int> root_to_component;
    for (int v = 0; v < m; ++v) {
        const int root = dsu.find(v);
        auto [it, inserted] = root_to_component.try_emplace(root, static_cast<int>(cfg.sources.size()));
        if (inserted) cfg.sources.push_back(root);
        cfg.component[v] = it->second;
    }
}

std::vector<std::pair<long long, long long>> coprime_pairs(long long cap) {
    std::vector<std::pair<long long, long long>> pairs;
    for (long long a = 1; a <= cap; ++a) {
        for (long long b = 1; b <= cap; ++b) {
            if (std::gcd(a, b) == 1) pairs.emplace_back(a, b);
        }
    }
    return pairs;
}

}  // namespace

bool for_each_configuration(const Instance& inst, double eps, double opt_estimate,
                            const EnumerationOptions& opts,
                            const std::function<void(const Configuration&)>& fn) {
    inst.validate();
    if (!(eps > 0.0) || !(eps < 0.5))
        throw std::invalid_argument("for_each_configuration: eps must lie in (0, 1/2)");
    if (inst.k0 == 0.0) return true;  // the expensive regime is vacuous

    const Rational ratio = Rational::from_double_snapped(1.0 + eps, opts.snap_denominator_cap);
    const Rational shrink = Rational::from_double_snapped(1.0 - eps, opts.snap_denominator_cap);
    const int segment_count = eptas_segment_count(eps, ratio);
    const double psi = eptas_psi(eps);
    const auto psi_floor = static_cast<long long>(std::floor(psi + 1e-9));
    const std::size_t n = inst.size();

    // T~_min grid: descending snapped (1-eps)-geometric sweep of
    // [K0/opt, (n/eps^2) K0/opt], so some grid point under-estimates the true
    // minimal interval within a factor 1-eps.
    const double lo = inst.k0 / opt_estimate;
    const double hi = static_cast<double>(n) / (eps * eps) * lo;
    std::vector<Rational> t_grid;
    Rational t = Rational::from_double_snapped(hi, opts.snap_denominator_cap);
    const Rational lo_bound = Rational::from_double_exact(lo * (1.0 - 1e-12));
    while (t >= lo_bound) {
        t_grid.push_back(t);
        t *= shrink;
        if (t_grid.size() > 10'000) break;  // eps pathologically close to 0
    }

    const auto pairs = coprime_pairs(psi_floor);

    std::uint64_t emitted = 0;
    bool complete = true;
    Configuration cfg;
    cfg.segments.eps = eps;
    cfg.segments.ratio = ratio;
    cfg.segments.segment_count = segment_count;
    cfg.segments.psi = psi;

    const auto emit = [&]() -> bool {
        if (emitted >= opts.budget) {
            complete = false;
            return false;
        }
        cfg.index = emitted++;
        finish_components(cfg);
        fn(cfg);
        return true;
    };

    // Multiples per forest edge, lexicographic over the coprime pair list.
    const auto assign_multiples = [&](auto&& self, std::size_t edge_index) -> bool {
        if (edge_index == cfg.edges.size()) return emit();
        for (const auto& [ma, mb] : pairs) {
            cfg.edges[edge_index].mult_a = ma;
            cfg.edges[edge_index].mult_b = mb;
            if (!self(self, edge_index + 1)) return false;
        }
        return true;
    };

    for (const auto& t_min : t_grid) {
        cfg.segments.t_min_estimate = t_min;
        const int l = segment_count;
        for (std::uint64_t mask = 0; mask < (1ull << (l - 1)); ++mask) {
            cfg.segments.active.assign(1, 1);
            for (int s = 2; s <= l; ++s) {
                if (mask & (1ull << (s - 2))) cfg.segments.active.push_back(s);
            }
            const int m = static_cast<int>(cfg.segments.active.size());
            std::vector<std::pair<int, int>> all_edges;
            for (int a = 0; a < m; ++a) {
                for (int b = a + 1; b < m; ++b) all_edges.emplace_back(a, b);
            }
            // Acyclic edge subsets in lexicographic order (include/skip).
            const auto forests = [&](auto&& self, std::size_t idx, Dsu dsu) -> bool {
                if (idx == all_edges.size()) {
                    return assign_multiples(assign_multiples, 0);
                }
                if (!self(self, idx + 1, dsu)) return false;  // skip this edge
                Dsu with = dsu;
                if (with.join(all_edges[idx].first, all_edges[idx].second)) {
                    cfg.edges.push_back({all_edges[idx].first, all_edges[idx].second, 1, 1});
                    const bool go = self(self, idx + 1, with);
                    cfg.edges.pop_back();
                    if (!go) return false;
                }
                return true;
            };
            cfg.edges.clear();
            if (!forests(forests, 0, Dsu(m))) return false;
        }
    }
    return complete;
}

RepresentativeSet propagate_representatives(const Configuration& cfg) {
    const auto& seg = cfg.segments;
    const int m = static_cast<int>(seg.active.size());
    RepresentativeSet reps;
    reps.segment = seg.active;
    reps.component = cfg.component;
    reps.sources = cfg.sources;
    reps.t_min_estimate = seg.t_min_estimate;
    reps.eps = seg.eps;
    reps.values.assign(m, Rational(0));

    std::vector<std::vector<std::pair<int, Rational>>> adjacency(m);
    for (const auto& e : cfg.edges) {
        // mult_a * R_a = mult_b * R_b.
        adjacency[e.a].emplace_back(e.b, Rational(e.mult_a) / Rational(e.mult_b));
        adjacency[e.b].emplace_back(e.a, Rational(e.mult_b) / Rational(e.mult_a));
    }
    std::vector<int> stack;
    std::vector<bool> seen(m, false);
    for (int src : cfg.sources) {
        // Source value: the right endpoint of its segment over the estimate.
        reps.values[src] = seg.ratio.pow(seg.active[src]) * seg.t_min_estimate;
        seen[src] = true;
        stack.push_back(src);
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (const auto& [w, factor] : adjacency[v]) {
                if (seen[w]) continue;
                seen[w] = true;
                reps.values[w] = factor * reps.values[v];
                stack.push_back(w);
            }
        }
    }
    return reps;
}

Policy assemble_policy(const Instance& inst, const RepresentativeSet& reps) {
    if (reps.values.empty() || reps.segment.front() != 1)
        throw std::invalid_argument("assemble_policy: segment 1 must be active");
    const double eps = reps.eps;
    const Rational& r1 = reps.values.front();
    const double t_min = reps.t_min_estimate.to_double();

    Policy p;
    RepresentativeSetStructure rs;
    rs.reps = reps.values;
    rs.component = reps.component;
    rs.eps = eps;
    rs.assignment.resize(inst.size());
    for (std::size_t i = 0; i < inst.size(); ++i) {
        const auto& c = inst.commodities[i];
        const double t_max = std::max(t_min / eps, eoq_minimizer(c));
        const Rational large = ceil_to_multiple(Rational::from_double_exact(t_max), r1);
        double best_cost = eoq_cost(c, large.to_double());
        Rational choice = large;
        int assignment = 0;  // the large interval is a multiple of reps[0]
        for (std::size_t r = 0; r < reps.values.size(); ++r) {
            const double cost = eoq_cost(c, reps.values[r].to_double());
            if (cost < best_cost) {
                best_cost = cost;
                choice = reps.values[r];
                assignment = static_cast<int>(r);
            }
        }
        rs.assignment[i] = assignment;
        p.intervals.push_back(TimeValue::of(choice));
    }
    p.structure = std::move(rs);
    return p;
}

JointEstimate component_cost_estimate(const RepresentativeSet& reps, double k0) {
    std::map<int, std::vector<Rational>> by_component;
    for (std::size_t r = 0; r < reps.values.size(); ++r) {
        by_component[reps.component[r]].push_back(reps.values[r]);
    }
    JointEstimate est;
    est.exact_component_sum = Rational(0);
    for (const auto& [id, values] : by_component) {
        (void)id;
        est.exact_component_sum += exact_density(values).value;
    }
    est.estimate = k0 * est.exact_component_sum.to_double();
    est.hi = est.estimate;
    est.lo = (1.0 - reps.eps) * est.estimate;
    return est;
}

bool component_lcm_bounded(const RepresentativeSet& reps, double psi) {
    const Rational psi_r = Rational::from_double_exact(psi);
    std::map<int, std::vector<std::size_t>> members;
    for (std::size_t r = 0; r < reps.values.size(); ++r) members[reps.component[r]].push_back(r);
    for (const auto& [id, positions] : members) {
        Rational lcm = reps.values[positions.front()];
        for (std::size_t p : positions) lcm = rational_lcm(lcm, reps.values[p]);
        const Rational source_value = reps.values[reps.sources[id]];
        const Rational bound = psi_r.pow(static_cast<int>(positions.size()) - 1) * source_value;
        if (lcm > bound) return false;
    }
    return true;
}

EptasResult eptas_solve(const Instance& inst, double eps, const EnumerationOptions& opts) {
    inst.validate();
    if (!(eps > 0.0) || !(eps < 0.5))
        throw std::invalid_argument("eptas_solve: eps must lie in (0, 1/2)");

    const RelaxationSolution relax = solve_variable_base(inst);
    const Pow2Policy pow2 = deterministic_pow2_round(relax.intervals, inst);
    const Policy pow2_policy = pow2_to_policy(pow2);
    const double opt_estimate = total_cost(inst, pow2_policy).total;

    EptasResult result;
    result.cost = std::numeric_limits<double>::infinity();
    const auto consider = [&](Policy p, const std::string& label,
                              const std::optional<Configuration>& cfg = std::nullopt) {
        const double cost = total_cost(inst, p).total;
        if (cost < result.cost) {
            result.cost = cost;
            result.policy = std::move(p);
            result.winner = label;
            result.config = cfg;
        }
    };

    consider(pow2_policy, "pow2");
    consider(evenly_spaced_to_policy(best_evenly_spaced(inst, eps)), "evenly-spaced");
    consider(cheap_regime_policy(inst, eps, opt_estimate), "cheap-regime");

    std::vector<Configuration> batch;
    result.truncated = !for_each_configuration(inst, eps, opt_estimate, opts,
                                               [&](const Configuration& cfg) {
                                                   batch.push_back(cfg);
                                               });

    struct Scored {
        double cost = std::numeric_limits<double>::infinity();
        bool valid = false;
    };
    std::vector<Scored> scored(batch.size());
    parallel::for_each_index(batch.size(), [&](std::size_t idx) {
        const Configuration& cfg = batch[idx];
        const RepresentativeSet reps = propagate_representatives(cfg);
        // Discard guesses whose propagated representatives cannot be a
        // (1 +- eps)-scaling of points inside their segments.
        const double t = cfg.segments.t_min_estimate.to_double();
        const double ratio = cfg.segments.ratio.to_double();
        for (std::size_t r = 0; r < reps.values.size(); ++r) {
            const int ell = reps.segment[r];
            const double v = reps.values[r].to_double();
            const double lo = (1.0 - eps) * std::pow(ratio, ell - 1) * t * (1.0 - 1e-9);
            const double hi = (1.0 + eps) / (1.0 - eps) * std::pow(ratio, ell) * t * (1.0 + 1e-9);
            if (v < lo || v > hi) return;
        }
        const Policy p = assemble_policy(inst, reps);
        const CostBreakdown cost = total_cost(inst, p);  // component-estimate upper end
        scored[idx] = {cost.total, true};
    });

    std::size_t best_idx = batch.size();
    double best_estimate = std::numeric_limits<double>::infinity();
    for (std::size_t idx = 0; idx < batch.size(); ++idx) {
        if (scored[idx].valid && scored[idx].cost < best_estimate) {
            best_estimate = scored[idx].cost;
            best_idx = idx;
        }
    }
    if (best_idx < batch.size()) {
        // Re-verify the winning configuration with the exact union density.
        const RepresentativeSet reps = propagate_representatives(batch[best_idx]);
        Policy p = assemble_policy(inst, reps);
        const double eoq = total_cost(inst, p).eoq;
        const Rational union_density = exact_density(reps.values).value;
        const double exact_total = inst.k0 * union_density.to_double() + eoq;
        if (exact_total < result.cost) {
            result.cost = exact_total;
            result.policy = std::move(p);
            result.winner = "alignment";
            result.config = batch[best_idx];
        }
    }
    return result;
}

DerivedConfiguration derive_configuration(const std::vector<Rational>& reference, double eps,
                                          const Rational& t_min_estimate) {
    if (reference.empty()) throw std::invalid_argument("derive_configuration: empty reference");
    for (const auto& r : reference) {
        if (!r.positive()) throw std::invalid_argument("derive_configuration: intervals must be positive");
    }
    const Rational ratio = Rational::from_double_snapped(1.0 + eps);
    const int segment_count = eptas_segment_count(eps, ratio);
    const double psi = eptas_psi(eps);
    const auto psi_floor = static_cast<long long>(std::floor(psi + 1e-9));

    const Rational t_min = *std::min_element(reference.begin(), reference.end());
    const Rational small_cap = t_min / Rational::from_double_exact(eps);

    DerivedConfiguration out;
    auto& cfg = out.config;
    cfg.segments.t_min_estimate = t_min_estimate;
    cfg.segments.eps = eps;
    cfg.segments.ratio = ratio;
    cfg.segments.segment_count = segment_count;
    cfg.segments.psi = psi;

    // Active segments with first-seen representatives.
    std::map<int, Rational> rep_by_segment;
    for (const auto& value : reference) {
        if (value > small_cap) continue;
        int ell = 1;
        Rational upper = ratio * t_min;
        while (!(value < upper) && ell < segment_count) {
            ++ell;
            upper *= ratio;
        }
        rep_by_segment.try_emplace(ell, value);
    }
    for (const auto& [ell, rep] : rep_by_segment) {
        cfg.segments.active.push_back(ell);
        out.optimal_reps.push_back(rep);
    }

    // Psi-aligned pairs in lexicographic order form the spanning forest.
    const int m = static_cast<int>(cfg.segments.active.size());
    Dsu dsu(m);
    for (int a = 0; a < m; ++a) {
        for (int b = a + 1; b < m; ++b) {
            const Rational q = out.optimal_reps[b] / out.optimal_reps[a];  // = mult_a / mult_b
            if (q.num() > psi_floor || q.den() > psi_floor) continue;
            if (!dsu.join(a, b)) continue;
            ForestEdge e;
            e.a = a;
            e.b = b;
            e.mult_a = q.num().convert_to<long long>();
            e.mult_b = q.den().convert_to<long long>();
            cfg.edges.push_back(e);
        }
    }
    finish_components(cfg);

    out.reps = propagate_representatives(cfg);
    out.reps.gamma.clear();
    for (std::size_t c = 0; c < cfg.sources.size(); ++c) {
        const int src = cfg.sources[c];
        out.reps.gamma.push_back(out.reps.values[src] / out.optimal_reps[src]);
    }
    // The witness must be constant across each component, exactly.
    for (std::size_t r = 0; r < out.reps.values.size(); ++r) {
        const Rational expect = out.reps.gamma[out.reps.component[r]] * out.optimal_reps[r];
        if (expect != out.reps.values[r])
            throw std::logic_error("derive_configuration: non-constant component scaling");
    }
    return out;
}

}  // namespace jrp
