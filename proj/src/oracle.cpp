#include "jrp/oracle.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>

#include "jrp/errors.hpp"

namespace jrp {

namespace mp = boost::multiprecision;

namespace {

void require_positive(const std::vector<Rational>& intervals) {
    if (intervals.empty()) throw std::invalid_argument("oracle: need at least one interval");
    for (const auto& t : intervals) {
        if (!t.positive()) throw std::invalid_argument("oracle: intervals must be positive");
    }
}

}  // namespace

std::uint64_t count_joint_orders(const std::vector<Rational>& intervals, const Rational& horizon,
                                 Convention convention, const OracleLimits& limits) {
    require_positive(intervals);
    if (horizon.num() < 0) throw std::invalid_argument("oracle: horizon must be >= 0");
    if (horizon.is_zero()) return convention == Convention::closed ? 1 : 0;

    // Rescale onto a common integer grid: with D = lcm of all denominators,
    // interval i becomes the integer u_i and the horizon becomes W.
    BigInt scale = horizon.den();
    for (const auto& t : intervals) scale = mp::lcm(scale, t.den());
    std::vector<BigInt> steps;
    steps.reserve(intervals.size());
    BigInt all_gcd = horizon.num() * (scale / horizon.den());
    for (const auto& t : intervals) {
        steps.push_back(t.num() * (scale / t.den()));
        all_gcd = mp::gcd(all_gcd, steps.back());
    }
    BigInt w = horizon.num() * (scale / horizon.den());
    if (all_gcd > 1) {
        for (auto& u : steps) u /= all_gcd;
        w /= all_gcd;
    }

    BigInt expected = 0;
    for (const auto& u : steps) expected += w / u + 1;
    if (expected > limits.max_points) {
        throw budget_error("count_joint_orders: point budget exceeded (" + expected.str() +
                           " > " + std::to_string(limits.max_points) + ")");
    }

    const bool half_open = convention == Convention::half_open;
    if (w <= BigInt(std::numeric_limits<std::int64_t>::max())) {
        const auto wi = w.convert_to<std::int64_t>();
        std::vector<std::int64_t> points;
        points.reserve(expected.convert_to<std::size_t>());
        for (const auto& u : steps) {
            const auto ui = u.convert_to<std::int64_t>();
            for (std::int64_t m = 0; m <= wi; m += ui) {
                if (half_open && m == wi) break;
                points.push_back(m);
                if (m > wi - ui) break;  // avoid overflow on the increment
            }
        }
        std::sort(points.begin(), points.end());
        points.erase(std::unique(points.begin(), points.end()), points.end());
        return points.size();
    }

    std::set<BigInt> points;  // slow path for horizons beyond 64-bit scale
    for (const auto& u : steps) {
        for (BigInt m = 0; m <= w; m += u) {
            if (half_open && m == w) break;
            points.insert(m);
        }
    }
    return points.size();
}

DensityResult exact_density(const std::vector<Rational>& intervals, const OracleLimits& limits) {
    require_positive(intervals);
    const std::size_t n = intervals.size();
    if (n > limits.max_subset_n) {
        throw budget_error("exact_density: " + std::to_string(n) + " intervals exceed the 2^" +
                           std::to_string(limits.max_subset_n) + "-term subset cap");
    }

    // Depth-first over nonempty subsets carrying the running lcm, so each
    // subset costs a single lcm update.
    Rational total(0);
    std::uint64_t terms = 0;
    const auto descend = [&](auto&& self, std::size_t next, const Rational& lcm_so_far,
                             int parity) -> void {
        for (std::size_t i = next; i < n; ++i) {
            const Rational m = rational_lcm(lcm_so_far, intervals[i]);
            ++terms;
            if (parity == 0)
                total += m.inverse();
            else
                total -= m.inverse();
            self(self, i + 1, m, parity ^ 1);
        }
    };
    for (std::size_t i = 0; i < n; ++i) {
        ++terms;
        total += intervals[i].inverse();
        descend(descend, i + 1, intervals[i], 1);
    }
    return {total, terms};
}

Rational pair_density(const Rational& t_min, const Rational& t_f) {
    if (!t_min.positive() || !t_f.positive())
        throw std::invalid_argument("pair_density: intervals must be positive");
    return t_min.inverse() + t_f.inverse() - rational_lcm(t_min, t_f).inverse();
}

Rational empirical_density(const std::vector<Rational>& intervals, std::uint64_t periods,
                           const OracleLimits& limits) {
    require_positive(intervals);
    if (periods == 0) throw std::invalid_argument("empirical_density: periods must be >= 1");
    Rational period = intervals.front();
    for (std::size_t i = 1; i < intervals.size(); ++i) period = rational_lcm(period, intervals[i]);
    const Rational horizon = period * Rational(static_cast<long long>(periods));
    const std::uint64_t count =
        count_joint_orders(intervals, horizon, Convention::half_open, limits);
    return Rational(static_cast<long long>(count)) / horizon;
}

}  // namespace jrp
