#include <algorithm>
#include <stdexcept>
#include <vector>

#include "jrp/errors.hpp"
#include "jrp/rational.hpp"
#include "jrp/relaxations.hpp"

namespace jrp {

namespace {

constexpr std::uint64_t kCycleCap = 10'000;

struct stalled {};  // floating pivots degenerated; retry exactly

template <class Num>
struct Scalar;

template <>
struct Scalar<double> {
    static double zero() { return 0.0; }
    static double from(double x) { return x; }
    static double to_double(double x) { return x; }
    static bool is_neg(double x) { return x < -1e-9; }
    static bool is_pos(double x) { return x > 1e-9; }
};

template <>
struct Scalar<Rational> {
    static Rational zero() { return Rational(0); }
    static Rational from(double x) { return Rational::from_double_exact(x); }
    static double to_double(const Rational& x) { return x.to_double(); }
    static bool is_neg(const Rational& x) { return x.num() < 0; }
    static bool is_pos(const Rational& x) { return x.num() > 0; }
};

// Dense tableau over rows x (vars + 1); the last column is the rhs. The cost
// row is carried separately. Bland's rule on both the entering and leaving
// choices guarantees termination in exact arithmetic.
template <class Num>
class Tableau {
public:
    Tableau(std::vector<std::vector<Num>> rows, std::vector<int> basis)
        : rows_(std::move(rows)), basis_(std::move(basis)) {}

    // Minimizes cost.x over the current feasible tableau. Returns false when
    // unbounded. cost has one entry per variable.
    bool minimize(std::vector<Num>& cost, Num& cost_rhs, std::uint64_t& iterations) {
        const std::size_t vars = rows_.empty() ? cost.size() : rows_[0].size() - 1;
        // Price out the basic variables.
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const int b = basis_[r];
            if (Scalar<Num>::is_neg(cost[b]) || Scalar<Num>::is_pos(cost[b])) {
                reduce_cost_row(cost, cost_rhs, r, cost[b]);
            }
        }
        while (true) {
            if (++iterations > kCycleCap) throw stalled{};
            int entering = -1;
            for (std::size_t j = 0; j < vars; ++j) {
                if (Scalar<Num>::is_neg(cost[j])) {
                    entering = static_cast<int>(j);
                    break;
                }
            }
            if (entering < 0) return true;
            int leaving = -1;
            Num best_ratio = Scalar<Num>::zero();
            for (std::size_t r = 0; r < rows_.size(); ++r) {
                const Num& pivot = rows_[r][entering];
                if (!Scalar<Num>::is_pos(pivot)) continue;
                Num ratio = rows_[r].back() / pivot;
                const bool better = leaving < 0 || ratio < best_ratio ||
                                    (!(best_ratio < ratio) && basis_[r] < basis_[leaving]);
                if (better) {
                    leaving = static_cast<int>(r);
                    best_ratio = ratio;
                }
            }
            if (leaving < 0) return false;  // unbounded
            pivot(leaving, entering);
            reduce_cost_row(cost, cost_rhs, leaving, cost[entering]);
        }
    }

    const std::vector<std::vector<Num>>& rows() const { return rows_; }
    const std::vector<int>& basis() const { return basis_; }

    // Forces artificial variables (indices >= first_artificial) out of the
    // basis where possible; rows left with an artificial basis are redundant.
    void expel_artificials(int first_artificial) {
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            if (basis_[r] < first_artificial) continue;
            int replacement = -1;
            for (int j = 0; j < first_artificial; ++j) {
                if (Scalar<Num>::is_pos(rows_[r][j]) || Scalar<Num>::is_neg(rows_[r][j])) {
                    replacement = j;
                    break;
                }
            }
            if (replacement >= 0) pivot(static_cast<int>(r), replacement);
        }
    }

private:
    void pivot(int r, int c) {
        const Num p = rows_[r][c];
        for (auto& v : rows_[r]) v = v / p;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (static_cast<int>(i) == r) continue;
            const Num f = rows_[i][c];
            if (!Scalar<Num>::is_pos(f) && !Scalar<Num>::is_neg(f)) continue;
            for (std::size_t j = 0; j < rows_[i].size(); ++j) {
                rows_[i][j] = rows_[i][j] - f * rows_[r][j];
            }
        }
        basis_[r] = c;
    }

    void reduce_cost_row(std::vector<Num>& cost, Num& cost_rhs, std::size_t r, Num factor) {
        for (std::size_t j = 0; j + 1 < rows_[r].size(); ++j) {
            cost[j] = cost[j] - factor * rows_[r][j];
        }
        cost_rhs = cost_rhs - factor * rows_[r].back();
    }

    std::vector<std::vector<Num>> rows_;
    std::vector<int> basis_;
};

template <class Num>
LpSolution solve_lp_impl(const LpModel& model) {
    const std::size_t n = model.cols;
    if (model.objective.size() != n) throw std::invalid_argument("solve_lp: objective size mismatch");
    std::vector<std::optional<double>> fixings = model.fixings;
    fixings.resize(n);

    std::vector<std::size_t> active;  // free columns after substitution
    for (std::size_t j = 0; j < n; ++j) {
        if (!fixings[j]) active.push_back(j);
    }
    double fixed_cost = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        if (fixings[j]) fixed_cost += model.objective[j] * *fixings[j];
    }

    struct StdRow {
        std::vector<Num> a;
        Num rhs;
        bool is_eq;
    };
    std::vector<StdRow> std_rows;
    const auto add_row = [&](const LpRow& row, bool is_eq) {
        if (row.coeff.size() != n) throw std::invalid_argument("solve_lp: row size mismatch");
        StdRow out;
        double rhs = row.rhs;
        for (std::size_t j = 0; j < n; ++j) {
            if (fixings[j]) rhs -= row.coeff[j] * *fixings[j];
        }
        out.rhs = Scalar<Num>::from(rhs);
        out.a.reserve(active.size());
        for (std::size_t j : active) out.a.push_back(Scalar<Num>::from(row.coeff[j]));
        out.is_eq = is_eq;
        std_rows.push_back(std::move(out));
    };
    for (const auto& row : model.equalities) add_row(row, true);
    for (const auto& row : model.inequalities) add_row(row, false);

    const std::size_t m = std_rows.size();
    const std::size_t n_slack = model.inequalities.size();
    const std::size_t total_structural = active.size() + n_slack;
    // Layout: [active columns][slacks][artificials][rhs].
    std::vector<std::vector<Num>> rows;
    std::vector<int> basis(m, -1);
    std::vector<std::size_t> artificial_rows;
    std::size_t slack_index = 0;
    for (std::size_t r = 0; r < m; ++r) {
        auto& sr = std_rows[r];
        std::vector<Num> row(total_structural, Scalar<Num>::zero());
        for (std::size_t j = 0; j < active.size(); ++j) row[j] = sr.a[j];
        Num slack_sign = Scalar<Num>::from(1.0);
        if (!sr.is_eq) {
            row[active.size() + slack_index] = Scalar<Num>::from(1.0);
        }
        const bool negative_rhs = Scalar<Num>::is_neg(sr.rhs);
        if (negative_rhs) {
            for (auto& v : row) v = Scalar<Num>::zero() - v;
            sr.rhs = Scalar<Num>::zero() - sr.rhs;
            slack_sign = Scalar<Num>::from(-1.0);
        }
        row.push_back(sr.rhs);
        rows.push_back(std::move(row));
        if (!sr.is_eq && !Scalar<Num>::is_neg(slack_sign - Scalar<Num>::from(1.0)) &&
            !Scalar<Num>::is_pos(slack_sign - Scalar<Num>::from(1.0))) {
            basis[r] = static_cast<int>(active.size() + slack_index);
        } else {
            artificial_rows.push_back(r);
        }
        if (!sr.is_eq) ++slack_index;
    }
    std::size_t n_art = artificial_rows.size();
    for (std::size_t k = 0; k < n_art; ++k) {
        const std::size_t r = artificial_rows[k];
        for (auto& row : rows) row.insert(row.end() - 1, Scalar<Num>::zero());
        rows[r][total_structural + k] = Scalar<Num>::from(1.0);
        basis[r] = static_cast<int>(total_structural + k);
    }
    const std::size_t total_vars = total_structural + n_art;

    Tableau<Num> tab(std::move(rows), std::move(basis));
    std::uint64_t iterations = 0;

    LpSolution result;
    if (n_art > 0) {
        std::vector<Num> phase1(total_vars, Scalar<Num>::zero());
        for (std::size_t k = 0; k < n_art; ++k) phase1[total_structural + k] = Scalar<Num>::from(1.0);
        Num phase1_rhs = Scalar<Num>::zero();
        if (!tab.minimize(phase1, phase1_rhs, iterations))
            throw std::logic_error("solve_lp: phase-1 objective unbounded");
        // Residual infeasibility is -phase1_rhs after pricing.
        const Num infeas = Scalar<Num>::zero() - phase1_rhs;
        if (Scalar<Num>::is_pos(infeas)) {
            result.feasible = false;
            return result;
        }
        tab.expel_artificials(static_cast<int>(total_structural));
    }

    std::vector<Num> cost(total_vars, Scalar<Num>::zero());
    for (std::size_t j = 0; j < active.size(); ++j) {
        cost[j] = Scalar<Num>::from(model.objective[active[j]]);
    }
    // Artificials must never re-enter; give them a prohibitive cost.
    for (std::size_t k = 0; k < n_art; ++k) {
        cost[total_structural + k] = Scalar<Num>::from(1e30);
    }
    Num cost_rhs = Scalar<Num>::zero();
    if (!tab.minimize(cost, cost_rhs, iterations))
        throw std::logic_error("solve_lp: objective unbounded");

    std::vector<Num> x(total_vars, Scalar<Num>::zero());
    for (std::size_t r = 0; r < tab.rows().size(); ++r) {
        x[tab.basis()[r]] = tab.rows()[r].back();
    }
    result.feasible = true;
    result.x.assign(n, 0.0);
    for (std::size_t j = 0; j < active.size(); ++j) {
        result.x[active[j]] = Scalar<Num>::to_double(x[j]);
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (fixings[j]) result.x[j] = *fixings[j];
    }
    result.objective = fixed_cost;
    for (std::size_t j = 0; j < n; ++j) result.objective += model.objective[j] * result.x[j];
    return result;
}

}  // namespace

LpSolution solve_lp(const LpModel& model) {
    try {
        return solve_lp_impl<double>(model);
    } catch (const stalled&) {
        LpSolution s = solve_lp_impl<Rational>(model);
        s.used_exact_fallback = true;
        return s;
    }
}

}  // namespace jrp
