#pragma once

#include <cstddef>
#include <vector>

#include "hypercert/errors.hpp"
#include "hypercert/rational.hpp"

namespace hypercert {

enum class LPStatus { Optimal, Infeasible, Unbounded };
enum class RowSense { LE, EQ, GE };

template <class F>
struct LPRow {
    std::vector<F> a;  // dense coefficients, one per variable
    RowSense sense;
    F rhs;
};

template <class F>
struct LPResult {
    LPStatus status = LPStatus::Optimal;
    F objective{};
    std::vector<F> x;
    std::vector<F> dual;  // one multiplier per input row, y = c_B B^{-1}
};

/// Exact comparisons for rational LPs.
struct ExactOps {
    static bool is_zero(const Rat& v) { return v == 0; }
    static bool is_neg(const Rat& v) { return v < 0; }
    static bool is_pos(const Rat& v) { return v > 0; }
};

/// Tolerance-based comparisons for the float fallback (1e-9 pivoting threshold).
struct FloatOps {
    static constexpr double eps = 1e-9;
    static bool is_zero(double v) { return v > -eps && v < eps; }
    static bool is_neg(double v) { return v < -eps; }
    static bool is_pos(double v) { return v > eps; }
};

// Dense two-phase simplex, minimizing c.x over Ax {<=,=,>=} b, x >= 0.
// Bland's rule on both entering and leaving choices: deterministic and
// termination-safe on the highly degenerate covering LPs this project builds.
// Every row gets an artificial column; the duals are read off the artificial
// reduced costs in the final tableau.
template <class F, class Ops>
class DenseSimplex {
public:
    LPResult<F> solve(std::size_t num_vars, const std::vector<F>& c,
                      const std::vector<LPRow<F>>& rows) {
        const std::size_t m = rows.size();
        nv_ = num_vars;
        ns_ = 0;
        for (const auto& r : rows)
            if (r.sense != RowSense::EQ) ++ns_;
        na_ = m;
        cols_ = nv_ + ns_ + na_;

        tab_.assign(m, std::vector<F>(cols_ + 1, F(0)));
        basis_.assign(m, 0);
        art_col_.assign(m, 0);

        std::size_t slack_at = nv_;
        for (std::size_t i = 0; i < m; ++i) {
            const auto& r = rows[i];
            require(r.a.size() == nv_, Err::BadParams, "LP row width mismatch");
            bool flip = Ops::is_neg(r.rhs);
            for (std::size_t j = 0; j < nv_; ++j) tab_[i][j] = flip ? -r.a[j] : r.a[j];
            tab_[i][cols_] = flip ? -r.rhs : r.rhs;
            RowSense sense = r.sense;
            if (flip && sense != RowSense::EQ)
                sense = (sense == RowSense::LE) ? RowSense::GE : RowSense::LE;
            if (sense != RowSense::EQ) {
                tab_[i][slack_at] = (sense == RowSense::LE) ? F(1) : F(-1);
                ++slack_at;
            }
            std::size_t art = nv_ + ns_ + i;
            tab_[i][art] = F(1);
            art_col_[i] = art;
            basis_[i] = art;
        }

        // Phase 1: minimize the artificial total.
        std::vector<F> phase1(cols_, F(0));
        for (std::size_t i = 0; i < m; ++i) phase1[art_col_[i]] = F(1);
        build_cost_row(phase1);
        run(/*allow_artificial=*/true);
        F art_total = current_objective(phase1);
        LPResult<F> res;
        if (Ops::is_pos(art_total)) {
            res.status = LPStatus::Infeasible;
            return res;
        }
        pivot_out_artificials();

        // Phase 2: the real objective, artificial columns barred from entering.
        std::vector<F> cost(cols_, F(0));
        for (std::size_t j = 0; j < nv_; ++j) cost[j] = c[j];
        build_cost_row(cost);
        if (!run(/*allow_artificial=*/false)) {
            res.status = LPStatus::Unbounded;
            return res;
        }

        res.status = LPStatus::Optimal;
        res.x.assign(nv_, F(0));
        for (std::size_t i = 0; i < m; ++i)
            if (basis_[i] < nv_) res.x[basis_[i]] = tab_[i][cols_];
        res.objective = current_objective(cost);
        res.dual.assign(m, F(0));
        for (std::size_t i = 0; i < m; ++i) {
            // artificial column j: reduced cost 0 - y_i, so y_i = -cost_row[j];
            // rows that were flipped to keep rhs nonnegative flip the dual back.
            F y = -cost_row_[art_col_[i]];
            res.dual[i] = Ops::is_neg(rows[i].rhs) ? F(-y) : y;
        }
        return res;
    }

private:
    std::size_t nv_ = 0, ns_ = 0, na_ = 0, cols_ = 0;
    std::vector<std::vector<F>> tab_;
    std::vector<std::size_t> basis_;
    std::vector<std::size_t> art_col_;
    std::vector<F> cost_row_;  // reduced costs for current cost vector
    std::vector<F> active_cost_;

    void build_cost_row(const std::vector<F>& cost) {
        active_cost_ = cost;
        cost_row_.assign(cols_ + 1, F(0));
        for (std::size_t j = 0; j <= cols_; ++j) {
            F v = (j < cols_) ? cost[j] : F(0);
            for (std::size_t i = 0; i < tab_.size(); ++i) {
                const F& cb = cost[basis_[i]];
                if (!Ops::is_zero(cb)) v -= cb * tab_[i][j];
            }
            cost_row_[j] = v;
        }
    }

    F current_objective(const std::vector<F>& cost) {
        F z(0);
        for (std::size_t i = 0; i < tab_.size(); ++i) {
            const F& cb = cost[basis_[i]];
            if (!Ops::is_zero(cb)) z += cb * tab_[i][cols_];
        }
        return z;
    }

    // Bland: entering = lowest-index column with negative reduced cost; leaving
    // = min-ratio row, ties by lowest basis index. Returns false on unbounded.
    bool run(bool allow_artificial) {
        const std::size_t m = tab_.size();
        for (;;) {
            std::size_t enter = cols_;
            for (std::size_t j = 0; j < cols_; ++j) {
                if (!allow_artificial && j >= nv_ + ns_) break;
                if (Ops::is_neg(cost_row_[j])) {
                    enter = j;
                    break;
                }
            }
            if (enter == cols_) return true;
            std::size_t leave = m;
            for (std::size_t i = 0; i < m; ++i) {
                if (!Ops::is_pos(tab_[i][enter])) continue;
                if (leave == m) {
                    leave = i;
                    continue;
                }
                F lhs = tab_[i][cols_] * tab_[leave][enter];
                F rhs = tab_[leave][cols_] * tab_[i][enter];
                if (lhs < rhs || (lhs == rhs && basis_[i] < basis_[leave])) leave = i;
            }
            if (leave == m) return false;
            pivot(leave, enter);
        }
    }

    void pivot(std::size_t row, std::size_t col) {
        const std::size_t m = tab_.size();
        F inv = F(1) / tab_[row][col];
        for (std::size_t j = 0; j <= cols_; ++j)
            if (!Ops::is_zero(tab_[row][j])) tab_[row][j] *= inv;
        tab_[row][col] = F(1);
        for (std::size_t i = 0; i < m; ++i) {
            if (i == row) continue;
            F f = tab_[i][col];
            if (Ops::is_zero(f)) continue;
            for (std::size_t j = 0; j <= cols_; ++j)
                if (!Ops::is_zero(tab_[row][j])) tab_[i][j] -= f * tab_[row][j];
            tab_[i][col] = F(0);
        }
        F f = cost_row_[col];
        if (!Ops::is_zero(f)) {
            for (std::size_t j = 0; j <= cols_; ++j)
                if (!Ops::is_zero(tab_[row][j])) cost_row_[j] -= f * tab_[row][j];
            cost_row_[col] = F(0);
        }
        basis_[row] = col;
    }

    // Basic artificials at value zero after phase 1 get exchanged for any
    // structural column with a nonzero entry; fully zero rows are redundant
    // and keep their artificial harmlessly.
    void pivot_out_artificials() {
        for (std::size_t i = 0; i < tab_.size(); ++i) {
            if (basis_[i] < nv_ + ns_) continue;
            for (std::size_t j = 0; j < nv_ + ns_; ++j) {
                if (!Ops::is_zero(tab_[i][j])) {
                    pivot(i, j);
                    break;
                }
            }
        }
    }
};

template <class F, class Ops>
LPResult<F> solve_lp(std::size_t num_vars, const std::vector<F>& c,
                     const std::vector<LPRow<F>>& rows) {
    DenseSimplex<F, Ops> s;
    return s.solve(num_vars, c, rows);
}

inline LPResult<Rat> solve_lp_exact(std::size_t num_vars, const std::vector<Rat>& c,
                                    const std::vector<LPRow<Rat>>& rows) {
    return solve_lp<Rat, ExactOps>(num_vars, c, rows);
}

inline LPResult<double> solve_lp_float(std::size_t num_vars, const std::vector<double>& c,
                                       const std::vector<LPRow<double>>& rows) {
    return solve_lp<double, FloatOps>(num_vars, c, rows);
}

}  // namespace hypercert
