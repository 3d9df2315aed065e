#include "stratcomm/simplex.hpp"

#include <stdexcept>

namespace stratcomm {

namespace {

// Tableau: rows[i] = coefficients | rhs for each constraint, cost = reduced
// cost row (z_j - c_j) with the current objective value at the back.
struct Tableau {
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> cost;
    std::vector<int> basis;
    int nvars;

    void pivot(int pr, int pc) {
        auto& prow = rows[pr];
        const Rational piv = prow[pc];
        for (auto& v : prow) v /= piv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (static_cast<int>(i) == pr || rows[i][pc] == 0) continue;
            const Rational f = rows[i][pc];
            for (std::size_t j = 0; j < prow.size(); ++j) rows[i][j] -= f * prow[j];
        }
        if (cost[pc] != 0) {
            const Rational f = cost[pc];
            for (std::size_t j = 0; j < prow.size(); ++j) cost[j] -= f * prow[j];
        }
        basis[pr] = pc;
    }

    // Returns false when the problem is unbounded.
    bool run() {
        for (;;) {
            int enter = -1;
            for (int j = 0; j < nvars; ++j) {
                if (cost[j] < 0) {  // Bland: smallest improving index
                    enter = j;
                    break;
                }
            }
            if (enter < 0) return true;
            int leave = -1;
            Rational best;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (rows[i][enter] <= 0) continue;
                const Rational ratio = rows[i].back() / rows[i][enter];
                if (leave < 0 || ratio < best ||
                    (ratio == best && basis[i] < basis[leave])) {
                    best = ratio;
                    leave = static_cast<int>(i);
                }
            }
            if (leave < 0) return false;
            pivot(leave, enter);
        }
    }
};

}  // namespace

LpResult solve_equality_lp(const std::vector<std::vector<Rational>>& a,
                           const std::vector<Rational>& b,
                           const std::vector<Rational>& c) {
    const int m = static_cast<int>(a.size());
    const int n = static_cast<int>(c.size());
    for (const auto& row : a)
        if (static_cast<int>(row.size()) != n)
            throw std::invalid_argument("solve_equality_lp: ragged constraint matrix");
    if (static_cast<int>(b.size()) != m)
        throw std::invalid_argument("solve_equality_lp: rhs size mismatch");

    Tableau t;
    t.nvars = n + m;  // originals + artificials
    t.rows.assign(m, std::vector<Rational>(n + m + 1, Rational(0)));
    t.basis.resize(m);
    for (int i = 0; i < m; ++i) {
        const bool flip = b[i] < 0;
        for (int j = 0; j < n; ++j) t.rows[i][j] = flip ? -a[i][j] : a[i][j];
        t.rows[i][n + i] = 1;
        t.rows[i].back() = flip ? -b[i] : b[i];
        t.basis[i] = n + i;
    }

    // Phase 1: maximize -sum(artificials); reduced costs with artificial basis.
    t.cost.assign(n + m + 1, Rational(0));
    for (int j = 0; j < n; ++j) {
        Rational s = 0;
        for (int i = 0; i < m; ++i) s += t.rows[i][j];
        t.cost[j] = -s;
    }
    {
        Rational s = 0;
        for (int i = 0; i < m; ++i) s += t.rows[i].back();
        t.cost.back() = -s;
    }
    if (!t.run()) throw std::logic_error("solve_equality_lp: phase 1 unbounded");
    if (t.cost.back() != 0) return {LpStatus::infeasible, Rational(0), {}};

    // Drive artificials out of the basis; rows that cannot pivot are redundant.
    std::vector<bool> drop(m, false);
    for (int i = 0; i < m; ++i) {
        if (t.basis[i] < n) continue;
        int pc = -1;
        for (int j = 0; j < n; ++j) {
            if (t.rows[i][j] != 0) {
                pc = j;
                break;
            }
        }
        if (pc >= 0)
            t.pivot(i, pc);
        else
            drop[i] = true;
    }
    {
        std::vector<std::vector<Rational>> rows;
        std::vector<int> basis;
        for (int i = 0; i < m; ++i) {
            if (drop[i]) continue;
            t.rows[i].erase(t.rows[i].begin() + n, t.rows[i].begin() + n + m);
            rows.push_back(std::move(t.rows[i]));
            basis.push_back(t.basis[i]);
        }
        t.rows = std::move(rows);
        t.basis = std::move(basis);
        t.nvars = n;
    }

    // Phase 2 reduced costs: z_j - c_j with the current basis.
    t.cost.assign(n + 1, Rational(0));
    for (int j = 0; j <= n; ++j) {
        Rational z = 0;
        for (std::size_t i = 0; i < t.rows.size(); ++i) {
            const int bi = t.basis[i];
            if (c[bi] != 0) z += c[bi] * t.rows[i][j == n ? t.rows[i].size() - 1 : j];
        }
        if (j < n)
            t.cost[j] = z - c[j];
        else
            t.cost.back() = z;
    }
    if (!t.run()) return {LpStatus::unbounded, Rational(0), {}};

    LpResult r;
    r.status = LpStatus::optimal;
    r.objective = t.cost.back();
    r.x.assign(n, Rational(0));
    for (std::size_t i = 0; i < t.rows.size(); ++i) r.x[t.basis[i]] = t.rows[i].back();
    return r;
}

}  // namespace stratcomm
