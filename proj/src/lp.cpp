#include "barycentra/lp.hpp"

namespace barycentra::lp {

namespace {

struct Tableau {
    std::size_t cols = 0;          // variable columns; rhs lives at index `cols`
    std::vector<Vec> rows;
    std::vector<std::size_t> basis;
    Vec obj;                        // reduced costs; obj[cols] is the objective value

    void pivot(std::size_t r, std::size_t c) {
        const Rational inv = 1 / rows[r][c];
        for (auto& v : rows[r]) v *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            const Rational f = rows[i][c];
            for (std::size_t k = 0; k <= cols; ++k) rows[i][k] -= f * rows[r][k];
        }
        if (obj[c] != 0) {
            const Rational f = obj[c];
            for (std::size_t k = 0; k <= cols; ++k) obj[k] -= f * rows[r][k];
        }
        basis[r] = c;
    }

    // false when the objective is unbounded
    bool optimize(std::size_t usable_cols) {
        for (;;) {
            std::size_t enter = usable_cols;
            for (std::size_t j = 0; j < usable_cols; ++j)
                if (obj[j] < 0) {
                    enter = j;
                    break;
                }
            if (enter == usable_cols) return true;
            std::size_t leave = rows.size();
            Rational best;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (rows[i][enter] <= 0) continue;
                const Rational ratio = rows[i][cols] / rows[i][enter];
                if (leave == rows.size() || ratio < best ||
                    (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == rows.size()) return false;
            pivot(leave, enter);
        }
    }
};

}  // namespace

Solution solve(const Problem& problem) {
    const std::size_t m = problem.a.size();
    const std::size_t n = problem.c.size();
    Solution out;

    if (m == 0) {
        for (const auto& cj : problem.c)
            if (cj > 0) {
                out.status = Status::Unbounded;
                return out;
            }
        out.status = Status::Optimal;
        out.z.assign(n, 0);
        return out;
    }

    // phase 1: artificial basis, maximize -(sum of artificials)
    Tableau t;
    t.cols = n + m;
    t.rows.assign(m, Vec(t.cols + 1, 0));
    t.basis.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const bool flip = problem.b[i] < 0;
        for (std::size_t j = 0; j < n; ++j) t.rows[i][j] = flip ? -problem.a[i][j] : problem.a[i][j];
        t.rows[i][n + i] = 1;
        t.rows[i][t.cols] = flip ? -problem.b[i] : problem.b[i];
        t.basis[i] = n + i;
    }
    t.obj.assign(t.cols + 1, 0);
    for (std::size_t i = 0; i < m; ++i) t.obj[n + i] = 1;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k <= t.cols; ++k) t.obj[k] -= t.rows[i][k];
    t.optimize(t.cols);
    if (t.obj[t.cols] != 0) return out;  // infeasible

    // drive remaining artificials out of the basis; drop redundant rows
    for (std::size_t i = 0; i < t.rows.size();) {
        if (t.basis[i] < n) {
            ++i;
            continue;
        }
        std::size_t j = 0;
        while (j < n && t.rows[i][j] == 0) ++j;
        if (j < n) {
            t.pivot(i, j);
            ++i;
        } else {
            t.rows.erase(t.rows.begin() + static_cast<std::ptrdiff_t>(i));
            t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(i));
        }
    }

    // phase 2 on the original columns
    Tableau p;
    p.cols = n;
    p.basis = t.basis;
    for (const auto& row : t.rows) {
        Vec r(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(n));
        r.push_back(row[t.cols]);
        p.rows.push_back(std::move(r));
    }
    p.obj.assign(n + 1, 0);
    for (std::size_t j = 0; j < n; ++j) p.obj[j] = -problem.c[j];
    for (std::size_t i = 0; i < p.rows.size(); ++i) {
        const Rational f = p.obj[p.basis[i]];
        if (f == 0) continue;
        for (std::size_t k = 0; k <= n; ++k) p.obj[k] -= f * p.rows[i][k];
    }
    if (!p.optimize(n)) {
        out.status = Status::Unbounded;
        return out;
    }
    out.status = Status::Optimal;
    out.z.assign(n, 0);
    for (std::size_t i = 0; i < p.rows.size(); ++i) out.z[p.basis[i]] = p.rows[i][n];
    out.objective = p.obj[n];
    return out;
}

std::optional<Vec> feasible_point(const Matrix& a, const Vec& b) {
    const std::size_t n = a.empty() ? 0 : a.front().size();
    const auto sol = solve({a, b, Vec(n, 0)});
    if (sol.status != Status::Optimal) return std::nullopt;
    return sol.z;
}

}  // namespace barycentra::lp
