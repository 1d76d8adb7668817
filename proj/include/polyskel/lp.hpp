#pragma once

#include "polyskel/rational.hpp"

#include <cstddef>
#include <stdexcept>
#include <variant>
#include <vector>

namespace polyskel {

// Does A.lambda = b admit lambda >= 0?  Dense, exact-rational, phase-1
// simplex with Bland's rule. Systems here are small (m <= n+1 <= 65).
struct FeasibilitySystem {
    std::vector<std::vector<Rat>> a;  // m rows of k entries
    std::vector<Rat> b;               // length m

    std::size_t rows() const { return a.size(); }
    std::size_t cols() const { return a.empty() ? 0 : a[0].size(); }

    void validate() const {
        if (a.empty() || a[0].empty())
            throw std::invalid_argument("FeasibilitySystem: empty system");
        if (b.size() != a.size())
            throw std::invalid_argument("FeasibilitySystem: b length mismatch");
        for (const auto& row : a)
            if (row.size() != a[0].size())
                throw std::invalid_argument("FeasibilitySystem: ragged matrix");
    }
};

struct LpVerdict {
    bool feasible;
    std::vector<Rat> lambda;  // feasible: A.lambda = b, lambda >= 0
    std::vector<Rat> farkas;  // infeasible: y'A <= 0 componentwise, y'b > 0
};

inline bool verify_feasible(const FeasibilitySystem& sys, const std::vector<Rat>& lambda) {
    sys.validate();
    if (lambda.size() != sys.cols()) return false;
    for (const Rat& l : lambda)
        if (l < 0) return false;
    for (std::size_t i = 0; i < sys.rows(); ++i) {
        Rat acc = 0;
        for (std::size_t j = 0; j < sys.cols(); ++j) acc += sys.a[i][j] * lambda[j];
        if (acc != sys.b[i]) return false;
    }
    return true;
}

inline bool verify_farkas(const FeasibilitySystem& sys, const std::vector<Rat>& y) {
    sys.validate();
    if (y.size() != sys.rows()) return false;
    for (std::size_t j = 0; j < sys.cols(); ++j) {
        Rat acc = 0;
        for (std::size_t i = 0; i < sys.rows(); ++i) acc += y[i] * sys.a[i][j];
        if (acc > 0) return false;
    }
    Rat yb = 0;
    for (std::size_t i = 0; i < sys.rows(); ++i) yb += y[i] * sys.b[i];
    return yb > 0;
}

// Phase-1: minimize the sum of artificials s in  A'.lambda + I.s = b',
// where rows with negative b are negated up front. Optimum 0 <=> feasible.
// On infeasibility the reduced costs at the artificial columns yield the
// Farkas vector y_i = 1 - rc_i (un-negated back to the original rows).
inline LpVerdict solve_feasibility(const FeasibilitySystem& sys_in) {
    sys_in.validate();
    const std::size_t m = sys_in.rows(), k = sys_in.cols();

    std::vector<int> row_sign(m, 1);
    // tableau: m rows, columns [0..k) structural, [k..k+m) artificial, k+m rhs
    std::vector<std::vector<Rat>> t(m, std::vector<Rat>(k + m + 1));
    for (std::size_t i = 0; i < m; ++i) {
        int s = sys_in.b[i] < 0 ? -1 : 1;
        row_sign[i] = s;
        for (std::size_t j = 0; j < k; ++j) t[i][j] = s * sys_in.a[i][j];
        t[i][k + i] = 1;
        t[i][k + m] = s * sys_in.b[i];
    }
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) basis[i] = k + i;

    // reduced costs rc_j = c_j - sum over artificial-basic rows of t[i][j]
    auto reduced_cost = [&](std::size_t j) {
        Rat rc = j >= k ? 1 : 0;
        for (std::size_t i = 0; i < m; ++i)
            if (basis[i] >= k) rc -= t[i][j];
        return rc;
    };

    while (true) {
        // Bland: entering = lowest-index column with negative reduced cost
        std::size_t enter = k + m;
        for (std::size_t j = 0; j < k + m; ++j) {
            if (reduced_cost(j) < 0) { enter = j; break; }
        }
        if (enter == k + m) break;  // optimal

        // ratio test, ties broken by lowest basis index (Bland)
        std::size_t leave = m;
        Rat best;
        for (std::size_t i = 0; i < m; ++i) {
            if (t[i][enter] <= 0) continue;
            Rat ratio = t[i][k + m] / t[i][enter];
            if (leave == m || ratio < best ||
                (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == m)
            throw std::logic_error("solve_feasibility: unbounded phase-1");

        // pivot
        Rat piv = t[leave][enter];
        for (auto& v : t[leave]) v /= piv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave || t[i][enter] == 0) continue;
            Rat f = t[i][enter];
            for (std::size_t j = 0; j <= k + m; ++j) t[i][j] -= f * t[leave][j];
        }
        basis[leave] = enter;
    }

    Rat objective = 0;
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] >= k) objective += t[i][k + m];

    LpVerdict v;
    if (objective == 0) {
        v.feasible = true;
        v.lambda.assign(k, 0);
        for (std::size_t i = 0; i < m; ++i)
            if (basis[i] < k) v.lambda[basis[i]] = t[i][k + m];
    } else {
        v.feasible = false;
        v.farkas.assign(m, 0);
        for (std::size_t i = 0; i < m; ++i)
            v.farkas[i] = row_sign[i] * (Rat(1) - reduced_cost(k + i));
    }
    return v;
}

namespace detail {

// Exact dense linear solve M z = rhs by Gaussian elimination.
// Returns false when M is singular.
inline bool solve_linear(std::vector<std::vector<Rat>> m, std::vector<Rat> rhs,
                         std::vector<Rat>& out) {
    const std::size_t n = m.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) return false;
        std::swap(m[piv], m[col]);
        std::swap(rhs[piv], rhs[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || m[r][col] == 0) continue;
            Rat f = m[r][col] / m[col][col];
            for (std::size_t cc = col; cc < n; ++cc) m[r][cc] -= f * m[col][cc];
            rhs[r] -= f * rhs[col];
        }
    }
    out.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) out[i] = rhs[i] / m[i][i];
    return true;
}

}  // namespace detail

// Same contract as solve_feasibility, but a double-precision phase-1 run
// proposes the final basis first and only the outcome is reconstructed and
// checked in exact rationals (feasible: basic solution >= 0 with artificials
// at zero; infeasible: the dual of the proposed basis is a valid Farkas
// vector). Any numerical misguidance falls back to the exact simplex, so
// verdicts are always exact.
inline LpVerdict solve_feasibility_guided(const FeasibilitySystem& sys_in) {
    sys_in.validate();
    const std::size_t m = sys_in.rows(), k = sys_in.cols();

    std::vector<int> row_sign(m, 1);
    std::vector<std::vector<double>> t(m, std::vector<double>(k + m + 1));
    for (std::size_t i = 0; i < m; ++i) {
        int s = sys_in.b[i] < 0 ? -1 : 1;
        row_sign[i] = s;
        for (std::size_t j = 0; j < k; ++j)
            t[i][j] = s * sys_in.a[i][j].convert_to<double>();
        t[i][k + i] = 1;
        t[i][k + m] = s * sys_in.b[i].convert_to<double>();
    }
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) basis[i] = k + i;
    std::vector<char> artificial_basic(m, 1);

    // price row for the phase-1 objective (sum of artificials)
    std::vector<double> price(k + m + 1, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j <= k + m; ++j) price[j] += t[i][j];
    for (std::size_t j = k; j < k + m; ++j) price[j] -= 1.0;

    const double eps = 1e-9;
    std::size_t max_iter = 50 + 10 * (k + m);
    bool stalled = false;
    for (std::size_t iter = 0;; ++iter) {
        if (iter >= max_iter) { stalled = true; break; }
        std::size_t enter = k + m;
        double best_rc = eps;
        for (std::size_t j = 0; j < k + m; ++j)
            if (price[j] > best_rc) { best_rc = price[j]; enter = j; }
        if (enter == k + m) break;  // optimal within tolerance
        std::size_t leave = m;
        double best_ratio = 0;
        for (std::size_t i = 0; i < m; ++i) {
            if (t[i][enter] <= eps) continue;
            double ratio = t[i][k + m] / t[i][enter];
            if (leave == m || ratio < best_ratio) { leave = i; best_ratio = ratio; }
        }
        if (leave == m) { stalled = true; break; }
        double piv = t[leave][enter];
        for (auto& v : t[leave]) v /= piv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave || t[i][enter] == 0) continue;
            double f = t[i][enter];
            for (std::size_t j = 0; j <= k + m; ++j) t[i][j] -= f * t[leave][j];
        }
        double fp = price[enter];
        if (fp != 0)
            for (std::size_t j = 0; j <= k + m; ++j) price[j] -= fp * t[leave][j];
        basis[leave] = enter;
        artificial_basic[leave] = enter >= k;
    }

    if (!stalled) {
        // exact basis matrix: columns of the sign-fixed [A | I]
        auto col_entry = [&](std::size_t col, std::size_t row) -> Rat {
            if (col < k) return row_sign[row] * sys_in.a[row][col];
            return col - k == row ? 1 : 0;
        };
        std::vector<std::vector<Rat>> bmat(m, std::vector<Rat>(m));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) bmat[i][j] = col_entry(basis[j], i);

        double objective = 0;
        for (std::size_t i = 0; i < m; ++i)
            if (artificial_basic[i]) objective += t[i][k + m];

        if (objective <= eps) {
            std::vector<Rat> bb(m), z;
            for (std::size_t i = 0; i < m; ++i) bb[i] = row_sign[i] * sys_in.b[i];
            if (detail::solve_linear(bmat, bb, z)) {
                bool ok = true;
                for (std::size_t j = 0; j < m && ok; ++j)
                    if (z[j] < 0 || (basis[j] >= k && z[j] != 0)) ok = false;
                if (ok) {
                    LpVerdict v;
                    v.feasible = true;
                    v.lambda.assign(k, 0);
                    for (std::size_t j = 0; j < m; ++j)
                        if (basis[j] < k) v.lambda[basis[j]] = z[j];
                    return v;
                }
            }
        } else {
            // dual of the proposed basis: w solves B'w = c_B
            std::vector<std::vector<Rat>> bt(m, std::vector<Rat>(m));
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < m; ++j) bt[i][j] = bmat[j][i];
            std::vector<Rat> cb(m), w;
            for (std::size_t j = 0; j < m; ++j) cb[j] = basis[j] >= k ? 1 : 0;
            if (detail::solve_linear(bt, cb, w)) {
                bool ok = true;
                Rat wb = 0;
                for (std::size_t i = 0; i < m; ++i)
                    wb += w[i] * row_sign[i] * sys_in.b[i];
                if (wb <= 0) ok = false;
                for (std::size_t j = 0; j < k && ok; ++j) {
                    Rat acc = 0;
                    for (std::size_t i = 0; i < m; ++i)
                        acc += w[i] * row_sign[i] * sys_in.a[i][j];
                    if (acc > 0) ok = false;
                }
                if (ok) {
                    LpVerdict v;
                    v.feasible = false;
                    v.farkas.assign(m, 0);
                    for (std::size_t i = 0; i < m; ++i)
                        v.farkas[i] = row_sign[i] * w[i];
                    return v;
                }
            }
        }
    }
    return solve_feasibility(sys_in);
}

}  // namespace polyskel
