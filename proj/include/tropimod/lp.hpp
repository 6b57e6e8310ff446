#pragma once

// Exact rational simplex (dense tableau, two phases, Bland's rule).
// Solves  max c.x  subject to  A x <= b, x >= 0.  Bland's pivot rule keeps
// the method terminating on the highly degenerate programs that regularity
// checks produce.

#include "tropimod/exact.hpp"

#include <cassert>
#include <cstddef>
#include <vector>

namespace tropimod {

enum class LpStatus { Optimal, Unbounded, Infeasible };

struct LpResult {
    LpStatus status;
    Rat value;
    QVec x;  // structural variables only
};

class SimplexSolver {
public:
    // rows of A must all have size n; b has one entry per row.
    LpResult solve_max(const QVec& c, const std::vector<QVec>& A, const QVec& b) {
        n_ = c.size();
        m_ = A.size();
        n_art_ = 0;
        for (const Rat& bi : b)
            if (bi < 0) ++n_art_;
        cols_ = n_ + m_ + n_art_ + 1;

        tab_.assign(m_, QVec(cols_, Rat(0)));
        basis_.assign(m_, 0);
        std::size_t art = 0;
        for (std::size_t i = 0; i < m_; ++i) {
            const bool neg = b[i] < 0;
            const Rat sgn = neg ? Rat(-1) : Rat(1);
            for (std::size_t j = 0; j < n_; ++j) tab_[i][j] = sgn * A[i][j];
            tab_[i][n_ + i] = sgn;  // slack
            tab_[i][cols_ - 1] = sgn * b[i];
            if (neg) {
                tab_[i][n_ + m_ + art] = 1;
                basis_[i] = static_cast<int>(n_ + m_ + art);
                ++art;
            } else {
                basis_[i] = static_cast<int>(n_ + i);
            }
        }

        if (n_art_ > 0) {
            // Phase 1: maximize -(sum of artificials).
            QVec z(cols_, Rat(0));
            for (std::size_t j = n_ + m_; j + 1 < cols_; ++j) z[j] = -1;
            price_out_basics(z);
            run(z);
            // z[rhs] carries the negated objective, so feasible means 0 here.
            if (z[cols_ - 1] != 0) return {LpStatus::Infeasible, Rat(0), {}};
            purge_artificials();
        }

        QVec z(cols_, Rat(0));
        for (std::size_t j = 0; j < n_; ++j) z[j] = c[j];
        price_out_basics(z);
        if (!run(z)) return {LpStatus::Unbounded, Rat(0), {}};

        QVec x(n_, Rat(0));
        for (std::size_t i = 0; i < m_; ++i)
            if (basis_[i] >= 0 && static_cast<std::size_t>(basis_[i]) < n_)
                x[basis_[i]] = tab_[i][cols_ - 1];
        return {LpStatus::Optimal, -z[cols_ - 1], x};
    }

private:
    // Makes reduced costs of basic columns zero. Afterwards z[j] is the
    // reduced cost of column j and z[rhs] the negated objective value; both
    // invariants are preserved by pivot().
    void price_out_basics(QVec& z) {
        for (std::size_t i = 0; i < m_; ++i) {
            const int bj = basis_[i];
            if (z[bj] == 0) continue;
            const Rat f = z[bj];
            for (std::size_t j = 0; j < cols_; ++j) z[j] -= f * tab_[i][j];
        }
    }

    // Bland's rule iteration; z is the reduced-cost row (maximization:
    // entering column has positive reduced cost). Returns false on
    // unboundedness.
    bool run(QVec& z) {
        for (;;) {
            int enter = -1;
            for (std::size_t j = 0; j + 1 < cols_; ++j) {
                if (z[j] > 0) {
                    enter = static_cast<int>(j);
                    break;
                }
            }
            if (enter < 0) return true;
            int leave = -1;
            Rat best;
            for (std::size_t i = 0; i < m_; ++i) {
                if (tab_[i][enter] <= 0) continue;
                Rat ratio = tab_[i][cols_ - 1] / tab_[i][enter];
                if (leave < 0 || ratio < best ||
                    (ratio == best && basis_[i] < basis_[leave])) {
                    best = ratio;
                    leave = static_cast<int>(i);
                }
            }
            if (leave < 0) return false;
            pivot(leave, enter, z);
        }
    }

    void pivot(int row, int col, QVec& z) {
        const Rat p = tab_[row][col];
        for (std::size_t j = 0; j < cols_; ++j) tab_[row][j] /= p;
        for (std::size_t i = 0; i < m_; ++i) {
            if (static_cast<int>(i) == row || tab_[i][col] == 0) continue;
            const Rat f = tab_[i][col];
            for (std::size_t j = 0; j < cols_; ++j) tab_[i][j] -= f * tab_[row][j];
        }
        if (z[col] != 0) {
            const Rat f = z[col];
            for (std::size_t j = 0; j < cols_; ++j) z[j] -= f * tab_[row][j];
        }
        basis_[row] = col;
    }

    // After phase 1: pivot still-basic artificials out or drop their rows.
    void purge_artificials() {
        for (std::size_t i = 0; i < m_; ++i) {
            if (static_cast<std::size_t>(basis_[i]) < n_ + m_) continue;
            int col = -1;
            for (std::size_t j = 0; j < n_ + m_; ++j)
                if (tab_[i][j] != 0) {
                    col = static_cast<int>(j);
                    break;
                }
            if (col >= 0) {
                QVec dummy(cols_, Rat(0));
                pivot(static_cast<int>(i), col, dummy);
            }
        }
        // Rows whose basic variable is still artificial are identically zero
        // on structural columns; they are redundant and harmless, but the
        // artificial columns must never re-enter. Freeze them by zeroing.
        for (std::size_t i = 0; i < m_; ++i)
            for (std::size_t j = n_ + m_; j + 1 < cols_; ++j) tab_[i][j] = 0;
    }

    std::size_t n_ = 0, m_ = 0, n_art_ = 0, cols_ = 0;
    std::vector<QVec> tab_;
    std::vector<int> basis_;
};

inline LpResult lp_max(const QVec& c, const std::vector<QVec>& A, const QVec& b) {
    SimplexSolver s;
    return s.solve_max(c, A, b);
}

}  // namespace tropimod
