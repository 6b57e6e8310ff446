#pragma once

// Exact dense linear algebra over the rationals: rank, kernel bases, inverse.
// Matrices are row vectors; sizes here are tiny (tens of rows/columns), so
// plain Gaussian elimination with mpq pivots is the simplest correct choice.

#include "tropimod/exact.hpp"

#include <cassert>
#include <vector>

namespace tropimod {

using QMat = std::vector<QVec>;
using IMat = std::vector<IVec>;

inline QMat to_rational(const IMat& m) {
    QMat out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        out[i].reserve(m[i].size());
        for (const Int& x : m[i]) out[i].emplace_back(x);
    }
    return out;
}

// Reduces `m` to row echelon form in place; returns the pivot column of each
// surviving row.
inline std::vector<int> row_echelon(QMat& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    const std::size_t cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t sel = r;
        while (sel < m.size() && m[sel][c] == 0) ++sel;
        if (sel == m.size()) continue;
        std::swap(m[r], m[sel]);
        const Rat inv = 1 / m[r][c];
        for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][c] == 0) continue;
            const Rat f = m[i][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(static_cast<int>(c));
        ++r;
    }
    m.resize(r);
    return pivots;
}

inline int rank_of(const IMat& m) {
    QMat q = to_rational(m);
    return static_cast<int>(row_echelon(q).size());
}

inline int rank_of(QMat m) { return static_cast<int>(row_echelon(m).size()); }

// Integer basis of the right kernel {x : m x = 0} in an `n`-column space.
inline IMat kernel_basis(const IMat& m, int n) {
    QMat q = to_rational(m);
    std::vector<int> pivots = row_echelon(q);
    std::vector<bool> is_pivot(n, false);
    for (int c : pivots) is_pivot[c] = true;
    IMat basis;
    for (int free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        QVec x(n, Rat(0));
        x[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            // pivot row r: x[pivots[r]] = -sum over free columns
            x[pivots[r]] = -q[r][free];
        }
        basis.push_back(clear_denominators(x));
    }
    return basis;
}

// Inverse of a square rational matrix; asserts nonsingularity.
inline QMat inverse(QMat m) {
    const std::size_t n = m.size();
    for (std::size_t i = 0; i < n; ++i) {
        m[i].resize(2 * n, Rat(0));
        m[i][n + i] = 1;
    }
    std::vector<int> pivots = row_echelon(m);
    assert(pivots.size() == n && "singular matrix");
    QMat inv(n, QVec(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv[i][j] = m[i][n + j];
    return inv;
}

// Matrix-vector product with integer matrix rows.
inline IVec apply_rows(const IMat& rows, const IVec& x) {
    IVec out(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) out[i] = dot(rows[i], x);
    return out;
}

// Canonical basis of the row span: reduced echelon form scaled to primitive
// integer rows. Equal spans produce identical output.
inline IMat span_canonical(const IMat& rows) {
    QMat q = to_rational(rows);
    row_echelon(q);
    IMat out;
    for (const QVec& r : q) out.push_back(clear_denominators(r));
    return out;
}

}  // namespace tropimod
