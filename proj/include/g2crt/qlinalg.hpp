#pragma once

// Small exact linear algebra: Gaussian elimination over Q, determinants, and
// row-style Hermite normal form over Z.  Everything here is desk scale
// (matrices of dimension <= ~30); clarity over asymptotics.

#include <optional>
#include <stdexcept>
#include <vector>

#include "nt.hpp"

namespace g2crt {

using QMat = std::vector<std::vector<Rat>>;
using QVec = std::vector<Rat>;
using ZMat = std::vector<std::vector<Int>>;

// Solve A x = b exactly; nullopt if inconsistent or underdetermined columns
// remain free (callers here always expect unique solutions).
inline std::optional<QVec> qsolve(QMat A, QVec b) {
    const std::size_t n = A.size();
    if (n == 0) return QVec{};
    const std::size_t m = A[0].size();
    std::vector<int> pivot_col_of_row;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m && row < n; ++col) {
        std::size_t pr = row;
        while (pr < n && A[pr][col] == 0) ++pr;
        if (pr == n) continue;
        std::swap(A[pr], A[row]);
        std::swap(b[pr], b[row]);
        Rat inv = 1 / A[row][col];
        for (std::size_t j = col; j < m; ++j) A[row][j] *= inv;
        b[row] *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == row || A[i][col] == 0) continue;
            Rat f = A[i][col];
            for (std::size_t j = col; j < m; ++j) A[i][j] -= f * A[row][j];
            b[i] -= f * b[row];
        }
        pivot_col_of_row.push_back(static_cast<int>(col));
        ++row;
    }
    for (std::size_t i = row; i < n; ++i)
        if (b[i] != 0) return std::nullopt;  // inconsistent
    if (pivot_col_of_row.size() != m) return std::nullopt;  // free columns
    QVec x(m, 0);
    for (std::size_t i = 0; i < pivot_col_of_row.size(); ++i)
        x[pivot_col_of_row[i]] = b[i];
    return x;
}

inline Rat qdet(QMat A) {
    const std::size_t n = A.size();
    Rat det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pr = col;
        while (pr < n && A[pr][col] == 0) ++pr;
        if (pr == n) return 0;
        if (pr != col) { std::swap(A[pr], A[col]); det = -det; }
        det *= A[col][col];
        Rat inv = 1 / A[col][col];
        for (std::size_t i = col + 1; i < n; ++i) {
            if (A[i][col] == 0) continue;
            Rat f = A[i][col] * inv;
            for (std::size_t j = col; j < n; ++j) A[i][j] -= f * A[col][j];
        }
    }
    return det;
}

// Row-style HNF of an n x m integer matrix (rows generate the lattice).
// Returns the nonzero rows of the reduced matrix, upper triangular with
// positive pivots and entries above a pivot reduced into [0, pivot).
inline ZMat hnf_rows(ZMat A) {
    const std::size_t n = A.size();
    if (n == 0) return A;
    const std::size_t m = A[0].size();
    std::size_t row = 0;
    for (std::size_t col = 0; col < m && row < n; ++col) {
        // Euclidean elimination below position (row, col).
        for (;;) {
            std::size_t best = n;
            for (std::size_t i = row; i < n; ++i)
                if (A[i][col] != 0 && (best == n || abs(A[i][col]) < abs(A[best][col]))) best = i;
            if (best == n) break;  // column is zero below
            std::swap(A[best], A[row]);
            bool clean = true;
            for (std::size_t i = row + 1; i < n; ++i) {
                if (A[i][col] == 0) continue;
                Int q = A[i][col] / A[row][col];  // truncated division is fine for descent
                if (q != 0)
                    for (std::size_t j = 0; j < m; ++j) A[i][j] -= q * A[row][j];
                if (A[i][col] != 0) clean = false;
            }
            if (clean) break;
        }
        if (A[row][col] == 0) continue;
        if (A[row][col] < 0)
            for (std::size_t j = 0; j < m; ++j) A[row][j] = -A[row][j];
        // Reduce entries above the pivot.
        for (std::size_t i = 0; i < row; ++i) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), A[i][col].get_mpz_t(), A[row][col].get_mpz_t());
            if (q != 0)
                for (std::size_t j = 0; j < m; ++j) A[i][j] -= q * A[row][j];
        }
        ++row;
    }
    A.resize(row);
    return A;
}

// Membership of an integer vector in the row span (over Z) of an HNF basis.
inline bool hnf_contains(const ZMat& H, std::vector<Int> v) {
    std::size_t m = v.size();
    for (const auto& row : H) {
        std::size_t col = 0;
        while (col < m && row[col] == 0) ++col;
        if (col == m) continue;
        Int q = v[col] / row[col];  // any remainder survives to the final check
        for (std::size_t j = 0; j < m; ++j) v[j] -= q * row[j];
    }
    for (auto& x : v)
        if (x != 0) return false;
    return true;
}

}  // namespace g2crt
