// SPDX-License-Identifier: Apache-2.0
#include "densitylab/int_lattice.hpp"

#include "densitylab/errors.hpp"

#include <algorithm>
#include <utility>

namespace densitylab {

namespace {

std::size_t rows_of(const IntMat& a) { return a.size(); }
std::size_t cols_of(const IntMat& a) { return a.empty() ? 0 : a[0].size(); }

void swap_cols(IntMat& a, std::size_t i, std::size_t j) {
    for (auto& row : a)
        std::swap(row[i], row[j]);
}

void negate_col(IntMat& a, std::size_t i) {
    for (auto& row : a)
        row[i] = -row[i];
}

// col_j += q * col_i
void add_col(IntMat& a, std::size_t j, std::size_t i, const BigInt& q) {
    for (auto& row : a)
        row[j] += q * row[i];
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

} // namespace

IntMat int_identity(std::size_t n) {
    IntMat m(n, std::vector<BigInt>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        m[i][i] = 1;
    return m;
}

IntMat int_multiply(const IntMat& a, const IntMat& b) {
    const std::size_t m = rows_of(a), k = cols_of(a), n = cols_of(b);
    if (k != rows_of(b))
        throw DimensionMismatch("int_multiply: inner dimensions differ");
    IntMat out(m, std::vector<BigInt>(n, 0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t t = 0; t < k; ++t) {
            if (a[i][t] == 0)
                continue;
            for (std::size_t j = 0; j < n; ++j)
                out[i][j] += a[i][t] * b[t][j];
        }
    return out;
}

HNFResult column_hnf(IntMat a) {
    const std::size_t m = rows_of(a);
    const std::size_t n = cols_of(a);
    IntMat u = int_identity(n);

    std::size_t c = 0;
    std::vector<std::pair<std::size_t, std::size_t>> pivots; // (row, col)
    for (std::size_t r = 0; r < m && c < n; ++r) {
        // Euclidean reduction across columns c..n-1 on row r.
        while (true) {
            std::size_t best = n;
            for (std::size_t j = c; j < n; ++j) {
                if (a[r][j] == 0)
                    continue;
                if (best == n || abs(a[r][j]) < abs(a[r][best]))
                    best = j;
            }
            if (best == n)
                break; // row r is zero on the active columns
            if (best != c) {
                swap_cols(a, c, best);
                swap_cols(u, c, best);
            }
            if (a[r][c] < 0) {
                negate_col(a, c);
                negate_col(u, c);
            }
            bool cleared = true;
            for (std::size_t j = c + 1; j < n; ++j) {
                if (a[r][j] == 0)
                    continue;
                const BigInt q = floor_div(a[r][j], a[r][c]);
                add_col(a, j, c, -q);
                add_col(u, j, c, -q);
                if (a[r][j] != 0)
                    cleared = false;
            }
            if (cleared)
                break;
        }
        if (a[r][c] != 0) {
            // Normalize entries left of the pivot on this row: 0 <= a[r][j] < pivot.
            for (std::size_t j = 0; j < c; ++j) {
                const BigInt q = floor_div(a[r][j], a[r][c]);
                if (q != 0) {
                    add_col(a, j, c, -q);
                    add_col(u, j, c, -q);
                }
            }
            pivots.emplace_back(r, c);
            ++c;
        }
    }

    HNFResult res;
    res.h = std::move(a);
    res.u = std::move(u);
    res.rank = c;
    return res;
}

IntMat integer_kernel(const IntMat& a) {
    const std::size_t n = cols_of(a);
    HNFResult res = column_hnf(a);
    IntMat kernel(n, std::vector<BigInt>(n - res.rank, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = res.rank; j < n; ++j)
            kernel[i][j - res.rank] = res.u[i][j];
    return kernel;
}

IntMat lattice_column_basis(const IntMat& generators) {
    HNFResult res = column_hnf(generators);
    const std::size_t m = rows_of(res.h);
    IntMat basis(m, std::vector<BigInt>(res.rank, 0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < res.rank; ++j)
            basis[i][j] = res.h[i][j];
    return basis;
}

} // namespace densitylab
