// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace densitylab {

using cdouble = std::complex<double>;

// Dense complex matrix, row-major. Entries must stay finite; the numeric
// checks that care (eigensolver, serialization) enforce it.
struct ComplexMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<cdouble> entries;

    ComplexMatrix() = default;
    ComplexMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c) {}

    cdouble& at(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
    const cdouble& at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }

    bool square() const { return rows == cols; }

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix zero(std::size_t n, std::size_t m);

    ComplexMatrix adjoint() const;
    ComplexMatrix operator*(const ComplexMatrix& other) const;
    ComplexMatrix operator+(const ComplexMatrix& other) const;
    ComplexMatrix operator-(const ComplexMatrix& other) const;
    ComplexMatrix& operator*=(cdouble scalar);

    std::vector<cdouble> apply(const std::vector<cdouble>& v) const;

    // max_{ij} |a_ij|
    double max_abs() const;
    double max_abs_diff(const ComplexMatrix& other) const;
    // Frobenius norm.
    double frobenius() const;
    // max asymmetry |a_ij - conj(a_ji)|
    double hermitian_defect() const;
    bool all_finite() const;
    // Hilbert-Schmidt inner product <A, B> = tr(B^* A).
    cdouble hs_inner(const ComplexMatrix& other) const;
};

} // namespace densitylab
