// SPDX-License-Identifier: Apache-2.0
#include "densitylab/complex_matrix.hpp"

#include "densitylab/errors.hpp"

#include <algorithm>
#include <cmath>

namespace densitylab {

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.at(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::zero(std::size_t n, std::size_t m) { return {n, m}; }

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols, rows);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            out.at(j, i) = std::conj(at(i, j));
    return out;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& other) const {
    if (cols != other.rows)
        throw DimensionMismatch("matrix product: inner dimensions differ");
    ComplexMatrix out(rows, other.cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t k = 0; k < cols; ++k) {
            const cdouble aik = at(i, k);
            if (aik == cdouble{})
                continue;
            for (std::size_t j = 0; j < other.cols; ++j)
                out.at(i, j) += aik * other.at(k, j);
        }
    }
    return out;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& other) const {
    if (rows != other.rows || cols != other.cols)
        throw DimensionMismatch("matrix sum: shapes differ");
    ComplexMatrix out(rows, cols);
    for (std::size_t i = 0; i < entries.size(); ++i)
        out.entries[i] = entries[i] + other.entries[i];
    return out;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& other) const {
    if (rows != other.rows || cols != other.cols)
        throw DimensionMismatch("matrix difference: shapes differ");
    ComplexMatrix out(rows, cols);
    for (std::size_t i = 0; i < entries.size(); ++i)
        out.entries[i] = entries[i] - other.entries[i];
    return out;
}

ComplexMatrix& ComplexMatrix::operator*=(cdouble scalar) {
    for (auto& e : entries)
        e *= scalar;
    return *this;
}

std::vector<cdouble> ComplexMatrix::apply(const std::vector<cdouble>& v) const {
    if (v.size() != cols)
        throw DimensionMismatch("matrix apply: vector length != cols");
    std::vector<cdouble> out(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        cdouble acc{};
        for (std::size_t j = 0; j < cols; ++j)
            acc += at(i, j) * v[j];
        out[i] = acc;
    }
    return out;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& e : entries)
        m = std::max(m, std::abs(e));
    return m;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& other) const {
    if (rows != other.rows || cols != other.cols)
        throw DimensionMismatch("max_abs_diff: shapes differ");
    double m = 0.0;
    for (std::size_t i = 0; i < entries.size(); ++i)
        m = std::max(m, std::abs(entries[i] - other.entries[i]));
    return m;
}

double ComplexMatrix::frobenius() const {
    double s = 0.0;
    for (const auto& e : entries)
        s += std::norm(e);
    return std::sqrt(s);
}

double ComplexMatrix::hermitian_defect() const {
    if (!square())
        throw NonSquare("hermitian_defect: matrix not square");
    double m = 0.0;
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = i; j < cols; ++j)
            m = std::max(m, std::abs(at(i, j) - std::conj(at(j, i))));
    return m;
}

bool ComplexMatrix::all_finite() const {
    return std::all_of(entries.begin(), entries.end(), [](const cdouble& e) {
        return std::isfinite(e.real()) && std::isfinite(e.imag());
    });
}

cdouble ComplexMatrix::hs_inner(const ComplexMatrix& other) const {
    if (rows != other.rows || cols != other.cols)
        throw DimensionMismatch("hs_inner: shapes differ");
    cdouble acc{};
    for (std::size_t i = 0; i < entries.size(); ++i)
        acc += entries[i] * std::conj(other.entries[i]);
    return acc;
}

} // namespace densitylab
