// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "densitylab/rational.hpp"

#include <cstddef>
#include <vector>

namespace densitylab {

// Row-major integer matrix; used for exact lattice arithmetic.
using IntMat = std::vector<std::vector<BigInt>>;

IntMat int_identity(std::size_t n);
IntMat int_multiply(const IntMat& a, const IntMat& b);

// Column-style Hermite normal form. Returns H and a unimodular U with
// A * U = H; the pivot columns come first, trailing columns of H are zero.
struct HNFResult {
    IntMat h;
    IntMat u;
    std::size_t rank = 0;
};
HNFResult column_hnf(IntMat a);

// Basis (as columns) of {x in Z^n : A x = 0}. Saturated by construction.
IntMat integer_kernel(const IntMat& a);

// Canonical HNF basis of the lattice generated by the columns of `generators`
// (zero columns dropped).
IntMat lattice_column_basis(const IntMat& generators);

} // namespace densitylab
