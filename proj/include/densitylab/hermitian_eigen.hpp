// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "densitylab/complex_matrix.hpp"

#include <cstddef>
#include <vector>

namespace densitylab {

// Default relative rank tolerance: eigenvalues <= kRankTol * max|lambda| are
// treated as zero. Gram matrices of near-critical systems are ill-conditioned,
// so the cut is relative, not absolute.
inline constexpr double kRankTol = 1e-10;

// Spectral summary of a Hermitian (positive semidefinite in most uses) matrix.
struct SpectralReport {
    std::vector<double> eigenvalues; // ascending
    double min_nonzero = 0.0;        // smallest eigenvalue above the rank cut, 0 if none
    double max = 0.0;                // largest eigenvalue
    std::size_t rank = 0;            // count of eigenvalues above the rank cut
    double tolerance_used = kRankTol;
};

struct HermitianEigensystem {
    std::vector<double> eigenvalues; // ascending
    ComplexMatrix vectors;           // column j is the eigenvector of eigenvalues[j]
};

// Cyclic complex Jacobi diagonalization. Deterministic: fixed pivot order,
// fixed convergence cut (off-diagonal Frobenius < 1e-13 * ||A||_F).
// Throws NonSquare, NotHermitian (asymmetry beyond tol * max(1, max|a_ij|)).
HermitianEigensystem hermitian_eigensystem(const ComplexMatrix& m, double tol = kRankTol);

// Eigenvalue report only.
SpectralReport hermitian_eigen(const ComplexMatrix& m, double tol = kRankTol);

// Report from an already computed ascending spectrum.
SpectralReport spectral_report(std::vector<double> eigenvalues_ascending, double tol);

// f(M) for Hermitian M via the eigensystem; eigenvalues below the rank cut are
// mapped to zero (restricted-to-range semantics), others through f.
ComplexMatrix hermitian_function(const ComplexMatrix& m, double tol, double (*f)(double));

} // namespace densitylab
