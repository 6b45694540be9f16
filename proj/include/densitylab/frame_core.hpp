// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "densitylab/complex_matrix.hpp"
#include "densitylab/hermitian_eigen.hpp"

#include <string>
#include <vector>

namespace densitylab {

// A finite indexed family of vectors in C^dim. Repetitions are allowed; the
// labels keep the indexation explicit (two indexations of the same set are
// different systems).
struct FrameSystem {
    std::size_t dim = 0;
    std::vector<std::vector<cdouble>> vectors;
    std::vector<std::string> labels;

    FrameSystem() = default;
    FrameSystem(std::size_t d, std::vector<std::vector<cdouble>> vecs,
                std::vector<std::string> labs);

    std::size_t size() const { return vectors.size(); }
};

// <x, y> = sum_k x_k conj(y_k); linear in the first slot.
cdouble inner(const std::vector<cdouble>& x, const std::vector<cdouble>& y);
double norm_sq(const std::vector<cdouble>& x);

// Gram matrix G[i][j] = <v_j, v_i>. Conjugate-symmetric, PSD.
ComplexMatrix gram(const FrameSystem& f);

// Frame operator S = sum_i v_i v_i^*.
ComplexMatrix frame_operator(const FrameSystem& f);

// Spectrum of the frame operator. The system is a frame for C^dim iff
// rank == dim; then A = min_nonzero, B = max.
SpectralReport frame_bounds(const FrameSystem& f, double tol = kRankTol);

// Spectrum of the Gram matrix. The system is a Riesz sequence iff the
// smallest eigenvalue survives the rank cut (rank == size()).
SpectralReport riesz_bounds(const FrameSystem& f, double tol = kRankTol);

// {S^{-1/2} v_i}. Requires a frame for C^dim; the result has frame operator I.
FrameSystem parsevalize(const FrameSystem& f, double tol = kRankTol);

// {S^{-1/2} v_i} with S inverted on span(F) only. Requires a Riesz sequence;
// the result has Gram I.
FrameSystem orthonormalize_riesz(const FrameSystem& f, double tol = kRankTol);

// {S^{-1} v_i}. Requires a frame for C^dim. Biorthogonal to F when F is a
// Riesz basis.
FrameSystem canonical_dual(const FrameSystem& f, double tol = kRankTol);

// c_i = <x, v_i>, ordered like the labels.
std::vector<cdouble> analysis(const FrameSystem& f, const std::vector<cdouble>& x);

// sum_i c_i v_i.
std::vector<cdouble> synthesis(const FrameSystem& f, const std::vector<cdouble>& c);

} // namespace densitylab
