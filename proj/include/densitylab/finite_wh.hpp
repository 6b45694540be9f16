// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "densitylab/complex_matrix.hpp"
#include "densitylab/frame_core.hpp"
#include "densitylab/rational.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace densitylab::wh {

// Discrete Weyl-Heisenberg system on C^N.
//
// Convention, fixed once for the whole project and mirrored by the continuous
// module: pi(k,l) acts by (pi(k,l) f)(t) = omega^{-l t} f(t - k), omega =
// exp(2 pi i / N). With this order the product law is exactly
//
//     pi(k,l) pi(k',l') = omega^{l' k} pi(k+k', l+l'),
//
// i.e. the cocycle is sigma((k,l),(k',l')) = omega^{l' k}. Worked example for
// N = 4: pi(1,1) pi(1,1) = omega * pi(2,2).
//
// Caveat on scope: finite abelian groups have only finite (singleton)
// conjugacy classes, so no nontrivial pair (Gamma, sigma) here ever satisfies
// Kleppner's condition. This module is an exact oracle for the frame algebra
// and the conjugation/expansion identities, not for existence claims tied to
// Kleppner-type hypotheses.
struct FiniteWHRep {
    std::size_t modulus = 1; // N

    explicit FiniteWHRep(std::size_t n);

    // omega^e with e reduced mod N.
    cdouble root_power(long long e) const;
};

using LatticePoint = std::pair<long, long>; // (k, l), residues mod N

// Separable divisor lattice a Z_N x b Z_N. Points are ordered
// (a*i, b*j), i = 0..N/a-1 outer, j = 0..N/b-1 inner.
struct FiniteLattice {
    std::size_t n = 1;
    std::size_t a = 1;
    std::size_t b = 1;
    std::vector<LatticePoint> points;

    FiniteLattice(std::size_t n_, std::size_t a_, std::size_t b_);

    bool contains(LatticePoint gamma) const;
    std::size_t index_of(LatticePoint gamma) const; // throws GammaNotInLattice
    std::size_t size() const { return points.size(); }
};

struct WHCoefficients {
    std::vector<cdouble> values; // indexed like FiniteLattice::points
};

// sigma((k,l),(k',l')) = omega^{l' k}.
cdouble cocycle(const FiniteWHRep& rep, LatticePoint g1, LatticePoint g2);

// Unitary N x N matrix of pi(k,l).
ComplexMatrix wh_matrix(const FiniteWHRep& rep, long k, long l);

// Orbit system {pi(gamma) g : gamma in lattice}, labels "k,l".
FrameSystem wh_system(const FiniteWHRep& rep, const FiniteLattice& lat,
                      const std::vector<cdouble>& window);

// theta(gamma) c: entrywise unimodular twist implementing
// pi(gamma) pi(c) pi(gamma)^* = pi(theta(gamma) c).
WHCoefficients twisted_conjugation(const FiniteWHRep& rep, const FiniteLattice& lat,
                                   LatticePoint gamma, const WHCoefficients& c);

// || pi(gamma) pi(c) pi(gamma)^* - pi(theta(gamma) c) ||_max, exact matrices.
double verify_conjugation(const FiniteWHRep& rep, const FiniteLattice& lat,
                          LatticePoint gamma, const WHCoefficients& c);

// pi(c) = sum_gamma c_gamma pi(gamma).
ComplexMatrix wh_operator(const FiniteWHRep& rep, const FiniteLattice& lat,
                          const WHCoefficients& c);

// Unique coefficients over the full lattice with sum c_kl pi(k,l) = T,
// via the Hilbert-Schmidt trace pairing c_kl = <T, pi(k,l)>_HS / N.
WHCoefficients expand_operator(const FiniteWHRep& rep, const ComplexMatrix& t);

// ab / N. Mirrors the density trichotomy: < 1, = 1, > 1.
Rational finite_density_invariant(const FiniteWHRep& rep, const FiniteLattice& lat);

// CLI-facing summary of one (N, a, b, window) run.
struct WHReport {
    Rational invariant;
    SpectralReport frame_bounds;
    SpectralReport riesz_bounds;
    bool parseval = false;
    bool onb = false;
};

WHReport wh_report(const FiniteWHRep& rep, const FiniteLattice& lat,
                   const std::vector<cdouble>& window, double tol = kRankTol);

} // namespace densitylab::wh
