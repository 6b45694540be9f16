// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "densitylab/exact_scalar.hpp"
#include "densitylab/rational.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace densitylab::density {

// Lattice A Z^{2d} in the time-frequency plane R^{2d}; entries live in
// Q + Q*theta with a single generator theta.
struct SymplecticLattice {
    std::size_t dim2 = 2; // 2d
    std::vector<ExactScalar> basis; // row-major dim2 x dim2

    SymplecticLattice(std::size_t dim2_, std::vector<ExactScalar> entries);
    const ExactScalar& at(std::size_t i, std::size_t j) const { return basis[i * dim2 + j]; }
    bool is_separable() const; // diagonal basis matrix
};

// |det A|, exact. Throws SingularBasis on det = 0, UnsupportedField when the
// determinant leaves Q + Q*theta.
ExactScalar covolume(const SymplecticLattice& lat);

enum class KleppnerStatus { Holds, Fails, Unknown };

std::string to_string(KleppnerStatus s);

struct KleppnerResult {
    KleppnerStatus status = KleppnerStatus::Unknown;
    // Integer witness n with (A^T J A) n integral, present when status == Fails.
    std::optional<std::vector<BigInt>> witness;
    // 0 for the algebraic decision; for the brute oracle, the search radius
    // that certifies "holds-up-to-radius".
    long searched_radius = 0;
};

// Exact decision for the Heisenberg cocycle on A Z^{2d}: Kleppner holds iff
// no nonzero integer n has (A^T J A) n in Z^{2d}. Exact for d = 1 and for
// separable bases in higher dimension; Unknown otherwise.
KleppnerResult kleppner_check(const SymplecticLattice& lat);

// Exhaustive oracle over ||n||_inf <= radius.
KleppnerResult kleppner_brute(const SymplecticLattice& lat, long radius);

enum class Claim {
    ParsevalFrameExists,
    OnbExists,
    OnSequenceExists,
    NoCyclicVector,
    NoSeparatingVector,
};

std::string to_string(Claim c);

// The classifier consumes the normalization-free product vol * d_pi only.
struct Invariant {
    std::optional<ExactScalar> exact;
    double value = 0.0;
    double error = 0.0; // half-width of the float error bar

    static Invariant from_exact(ExactScalar v);
    static Invariant from_float(double v, double err = 0.0);
};

struct ClassifyFlags {
    // Input group is a central extension in the style of SL(2,R) with -I in
    // the lattice: the completeness threshold halves.
    bool central_extension = false;
};

struct Verdict {
    Invariant invariant;
    KleppnerStatus kleppner = KleppnerStatus::Unknown;
    int regime = 0; // -1 / 0 / +1 : invariant below / at / above critical
    bool regime_decided = true;
    std::set<Claim> claims;
    std::vector<std::string> caveats;
};

// Trichotomy classifier. With Kleppner verified the full claims are issued;
// otherwise only the Kleppner-free necessary conditions are used.
Verdict classify(const Invariant& invariant, KleppnerStatus kleppner,
                 const ClassifyFlags& flags = {});

} // namespace densitylab::density
