// SPDX-License-Identifier: Apache-2.0
#include "densitylab/density.hpp"

#include "densitylab/errors.hpp"
#include "densitylab/int_lattice.hpp"

#include <algorithm>
#include <utility>

namespace densitylab::density {

SymplecticLattice::SymplecticLattice(std::size_t dim2_, std::vector<ExactScalar> entries)
    : dim2(dim2_), basis(std::move(entries)) {
    if (dim2 == 0 || dim2 % 2 != 0)
        throw ConfigInvalid("SymplecticLattice: dimension must be even and positive");
    if (basis.size() != dim2 * dim2)
        throw DimensionMismatch("SymplecticLattice: entry count != dim^2");
}

bool SymplecticLattice::is_separable() const {
    for (std::size_t i = 0; i < dim2; ++i)
        for (std::size_t j = 0; j < dim2; ++j)
            if (i != j && !at(i, j).is_zero())
                return false;
    return true;
}

namespace {

// Determinant by cofactor expansion: products and sums only, so the
// single-generator arithmetic rules decide what is representable.
ExactScalar det_recursive(const std::vector<ExactScalar>& m, std::size_t n) {
    if (n == 1)
        return m[0];
    if (n == 2)
        return m[0] * m[3] - m[1] * m[2];
    ExactScalar acc{Rational(0)};
    std::vector<ExactScalar> minor((n - 1) * (n - 1), ExactScalar{Rational(0)});
    for (std::size_t j = 0; j < n; ++j) {
        if (m[j].is_zero())
            continue;
        std::size_t mi = 0;
        for (std::size_t r = 1; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
                if (c != j)
                    minor[mi++] = m[r * n + c];
        ExactScalar term = m[j] * det_recursive(minor, n - 1);
        acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

// A^T J A with the standard symplectic form J = [[0, I],[-I, 0]].
std::vector<ExactScalar> gram_symplectic(const SymplecticLattice& lat) {
    const std::size_t n = lat.dim2;
    const std::size_t d = n / 2;
    std::vector<ExactScalar> ja(n * n, ExactScalar{Rational(0)});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            ja[i * n + j] = i < d ? lat.at(i + d, j) : -lat.at(i - d, j);
    std::vector<ExactScalar> m(n * n, ExactScalar{Rational(0)});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            ExactScalar acc{Rational(0)};
            for (std::size_t k = 0; k < n; ++k)
                acc = acc + lat.at(k, i) * ja[k * n + j];
            m[i * n + j] = acc;
        }
    return m;
}

BigInt lcm_big(const BigInt& a, const BigInt& b) {
    if (a == 0 || b == 0)
        return 0;
    return a / gcd(a, b) * b;
}

struct WitnessOrder {
    // Prefer small sup-norm, then small 1-norm, then small |entries| read from
    // the last coordinate backwards (so (1,0) beats (0,1)), then sign pattern.
    static std::vector<BigInt> key(const std::vector<BigInt>& n) {
        BigInt sup = 0, one = 0;
        for (const auto& v : n) {
            const BigInt av = abs(v);
            if (av > sup)
                sup = av;
            one += av;
        }
        std::vector<BigInt> k{sup, one};
        for (std::size_t i = n.size(); i-- > 0;)
            k.push_back(BigInt(abs(n[i])));
        for (const auto& v : n)
            k.push_back(v);
        return k;
    }
    bool operator()(const std::vector<BigInt>& a, const std::vector<BigInt>& b) const {
        return key(a) < key(b);
    }
};

std::vector<BigInt> canonical_witness(std::vector<BigInt> n) {
    // Witnesses cannot be reduced by content: integrality of M n is not
    // preserved under division. Only the sign is canonicalized.
    for (const auto& v : n) {
        if (v == 0)
            continue;
        if (v < 0)
            for (auto& w : n)
                w = -w;
        break;
    }
    return n;
}

} // namespace

ExactScalar covolume(const SymplecticLattice& lat) {
    ExactScalar det = det_recursive(lat.basis, lat.dim2);
    if (det.is_zero())
        throw SingularBasis("covolume: basis matrix is singular");
    return det.abs();
}

KleppnerResult kleppner_check(const SymplecticLattice& lat) {
    if (lat.dim2 > 2 && !lat.is_separable())
        return {KleppnerStatus::Unknown, std::nullopt, 0};

    const std::size_t n = lat.dim2;
    std::vector<ExactScalar> m = gram_symplectic(lat);

    // The rational/theta split below assumes a single generator across the
    // whole form.
    const Theta* generator = nullptr;
    for (const auto& e : m) {
        if (e.theta_coef() == 0)
            continue;
        if (generator == nullptr)
            generator = &e.theta();
        else if (!generator->same_generator(e.theta()))
            throw UnsupportedField("kleppner_check: mixed irrational generators");
    }

    // Split M into rational and theta parts; clear denominators separately.
    BigInt den_coef = 1, den_rat = 1;
    for (const auto& e : m) {
        den_coef = lcm_big(den_coef == 0 ? 1 : den_coef,
                           boost::multiprecision::denominator(e.theta_coef()));
        den_rat = lcm_big(den_rat == 0 ? 1 : den_rat,
                          boost::multiprecision::denominator(e.rational_part()));
    }
    IntMat theta_part(n, std::vector<BigInt>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Rational scaled = m[i * n + j].theta_coef() * Rational(den_coef);
            theta_part[i][j] = boost::multiprecision::numerator(scaled);
        }

    // Integral kernel of the theta part: candidates for sigma-regular indices.
    IntMat b = integer_kernel(theta_part);
    const std::size_t k = b.empty() ? 0 : b[0].size();
    if (k == 0)
        return {KleppnerStatus::Holds, std::nullopt, 0};

    // Within the kernel lattice, solve M_rat (B y) in Z^n:
    // with M_rat = C / D this is C B y = 0 (mod D).
    IntMat c(n, std::vector<BigInt>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Rational scaled = m[i * n + j].rational_part() * Rational(den_rat);
            c[i][j] = boost::multiprecision::numerator(scaled);
        }
    const IntMat cb = int_multiply(c, b);

    // Solutions of (CB) y = D z: integer kernel of [CB | -D I], projected to y.
    IntMat stacked(n, std::vector<BigInt>(k + n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j)
            stacked[i][j] = cb[i][j];
        stacked[i][k + i] = -den_rat;
    }
    const IntMat ker = integer_kernel(stacked);
    const std::size_t s = ker.empty() ? 0 : ker[0].size();
    IntMat y_gens(k, std::vector<BigInt>(s, 0));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < s; ++j)
            y_gens[i][j] = ker[i][j];
    const IntMat y_basis = lattice_column_basis(y_gens);
    const std::size_t yb = y_basis.empty() ? 0 : y_basis[0].size();
    if (yb == 0)
        return {KleppnerStatus::Holds, std::nullopt, 0};

    const IntMat witnesses = lattice_column_basis(int_multiply(b, y_basis));
    std::optional<std::vector<BigInt>> best;
    WitnessOrder order;
    for (std::size_t j = 0; j < witnesses[0].size(); ++j) {
        std::vector<BigInt> w(n);
        for (std::size_t i = 0; i < n; ++i)
            w[i] = witnesses[i][j];
        w = canonical_witness(std::move(w));
        if (!best || order(w, *best))
            best = w;
    }
    return {KleppnerStatus::Fails, best, 0};
}

KleppnerResult kleppner_brute(const SymplecticLattice& lat, long radius) {
    const std::size_t n = lat.dim2;
    std::vector<ExactScalar> m = gram_symplectic(lat);

    auto integral_image = [&](const std::vector<BigInt>& vec) {
        for (std::size_t i = 0; i < n; ++i) {
            Rational rat = 0;
            Rational coef = 0;
            for (std::size_t j = 0; j < n; ++j) {
                const Rational nj(vec[j]);
                rat += m[i * n + j].rational_part() * nj;
                coef += m[i * n + j].theta_coef() * nj;
            }
            if (coef != 0)
                return false;
            if (boost::multiprecision::denominator(rat) != 1)
                return false;
        }
        return true;
    };

    std::optional<std::vector<BigInt>> best;
    WitnessOrder order;
    std::vector<long> idx(n, -radius);
    while (true) {
        std::vector<BigInt> vec(n);
        bool nonzero = false;
        for (std::size_t i = 0; i < n; ++i) {
            vec[i] = idx[i];
            nonzero = nonzero || idx[i] != 0;
        }
        if (nonzero && integral_image(vec)) {
            auto w = canonical_witness(vec);
            if (!best || order(w, *best))
                best = w;
        }
        std::size_t pos = 0;
        while (pos < n && ++idx[pos] > radius) {
            idx[pos] = -radius;
            ++pos;
        }
        if (pos == n)
            break;
    }
    if (best)
        return {KleppnerStatus::Fails, best, radius};
    return {KleppnerStatus::Holds, std::nullopt, radius};
}

std::string to_string(KleppnerStatus s) {
    switch (s) {
    case KleppnerStatus::Holds:
        return "holds";
    case KleppnerStatus::Fails:
        return "fails";
    case KleppnerStatus::Unknown:
        return "unknown";
    }
    return "unknown";
}

std::string to_string(Claim c) {
    switch (c) {
    case Claim::ParsevalFrameExists:
        return "parseval_frame_exists";
    case Claim::OnbExists:
        return "onb_exists";
    case Claim::OnSequenceExists:
        return "on_sequence_exists";
    case Claim::NoCyclicVector:
        return "no_cyclic_vector";
    case Claim::NoSeparatingVector:
        return "no_separating_vector";
    }
    return "?";
}

Invariant Invariant::from_exact(ExactScalar v) {
    Invariant inv;
    inv.value = v.to_double();
    inv.exact = std::move(v);
    return inv;
}

Invariant Invariant::from_float(double v, double err) {
    Invariant inv;
    inv.value = v;
    inv.error = err;
    return inv;
}

Verdict classify(const Invariant& invariant, KleppnerStatus kleppner,
                 const ClassifyFlags& flags) {
    Verdict verdict;
    verdict.invariant = invariant;
    verdict.kleppner = kleppner;

    if (invariant.exact) {
        if (invariant.exact->sign() <= 0)
            throw InvalidInvariant("classify: invariant must be positive");
        verdict.regime = invariant.exact->compare(Rational(1));
    } else {
        if (!(invariant.value > 0.0))
            throw InvalidInvariant("classify: invariant must be positive");
        if (std::abs(invariant.value - 1.0) <= invariant.error) {
            verdict.regime = 0;
            verdict.regime_decided = false;
            verdict.caveats.push_back("critical_within_error");
        } else {
            verdict.regime = invariant.value < 1.0 ? -1 : 1;
        }
    }

    if (kleppner == KleppnerStatus::Holds) {
        if (verdict.regime_decided) {
            if (verdict.regime < 0) {
                verdict.claims = {Claim::ParsevalFrameExists, Claim::NoSeparatingVector};
            } else if (verdict.regime == 0) {
                verdict.claims = {Claim::OnbExists};
            } else {
                verdict.claims = {Claim::OnSequenceExists, Claim::NoCyclicVector};
            }
        }
    } else {
        // Without Kleppner only the unconditional necessities survive:
        // cyclic => invariant <= 1 and Riesz => invariant >= 1.
        verdict.caveats.push_back("existence_claims_require_kleppner");
        if (kleppner == KleppnerStatus::Fails)
            verdict.caveats.push_back("central_counterexamples_exist_at_this_generality");
        if (verdict.regime_decided && verdict.regime > 0)
            verdict.claims.insert(Claim::NoCyclicVector);
        if (verdict.regime_decided && verdict.regime < 0)
            verdict.caveats.push_back("no_riesz_sequence_by_necessity");
    }

    if (flags.central_extension)
        verdict.caveats.push_back("central_extension_threshold_halves:vol*d<=1/2");

    return verdict;
}

} // namespace densitylab::density
