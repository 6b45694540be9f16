// SPDX-License-Identifier: Apache-2.0
#include "densitylab/finite_wh.hpp"

#include "densitylab/errors.hpp"

#include <cmath>
#include <string>

namespace densitylab::wh {

namespace {

long reduce_mod(long long v, std::size_t n) {
    const long long m = static_cast<long long>(n);
    long long r = v % m;
    if (r < 0)
        r += m;
    return static_cast<long>(r);
}

} // namespace

FiniteWHRep::FiniteWHRep(std::size_t n) : modulus(n) {
    if (n < 1)
        throw Error("FiniteWHRep: modulus must be >= 1");
}

cdouble FiniteWHRep::root_power(long long e) const {
    const long r = reduce_mod(e, modulus);
    return std::polar(1.0, 2.0 * M_PI * static_cast<double>(r) /
                               static_cast<double>(modulus));
}

FiniteLattice::FiniteLattice(std::size_t n_, std::size_t a_, std::size_t b_)
    : n(n_), a(a_), b(b_) {
    if (a == 0 || b == 0 || n % a != 0 || n % b != 0)
        throw Error("FiniteLattice: a and b must divide N");
    points.reserve((n / a) * (n / b));
    for (std::size_t i = 0; i < n / a; ++i)
        for (std::size_t j = 0; j < n / b; ++j)
            points.emplace_back(static_cast<long>(a * i), static_cast<long>(b * j));
}

bool FiniteLattice::contains(LatticePoint gamma) const {
    const long k = reduce_mod(gamma.first, n);
    const long l = reduce_mod(gamma.second, n);
    return k % static_cast<long>(a) == 0 && l % static_cast<long>(b) == 0;
}

std::size_t FiniteLattice::index_of(LatticePoint gamma) const {
    if (!contains(gamma))
        throw GammaNotInLattice("lattice point (" + std::to_string(gamma.first) + "," +
                                std::to_string(gamma.second) + ") not in lattice");
    const std::size_t i = static_cast<std::size_t>(reduce_mod(gamma.first, n)) / a;
    const std::size_t j = static_cast<std::size_t>(reduce_mod(gamma.second, n)) / b;
    return i * (n / b) + j;
}

cdouble cocycle(const FiniteWHRep& rep, LatticePoint g1, LatticePoint g2) {
    return rep.root_power(static_cast<long long>(g2.second) *
                          static_cast<long long>(g1.first));
}

ComplexMatrix wh_matrix(const FiniteWHRep& rep, long k, long l) {
    const std::size_t n = rep.modulus;
    ComplexMatrix m(n, n);
    for (std::size_t t = 0; t < n; ++t) {
        const long s = reduce_mod(static_cast<long long>(t) - k, n);
        m.at(t, static_cast<std::size_t>(s)) =
            rep.root_power(-static_cast<long long>(l) * static_cast<long long>(t));
    }
    return m;
}

FrameSystem wh_system(const FiniteWHRep& rep, const FiniteLattice& lat,
                      const std::vector<cdouble>& window) {
    if (window.size() != rep.modulus)
        throw DimensionMismatch("wh_system: window length != N");
    std::vector<std::vector<cdouble>> vectors;
    std::vector<std::string> labels;
    vectors.reserve(lat.size());
    labels.reserve(lat.size());
    for (const auto& [k, l] : lat.points) {
        vectors.push_back(wh_matrix(rep, k, l).apply(window));
        labels.push_back(std::to_string(k) + "," + std::to_string(l));
    }
    return {rep.modulus, std::move(vectors), std::move(labels)};
}

WHCoefficients twisted_conjugation(const FiniteWHRep& rep, const FiniteLattice& lat,
                                   LatticePoint gamma, const WHCoefficients& c) {
    if (!lat.contains(gamma))
        throw GammaNotInLattice("twisted_conjugation: gamma not in lattice");
    if (c.values.size() != lat.size())
        throw DimensionMismatch("twisted_conjugation: coefficient count != lattice size");
    const std::size_t n = rep.modulus;
    const LatticePoint ginv{reduce_mod(-gamma.first, n), reduce_mod(-gamma.second, n)};
    WHCoefficients out;
    out.values.resize(lat.size());
    for (std::size_t idx = 0; idx < lat.size(); ++idx) {
        // The group is abelian, so gamma^{-1} gamma' gamma = gamma' and the
        // twist is a pure phase on each entry.
        const LatticePoint gp = lat.points[idx];
        const cdouble phase = std::conj(cocycle(rep, ginv, gp)) * cocycle(rep, gp, ginv);
        out.values[idx] = phase * c.values[idx];
    }
    return out;
}

ComplexMatrix wh_operator(const FiniteWHRep& rep, const FiniteLattice& lat,
                          const WHCoefficients& c) {
    if (c.values.size() != lat.size())
        throw DimensionMismatch("wh_operator: coefficient count != lattice size");
    ComplexMatrix acc(rep.modulus, rep.modulus);
    for (std::size_t idx = 0; idx < lat.size(); ++idx) {
        if (c.values[idx] == cdouble{})
            continue;
        ComplexMatrix m = wh_matrix(rep, lat.points[idx].first, lat.points[idx].second);
        m *= c.values[idx];
        acc = acc + m;
    }
    return acc;
}

double verify_conjugation(const FiniteWHRep& rep, const FiniteLattice& lat,
                          LatticePoint gamma, const WHCoefficients& c) {
    const ComplexMatrix pg = wh_matrix(rep, gamma.first, gamma.second);
    const ComplexMatrix lhs = pg * wh_operator(rep, lat, c) * pg.adjoint();
    const ComplexMatrix rhs = wh_operator(rep, lat, twisted_conjugation(rep, lat, gamma, c));
    return lhs.max_abs_diff(rhs);
}

WHCoefficients expand_operator(const FiniteWHRep& rep, const ComplexMatrix& t) {
    const std::size_t n = rep.modulus;
    if (t.rows != n || t.cols != n)
        throw DimensionMismatch("expand_operator: matrix must be N x N");
    const FiniteLattice full(n, 1, 1);
    WHCoefficients c;
    c.values.resize(full.size());
    for (std::size_t idx = 0; idx < full.size(); ++idx) {
        const ComplexMatrix basis =
            wh_matrix(rep, full.points[idx].first, full.points[idx].second);
        c.values[idx] = t.hs_inner(basis) / static_cast<double>(n);
    }
    return c;
}

Rational finite_density_invariant(const FiniteWHRep& rep, const FiniteLattice& lat) {
    return Rational(BigInt(lat.a) * BigInt(lat.b), BigInt(rep.modulus));
}

WHReport wh_report(const FiniteWHRep& rep, const FiniteLattice& lat,
                   const std::vector<cdouble>& window, double tol) {
    WHReport rep_out;
    rep_out.invariant = finite_density_invariant(rep, lat);
    const FrameSystem sys = wh_system(rep, lat, window);
    rep_out.frame_bounds = frame_bounds(sys, tol);
    rep_out.riesz_bounds = riesz_bounds(sys, tol);
    const ComplexMatrix s = frame_operator(sys);
    rep_out.parseval = s.max_abs_diff(ComplexMatrix::identity(rep.modulus)) < 1e-10;
    rep_out.onb =
        rep_out.parseval &&
        gram(sys).max_abs_diff(ComplexMatrix::identity(sys.size())) < 1e-10;
    return rep_out;
}

} // namespace densitylab::wh
