// SPDX-License-Identifier: Apache-2.0
#include "densitylab/frame_core.hpp"

#include "densitylab/errors.hpp"

#include <cmath>
#include <utility>

namespace densitylab {

FrameSystem::FrameSystem(std::size_t d, std::vector<std::vector<cdouble>> vecs,
                         std::vector<std::string> labs)
    : dim(d), vectors(std::move(vecs)), labels(std::move(labs)) {
    if (labels.empty() && !vectors.empty()) {
        labels.resize(vectors.size());
        for (std::size_t i = 0; i < vectors.size(); ++i)
            labels[i] = std::to_string(i);
    }
    if (labels.size() != vectors.size())
        throw DimensionMismatch("FrameSystem: labels length != vectors length");
    for (const auto& v : vectors)
        if (v.size() != dim)
            throw DimensionMismatch("FrameSystem: vector length != dim");
}

cdouble inner(const std::vector<cdouble>& x, const std::vector<cdouble>& y) {
    if (x.size() != y.size())
        throw DimensionMismatch("inner: lengths differ");
    cdouble acc{};
    for (std::size_t k = 0; k < x.size(); ++k)
        acc += x[k] * std::conj(y[k]);
    return acc;
}

double norm_sq(const std::vector<cdouble>& x) {
    double s = 0.0;
    for (const auto& e : x)
        s += std::norm(e);
    return s;
}

ComplexMatrix gram(const FrameSystem& f) {
    const std::size_t m = f.size();
    ComplexMatrix g(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i; j < m; ++j) {
            g.at(i, j) = inner(f.vectors[j], f.vectors[i]);
            g.at(j, i) = std::conj(g.at(i, j));
        }
    }
    return g;
}

ComplexMatrix frame_operator(const FrameSystem& f) {
    ComplexMatrix s(f.dim, f.dim);
    for (const auto& v : f.vectors)
        for (std::size_t a = 0; a < f.dim; ++a) {
            if (v[a] == cdouble{})
                continue;
            for (std::size_t b = 0; b < f.dim; ++b)
                s.at(a, b) += v[a] * std::conj(v[b]);
        }
    return s;
}

SpectralReport frame_bounds(const FrameSystem& f, double tol) {
    return hermitian_eigen(frame_operator(f), tol);
}

SpectralReport riesz_bounds(const FrameSystem& f, double tol) {
    return hermitian_eigen(gram(f), tol);
}

namespace {

double inv_sqrt(double x) { return 1.0 / std::sqrt(x); }
double inv(double x) { return 1.0 / x; }

FrameSystem map_system(const FrameSystem& f, const ComplexMatrix& op) {
    std::vector<std::vector<cdouble>> mapped;
    mapped.reserve(f.size());
    for (const auto& v : f.vectors)
        mapped.push_back(op.apply(v));
    return {f.dim, std::move(mapped), f.labels};
}

} // namespace

FrameSystem parsevalize(const FrameSystem& f, double tol) {
    const ComplexMatrix s = frame_operator(f);
    const SpectralReport rep = hermitian_eigen(s, tol);
    if (rep.rank != f.dim || rep.min_nonzero <= 0.0)
        throw NotAFrame("parsevalize: system is not a frame for the full space");
    return map_system(f, hermitian_function(s, tol, inv_sqrt));
}

FrameSystem orthonormalize_riesz(const FrameSystem& f, double tol) {
    const SpectralReport rep = riesz_bounds(f, tol);
    if (rep.rank != f.size())
        throw NotRiesz("orthonormalize_riesz: Gram matrix is rank deficient");
    const ComplexMatrix s = frame_operator(f);
    return map_system(f, hermitian_function(s, tol, inv_sqrt));
}

FrameSystem canonical_dual(const FrameSystem& f, double tol) {
    const ComplexMatrix s = frame_operator(f);
    const SpectralReport rep = hermitian_eigen(s, tol);
    if (rep.rank != f.dim || rep.min_nonzero <= 0.0)
        throw NotAFrame("canonical_dual: system is not a frame for the full space");
    return map_system(f, hermitian_function(s, tol, inv));
}

std::vector<cdouble> analysis(const FrameSystem& f, const std::vector<cdouble>& x) {
    if (x.size() != f.dim)
        throw DimensionMismatch("analysis: vector length != dim");
    std::vector<cdouble> c(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        c[i] = inner(x, f.vectors[i]);
    return c;
}

std::vector<cdouble> synthesis(const FrameSystem& f, const std::vector<cdouble>& c) {
    if (c.size() != f.size())
        throw DimensionMismatch("synthesis: coefficient count != system size");
    std::vector<cdouble> x(f.dim);
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t k = 0; k < f.dim; ++k)
            x[k] += c[i] * f.vectors[i][k];
    return x;
}

} // namespace densitylab
