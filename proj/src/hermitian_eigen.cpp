// SPDX-License-Identifier: Apache-2.0
#include "densitylab/hermitian_eigen.hpp"

#include "densitylab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace densitylab {

namespace {

double off_diagonal_frobenius(const ComplexMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j)
            if (i != j)
                s += std::norm(a.at(i, j));
    return std::sqrt(s);
}

} // namespace

HermitianEigensystem hermitian_eigensystem(const ComplexMatrix& m, double tol) {
    if (!m.square())
        throw NonSquare("hermitian_eigensystem: matrix is not square");
    if (!m.all_finite())
        throw Error("hermitian_eigensystem: matrix has non-finite entries");
    const std::size_t n = m.rows;
    if (n > 0) {
        const double defect = m.hermitian_defect();
        if (defect > std::max(tol, 1e-13) * std::max(1.0, m.max_abs()))
            throw NotHermitian("hermitian_eigensystem: asymmetry exceeds tolerance");
    }

    // Work on the Hermitian average to remove representation round-off.
    ComplexMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a.at(i, j) = 0.5 * (m.at(i, j) + std::conj(m.at(j, i)));

    ComplexMatrix v = ComplexMatrix::identity(n);
    const double scale = std::max(a.frobenius(), 1e-300);
    const double stop = 1e-13 * scale;
    const int max_sweeps = 64;

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (off_diagonal_frobenius(a) <= stop)
            break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cdouble apq = a.at(p, q);
                const double r = std::abs(apq);
                if (r <= 1e-300)
                    continue;
                const cdouble phase = apq / r; // e^{i phi}
                const double app = a.at(p, p).real();
                const double aqq = a.at(q, q).real();
                const double theta = (aqq - app) / (2.0 * r);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const cdouble s_phase = s * phase;
                const cdouble s_phase_conj = std::conj(s_phase);

                // A <- U* A U with U the (p,q) plane rotation.
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == q)
                        continue;
                    const cdouble akp = a.at(k, p);
                    const cdouble akq = a.at(k, q);
                    a.at(k, p) = c * akp - s_phase_conj * akq;
                    a.at(k, q) = s_phase * akp + c * akq;
                    a.at(p, k) = std::conj(a.at(k, p));
                    a.at(q, k) = std::conj(a.at(k, q));
                }
                a.at(p, p) = app - t * r;
                a.at(q, q) = aqq + t * r;
                a.at(p, q) = 0.0;
                a.at(q, p) = 0.0;

                for (std::size_t k = 0; k < n; ++k) {
                    const cdouble vkp = v.at(k, p);
                    const cdouble vkq = v.at(k, q);
                    v.at(k, p) = c * vkp - s_phase_conj * vkq;
                    v.at(k, q) = s_phase * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<double> diag(n);
    for (std::size_t i = 0; i < n; ++i)
        diag[i] = a.at(i, i).real();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&diag](std::size_t x, std::size_t y) { return diag[x] < diag[y]; });

    HermitianEigensystem out;
    out.eigenvalues.resize(n);
    out.vectors = ComplexMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        out.eigenvalues[j] = diag[order[j]];
        for (std::size_t i = 0; i < n; ++i)
            out.vectors.at(i, j) = v.at(i, order[j]);
    }
    return out;
}

SpectralReport spectral_report(std::vector<double> eigenvalues_ascending, double tol) {
    SpectralReport rep;
    rep.eigenvalues = std::move(eigenvalues_ascending);
    rep.tolerance_used = tol;
    if (rep.eigenvalues.empty())
        return rep;
    double abs_max = 0.0;
    for (double ev : rep.eigenvalues)
        abs_max = std::max(abs_max, std::abs(ev));
    const double cut = tol * abs_max;
    rep.max = rep.eigenvalues.back();
    rep.min_nonzero = 0.0;
    for (double ev : rep.eigenvalues) {
        if (ev > cut) {
            ++rep.rank;
            if (rep.min_nonzero == 0.0)
                rep.min_nonzero = ev;
        }
    }
    return rep;
}

SpectralReport hermitian_eigen(const ComplexMatrix& m, double tol) {
    return spectral_report(hermitian_eigensystem(m, tol).eigenvalues, tol);
}

ComplexMatrix hermitian_function(const ComplexMatrix& m, double tol, double (*f)(double)) {
    const HermitianEigensystem es = hermitian_eigensystem(m, tol);
    const std::size_t n = m.rows;
    double abs_max = 0.0;
    for (double ev : es.eigenvalues)
        abs_max = std::max(abs_max, std::abs(ev));
    const double cut = tol * abs_max;

    ComplexMatrix out(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        const double ev = es.eigenvalues[j];
        if (ev <= cut)
            continue; // below the rank cut: direction maps to zero
        const double fv = f(ev);
        for (std::size_t i = 0; i < n; ++i) {
            const cdouble vij = es.vectors.at(i, j);
            if (vij == cdouble{})
                continue;
            for (std::size_t k = 0; k < n; ++k)
                out.at(i, k) += fv * vij * std::conj(es.vectors.at(k, j));
        }
    }
    return out;
}

} // namespace densitylab
