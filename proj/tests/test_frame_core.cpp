// SPDX-License-Identifier: Apache-2.0
#include "densitylab/errors.hpp"
#include "densitylab/frame_core.hpp"
#include "densitylab/prng.hpp"
#include "densitylab/report_json.hpp"

#include <doctest.h>

#include <cmath>

using namespace densitylab;

namespace {

FrameSystem standard_basis(std::size_t n) {
    std::vector<std::vector<cdouble>> vecs(n, std::vector<cdouble>(n));
    std::vector<std::string> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        vecs[i][i] = 1.0;
        labels[i] = "e" + std::to_string(i);
    }
    return {n, vecs, labels};
}

// Three unit vectors in R^2 at 0, 120, 240 degrees.
FrameSystem mercedes() {
    const double s = std::sqrt(3.0) / 2.0;
    return {2,
            {{1.0, 0.0}, {-0.5, s}, {-0.5, -s}},
            {"a", "b", "c"}};
}

std::vector<cdouble> random_vector(SplitMix64& rng, std::size_t n) {
    std::vector<cdouble> v(n);
    for (auto& e : v)
        e = rng.next_complex_gaussian();
    return v;
}

std::vector<cdouble> random_unit_vector(SplitMix64& rng, std::size_t n) {
    auto v = random_vector(rng, n);
    const double nn = std::sqrt(norm_sq(v));
    for (auto& e : v)
        e /= nn;
    return v;
}

// m >= n random vectors; retried until well-conditioned as a frame.
FrameSystem random_frame(SplitMix64& rng, std::size_t n, std::size_t m) {
    while (true) {
        std::vector<std::vector<cdouble>> vecs;
        for (std::size_t i = 0; i < m; ++i)
            vecs.push_back(random_vector(rng, n));
        FrameSystem f(n, vecs, {});
        const auto rep = frame_bounds(f);
        if (rep.rank == n && rep.min_nonzero > 1e-3 * rep.max)
            return f;
    }
}

// k <= n random vectors; retried until well-conditioned as a Riesz system.
FrameSystem random_riesz(SplitMix64& rng, std::size_t n, std::size_t k) {
    while (true) {
        std::vector<std::vector<cdouble>> vecs;
        for (std::size_t i = 0; i < k; ++i)
            vecs.push_back(random_vector(rng, n));
        FrameSystem f(n, vecs, {});
        const auto rep = riesz_bounds(f);
        if (rep.rank == k && rep.min_nonzero > 1e-3 * rep.max)
            return f;
    }
}

ComplexMatrix operator_matrix(const FrameSystem& f) {
    // synthesis o analysis applied to the standard basis columns.
    ComplexMatrix m(f.dim, f.dim);
    for (std::size_t j = 0; j < f.dim; ++j) {
        std::vector<cdouble> e(f.dim);
        e[j] = 1.0;
        const auto out = synthesis(f, analysis(f, e));
        for (std::size_t i = 0; i < f.dim; ++i)
            m.at(i, j) = out[i];
    }
    return m;
}

} // namespace

TEST_CASE("hermitian_eigen on pinned matrices") {
    auto id3 = ComplexMatrix::identity(3);
    auto rep = hermitian_eigen(id3, 1e-10);
    CHECK(rep.eigenvalues == std::vector<double>{1.0, 1.0, 1.0});
    CHECK(rep.rank == 3);
    CHECK(rep.min_nonzero == doctest::Approx(1.0));

    ComplexMatrix diag(2, 2);
    diag.at(1, 1) = 2.0;
    rep = hermitian_eigen(diag, 1e-10);
    CHECK(rep.eigenvalues[0] == doctest::Approx(0.0));
    CHECK(rep.eigenvalues[1] == doctest::Approx(2.0));
    CHECK(rep.min_nonzero == doctest::Approx(2.0));
    CHECK(rep.rank == 1);

    // [[2,1],[1,2]]: characteristic polynomial (2-t)^2 - 1, roots 1 and 3.
    ComplexMatrix m(2, 2);
    m.at(0, 0) = 2.0;
    m.at(0, 1) = 1.0;
    m.at(1, 0) = 1.0;
    m.at(1, 1) = 2.0;
    rep = hermitian_eigen(m, 1e-10);
    CHECK(rep.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.eigenvalues[1] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("hermitian_eigen rejects bad input") {
    ComplexMatrix rect(2, 3);
    CHECK_THROWS_AS(hermitian_eigen(rect, 1e-10), NonSquare);

    ComplexMatrix skew(2, 2);
    skew.at(0, 1) = 1.0;
    skew.at(1, 0) = -1.0;
    CHECK_THROWS_AS(hermitian_eigen(skew, 1e-10), NotHermitian);
}

TEST_CASE("hermitian_eigen is deterministic and accurate on random input") {
    SplitMix64 rng(42);
    for (int trial = 0; trial < 5; ++trial) {
        const std::size_t n = 5;
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m.at(i, i) = rng.next_gaussian();
            for (std::size_t j = i + 1; j < n; ++j) {
                m.at(i, j) = rng.next_complex_gaussian();
                m.at(j, i) = std::conj(m.at(i, j));
            }
        }
        const auto es1 = hermitian_eigensystem(m);
        const auto es2 = hermitian_eigensystem(m);
        CHECK(es1.eigenvalues == es2.eigenvalues); // bitwise determinism

        // Residual ||M v - lambda v||.
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<cdouble> v(n);
            for (std::size_t i = 0; i < n; ++i)
                v[i] = es1.vectors.at(i, j);
            const auto mv = m.apply(v);
            double res = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                res = std::max(res, std::abs(mv[i] - es1.eigenvalues[j] * v[i]));
            CHECK(res < 1e-11);
        }
    }
}

TEST_CASE("gram on pinned systems") {
    CHECK(gram(standard_basis(2)).max_abs_diff(ComplexMatrix::identity(2)) == 0.0);

    FrameSystem single(1, {{cdouble(1.0)}}, {"v"});
    const auto g1 = gram(single);
    CHECK(g1.rows == 1);
    CHECK(g1.at(0, 0) == cdouble(1.0));

    const auto g = gram(mercedes());
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            const double expected = i == j ? 1.0 : -0.5;
            CHECK(std::abs(g.at(i, j) - cdouble(expected)) < 1e-15);
        }
}

TEST_CASE("frame_operator on pinned systems") {
    CHECK(frame_operator(standard_basis(4)).max_abs_diff(ComplexMatrix::identity(4)) == 0.0);

    auto s = frame_operator(mercedes());
    ComplexMatrix expected = ComplexMatrix::identity(2);
    expected *= 1.5;
    CHECK(s.max_abs_diff(expected) < 1e-15);

    FrameSystem empty(3, {}, {});
    CHECK(frame_operator(empty).max_abs() == 0.0);
    const auto rep = frame_bounds(empty);
    CHECK(rep.rank == 0);
    CHECK(rep.min_nonzero == 0.0);
}

TEST_CASE("frame_bounds examples") {
    auto rep = frame_bounds(standard_basis(3));
    CHECK(rep.min_nonzero == doctest::Approx(1.0));
    CHECK(rep.max == doctest::Approx(1.0));
    CHECK(rep.rank == 3);

    rep = frame_bounds(mercedes());
    CHECK(rep.min_nonzero == doctest::Approx(1.5));
    CHECK(rep.max == doctest::Approx(1.5));

    // Two copies of one unit vector in C^2: spectrum {0, 2}, not a frame.
    FrameSystem doubled(2, {{1.0, 0.0}, {1.0, 0.0}}, {"v", "v'"});
    rep = frame_bounds(doubled);
    CHECK(rep.eigenvalues[0] == doctest::Approx(0.0));
    CHECK(rep.eigenvalues[1] == doctest::Approx(2.0));
    CHECK(rep.rank == 1);
}

TEST_CASE("riesz_bounds examples") {
    auto rep = riesz_bounds(standard_basis(3));
    for (double ev : rep.eigenvalues)
        CHECK(ev == doctest::Approx(1.0));

    // Repetitions are allowed in the system but kill the Riesz property.
    FrameSystem doubled(2, {{1.0, 0.0}, {1.0, 0.0}}, {"v", "v'"});
    rep = riesz_bounds(doubled);
    CHECK(rep.eigenvalues.front() == doctest::Approx(0.0));
    CHECK(rep.rank < doubled.size());

    rep = riesz_bounds(mercedes());
    CHECK(rep.eigenvalues.front() == doctest::Approx(0.0));
}

TEST_CASE("parsevalize") {
    const auto onb = standard_basis(3);
    const auto p1 = parsevalize(onb);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t k = 0; k < 3; ++k)
            CHECK(std::abs(p1.vectors[i][k] - onb.vectors[i][k]) < 1e-12);

    const auto merc = mercedes();
    const auto pm = parsevalize(merc);
    const double scale = std::sqrt(2.0 / 3.0);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t k = 0; k < 2; ++k)
            CHECK(std::abs(pm.vectors[i][k] - scale * merc.vectors[i][k]) < 1e-12);
    CHECK(frame_operator(pm).max_abs_diff(ComplexMatrix::identity(2)) < 1e-12);

    // Scaled ONB comes back rescaled to unit vectors.
    FrameSystem scaled(2, {{2.0, 0.0}, {0.0, 2.0}}, {"a", "b"});
    const auto ps = parsevalize(scaled);
    CHECK(std::abs(ps.vectors[0][0] - cdouble(1.0)) < 1e-12);
    CHECK(std::abs(ps.vectors[1][1] - cdouble(1.0)) < 1e-12);

    FrameSystem deficient(2, {{1.0, 0.0}}, {"a"});
    CHECK_THROWS_AS(parsevalize(deficient), NotAFrame);
}

TEST_CASE("orthonormalize_riesz") {
    const auto onb = standard_basis(2);
    const auto q0 = orthonormalize_riesz(onb);
    CHECK(gram(q0).max_abs_diff(ComplexMatrix::identity(2)) < 1e-12);

    // {e1, e1 + e2} is a Riesz basis; the output must have Gram I.
    FrameSystem riesz(2, {{1.0, 0.0}, {1.0, 1.0}}, {"a", "b"});
    const auto q = orthonormalize_riesz(riesz);
    CHECK(gram(q).max_abs_diff(ComplexMatrix::identity(2)) < 1e-10);
    const auto fb = frame_bounds(q);
    CHECK(fb.rank == 2); // still spans C^2

    FrameSystem longvec(2, {{2.0, 0.0}}, {"a"});
    const auto q1 = orthonormalize_riesz(longvec);
    CHECK(std::abs(norm_sq(q1.vectors[0]) - 1.0) < 1e-12);

    FrameSystem doubled(2, {{1.0, 0.0}, {1.0, 0.0}}, {"v", "v'"});
    CHECK_THROWS_AS(orthonormalize_riesz(doubled), NotRiesz);
}

TEST_CASE("canonical_dual") {
    const auto onb = standard_basis(3);
    const auto d0 = canonical_dual(onb);
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(std::abs(d0.vectors[i][i] - cdouble(1.0)) < 1e-12);

    const auto merc = mercedes();
    const auto dm = canonical_dual(merc);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t k = 0; k < 2; ++k)
            CHECK(std::abs(dm.vectors[i][k] - (2.0 / 3.0) * merc.vectors[i][k]) < 1e-12);

    FrameSystem riesz(2, {{1.0, 0.0}, {1.0, 1.0}}, {"a", "b"});
    const auto dual = canonical_dual(riesz);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            const cdouble bi = inner(riesz.vectors[i], dual.vectors[j]);
            CHECK(std::abs(bi - cdouble(i == j ? 1.0 : 0.0)) < 1e-10);
        }

    FrameSystem deficient(2, {{1.0, 0.0}}, {"a"});
    CHECK_THROWS_AS(canonical_dual(deficient), NotAFrame);
}

TEST_CASE("analysis and synthesis") {
    const auto onb = standard_basis(3);
    std::vector<cdouble> e0{1.0, 0.0, 0.0};
    auto c = analysis(onb, e0);
    CHECK(c[0] == cdouble(1.0));
    CHECK(c[1] == cdouble(0.0));

    FrameSystem f1(2, {{1.0, 0.0}}, {"a"});
    c = analysis(f1, {0.0, 1.0});
    CHECK(c[0] == cdouble(0.0));

    c = analysis(mercedes(), {1.0, 0.0});
    CHECK(std::abs(c[0] - cdouble(1.0)) < 1e-15);
    CHECK(std::abs(c[1] - cdouble(-0.5)) < 1e-15);
    CHECK(std::abs(c[2] - cdouble(-0.5)) < 1e-15);

    auto x = synthesis(onb, {1.0, 0.0, 0.0});
    CHECK(x[0] == cdouble(1.0));
    x = synthesis(mercedes(), {0.0, 0.0, 0.0});
    CHECK(norm_sq(x) == 0.0);
    x = synthesis(mercedes(), {1.0, 1.0, 1.0});
    CHECK(norm_sq(x) < 1e-28); // the triple sums to zero

    CHECK_THROWS_AS(analysis(onb, {1.0, 0.0}), DimensionMismatch);
    CHECK_THROWS_AS(synthesis(onb, {1.0, 0.0}), DimensionMismatch);
}

TEST_CASE("adjoint relation between analysis and synthesis") {
    SplitMix64 rng(7);
    const auto f = random_frame(rng, 4, 6);
    for (int trial = 0; trial < 20; ++trial) {
        const auto x = random_vector(rng, 4);
        const auto c = random_vector(rng, 6);
        const cdouble lhs = inner(synthesis(f, c), x);
        cdouble rhs{};
        const auto cf = analysis(f, x);
        for (std::size_t i = 0; i < 6; ++i)
            rhs += c[i] * std::conj(cf[i]);
        CHECK(std::abs(lhs - rhs) < 1e-10);
    }
}

TEST_CASE("frame operator equals synthesis composed with analysis") {
    SplitMix64 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 2 + trial % 5;
        const std::size_t m = n + trial % 4;
        const auto f = random_frame(rng, n, m);
        CHECK(frame_operator(f).max_abs_diff(operator_matrix(f)) < 1e-12);
    }
}

TEST_CASE("gram and frame operator share the nonzero spectrum") {
    SplitMix64 rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 3 + trial % 4;
        const std::size_t m = 1 + trial % 7;
        std::vector<std::vector<cdouble>> vecs;
        for (std::size_t i = 0; i < m; ++i)
            vecs.push_back(random_vector(rng, n));
        FrameSystem f(n, vecs, {});
        auto gr = riesz_bounds(f);
        auto fr = frame_bounds(f);
        CHECK(gr.rank == fr.rank);
        std::vector<double> ag(gr.eigenvalues.rbegin(), gr.eigenvalues.rend());
        std::vector<double> af(fr.eigenvalues.rbegin(), fr.eigenvalues.rend());
        for (std::size_t i = 0; i < gr.rank; ++i)
            CHECK(std::abs(ag[i] - af[i]) < 1e-10 * std::max(1.0, ag[0]));
    }
}

TEST_CASE("frame and Riesz inequalities hold with the reported bounds") {
    SplitMix64 rng(17);
    const auto f = random_frame(rng, 5, 9);
    const auto fb = frame_bounds(f);
    for (int trial = 0; trial < 100; ++trial) {
        const auto x = random_unit_vector(rng, 5);
        double sum = 0.0;
        for (const auto& c : analysis(f, x))
            sum += std::norm(c);
        CHECK(sum >= fb.min_nonzero - 1e-9);
        CHECK(sum <= fb.max + 1e-9);
    }

    const auto r = random_riesz(rng, 6, 4);
    const auto rb = riesz_bounds(r);
    for (int trial = 0; trial < 100; ++trial) {
        auto c = random_vector(rng, 4);
        const double cn = norm_sq(c);
        const double sn = norm_sq(synthesis(r, c));
        CHECK(sn >= rb.eigenvalues.front() * cn - 1e-9);
        CHECK(sn <= rb.eigenvalues.back() * cn + 1e-9);
    }
}

TEST_CASE("Parseval systems with unit-norm vectors have identity Gram") {
    // Telescoping norm identity: a Parseval frame of unit vectors is an
    // orthonormal basis, so all off-diagonal Gram entries vanish.
    SplitMix64 rng(19);
    for (int trial = 0; trial < 5; ++trial) {
        const std::size_t n = 2 + trial;
        const auto basis = random_riesz(rng, n, n);
        const auto pv = parsevalize(basis);
        for (const auto& v : pv.vectors)
            CHECK(std::abs(norm_sq(v) - 1.0) < 1e-10);
        const auto g = gram(pv);
        CHECK(g.max_abs_diff(ComplexMatrix::identity(n)) < 1e-10);
    }
}

TEST_CASE("FrameSystem JSON round trip is exact") {
    SplitMix64 rng(23);
    const auto f = random_frame(rng, 3, 5);
    const Json j = frame_system_to_json(f);
    const std::string text = j.dump();
    const auto f2 = frame_system_from_json(Json::parse(text));
    REQUIRE(f2.dim == f.dim);
    REQUIRE(f2.size() == f.size());
    CHECK(f2.labels == f.labels);
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t k = 0; k < f.dim; ++k)
            CHECK(f2.vectors[i][k] == f.vectors[i][k]); // bit-exact round trip
}
