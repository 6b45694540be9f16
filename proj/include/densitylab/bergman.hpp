// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "densitylab/complex_matrix.hpp"
#include "densitylab/density.hpp"
#include "densitylab/hermitian_eigen.hpp"
#include "densitylab/quadrature.hpp"
#include "densitylab/rational.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace densitylab::bergman {

// Point of the upper half plane.
struct UHPoint {
    cdouble z;

    explicit UHPoint(cdouble value);
    double x() const { return z.real(); }
    double y() const { return z.imag(); }
};

// Element of PSL(2,R): unit determinant, identified with its negation.
// Canonical sign: first nonzero of (a, b, c, d) is positive.
struct MoebiusMap {
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

    MoebiusMap() = default;
    MoebiusMap(double a_, double b_, double c_, double d_);

    static MoebiusMap identity() { return {}; }
    // S = [[0,-1],[1,0]] (z -> -1/z), T = [[1,1],[0,1]] (z -> z+1).
    static MoebiusMap inversion();
    static MoebiusMap translation();

    MoebiusMap compose(const MoebiusMap& other) const; // this * other
    MoebiusMap inverse() const;
    double max_coeff_diff(const MoebiusMap& other) const;
};

UHPoint moebius_apply(const MoebiusMap& m, const UHPoint& z);

// d(z, w) = arccosh(1 + |z-w|^2 / (2 Im z Im w)).
double hyperbolic_distance(const UHPoint& z, const UHPoint& w);

// j(m, z)^alpha = (cz + d)^{-alpha}, principal branch.
cdouble j_cocycle_pow(const MoebiusMap& m, const UHPoint& z, double alpha);

// Reproducing kernel k_w(z) = 2^{alpha-2} pi^{-1} (alpha-1) i^alpha (z - conj w)^{-alpha}.
cdouble kernel_eval(double alpha, const UHPoint& w, const UHPoint& z);

// ||k_w||^2 = k_w(w) (real positive).
double kernel_norm_sq(double alpha, const UHPoint& w);

// Weighted Bergman inner product by quadrature:
// int f(z) conj(g(z)) Im(z)^{alpha-2} dx dy over the upper half plane, with a
// tan-compactified domain centered near `center`.
cdouble bergman_inner(const std::function<cdouble(cdouble)>& f,
                      const std::function<cdouble(cdouble)>& g, double alpha,
                      cdouble center, const QuadOptions& opts = {1e-8, 1e-8, 40});

cdouble bergman_inner_kernels(double alpha, const UHPoint& w1, const UHPoint& w2,
                              const QuadOptions& opts = {1e-8, 1e-8, 40});

struct FuchsianGroup {
    std::string name;
    std::vector<MoebiusMap> generators;
    double covolume = 0.0;
    // Exact covolume as a rational multiple of pi, when known.
    std::optional<Rational> covolume_pi_multiple;
    bool co_compact = false;
    // Set for SL(2,R)-style central extensions containing -I; triggers the
    // halved completeness threshold caveat.
    bool central_extension = false;
};

// The modular group with generators S, T and covolume pi/3.
FuchsianGroup psl2z();

struct OrbitPoint {
    UHPoint point;
    MoebiusMap map;
};

// Distinct orbit points m w for words of length <= word_radius in the
// generators and inverses; hyperbolic dedup at 1e-10, first representative
// kept (breadth-first order).
std::vector<OrbitPoint> orbit_ball(const FuchsianGroup& g, const UHPoint& w,
                                   int word_radius);

// Number of distinct group elements of word length <= word_radius fixing w.
// A lower bound on the stabilizer order; exact for the bundled groups at
// radius >= 4.
long stabilizer_order(const FuchsianGroup& g, const UHPoint& w, int word_radius);

// Numerical integral of y^{-2} over the standard modular fundamental domain
// {|x| <= 1/2, x^2 + y^2 >= 1}; contract: pi/3.
double modular_covolume(const QuadOptions& opts = {1e-9, 1e-9, 40});
// Same, restricted to x in [x_lo, x_hi] (for symmetry checks).
double modular_covolume(double x_lo, double x_hi, const QuadOptions& opts);

struct BergmanVerdict {
    double alpha = 0.0;
    std::optional<Rational> alpha_exact;
    double d_pi = 0.0;               // (alpha - 1) / (4 pi)
    density::Invariant invariant;    // vol * d_pi
    density::Verdict trichotomy;     // generic-vector claims
    long stabilizer = 1;
    density::Invariant kernel_invariant; // #F_w * vol * d_pi
    bool kernel_complete = false;
    bool kernel_frame = false;
    bool kernel_riesz_indexed = false;
    bool kernel_riesz_reduced = false;
    bool co_compact = false;
    std::vector<std::string> caveats;
};

// Trichotomy + kernel-vector thresholds for the weighted Bergman space.
// alpha_exact enables the symbolic invariant path when the covolume is a
// known rational multiple of pi.
BergmanVerdict bergman_classification(double alpha, std::optional<Rational> alpha_exact,
                                      const FuchsianGroup& g, const UHPoint& w,
                                      int stabilizer_radius = 4);

struct KernelGram {
    ComplexMatrix gram; // normalized kernels
    std::vector<OrbitPoint> points;
    SpectralReport spectrum;
};

// Gram of normalized kernels over the orbit ball. The closed-form kernel
// pairing is the default; quadrature is the validating oracle.
KernelGram kernel_orbit_gram(double alpha, const FuchsianGroup& g, const UHPoint& w,
                             int word_radius, const QuadOptions& opts = {1e-8, 1e-8, 40},
                             bool use_closed_form = true);

// H_n(t) = t^{alpha-1} e^{-t} L_n^{(alpha-1)}(2t), stable recurrence.
double laguerre_window(double alpha, int n, double t);

} // namespace densitylab::bergman
