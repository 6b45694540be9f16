// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "densitylab/complex_matrix.hpp"
#include "densitylab/exact_scalar.hpp"
#include "densitylab/hermitian_eigen.hpp"
#include "densitylab/quadrature.hpp"

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace densitylab::gabor {

// Time-frequency shift convention, fixed project-wide:
//
//     (pi(x, xi) f)(t) = exp(-2 pi i xi t) f(t - x),
//
// which gives the product law pi(z) pi(z') = sigma(z, z') pi(z + z') with
// cocycle sigma((x,xi),(x',xi')) = exp(2 pi i xi' x). The finite module uses
// the same order, so phase-level tests agree across both.
//
// Worked phase example: the Gaussian matrix coefficient below satisfies
// amb(x, xi) = exp(i pi x xi) exp(-pi (x^2 + xi^2) / 2); at z = (1, 1) the
// phase is exp(i pi) = -1.
struct TFShift {
    double x = 0.0;
    double xi = 0.0;
};

inline TFShift operator+(TFShift a, TFShift b) { return {a.x + b.x, a.xi + b.xi}; }
inline TFShift operator-(TFShift a, TFShift b) { return {a.x - b.x, a.xi - b.xi}; }

// sigma(z, z') = exp(2 pi i xi' x).
cdouble cocycle(TFShift z, TFShift zp);

struct Window {
    enum class Kind { Gaussian, Box, Sampled };
    Kind kind = Kind::Gaussian;

    // Sampled windows live on the grid t0 + j * step, j = 0..samples-1.
    double t0 = 0.0;
    double step = 0.0;
    std::vector<cdouble> samples;

    static Window gaussian(); // g(t) = 2^{1/4} exp(-pi t^2), unit norm
    static Window box();      // indicator of [0, 1), unit norm
    static Window sampled(double t0, double step, std::vector<cdouble> samples);

    double norm() const;
    double norm_sq() const;
    // Pointwise evaluation (Gaussian/Box only).
    cdouble eval(double t) const;
};

// Sample a Gaussian/Box window on a grid (for tf_shift round trips).
Window sample_window(const Window& w, double t0, double step, std::size_t count);

// pi(z) f for a sampled window. The time shift must land on the grid.
Window tf_shift(TFShift z, const Window& sampled);

// <g, pi(x,xi) g> for the unit Gaussian, closed form
// exp(i pi x xi) exp(-pi (x^2 + xi^2)/2).
cdouble gaussian_ambiguity(double x, double xi);

// Same matrix coefficient for the box window (closed form).
cdouble box_ambiguity(double x, double xi);

// <w, pi(z) w> by adaptive quadrature (Gaussian/Box), used as the oracle for
// the closed forms.
cdouble ambiguity_quadrature(const Window& w, TFShift z, const QuadOptions& opts = {});

// <pi(z1) g, pi(z2) g> expressed through the ambiguity function.
cdouble shifted_inner(const Window& w, TFShift z1, TFShift z2);

// 2d lattice A Z^2; exact entries optional (single-generator scalars).
struct PlaneLattice {
    std::array<double, 4> basis{1.0, 0.0, 0.0, 1.0}; // row-major [[a,b],[c,d]]
    std::optional<std::array<ExactScalar, 4>> exact;

    static PlaneLattice separable(double alpha, double beta);
    static PlaneLattice from_exact(std::array<ExactScalar, 4> entries);

    double covolume() const;
    std::optional<std::pair<double, double>> separable_steps() const;
    TFShift point(long n1, long n2) const;
};

struct GaborGram {
    ComplexMatrix gram;
    std::vector<std::pair<long, long>> labels;
    SpectralReport spectrum;
};

// Gram of {pi(A nu) w : ||nu||_inf <= radius}. Gaussian entries use the
// closed-form ambiguity unless force_quadrature is set; Box entries honor the
// same switch; Sampled entries use grid sums.
GaborGram gabor_gram(const Window& w, const PlaneLattice& lat, int radius,
                     const QuadOptions& opts = {}, bool force_quadrature = false);

struct GaborBoundsReport {
    double lower = 0.0; // A
    double upper = 0.0; // B
    std::string method = "zibulski-zeevi";
    long p = 1;
    long q = 1;
    int grid = 256;
    int zak_truncation = 16;
    double window_dilation = 1.0;
    bool certified = false;
};

// Frame bounds of the Gaussian system on the separable lattice (1, p/q)
// (volume p/q) via the Zibulski-Zeevi matrix sampled on a grid x grid mesh of
// the Zak domain. window_dilation lambda means the window is
// g_lambda(t) = (2 lambda)^{1/4} exp(-pi lambda t^2); lattice reduction of a
// separable lattice (alpha, beta) arrives here with lambda = alpha^2.
GaborBoundsReport zz_frame_bounds(long p, long q, int grid = 256, int trunc = 16,
                                  double window_dilation = 1.0);

// Quadrature estimate of the periodized orthogonality integral
// int_Omega sum_gamma |<pi(x)^* f, pi(gamma) g>|^2 dx over the fundamental
// cell Omega of a separable lattice; equals ||f||^2 ||g||^2 for every pair.
// Same-kind Gaussian/Box pairs are supported.
double periodized_ortho_check(const Window& f, const PlaneLattice& lat, const Window& g,
                              const QuadOptions& opts = {});

struct SandwichResult {
    bool ok = false;
    double lower_slack = 0.0; // ||w||^2 - A vol
    double upper_slack = 0.0; // B vol - ||w||^2
};

// Checks A vol <= ||w||^2 <= B vol with the given slack tolerance.
SandwichResult sandwich_check(const GaborBoundsReport& report, const PlaneLattice& lat,
                              const Window& w, double slack_tol = 1e-6);

} // namespace densitylab::gabor
