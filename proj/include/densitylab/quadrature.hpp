// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <functional>

namespace densitylab {

struct QuadOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_depth = 48;
};

// Adaptive Gauss-Kronrod (G7,K15) on [a, b]. Throws QuadratureFailure when the
// error estimate cannot be brought under tolerance.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadOptions& opts = {});

std::complex<double> integrate_complex(const std::function<std::complex<double>(double)>& f,
                                       double a, double b, const QuadOptions& opts = {});

// Integral over the whole real line via x = center + scale * tan(theta).
double integrate_real_line(const std::function<double(double)>& f, double center,
                           double scale, const QuadOptions& opts = {});

// Integral over (lo, infinity) via y = lo + scale * tan(theta).
double integrate_half_line(const std::function<double(double)>& f, double lo, double scale,
                           const QuadOptions& opts = {});

} // namespace densitylab
