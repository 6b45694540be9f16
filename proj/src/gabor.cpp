// SPDX-License-Identifier: Apache-2.0
#include "densitylab/gabor.hpp"

#include "densitylab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace densitylab::gabor {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

double sq(double v) { return v * v; }

} // namespace

cdouble cocycle(TFShift z, TFShift zp) { return std::polar(1.0, kTwoPi * zp.xi * z.x); }

Window Window::gaussian() {
    Window w;
    w.kind = Kind::Gaussian;
    return w;
}

Window Window::box() {
    Window w;
    w.kind = Kind::Box;
    return w;
}

Window Window::sampled(double t0, double step, std::vector<cdouble> samples) {
    if (step <= 0.0)
        throw DimensionMismatch("sampled window: step must be positive");
    Window w;
    w.kind = Kind::Sampled;
    w.t0 = t0;
    w.step = step;
    w.samples = std::move(samples);
    return w;
}

double Window::norm_sq() const {
    switch (kind) {
    case Kind::Gaussian:
    case Kind::Box:
        return 1.0;
    case Kind::Sampled: {
        double s = 0.0;
        for (const auto& v : samples)
            s += std::norm(v);
        return step * s;
    }
    }
    return 0.0;
}

double Window::norm() const { return std::sqrt(norm_sq()); }

cdouble Window::eval(double t) const {
    switch (kind) {
    case Kind::Gaussian:
        return std::pow(2.0, 0.25) * std::exp(-M_PI * t * t);
    case Kind::Box:
        return (t >= 0.0 && t < 1.0) ? 1.0 : 0.0;
    case Kind::Sampled:
        throw UnsupportedField("eval: sampled windows are grid-only");
    }
    return 0.0;
}

Window sample_window(const Window& w, double t0, double step, std::size_t count) {
    std::vector<cdouble> samples(count);
    for (std::size_t j = 0; j < count; ++j)
        samples[j] = w.eval(t0 + static_cast<double>(j) * step);
    return Window::sampled(t0, step, std::move(samples));
}

Window tf_shift(TFShift z, const Window& w) {
    if (w.kind != Window::Kind::Sampled)
        throw UnsupportedField("tf_shift acts on sampled windows");
    const double ratio = z.x / w.step;
    if (std::abs(z.x - w.step * std::round(ratio)) > 1e-12)
        throw OffGridShift("tf_shift: time shift does not land on the sample grid");
    Window out = w;
    out.t0 = w.t0 + w.step * std::round(ratio);
    for (std::size_t j = 0; j < out.samples.size(); ++j) {
        const double t = out.t0 + static_cast<double>(j) * out.step;
        out.samples[j] = std::polar(1.0, -kTwoPi * z.xi * t) * w.samples[j];
    }
    return out;
}

cdouble gaussian_ambiguity(double x, double xi) {
    return std::polar(std::exp(-M_PI * (sq(x) + sq(xi)) / 2.0), M_PI * x * xi);
}

cdouble box_ambiguity(double x, double xi) {
    const double lo = std::max(0.0, x);
    const double hi = std::min(1.0, 1.0 + x);
    if (hi <= lo)
        return 0.0;
    if (xi == 0.0)
        return hi - lo;
    const cdouble num = std::polar(1.0, kTwoPi * xi * hi) - std::polar(1.0, kTwoPi * xi * lo);
    return num / cdouble(0.0, kTwoPi * xi);
}

cdouble ambiguity_quadrature(const Window& w, TFShift z, const QuadOptions& opts) {
    double lo, hi;
    if (w.kind == Window::Kind::Box) {
        lo = std::max(0.0, z.x);
        hi = std::min(1.0, 1.0 + z.x);
        if (hi <= lo)
            return 0.0;
    } else if (w.kind == Window::Kind::Gaussian) {
        lo = std::min(-9.0, z.x - 9.0);
        hi = std::max(9.0, z.x + 9.0);
    } else {
        throw UnsupportedField("ambiguity_quadrature: Gaussian or Box only");
    }
    auto f = [&](double t) {
        return w.eval(t) * std::conj(w.eval(t - z.x)) * std::polar(1.0, kTwoPi * z.xi * t);
    };
    return integrate_complex(f, lo, hi, opts);
}

namespace {

cdouble window_ambiguity(const Window& w, TFShift z, const QuadOptions& opts,
                         bool force_quadrature) {
    if (force_quadrature)
        return ambiguity_quadrature(w, z, opts);
    switch (w.kind) {
    case Window::Kind::Gaussian:
        return gaussian_ambiguity(z.x, z.xi);
    case Window::Kind::Box:
        return box_ambiguity(z.x, z.xi);
    case Window::Kind::Sampled: {
        // Grid sum <w, pi(z) w> = step * sum_t w(t) conj(w(t-x)) e^{2 pi i xi t}.
        const Window shifted = tf_shift(z, w);
        const long offset = std::lround((shifted.t0 - w.t0) / w.step);
        cdouble acc{};
        for (long j = 0; j < static_cast<long>(w.samples.size()); ++j) {
            const long k = j - offset;
            if (k < 0 || k >= static_cast<long>(shifted.samples.size()))
                continue;
            acc += w.samples[static_cast<std::size_t>(j)] *
                   std::conj(shifted.samples[static_cast<std::size_t>(k)]);
        }
        return w.step * acc;
    }
    }
    return 0.0;
}

} // namespace

cdouble shifted_inner(const Window& w, TFShift z1, TFShift z2) {
    const cdouble amb = window_ambiguity(w, z1 - z2, QuadOptions{}, false);
    return std::polar(1.0, kTwoPi * (z2.xi - z1.xi) * z2.x) * std::conj(amb);
}

PlaneLattice PlaneLattice::separable(double alpha, double beta) {
    PlaneLattice lat;
    lat.basis = {alpha, 0.0, 0.0, beta};
    return lat;
}

PlaneLattice PlaneLattice::from_exact(std::array<ExactScalar, 4> entries) {
    PlaneLattice lat;
    lat.exact = entries;
    for (int i = 0; i < 4; ++i)
        lat.basis[static_cast<std::size_t>(i)] = entries[static_cast<std::size_t>(i)].to_double();
    return lat;
}

double PlaneLattice::covolume() const {
    const double det = basis[0] * basis[3] - basis[1] * basis[2];
    if (det == 0.0)
        throw SingularBasis("PlaneLattice: zero determinant");
    return std::abs(det);
}

std::optional<std::pair<double, double>> PlaneLattice::separable_steps() const {
    const double scale = std::max({std::abs(basis[0]), std::abs(basis[1]),
                                   std::abs(basis[2]), std::abs(basis[3]), 1.0});
    if (std::abs(basis[1]) > 1e-14 * scale || std::abs(basis[2]) > 1e-14 * scale)
        return std::nullopt;
    return std::make_pair(basis[0], basis[3]);
}

TFShift PlaneLattice::point(long n1, long n2) const {
    const double a = static_cast<double>(n1);
    const double b = static_cast<double>(n2);
    return {basis[0] * a + basis[1] * b, basis[2] * a + basis[3] * b};
}

GaborGram gabor_gram(const Window& w, const PlaneLattice& lat, int radius,
                     const QuadOptions& opts, bool force_quadrature) {
    if (radius < 0)
        throw DimensionMismatch("gabor_gram: radius must be >= 0");
    std::vector<std::pair<long, long>> labels;
    std::vector<TFShift> points;
    for (long n1 = -radius; n1 <= radius; ++n1)
        for (long n2 = -radius; n2 <= radius; ++n2) {
            labels.emplace_back(n1, n2);
            points.push_back(lat.point(n1, n2));
        }

    const std::size_t m = labels.size();
    GaborGram out;
    out.labels = std::move(labels);
    out.gram = ComplexMatrix(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i; j < m; ++j) {
            const TFShift zi = points[i];
            const TFShift zj = points[j];
            const cdouble amb = window_ambiguity(w, zj - zi, opts, force_quadrature);
            const cdouble entry =
                std::polar(1.0, kTwoPi * (zi.xi - zj.xi) * zi.x) * std::conj(amb);
            out.gram.at(i, j) = entry;
            out.gram.at(j, i) = std::conj(entry);
        }
    }
    out.spectrum = hermitian_eigen(out.gram, kRankTol);
    return out;
}

namespace {

// Zak transform of the dilated Gaussian, direct series with |k| <= trunc.
// The Gaussian tail makes the truncation error < 1e-14 for trunc >= 16 and
// dilations in the range this module reaches.
struct GaussianZak {
    double lambda; // window g_lambda
    int trunc;
    double amplitude;

    GaussianZak(double lam, int tr)
        : lambda(lam), trunc(tr), amplitude(std::pow(2.0 * lam, 0.25)) {}

    double window(double t) const { return amplitude * std::exp(-M_PI * lambda * t * t); }
};

} // namespace

GaborBoundsReport zz_frame_bounds(long p, long q, int grid, int trunc,
                                  double window_dilation) {
    if (p <= 0 || q <= 0)
        throw InvalidDensity("zz_frame_bounds: density p/q must be positive");
    if (grid < 2 || trunc < 1 || window_dilation <= 0.0)
        throw ConfigInvalid("zz_frame_bounds: bad grid/truncation/dilation");
    const long g = std::gcd(p, q);
    p /= g;
    q /= g;

    // The system {pi(k, l p/q) g_lambda} is unitarily (Fourier) equivalent to
    // integer modulations and time steps of p/q with window g_{1/lambda};
    // that form is what the Zibulski-Zeevi matrix below samples.
    const GaussianZak zak(1.0 / window_dilation, trunc);
    const double step_t = 1.0 / static_cast<double>(grid);
    const double step_v = 1.0 / static_cast<double>(grid * p);
    const double shift = static_cast<double>(p) / static_cast<double>(q);
    const std::size_t pp = static_cast<std::size_t>(p);
    const std::size_t qq = static_cast<std::size_t>(q);

    double lower = std::numeric_limits<double>::infinity();
    double upper = 0.0;

    std::vector<std::vector<double>> window_table(
        qq, std::vector<double>(2 * static_cast<std::size_t>(trunc) + 1));
    std::vector<cdouble> phases(2 * static_cast<std::size_t>(trunc) + 1);
    ComplexMatrix phi(qq, pp);
    ComplexMatrix msmall(pp, pp);

    for (int jt = 0; jt < grid; ++jt) {
        const double t = (jt + 0.5) * step_t;
        for (std::size_t rho = 0; rho < qq; ++rho) {
            const double tp = t - static_cast<double>(rho) * shift;
            for (int k = -trunc; k <= trunc; ++k)
                window_table[rho][static_cast<std::size_t>(k + trunc)] =
                    zak.window(tp - k);
        }
        for (int jv = 0; jv < grid; ++jv) {
            const double nu = (jv + 0.5) * step_v;
            for (std::size_t i = 0; i < pp; ++i) {
                const double nui = nu + static_cast<double>(i) / static_cast<double>(p);
                const cdouble stepph = std::polar(1.0, kTwoPi * nui);
                cdouble ph = std::polar(1.0, -kTwoPi * nui * trunc);
                for (int k = -trunc; k <= trunc; ++k) {
                    phases[static_cast<std::size_t>(k + trunc)] = ph;
                    ph *= stepph;
                }
                for (std::size_t rho = 0; rho < qq; ++rho) {
                    cdouble acc{};
                    const auto& wt = window_table[rho];
                    for (std::size_t kk = 0; kk < wt.size(); ++kk)
                        acc += wt[kk] * phases[kk];
                    phi.at(rho, i) = acc;
                }
            }
            // M = (1/p) Phi^* Phi, p x p.
            for (std::size_t i = 0; i < pp; ++i)
                for (std::size_t j = i; j < pp; ++j) {
                    cdouble acc{};
                    for (std::size_t rho = 0; rho < qq; ++rho)
                        acc += std::conj(phi.at(rho, i)) * phi.at(rho, j);
                    acc /= static_cast<double>(p);
                    msmall.at(i, j) = acc;
                    msmall.at(j, i) = std::conj(acc);
                }
            if (pp == 1) {
                const double v = msmall.at(0, 0).real();
                lower = std::min(lower, v);
                upper = std::max(upper, v);
            } else {
                const auto es = hermitian_eigensystem(msmall, kRankTol);
                lower = std::min(lower, es.eigenvalues.front());
                upper = std::max(upper, es.eigenvalues.back());
            }
        }
    }

    GaborBoundsReport report;
    report.lower = lower;
    report.upper = upper;
    report.p = p;
    report.q = q;
    report.grid = grid;
    report.zak_truncation = trunc;
    report.window_dilation = window_dilation;
    report.certified = false;
    return report;
}

double periodized_ortho_check(const Window& f, const PlaneLattice& lat, const Window& g,
                              const QuadOptions& opts) {
    const auto steps = lat.separable_steps();
    if (!steps)
        throw UnsupportedField("periodized_ortho_check: separable lattice required");
    if (f.kind != g.kind || f.kind == Window::Kind::Sampled)
        throw UnsupportedField("periodized_ortho_check: same-kind Gaussian/Box pair required");
    const double alpha = std::abs(steps->first);
    const double beta = std::abs(steps->second);
    if (alpha <= 0.0 || beta <= 0.0)
        throw SingularBasis("periodized_ortho_check: degenerate lattice");

    const double budget = std::max(opts.abs_tol, 1e-6);
    const bool is_gauss = f.kind == Window::Kind::Gaussian;

    long k_lo, k_hi, l_span;
    if (is_gauss) {
        const long kt = static_cast<long>(std::ceil(5.0 / alpha)) + 1;
        k_lo = -kt;
        k_hi = kt;
        l_span = static_cast<long>(std::ceil(5.0 / beta)) + 1;
    } else {
        // Only time offsets with |x1 + alpha k| < 1 touch the box support.
        k_lo = static_cast<long>(std::ceil((-1.0 - alpha) / alpha));
        k_hi = static_cast<long>(std::floor(1.0 / alpha)) + 1;
        // 1/xi^2 tail of the box coefficient, budget/2 for the truncation.
        const double tail_budget = budget / 2.0;
        const double terms = static_cast<double>(k_hi - k_lo + 1);
        l_span = static_cast<long>(
                     std::ceil(2.0 * terms / (M_PI * M_PI * beta * beta * tail_budget))) +
                 2;
    }

    auto frame_sum = [&](double x1, double x2) {
        double acc = 0.0;
        for (long k = k_lo; k <= k_hi; ++k) {
            const double xt = x1 + alpha * static_cast<double>(k);
            if (is_gauss) {
                const double et = std::exp(-M_PI * xt * xt);
                if (et < 1e-40)
                    continue;
                for (long l = -l_span; l <= l_span; ++l) {
                    const double xf = x2 + beta * static_cast<double>(l);
                    acc += et * std::exp(-M_PI * xf * xf);
                }
            } else {
                const double ov = std::min(1.0, 1.0 + xt) - std::max(0.0, xt);
                if (ov <= 0.0)
                    continue;
                for (long l = -l_span; l <= l_span; ++l) {
                    const double xf = x2 + beta * static_cast<double>(l);
                    if (xf == 0.0) {
                        acc += ov * ov;
                    } else {
                        const double s = std::sin(M_PI * xf * ov) / (M_PI * xf);
                        acc += s * s;
                    }
                }
            }
        }
        return acc;
    };

    QuadOptions outer = opts;
    outer.abs_tol = budget / 4.0;
    outer.rel_tol = 1e-8;
    QuadOptions inner = outer;
    inner.abs_tol = budget / (4.0 * alpha * 2.0);

    auto integrand_x1 = [&](double x1) {
        return integrate([&](double x2) { return frame_sum(x1, x2); }, 0.0, beta, inner);
    };
    return integrate(integrand_x1, 0.0, alpha, outer);
}

SandwichResult sandwich_check(const GaborBoundsReport& report, const PlaneLattice& lat,
                              const Window& w, double slack_tol) {
    const double vol = lat.covolume();
    const double nsq = w.norm_sq();
    SandwichResult res;
    res.lower_slack = nsq - report.lower * vol;
    res.upper_slack = report.upper * vol - nsq;
    res.ok = res.lower_slack >= -slack_tol && res.upper_slack >= -slack_tol;
    return res;
}

} // namespace densitylab::gabor
