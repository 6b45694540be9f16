// SPDX-License-Identifier: Apache-2.0
#include "densitylab/bergman.hpp"

#include "densitylab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace densitylab::bergman {

namespace {

constexpr double kDedupTol = 1e-10;

} // namespace

UHPoint::UHPoint(cdouble value) : z(value) {
    if (!(z.imag() > 1e-15))
        throw Error("UHPoint: imaginary part must exceed 1e-15");
}

MoebiusMap::MoebiusMap(double a_, double b_, double c_, double d_)
    : a(a_), b(b_), c(c_), d(d_) {
    const double det = a * d - b * c;
    if (std::abs(det - 1.0) > 1e-12)
        throw Error("MoebiusMap: determinant must be 1");
    // Projective canonical sign.
    const double lead = a != 0.0 ? a : (b != 0.0 ? b : (c != 0.0 ? c : d));
    if (lead < 0.0) {
        a = -a;
        b = -b;
        c = -c;
        d = -d;
    }
}

MoebiusMap MoebiusMap::inversion() { return {0.0, -1.0, 1.0, 0.0}; }
MoebiusMap MoebiusMap::translation() { return {1.0, 1.0, 0.0, 1.0}; }

MoebiusMap MoebiusMap::compose(const MoebiusMap& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

MoebiusMap MoebiusMap::inverse() const { return {d, -b, -c, a}; }

double MoebiusMap::max_coeff_diff(const MoebiusMap& o) const {
    return std::max({std::abs(a - o.a), std::abs(b - o.b), std::abs(c - o.c),
                     std::abs(d - o.d)});
}

UHPoint moebius_apply(const MoebiusMap& m, const UHPoint& z) {
    return UHPoint((m.a * z.z + m.b) / (m.c * z.z + m.d));
}

double hyperbolic_distance(const UHPoint& z, const UHPoint& w) {
    const double num = std::norm(z.z - w.z);
    return std::acosh(1.0 + num / (2.0 * z.y() * w.y()));
}

cdouble j_cocycle_pow(const MoebiusMap& m, const UHPoint& z, double alpha) {
    const cdouble denom = m.c * z.z + m.d;
    return std::exp(-alpha * std::log(denom)); // principal branch
}

cdouble kernel_eval(double alpha, const UHPoint& w, const UHPoint& z) {
    const cdouble diff = z.z - std::conj(w.z); // in the upper half plane
    const cdouble i_pow = std::polar(1.0, M_PI * alpha / 2.0);
    const double front = std::pow(2.0, alpha - 2.0) / M_PI * (alpha - 1.0);
    return front * i_pow * std::exp(-alpha * std::log(diff));
}

double kernel_norm_sq(double alpha, const UHPoint& w) {
    return kernel_eval(alpha, w, w).real();
}

namespace {

cdouble integrate_complex_tan_line(const std::function<cdouble(double)>& f, double center,
                                   double scale, const QuadOptions& opts) {
    auto g = [&](double theta) -> cdouble {
        const double c = std::cos(theta);
        const double x = center + scale * std::tan(theta);
        const double jac = scale / (c * c);
        return f(x) * jac;
    };
    const double eps = 1e-12;
    return integrate_complex(g, -M_PI / 2 + eps, M_PI / 2 - eps, opts);
}

} // namespace

cdouble bergman_inner(const std::function<cdouble(cdouble)>& f,
                      const std::function<cdouble(cdouble)>& g, double alpha,
                      cdouble center, const QuadOptions& opts) {
    if (!(alpha > 1.0))
        throw AlphaOutOfRange("bergman_inner: alpha must exceed 1");
    const double scale_x = std::max(1.0, std::abs(center.imag()));
    const double scale_y = std::max(1.0, std::abs(center.imag()));
    QuadOptions inner = opts;
    inner.abs_tol = opts.abs_tol / 4.0;

    auto slice = [&](double y) -> cdouble {
        const double weight = std::pow(y, alpha - 2.0);
        auto fx = [&](double x) -> cdouble {
            const cdouble z(x, y);
            return f(z) * std::conj(g(z)) * weight;
        };
        return integrate_complex_tan_line(fx, center.real(), scale_x, inner);
    };

    // y over (0, infinity) through y = scale * tan(phi).
    auto outer = [&](double phi) -> cdouble {
        const double c = std::cos(phi);
        const double y = scale_y * std::tan(phi);
        const double jac = scale_y / (c * c);
        return slice(y) * jac;
    };
    return integrate_complex(outer, 0.0, M_PI / 2 - 1e-12, opts);
}

cdouble bergman_inner_kernels(double alpha, const UHPoint& w1, const UHPoint& w2,
                              const QuadOptions& opts) {
    const cdouble center(0.5 * (w1.x() + w2.x()),
                         std::sqrt(w1.y() * w2.y()));
    auto f = [&](cdouble z) { return kernel_eval(alpha, w1, UHPoint(z)); };
    auto g = [&](cdouble z) { return kernel_eval(alpha, w2, UHPoint(z)); };
    return bergman_inner(f, g, alpha, center, opts);
}

FuchsianGroup psl2z() {
    FuchsianGroup g;
    g.name = "psl2z";
    g.generators = {MoebiusMap::inversion(), MoebiusMap::translation()};
    g.covolume = M_PI / 3.0;
    g.covolume_pi_multiple = Rational(1, 3);
    g.co_compact = false;
    g.central_extension = false;
    return g;
}

namespace {

// Ball of distinct group elements of word length <= radius, breadth first.
std::vector<MoebiusMap> element_ball(const FuchsianGroup& g, int radius) {
    std::vector<MoebiusMap> steps;
    for (const auto& gen : g.generators) {
        steps.push_back(gen);
        const MoebiusMap inv = gen.inverse();
        bool dup = false;
        for (const auto& s : steps)
            if (s.max_coeff_diff(inv) < 1e-12)
                dup = true;
        if (!dup)
            steps.push_back(inv);
    }
    std::vector<MoebiusMap> ball{MoebiusMap::identity()};
    std::vector<MoebiusMap> frontier = ball;
    for (int r = 0; r < radius; ++r) {
        std::vector<MoebiusMap> next;
        for (const auto& m : frontier) {
            for (const auto& s : steps) {
                const MoebiusMap cand = m.compose(s);
                bool seen = false;
                for (const auto& e : ball)
                    if (e.max_coeff_diff(cand) < 1e-9) {
                        seen = true;
                        break;
                    }
                if (!seen)
                    for (const auto& e : next)
                        if (e.max_coeff_diff(cand) < 1e-9) {
                            seen = true;
                            break;
                        }
                if (!seen)
                    next.push_back(cand);
            }
        }
        ball.insert(ball.end(), next.begin(), next.end());
        frontier = std::move(next);
        if (frontier.empty())
            break;
    }
    return ball;
}

} // namespace

std::vector<OrbitPoint> orbit_ball(const FuchsianGroup& g, const UHPoint& w,
                                   int word_radius) {
    if (word_radius < 0)
        throw Error("orbit_ball: radius must be >= 0");
    std::vector<OrbitPoint> out;
    for (const auto& m : element_ball(g, word_radius)) {
        const UHPoint p = moebius_apply(m, w);
        bool seen = false;
        for (const auto& existing : out)
            if (hyperbolic_distance(existing.point, p) < kDedupTol) {
                seen = true;
                break;
            }
        if (!seen)
            out.push_back({p, m});
    }
    return out;
}

long stabilizer_order(const FuchsianGroup& g, const UHPoint& w, int word_radius) {
    long count = 0;
    for (const auto& m : element_ball(g, word_radius))
        if (hyperbolic_distance(moebius_apply(m, w), w) < kDedupTol)
            ++count;
    return count;
}

double modular_covolume(double x_lo, double x_hi, const QuadOptions& opts) {
    QuadOptions inner = opts;
    inner.abs_tol = opts.abs_tol / 4.0;
    auto column = [&](double x) {
        const double y0 = std::sqrt(std::max(1.0 - x * x, 0.0));
        return integrate_half_line([](double y) { return 1.0 / (y * y); },
                                   std::max(y0, 1e-8), 1.0, inner);
    };
    return integrate(column, x_lo, x_hi, opts);
}

double modular_covolume(const QuadOptions& opts) {
    return modular_covolume(-0.5, 0.5, opts);
}

BergmanVerdict bergman_classification(double alpha, std::optional<Rational> alpha_exact,
                                      const FuchsianGroup& g, const UHPoint& w,
                                      int stabilizer_radius) {
    if (!(alpha > 1.0))
        throw AlphaOutOfRange("bergman_classification: alpha must exceed 1");
    BergmanVerdict v;
    v.alpha = alpha;
    v.alpha_exact = alpha_exact;
    v.d_pi = (alpha - 1.0) / (4.0 * M_PI);
    v.co_compact = g.co_compact;

    // invariant = vol * d_pi = (p/q) * (alpha - 1) / 4 when vol = (p/q) pi.
    if (g.covolume_pi_multiple && alpha_exact) {
        const Rational exact =
            *g.covolume_pi_multiple * (*alpha_exact - 1) / 4;
        v.invariant = density::Invariant::from_exact(ExactScalar(exact));
    } else {
        v.invariant = density::Invariant::from_float(g.covolume * v.d_pi, 1e-9);
    }

    density::ClassifyFlags flags;
    flags.central_extension = g.central_extension;
    // Center-free semisimple rule: a Fuchsian lattice in PSL(2,R) is ICC, so
    // Kleppner holds; a central extension with -I in the lattice never is.
    const density::KleppnerStatus kleppner = g.central_extension
                                                 ? density::KleppnerStatus::Fails
                                                 : density::KleppnerStatus::Holds;
    v.trichotomy = density::classify(v.invariant, kleppner, flags);
    if (!g.central_extension)
        v.caveats.push_back("icc_by_center_free_semisimple_rule");

    v.stabilizer = stabilizer_order(g, w, stabilizer_radius);

    if (v.invariant.exact) {
        ExactScalar kernel_exact = *v.invariant.exact * ExactScalar(Rational(v.stabilizer));
        v.kernel_invariant = density::Invariant::from_exact(kernel_exact);
    } else {
        v.kernel_invariant = density::Invariant::from_float(
            v.invariant.value * static_cast<double>(v.stabilizer),
            v.invariant.error * static_cast<double>(v.stabilizer));
    }

    const auto cmp_one = [](const density::Invariant& inv) {
        if (inv.exact)
            return inv.exact->compare(Rational(1));
        return inv.value < 1.0 ? -1 : (inv.value > 1.0 ? 1 : 0);
    };
    const int kern_cmp = cmp_one(v.kernel_invariant);
    const int gen_cmp = cmp_one(v.invariant);

    // Kernel-orbit completeness: strict sub-threshold by Perelomov, the
    // boundary case holds as well (Jones), above it fails by Kelly-Lyth.
    v.kernel_complete = kern_cmp <= 0;
    // Frame property of the kernel orbit needs co-compactness.
    if (g.co_compact) {
        v.kernel_frame = kern_cmp < 0;
    } else {
        v.kernel_frame = false;
        v.caveats.push_back("kernel_orbit_never_frame_for_noncocompact_lattice");
    }
    if (v.stabilizer <= 1) {
        v.kernel_riesz_indexed = gen_cmp > 0;
        v.kernel_riesz_reduced = v.kernel_riesz_indexed;
    } else {
        v.kernel_riesz_indexed = false; // indexed orbit repeats along the stabilizer
        v.kernel_riesz_reduced = kern_cmp > 0;
        v.caveats.push_back("kernel_orbit_linearly_dependent_nontrivial_stabilizer");
    }
    return v;
}

KernelGram kernel_orbit_gram(double alpha, const FuchsianGroup& g, const UHPoint& w,
                             int word_radius, const QuadOptions& opts,
                             bool use_closed_form) {
    if (!(alpha > 1.0))
        throw AlphaOutOfRange("kernel_orbit_gram: alpha must exceed 1");
    KernelGram out;
    out.points = orbit_ball(g, w, word_radius);
    const std::size_t m = out.points.size();
    out.gram = ComplexMatrix(m, m);
    std::vector<double> norms(m);
    for (std::size_t i = 0; i < m; ++i)
        norms[i] = std::sqrt(kernel_norm_sq(alpha, out.points[i].point));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i; j < m; ++j) {
            cdouble entry;
            if (i == j) {
                entry = 1.0;
            } else if (use_closed_form) {
                // <k_{z_j}, k_{z_i}> = k_{z_j}(z_i) by the reproducing property.
                entry = kernel_eval(alpha, out.points[j].point, out.points[i].point) /
                        (norms[i] * norms[j]);
            } else {
                entry = bergman_inner_kernels(alpha, out.points[j].point,
                                              out.points[i].point, opts) /
                        (norms[i] * norms[j]);
            }
            out.gram.at(i, j) = entry;
            out.gram.at(j, i) = std::conj(entry);
        }
    }
    out.spectrum = hermitian_eigen(out.gram, kRankTol);
    return out;
}

double laguerre_window(double alpha, int n, double t) {
    if (!(alpha > 1.0))
        throw AlphaOutOfRange("laguerre_window: alpha must exceed 1");
    if (n < 0 || !(t > 0.0))
        throw Error("laguerre_window: need n >= 0 and t > 0");
    const double x = 2.0 * t;
    const double a = alpha - 1.0;
    double lk = 1.0;          // L_0
    double lk1 = 1.0 + a - x; // L_1
    double value = n == 0 ? lk : lk1;
    for (int k = 1; k < n; ++k) {
        const double next =
            ((2.0 * k + 1.0 + a - x) * lk1 - (k + a) * lk) / static_cast<double>(k + 1);
        lk = lk1;
        lk1 = next;
        value = next;
    }
    return std::pow(t, alpha - 1.0) * std::exp(-t) * value;
}

} // namespace densitylab::bergman
