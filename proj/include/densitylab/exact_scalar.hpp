// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "densitylab/rational.hpp"

#include <optional>
#include <string>

namespace densitylab {

// Number of the form  rat + coef * theta  where theta is either absent, a
// quadratic surd sqrt(m) with m squarefree, or a named transcendental marker.
// For the marker, the only algebraic facts used are theta != 0 and the linear
// independence of {1, theta} over Q; a numeric value is carried for ordering
// against thresholds and for float conversion.
//
// Exactly one irrational generator per value; mixing different generators or
// forming theta^2 for a transcendental marker raises UnsupportedField.
enum class ThetaKind { None, Sqrt, Transcendental };

struct Theta {
    ThetaKind kind = ThetaKind::None;
    BigInt square = 0;  // Sqrt: the squarefree radicand
    std::string name;   // Transcendental: marker name, e.g. "pi"
    double value = 0.0; // numeric value of theta

    bool same_generator(const Theta& other) const;
    static Theta none();
    static Theta sqrt_of(const BigInt& m); // extracts square factors
    static Theta transcendental(std::string name, double value);
};

class ExactScalar {
  public:
    ExactScalar() = default;
    ExactScalar(Rational rational_part); // NOLINT(google-explicit-constructor)
    ExactScalar(Rational rational_part, Rational theta_coef, Theta theta);

    static ExactScalar from_int(long long v) { return ExactScalar(Rational(v)); }

    const Rational& rational_part() const { return rat_; }
    const Rational& theta_coef() const { return coef_; }
    const Theta& theta() const { return theta_; }

    bool is_rational() const { return theta_.kind == ThetaKind::None; }
    bool is_zero() const;
    // Exact sign for rationals and surds; for a transcendental generator the
    // sign is decided through its numeric value.
    int sign() const;
    double to_double() const;
    std::string str() const;

    ExactScalar operator+(const ExactScalar& o) const;
    ExactScalar operator-(const ExactScalar& o) const;
    ExactScalar operator*(const ExactScalar& o) const;
    ExactScalar operator-() const;
    ExactScalar abs() const;
    // Multiplicative inverse; UnsupportedField when the result leaves Q + Q*theta.
    ExactScalar inverse() const;

    bool operator==(const ExactScalar& o) const { return (*this - o).is_zero(); }

    // this <=> rational threshold, exact where possible (see sign()).
    int compare(const Rational& threshold) const;

  private:
    void normalize();

    Rational rat_ = 0;
    Rational coef_ = 0;
    Theta theta_;
};

// Parses "RAT", "RAT*sqrt(M)", "sqrt(M)", "RAT+RAT*sqrt(M)", "RAT*pi", "pi"
// and the corresponding '-' forms. RAT is p or p/q in lowest terms.
ExactScalar parse_exact_scalar(const std::string& text);

} // namespace densitylab
