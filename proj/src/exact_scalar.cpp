// SPDX-License-Identifier: Apache-2.0
#include "densitylab/exact_scalar.hpp"

#include "densitylab/errors.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace densitylab {

bool Theta::same_generator(const Theta& other) const {
    if (kind != other.kind)
        return false;
    switch (kind) {
    case ThetaKind::None:
        return true;
    case ThetaKind::Sqrt:
        return square == other.square;
    case ThetaKind::Transcendental:
        return name == other.name;
    }
    return false;
}

Theta Theta::none() { return {}; }

Theta Theta::sqrt_of(const BigInt& m_in) {
    if (m_in <= 0)
        throw UnsupportedField("sqrt generator must have a positive radicand");
    // Pull out square factors so the descriptor is canonical.
    BigInt m = m_in;
    BigInt outer = 1;
    for (BigInt p = 2; p * p <= m; ++p) {
        while (m % (p * p) == 0) {
            m /= p * p;
            outer *= p;
        }
    }
    if (m == 1)
        throw UnsupportedField("sqrt generator reduces to a rational");
    Theta t;
    t.kind = ThetaKind::Sqrt;
    t.square = m;
    t.value = std::sqrt(m.convert_to<double>());
    // Callers fold the extracted square factor into the coefficient via
    // sqrt_scalar(); here we only report the canonical radicand.
    t.name = "sqrt(" + m.str() + ")";
    (void)outer;
    return t;
}

Theta Theta::transcendental(std::string name, double value) {
    Theta t;
    t.kind = ThetaKind::Transcendental;
    t.name = std::move(name);
    t.value = value;
    return t;
}

ExactScalar::ExactScalar(Rational rational_part) : rat_(std::move(rational_part)) {}

ExactScalar::ExactScalar(Rational rational_part, Rational theta_coef, Theta theta)
    : rat_(std::move(rational_part)), coef_(std::move(theta_coef)), theta_(std::move(theta)) {
    normalize();
}

void ExactScalar::normalize() {
    if (coef_ == 0)
        theta_ = Theta::none();
    if (theta_.kind == ThetaKind::None)
        coef_ = 0;
}

bool ExactScalar::is_zero() const { return rat_ == 0 && coef_ == 0; }

int ExactScalar::sign() const {
    if (coef_ == 0)
        return rat_ == 0 ? 0 : (rat_ > 0 ? 1 : -1);
    if (theta_.kind == ThetaKind::Transcendental) {
        const double v = to_double();
        return v == 0.0 ? 0 : (v > 0 ? 1 : -1);
    }
    // a + b*sqrt(m), b != 0: exact sign via squaring.
    const Rational& a = rat_;
    const Rational& b = coef_;
    if (a == 0)
        return b > 0 ? 1 : -1;
    if (a > 0 && b > 0)
        return 1;
    if (a < 0 && b < 0)
        return -1;
    const Rational lhs = a * a;
    const Rational rhs = b * b * Rational(theta_.square);
    if (lhs == rhs)
        return 0;
    return (lhs > rhs) == (a > 0) ? 1 : -1;
}

double ExactScalar::to_double() const {
    double v = densitylab::to_double(rat_);
    if (coef_ != 0)
        v += densitylab::to_double(coef_) * theta_.value;
    return v;
}

std::string ExactScalar::str() const {
    if (coef_ == 0)
        return to_string(rat_);
    std::string theta_name = theta_.name;
    std::string part;
    if (coef_ == 1)
        part = theta_name;
    else if (coef_ == -1)
        part = "-" + theta_name;
    else
        part = to_string(coef_) + "*" + theta_name;
    if (rat_ == 0)
        return part;
    if (coef_ > 0)
        return to_string(rat_) + "+" + part;
    return to_string(rat_) + part;
}

ExactScalar ExactScalar::operator+(const ExactScalar& o) const {
    if (coef_ != 0 && o.coef_ != 0 && !theta_.same_generator(o.theta_))
        throw UnsupportedField("sum would mix two irrational generators");
    ExactScalar out;
    out.rat_ = rat_ + o.rat_;
    out.coef_ = coef_ + o.coef_;
    out.theta_ = coef_ != 0 ? theta_ : o.theta_;
    out.normalize();
    return out;
}

ExactScalar ExactScalar::operator-(const ExactScalar& o) const { return *this + (-o); }

ExactScalar ExactScalar::operator-() const {
    ExactScalar out = *this;
    out.rat_ = -out.rat_;
    out.coef_ = -out.coef_;
    return out;
}

ExactScalar ExactScalar::abs() const { return sign() >= 0 ? *this : -*this; }

ExactScalar ExactScalar::operator*(const ExactScalar& o) const {
    if (coef_ != 0 && o.coef_ != 0) {
        if (!theta_.same_generator(o.theta_))
            throw UnsupportedField("product would mix two irrational generators");
        if (theta_.kind == ThetaKind::Transcendental)
            throw UnsupportedField("product needs theta^2 of a transcendental marker");
        // (a + b s)(c + d s) with s^2 = m.
        ExactScalar out;
        out.rat_ = rat_ * o.rat_ + coef_ * o.coef_ * Rational(theta_.square);
        out.coef_ = rat_ * o.coef_ + coef_ * o.rat_;
        out.theta_ = theta_;
        out.normalize();
        return out;
    }
    ExactScalar out;
    out.rat_ = rat_ * o.rat_;
    out.coef_ = rat_ * o.coef_ + coef_ * o.rat_;
    out.theta_ = coef_ != 0 ? theta_ : o.theta_;
    out.normalize();
    return out;
}

ExactScalar ExactScalar::inverse() const {
    if (is_zero())
        throw UnsupportedField("inverse of zero");
    if (coef_ == 0) {
        ExactScalar out;
        out.rat_ = Rational(1) / rat_;
        return out;
    }
    if (theta_.kind == ThetaKind::Transcendental)
        throw UnsupportedField("inverse of a transcendental combination");
    // 1 / (a + b s) = (a - b s) / (a^2 - b^2 m)
    const Rational den = rat_ * rat_ - coef_ * coef_ * Rational(theta_.square);
    if (den == 0)
        throw UnsupportedField("inverse: zero field norm");
    ExactScalar out;
    out.rat_ = rat_ / den;
    out.coef_ = -coef_ / den;
    out.theta_ = theta_;
    out.normalize();
    return out;
}

int ExactScalar::compare(const Rational& threshold) const {
    ExactScalar diff = *this - ExactScalar(threshold);
    return diff.sign();
}

namespace {

Rational parse_rational_token(const std::string& tok) {
    const auto slash = tok.find('/');
    try {
        if (slash == std::string::npos)
            return Rational(BigInt(tok));
        const BigInt num(tok.substr(0, slash));
        const BigInt den(tok.substr(slash + 1));
        if (den == 0)
            throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    } catch (const std::exception&) {
        throw ConfigInvalid("cannot parse rational '" + tok + "'");
    }
}

// One term: RAT, RAT*sqrt(M), sqrt(M), RAT*pi, or pi.
ExactScalar parse_term(const std::string& term) {
    if (term.empty())
        throw ConfigInvalid("empty term in exact scalar");
    const auto star = term.find('*');
    std::string head = star == std::string::npos ? term : term.substr(0, star);
    std::string tail = star == std::string::npos ? "" : term.substr(star + 1);
    if (tail.empty() && (head == "pi" || head == "-pi" || head.rfind("sqrt(", 0) == 0 ||
                         head.rfind("-sqrt(", 0) == 0)) {
        tail = head[0] == '-' ? head.substr(1) : head;
        head = head[0] == '-' ? "-1" : "1";
    }
    const Rational coef = parse_rational_token(head);
    if (tail.empty())
        return {coef};
    if (tail == "pi")
        return {0, coef, Theta::transcendental("pi", M_PI)};
    if (tail.rfind("sqrt(", 0) == 0 && tail.back() == ')') {
        const std::string inside = tail.substr(5, tail.size() - 6);
        BigInt m;
        try {
            m = BigInt(inside);
        } catch (const std::exception&) {
            throw ConfigInvalid("cannot parse radicand '" + inside + "'");
        }
        // Fold square factors into the coefficient.
        BigInt reduced = m;
        BigInt outer = 1;
        for (BigInt p = 2; p * p <= reduced; ++p) {
            while (reduced % (p * p) == 0) {
                reduced /= p * p;
                outer *= p;
            }
        }
        if (reduced == 1)
            return {coef * Rational(outer)};
        return {0, coef * Rational(outer), Theta::sqrt_of(reduced)};
    }
    throw ConfigInvalid("cannot parse term '" + term + "'");
}

} // namespace

ExactScalar parse_exact_scalar(const std::string& text) {
    if (text.empty())
        throw ConfigInvalid("empty exact scalar");
    // Split on '+'/'-' at top level (not inside sqrt(...), not a leading sign).
    std::vector<std::string> terms;
    std::string cur;
    int depth = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char ch = text[i];
        if (ch == '(')
            ++depth;
        if (ch == ')')
            --depth;
        if ((ch == '+' || ch == '-') && depth == 0 && i > 0 && text[i - 1] != '*' &&
            text[i - 1] != '/' && text[i - 1] != '+' && text[i - 1] != '-') {
            terms.push_back(cur);
            cur.clear();
            if (ch == '-')
                cur.push_back('-');
            continue;
        }
        if (!std::isspace(static_cast<unsigned char>(ch)))
            cur.push_back(ch);
    }
    terms.push_back(cur);

    ExactScalar acc(Rational(0));
    for (const auto& t : terms)
        acc = acc + parse_term(t);
    return acc;
}

} // namespace densitylab
