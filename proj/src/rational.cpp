#include "jrp/rational.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace jrp {

namespace mp = boost::multiprecision;

Rational::Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {
    if (den_ == 0) throw std::domain_error("Rational: zero denominator");
    normalize();
}

void Rational::normalize() {
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    if (num_ == 0) {
        den_ = 1;
        return;
    }
    BigInt g = mp::gcd(mp::abs(num_), den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
}

Rational Rational::operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

Rational Rational::operator+(const Rational& o) const {
    return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Rational Rational::operator-(const Rational& o) const {
    return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

Rational Rational::operator*(const Rational& o) const {
    return Rational(num_ * o.num_, den_ * o.den_);
}

Rational Rational::operator/(const Rational& o) const {
    if (o.num_ == 0) throw std::domain_error("Rational: division by zero");
    return Rational(num_ * o.den_, den_ * o.num_);
}

double Rational::to_double() const {
    // Scale down huge operands together so the quotient stays representable.
    const std::size_t nb = mp::msb(num_ == 0 ? BigInt(1) : mp::abs(num_));
    const std::size_t db = mp::msb(den_);
    if (nb < 900 && db < 900) {
        return num_.convert_to<double>() / den_.convert_to<double>();
    }
    const std::size_t shift = std::max(nb, db) - 512;
    BigInt n = num_ >> shift, d = den_ >> shift;
    if (d == 0) d = 1;
    return n.convert_to<double>() / d.convert_to<double>();
}

std::string Rational::str() const {
    if (den_ == 1) return num_.str();
    return num_.str() + "/" + den_.str();
}

BigInt Rational::floor() const {
    BigInt q = num_ / den_;
    if (num_ < 0 && q * den_ != num_) --q;
    return q;
}

BigInt Rational::ceil() const {
    BigInt q = num_ / den_;
    if (num_ > 0 && q * den_ != num_) ++q;
    return q;
}

Rational Rational::inverse() const {
    if (num_ == 0) throw std::domain_error("Rational: inverse of zero");
    return Rational(den_, num_);
}

Rational Rational::pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    Rational result(1);
    Rational base = *this;
    while (e > 0) {
        if (e & 1) result *= base;
        base *= base;
        e >>= 1;
    }
    return result;
}

Rational Rational::from_double_exact(double x) {
    if (!std::isfinite(x)) throw std::domain_error("Rational: non-finite double");
    if (x == 0.0) return Rational(0);
    int exp = 0;
    const double mant = std::frexp(x, &exp);  // x = mant * 2^exp, |mant| in [0.5, 1)
    const auto scaled = static_cast<long long>(std::ldexp(mant, 53));
    exp -= 53;
    BigInt n(scaled);
    if (exp >= 0) return Rational(n << exp);
    return Rational(n, BigInt(1) << (-exp));
}

Rational Rational::from_double_snapped(double x, std::uint64_t max_den) {
    if (!std::isfinite(x)) throw std::domain_error("Rational: non-finite double");
    if (max_den == 0) throw std::domain_error("Rational: zero denominator cap");
    const bool neg = x < 0;
    double v = std::fabs(x);
    // Continued-fraction convergents p/q; the last convergent with q <= max_den
    // is a best rational approximation under the cap.
    BigInt p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double frac = v;
    for (int it = 0; it < 64; ++it) {
        const double fl = std::floor(frac);
        if (fl > 9e18) break;
        BigInt a(static_cast<long long>(fl));
        BigInt p2 = a * p1 + p0;
        BigInt q2 = a * q1 + q0;
        if (q2 > max_den) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        const double rem = frac - fl;
        if (rem < 1e-15 * std::max(1.0, v)) break;
        frac = 1.0 / rem;
    }
    if (q1 == 0) return Rational(p0, q0);
    Rational r(p1, q1);
    return neg ? -r : r;
}

Rational Rational::parse(const std::string& text) {
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        BigInt n(text.substr(0, slash));
        BigInt d(text.substr(slash + 1));
        return Rational(std::move(n), std::move(d));
    }
    const auto dot = text.find('.');
    if (dot != std::string::npos) {
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        const std::size_t places = text.size() - dot - 1;
        BigInt den = 1;
        for (std::size_t i = 0; i < places; ++i) den *= 10;
        return Rational(BigInt(digits), den);
    }
    return Rational(BigInt(text));
}

Rational rational_lcm(const Rational& a, const Rational& b) {
    if (!a.positive() || !b.positive()) throw std::domain_error("rational_lcm: operands must be positive");
    BigInt n = mp::lcm(a.num(), b.num());
    BigInt d = mp::gcd(a.den(), b.den());
    return Rational(std::move(n), std::move(d));
}

Rational ceil_to_multiple(const Rational& x, const Rational& step) {
    if (!step.positive()) throw std::domain_error("ceil_to_multiple: step must be positive");
    return Rational((x / step).ceil()) * step;
}

Rational floor_to_multiple(const Rational& x, const Rational& step) {
    if (!step.positive()) throw std::domain_error("floor_to_multiple: step must be positive");
    return Rational((x / step).floor()) * step;
}

bool divides(const Rational& step, const Rational& x) {
    if (!step.positive()) throw std::domain_error("divides: step must be positive");
    return (x / step).is_integer();
}

}  // namespace jrp
