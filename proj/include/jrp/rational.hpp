#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace jrp {

using BigInt = boost::multiprecision::cpp_int;

/// Exact reduced fraction num/den with den > 0 and gcd(|num|, den) = 1.
/// Backed by arbitrary-precision integers, so arithmetic never overflows.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}       // NOLINT: implicit by design
    Rational(BigInt n) : num_(std::move(n)), den_(1) {}
    Rational(BigInt n, BigInt d);

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool positive() const { return num_ > 0; }
    bool is_integer() const { return den_ == 1; }

    Rational operator-() const;
    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const { return num_ * o.den_ < o.num_ * den_; }
    bool operator<=(const Rational& o) const { return num_ * o.den_ <= o.num_ * den_; }
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator>=(const Rational& o) const { return o <= *this; }

    double to_double() const;
    std::string str() const;

    /// Largest integer <= num/den.
    BigInt floor() const;
    /// Smallest integer >= num/den.
    BigInt ceil() const;

    Rational abs() const { return num_ < 0 ? -*this : *this; }
    Rational inverse() const;
    Rational pow(int e) const;

    /// Exact conversion: every finite double is a dyadic rational.
    static Rational from_double_exact(double x);
    /// Continued-fraction best approximation with denominator <= max_den.
    static Rational from_double_snapped(double x, std::uint64_t max_den = 1'000'000);
    /// Parses "p", "p/q", or a plain decimal string.
    static Rational parse(const std::string& text);

private:
    void normalize();
    BigInt num_;
    BigInt den_;
};

/// lcm(a, b) for positive rationals: lcm of numerators over gcd of denominators
/// after reduction; always an exact common multiple and the least one.
Rational rational_lcm(const Rational& a, const Rational& b);

/// Smallest multiple of step that is >= x (step > 0).
Rational ceil_to_multiple(const Rational& x, const Rational& step);
/// Largest multiple of step that is <= x (step > 0).
Rational floor_to_multiple(const Rational& x, const Rational& step);
/// True when x is an exact integer multiple of step.
bool divides(const Rational& step, const Rational& x);

}  // namespace jrp
