#pragma once

#include <cstdint>
#include <string>

namespace gapamp {

/// Exact rational arithmetic on int64 numerator/denominator.
/// All constructions normalize: gcd-reduced, denominator positive.
/// Intermediate products use 128-bit arithmetic; results that do not
/// fit int64 after reduction throw ErrorCode::NumericOverflow.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n) : num(n), den(1) {}
    Rational(std::int64_t n, std::int64_t d);

    double to_double() const { return double(num) / double(den); }
    std::string to_string() const;

    bool is_zero() const { return num == 0; }
    bool is_positive() const { return num > 0; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
};

Rational operator+(const Rational& a, const Rational& b);
Rational operator-(const Rational& a, const Rational& b);
Rational operator*(const Rational& a, const Rational& b);
Rational operator/(const Rational& a, const Rational& b);

bool operator<(const Rational& a, const Rational& b);
bool operator<=(const Rational& a, const Rational& b);
bool operator>(const Rational& a, const Rational& b);
bool operator>=(const Rational& a, const Rational& b);

Rational rational_pow(const Rational& base, std::uint32_t exp);
Rational rational_abs(const Rational& a);

} // namespace gapamp
