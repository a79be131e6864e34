#include "gapamp/rational.hpp"

#include <limits>
#include <numeric>

#include "gapamp/error.hpp"

namespace gapamp {

namespace {

using i128 = __int128;

std::int64_t checked_narrow(i128 v) {
    if (v > i128(std::numeric_limits<std::int64_t>::max()) ||
        v < i128(std::numeric_limits<std::int64_t>::min()))
        throw Error(ErrorCode::NumericOverflow, "rational out of int64 range");
    return std::int64_t(v);
}

i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Rational make(i128 num, i128 den) {
    if (den == 0)
        throw Error(ErrorCode::NumericOverflow, "zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    i128 g = gcd128(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    Rational r;
    r.num = checked_narrow(num);
    r.den = checked_narrow(den);
    return r;
}

} // namespace

Rational::Rational(std::int64_t n, std::int64_t d) { *this = make(n, d); }

std::string Rational::to_string() const {
    if (den == 1)
        return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

Rational operator+(const Rational& a, const Rational& b) {
    return make(i128(a.num) * b.den + i128(b.num) * a.den, i128(a.den) * b.den);
}

Rational operator-(const Rational& a, const Rational& b) {
    return make(i128(a.num) * b.den - i128(b.num) * a.den, i128(a.den) * b.den);
}

Rational operator*(const Rational& a, const Rational& b) {
    return make(i128(a.num) * b.num, i128(a.den) * b.den);
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.num == 0)
        throw Error(ErrorCode::NumericOverflow, "division by zero");
    return make(i128(a.num) * b.den, i128(a.den) * b.num);
}

bool operator<(const Rational& a, const Rational& b) {
    return i128(a.num) * b.den < i128(b.num) * a.den;
}
bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
bool operator>(const Rational& a, const Rational& b) { return b < a; }
bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

Rational rational_pow(const Rational& base, std::uint32_t exp) {
    Rational out(1);
    for (std::uint32_t i = 0; i < exp; ++i)
        out = out * base;
    return out;
}

Rational rational_abs(const Rational& a) {
    Rational r = a;
    if (r.num < 0) r.num = -r.num;
    return r;
}

} // namespace gapamp
