#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace fsig {

/// Exact rational on int64 with checked __int128 intermediates. All the
/// quantities it carries (s_e, alpha_e, fpt brackets) are small by
/// construction; an overflow here means a bug upstream, so it throws
/// instead of saturating.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1; // > 0, gcd(|num|, den) == 1

    Rational() = default;
    Rational(std::int64_t n) : num(n), den(1) {}
    Rational(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

    static Rational from_i128(__int128 n, __int128 d) {
        if (d == 0) throw std::domain_error("Rational: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        __int128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw std::overflow_error("Rational: value out of 64-bit range");
        Rational r;
        r.num = static_cast<std::int64_t>(n);
        r.den = static_cast<std::int64_t>(d);
        return r;
    }

    void normalize() {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    bool is_zero() const noexcept { return num == 0; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return from_i128(__int128(a.num) * b.den + __int128(b.num) * a.den,
                         __int128(a.den) * b.den);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return from_i128(__int128(a.num) * b.den - __int128(b.num) * a.den,
                         __int128(a.den) * b.den);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from_i128(__int128(a.num) * b.num, __int128(a.den) * b.den);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num == 0) throw std::domain_error("Rational: division by zero");
        return from_i128(__int128(a.num) * b.den, __int128(a.den) * b.num);
    }
    Rational operator-() const { Rational r(*this); r.num = -r.num; return r; }

    friend bool operator==(const Rational& a, const Rational& b) noexcept {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const Rational& a, const Rational& b) noexcept { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) noexcept {
        return __int128(a.num) * b.den < __int128(b.num) * a.den;
    }
    friend bool operator<=(const Rational& a, const Rational& b) noexcept {
        return __int128(a.num) * b.den <= __int128(b.num) * a.den;
    }
    friend bool operator>(const Rational& a, const Rational& b) noexcept { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) noexcept { return b <= a; }

    Rational abs() const { return num < 0 ? -*this : *this; }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }

private:
    static __int128 gcd128(__int128 a, __int128 b) {
        while (b) { __int128 t = a % b; a = b; b = t; }
        return a;
    }
};

} // namespace fsig
