#pragma once

// Complex numbers over a working real type. std::complex is only specified
// for the builtin floating types, so the double-double field gets its own.

#include <limits>
#include <span>

#include "pathtrack/scalar/real.hpp"

namespace pathtrack {

template <typename R>
struct Complex {
    R re{};
    R im{};

    constexpr Complex() = default;
    constexpr Complex(R real) : re(real), im(0) {} // NOLINT
    constexpr Complex(R real, R imag) : re(real), im(imag) {}

    template <typename Q>
    static Complex convert(const Complex<Q>& z)
    {
        return Complex(R(z.re), R(z.im));
    }

    friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
    friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
    friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }

    friend Complex operator*(const Complex& a, const Complex& b)
    {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }

    // scaling by a real of the working type
    friend Complex operator*(const Complex& a, const R& s) { return {a.re * s, a.im * s}; }
    friend Complex operator*(const R& s, const Complex& a) { return {a.re * s, a.im * s}; }
    // scaling by a binary64 factor; cheaper than promoting it to R
    friend Complex scale(const Complex& a, double s) { return {a.re * s, a.im * s}; }

    /// Textbook quotient; a zero divisor yields non-finite components.
    friend Complex operator/(const Complex& a, const Complex& b)
    {
        const R den = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
    }

    Complex& operator+=(const Complex& b) { return *this = *this + b; }
    Complex& operator-=(const Complex& b) { return *this = *this - b; }
    Complex& operator*=(const Complex& b) { return *this = *this * b; }

    friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
};

template <typename R>
R norm1(const Complex<R>& z)
{
    return abs(z.re) + abs(z.im);
}

/// Modulus |z|; uses the double-double square root for R = DoubleDouble.
template <typename R>
R modulus(const Complex<R>& z)
{
    using std::sqrt;
    return sqrt(z.re * z.re + z.im * z.im);
}

template <typename R>
bool is_finite(const Complex<R>& z)
{
    return is_finite(z.re) && is_finite(z.im);
}

template <typename R>
bool same_bits(const Complex<R>& a, const Complex<R>& b) noexcept
{
    return same_bits(a.re, b.re) && same_bits(a.im, b.im);
}

template <typename R>
bool same_bits(std::span<const Complex<R>> a, std::span<const Complex<R>> b) noexcept
{
    if (a.size() != b.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!same_bits(a[i], b[i])) {
            return false;
        }
    }
    return true;
}

/// Infinity norm of a complex vector measured in moduli. Returns the
/// offending value if any entry is non-finite.
template <typename R>
R max_modulus(std::span<const Complex<R>> v)
{
    R result(0.0);
    for (const auto& z : v) {
        if (!is_finite(z)) {
            return R(std::numeric_limits<double>::quiet_NaN());
        }
        result = max_of(result, modulus(z));
    }
    return result;
}

} // namespace pathtrack
