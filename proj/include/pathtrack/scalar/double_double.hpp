#pragma once

// Double-double arithmetic: an unevaluated sum hi + lo of two binary64
// numbers with |lo| <= ulp(hi)/2, giving roughly 106 significant bits.
//
// Relative error bounds, with u = 2^-53 (all well below 2^-100):
//   add, sub : 3u^2       (accurate two-sum based addition)
//   mul      : 5u^2       (4u^2 with hardware FMA)
//   div      : 10u^2      (three-quotient long division)
//   sqrt     : 4u^2       (one Newton step on the binary64 root)
//
// Non-finite results are normalized to (hi, 0) with hi = NaN or +-Inf.

#include <cmath>
#include <iosfwd>
#include <string>

#include "pathtrack/scalar/eft.hpp"

namespace pathtrack {

class DoubleDouble {
public:
    constexpr DoubleDouble() noexcept = default;
    constexpr DoubleDouble(double x) noexcept : hi_(x), lo_(0.0) {} // NOLINT: implicit by design of a numeric type
    constexpr DoubleDouble(int x) noexcept : hi_(x), lo_(0.0) {}    // NOLINT

    /// Wraps an already normalized pair; no renormalization is done.
    static constexpr DoubleDouble from_parts(double hi, double lo) noexcept
    {
        DoubleDouble r;
        r.hi_ = hi;
        r.lo_ = lo;
        return r;
    }

    /// Normalizes an arbitrary pair with a two-sum.
    static DoubleDouble normalized(double hi, double lo) noexcept
    {
        const auto [s, e] = two_sum(hi, lo);
        return finite_or_flagged(s, e);
    }

    constexpr double hi() const noexcept { return hi_; }
    constexpr double lo() const noexcept { return lo_; }

    explicit constexpr operator double() const noexcept { return hi_; }

    friend DoubleDouble operator-(const DoubleDouble& a) noexcept
    {
        return from_parts(-a.hi_, -a.lo_);
    }

    friend DoubleDouble operator+(const DoubleDouble& a, const DoubleDouble& b) noexcept
    {
        auto [s, e] = two_sum(a.hi_, b.hi_);
        const auto [t, f] = two_sum(a.lo_, b.lo_);
        e += t;
        auto r = quick_two_sum(s, e);
        r.error += f;
        r = quick_two_sum(r.value, r.error);
        return finite_or_flagged(r.value, r.error);
    }

    friend DoubleDouble operator+(const DoubleDouble& a, double b) noexcept
    {
        auto [s, e] = two_sum(a.hi_, b);
        e += a.lo_;
        const auto r = quick_two_sum(s, e);
        return finite_or_flagged(r.value, r.error);
    }

    friend DoubleDouble operator+(double a, const DoubleDouble& b) noexcept { return b + a; }

    friend DoubleDouble operator-(const DoubleDouble& a, const DoubleDouble& b) noexcept { return a + (-b); }
    friend DoubleDouble operator-(const DoubleDouble& a, double b) noexcept { return a + (-b); }
    friend DoubleDouble operator-(double a, const DoubleDouble& b) noexcept { return (-b) + a; }

    friend DoubleDouble operator*(const DoubleDouble& a, const DoubleDouble& b) noexcept
    {
        auto [p, e] = two_prod(a.hi_, b.hi_);
        if constexpr (kHardwareFma) {
            e += std::fma(a.lo_, b.hi_, a.hi_ * b.lo_);
        } else {
            e += a.hi_ * b.lo_ + a.lo_ * b.hi_;
        }
        const auto r = quick_two_sum(p, e);
        return finite_or_flagged(r.value, r.error);
    }

    friend DoubleDouble operator*(const DoubleDouble& a, double b) noexcept
    {
        auto [p, e] = two_prod(a.hi_, b);
        e += a.lo_ * b;
        const auto r = quick_two_sum(p, e);
        return finite_or_flagged(r.value, r.error);
    }

    friend DoubleDouble operator*(double a, const DoubleDouble& b) noexcept { return b * a; }

    friend DoubleDouble operator/(const DoubleDouble& a, const DoubleDouble& b) noexcept
    {
        if (b.hi_ == 0.0 || !std::isfinite(b.hi_) || !std::isfinite(a.hi_)) {
            return from_parts(a.hi_ / b.hi_, 0.0);
        }
        const double q1 = a.hi_ / b.hi_;
        DoubleDouble r = a - b * q1;
        const double q2 = r.hi_ / b.hi_;
        r = r - b * q2;
        const double q3 = r.hi_ / b.hi_;
        const auto q = quick_two_sum(q1, q2);
        return from_parts(q.value, q.error) + q3;
    }

    friend DoubleDouble operator/(const DoubleDouble& a, double b) noexcept
    {
        return a / DoubleDouble(b);
    }

    DoubleDouble& operator+=(const DoubleDouble& b) noexcept { return *this = *this + b; }
    DoubleDouble& operator-=(const DoubleDouble& b) noexcept { return *this = *this - b; }
    DoubleDouble& operator*=(const DoubleDouble& b) noexcept { return *this = *this * b; }
    DoubleDouble& operator/=(const DoubleDouble& b) noexcept { return *this = *this / b; }

    friend bool operator==(const DoubleDouble& a, const DoubleDouble& b) noexcept
    {
        return a.hi_ == b.hi_ && a.lo_ == b.lo_;
    }

    friend bool operator<(const DoubleDouble& a, const DoubleDouble& b) noexcept
    {
        return a.hi_ < b.hi_ || (a.hi_ == b.hi_ && a.lo_ < b.lo_);
    }
    friend bool operator>(const DoubleDouble& a, const DoubleDouble& b) noexcept { return b < a; }
    friend bool operator<=(const DoubleDouble& a, const DoubleDouble& b) noexcept
    {
        return a.hi_ < b.hi_ || (a.hi_ == b.hi_ && a.lo_ <= b.lo_);
    }
    friend bool operator>=(const DoubleDouble& a, const DoubleDouble& b) noexcept { return b <= a; }

private:
    static DoubleDouble finite_or_flagged(double hi, double lo) noexcept
    {
        if (!std::isfinite(hi)) {
            return from_parts(hi, 0.0);
        }
        return from_parts(hi, lo);
    }

    double hi_ = 0.0;
    double lo_ = 0.0;
};

inline DoubleDouble abs(const DoubleDouble& a) noexcept
{
    return a.hi() < 0.0 ? -a : a;
}

inline bool is_finite(const DoubleDouble& a) noexcept
{
    return std::isfinite(a.hi()) && std::isfinite(a.lo());
}

inline double to_double(const DoubleDouble& a) noexcept
{
    return a.hi() + a.lo();
}

/// Square root by one Newton correction of the binary64 root.
/// Throws std::domain_error for negative input.
DoubleDouble sqrt(const DoubleDouble& a);

/// Decimal rendering with `digits` significant digits (scientific notation).
std::string to_string(const DoubleDouble& a, int digits = 32);

std::ostream& operator<<(std::ostream& os, const DoubleDouble& a);

} // namespace pathtrack
