#pragma once

// Error-free transformations of binary64 sums and products.
//
// All routines assume round-to-nearest-even and must not be compiled with
// floating-point contraction or value-changing optimizations enabled.

#include <cmath>

namespace pathtrack {

/// Rounded result together with its exact rounding error: value + error
/// equals the exact real result whenever no overflow occurs.
struct ErrorFreePair {
    double value;
    double error;
};

/// Knuth's branch-free two-sum. On overflow `value` is non-finite and
/// `error` is unspecified.
inline ErrorFreePair two_sum(double a, double b) noexcept
{
    const double s = a + b;
    const double bb = s - a;
    const double e = (a - (s - bb)) + (b - bb);
    return {s, e};
}

/// Dekker's fast two-sum; requires |a| >= |b| (or a == 0).
inline ErrorFreePair quick_two_sum(double a, double b) noexcept
{
    const double s = a + b;
    const double e = b - (s - a);
    return {s, e};
}

// Veltkamp splitting constant 2^27 + 1.
inline constexpr double kSplitter = 134217729.0;

/// Splits a into hi + lo with both halves holding at most 26 significant bits.
inline ErrorFreePair split(double a) noexcept
{
    const double t = kSplitter * a;
    const double hi = t - (t - a);
    return {hi, a - hi};
}

/// Dekker's product without a fused multiply-add. Exact as long as neither
/// a, b nor the product overflow and the error term does not underflow.
inline ErrorFreePair two_prod_dekker(double a, double b) noexcept
{
    const double p = a * b;
    const auto [ah, al] = split(a);
    const auto [bh, bl] = split(b);
    const double e = ((ah * bh - p) + ah * bl + al * bh) + al * bl;
    return {p, e};
}

inline ErrorFreePair two_prod_fma(double a, double b) noexcept
{
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

#if defined(FP_FAST_FMA) || defined(__FMA__)
inline constexpr bool kHardwareFma = true;
#else
inline constexpr bool kHardwareFma = false;
#endif

/// p = fl(a*b), e = a*b - p exactly. Uses the hardware FMA when the target
/// has one, Dekker splitting otherwise.
inline ErrorFreePair two_prod(double a, double b) noexcept
{
    if constexpr (kHardwareFma) {
        return two_prod_fma(a, b);
    } else {
        return two_prod_dekker(a, b);
    }
}

/// Throws std::runtime_error unless the current rounding mode is
/// round-to-nearest. Every error-free transformation relies on it.
void check_rounding_mode();

} // namespace pathtrack
