#pragma once

// Precision-generic real scalar interface. Kernels are written against a
// real type R that is either double or DoubleDouble; everything they need
// beyond the arithmetic operators goes through the free functions and the
// RealTraits specializations below.

#include <cmath>
#include <cstdint>
#include <string_view>

#include "pathtrack/scalar/double_double.hpp"

namespace pathtrack {

enum class PrecisionLevel { Double, DoubleDouble };

std::string_view to_string(PrecisionLevel level);
/// Parses "d" or "dd"; throws std::invalid_argument otherwise.
PrecisionLevel parse_precision(std::string_view text);

inline double abs(double x) noexcept { return std::fabs(x); }
inline bool is_finite(double x) noexcept { return std::isfinite(x); }
inline double to_double(double x) noexcept { return x; }

template <typename R>
struct RealTraits;

template <>
struct RealTraits<double> {
    static constexpr PrecisionLevel level = PrecisionLevel::Double;
    // unit roundoff of the working precision, 2^-52
    static constexpr double epsilon() { return 0x1p-52; }
    static constexpr double default_tolerance() { return 1e-8; }
    static constexpr double default_min_step() { return 1e-6; }
};

template <>
struct RealTraits<DoubleDouble> {
    static constexpr PrecisionLevel level = PrecisionLevel::DoubleDouble;
    static constexpr double epsilon() { return 0x1p-104; }
    static constexpr double default_tolerance() { return 1e-24; }
    static constexpr double default_min_step() { return 1e-8; }
};

template <typename R>
concept WorkingReal = requires { RealTraits<R>::level; };

template <typename R>
R max_of(const R& a, const R& b)
{
    return a < b ? b : a;
}

/// Bitwise identity of two reals (distinguishes -0 from +0, compares NaN payloads).
bool same_bits(double a, double b) noexcept;
bool same_bits(const DoubleDouble& a, const DoubleDouble& b) noexcept;

} // namespace pathtrack
