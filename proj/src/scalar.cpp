#include <bit>
#include <cfenv>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pathtrack/scalar/complex.hpp"
#include "pathtrack/scalar/double_double.hpp"
#include "pathtrack/scalar/eft.hpp"
#include "pathtrack/scalar/real.hpp"

namespace pathtrack {

void check_rounding_mode()
{
    if (std::fegetround() != FE_TONEAREST) {
        throw std::runtime_error("double-double arithmetic requires round-to-nearest rounding mode");
    }
}

DoubleDouble sqrt(const DoubleDouble& a)
{
    if (a.hi() < 0.0) {
        throw std::domain_error("sqrt of a negative double-double");
    }
    if (a.hi() == 0.0 || !std::isfinite(a.hi())) {
        return DoubleDouble::from_parts(std::sqrt(a.hi()), 0.0);
    }
    const double x = std::sqrt(a.hi());
    const auto [p, e] = two_prod(x, x);
    const double correction = ((a.hi() - p) - e + a.lo()) * 0.5 / x;
    const auto r = quick_two_sum(x, correction);
    return DoubleDouble::from_parts(r.value, r.error);
}

namespace {

DoubleDouble power_of_ten(int exponent)
{
    DoubleDouble result(1.0);
    DoubleDouble base(10.0);
    unsigned n = static_cast<unsigned>(exponent < 0 ? -exponent : exponent);
    while (n != 0) {
        if (n & 1u) {
            result *= base;
        }
        base *= base;
        n >>= 1u;
    }
    return exponent < 0 ? DoubleDouble(1.0) / result : result;
}

} // namespace

std::string to_string(const DoubleDouble& a, int digits)
{
    if (std::isnan(a.hi())) {
        return "nan";
    }
    if (std::isinf(a.hi())) {
        return a.hi() < 0 ? "-inf" : "inf";
    }
    if (digits < 1) {
        digits = 1;
    }
    std::string out;
    if (std::signbit(a.hi())) {
        out.push_back('-');
    }
    if (a.hi() == 0.0) {
        out += "0." + std::string(static_cast<std::size_t>(digits - 1), '0') + "e+00";
        return out;
    }

    const DoubleDouble x = abs(a);
    int exponent = static_cast<int>(std::floor(std::log10(x.hi())));
    DoubleDouble r = x / power_of_ten(exponent);
    if (r.hi() >= 10.0) {
        r /= 10.0;
        ++exponent;
    } else if (r.hi() < 1.0) {
        r *= 10.0;
        --exponent;
    }

    // one guard digit for rounding
    std::vector<int> d(static_cast<std::size_t>(digits) + 1);
    for (auto& digit : d) {
        int v = static_cast<int>(std::floor(r.hi()));
        v = v < 0 ? 0 : (v > 9 ? 9 : v);
        digit = v;
        r = (r - double(v)) * 10.0;
    }
    if (d.back() >= 5) {
        for (std::size_t i = d.size() - 1; i-- > 0;) {
            if (++d[i] < 10) {
                break;
            }
            d[i] = 0;
            if (i == 0) {
                d.insert(d.begin(), 1);
                ++exponent;
            }
        }
    }
    d.resize(static_cast<std::size_t>(digits));

    out.push_back(static_cast<char>('0' + d[0]));
    if (digits > 1) {
        out.push_back('.');
        for (std::size_t i = 1; i < d.size(); ++i) {
            out.push_back(static_cast<char>('0' + d[i]));
        }
    }
    out.push_back('e');
    out.push_back(exponent < 0 ? '-' : '+');
    const int ae = exponent < 0 ? -exponent : exponent;
    if (ae < 10) {
        out.push_back('0');
    }
    out += std::to_string(ae);
    return out;
}

std::ostream& operator<<(std::ostream& os, const DoubleDouble& a)
{
    return os << to_string(a);
}

std::string_view to_string(PrecisionLevel level)
{
    return level == PrecisionLevel::Double ? "d" : "dd";
}

PrecisionLevel parse_precision(std::string_view text)
{
    if (text == "d") {
        return PrecisionLevel::Double;
    }
    if (text == "dd") {
        return PrecisionLevel::DoubleDouble;
    }
    throw std::invalid_argument("unknown precision '" + std::string(text) + "' (expected d or dd)");
}

bool same_bits(double a, double b) noexcept
{
    return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

bool same_bits(const DoubleDouble& a, const DoubleDouble& b) noexcept
{
    return same_bits(a.hi(), b.hi()) && same_bits(a.lo(), b.lo());
}

} // namespace pathtrack
