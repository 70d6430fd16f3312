#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pathtrack/polysys/support.hpp"
#include "pathtrack/scalar/complex.hpp"

namespace pathtrack {

/// n polynomials in n variables over a shared support of m monomials; the
/// coefficients form a row-major n-by-m matrix.
class SupportedSystem {
public:
    SupportedSystem() = default;
    /// Validates shape and that every row has a nonzero coefficient.
    SupportedSystem(Support support, std::vector<Complex<double>> coeffs);

    int dimension() const noexcept { return support_.dimension(); }
    std::size_t monomial_count() const noexcept { return support_.size(); }
    const Support& support() const noexcept { return support_; }

    std::span<const Complex<double>> coefficients() const noexcept { return coeffs_; }
    std::span<const Complex<double>> row(int i) const
    {
        return std::span<const Complex<double>>(coeffs_).subspan(static_cast<std::size_t>(i) * monomial_count(),
                                                               monomial_count());
    }
    const Complex<double>& coefficient(int i, std::size_t j) const
    {
        return coeffs_[static_cast<std::size_t>(i) * monomial_count() + j];
    }

    /// Same support and bitwise-identical coefficients.
    friend bool operator==(const SupportedSystem& a, const SupportedSystem& b);

private:
    Support support_;
    std::vector<Complex<double>> coeffs_;
};

/// Parameters of the random system generator.
struct SystemSpec {
    int n = 1;
    int m = 1;
    int max_degree = 1;
    // 0 selects total degrees uniform on [1, max_degree]
    int avg_degree = 0;
    std::uint64_t seed = 1;
};

/// Deterministic random system. Per monomial: the total degree d is uniform
/// on a window in [1, max_degree] centred at avg_degree (the whole range when
/// avg_degree is 0); the number of distinct variables k is uniform on
/// [1, min(d, n)]; the k variables are a uniform k-subset; the exponents are
/// a uniform composition of d into k positive parts. Duplicate monomials are
/// redrawn. Coefficients are uniform on the complex unit disk, drawn row by row.
/// Throws std::invalid_argument when the spec is invalid or infeasible.
SupportedSystem generate_system(const SystemSpec& spec);

/// Inclusive total-degree window used by generate_system.
std::pair<int, int> degree_window(const SystemSpec& spec);

/// Uniform point on the complex unit disk per coordinate, seeded.
std::vector<Complex<double>> random_point(int n, std::uint64_t seed);

/// random_point scaled onto the unit circle coordinatewise.
std::vector<Complex<double>> random_unit_point(int n, std::uint64_t seed);

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what);
    int line() const noexcept { return line_; }

private:
    int line_;
};

/// Text format: "n m", then m support lines "k i1 a1 ... ik ak" with
/// 1-based variable indices, then n lines of m "re im" pairs. Reals are
/// printed in shortest round-trip form.
void write_system(const SupportedSystem& sys, std::ostream& out);
void write_system(const SupportedSystem& sys, const std::filesystem::path& path);
/// Throws ParseError (with the 1-based line number) on malformed input.
SupportedSystem read_system(std::istream& in);
SupportedSystem read_system(const std::filesystem::path& path);

} // namespace pathtrack
