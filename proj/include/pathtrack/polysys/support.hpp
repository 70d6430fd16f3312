#pragma once

#include <cstddef>
#include <compare>
#include <span>
#include <vector>

namespace pathtrack {

/// One factor x_var^exponent of a monomial. Variables are 0-based in memory;
/// the text format uses 1-based indices.
struct VarPower {
    int var = 0;
    int exponent = 1;

    friend auto operator<=>(const VarPower&, const VarPower&) = default;
};

/// Sparse exponent vector x_{i1}^{a1} ... x_{ik}^{ak} with strictly
/// increasing variable indices and positive exponents. k = 0 is the
/// constant monomial.
class ExponentVector {
public:
    ExponentVector() = default;

    /// Throws std::invalid_argument unless indices strictly increase, lie in
    /// [0, n) and all exponents are >= 1.
    ExponentVector(std::vector<VarPower> factors, int n);

    std::span<const VarPower> factors() const noexcept { return factors_; }
    std::size_t size() const noexcept { return factors_.size(); }
    bool is_constant() const noexcept { return factors_.empty(); }
    int total_degree() const noexcept;

    friend auto operator<=>(const ExponentVector&, const ExponentVector&) = default;

private:
    std::vector<VarPower> factors_;
};

/// The monomial support shared by all polynomials of a system, with the
/// flattened layout used to store shifted monomials (one slot per factor).
class Support {
public:
    Support() = default;
    /// Throws std::invalid_argument on duplicate exponent vectors.
    Support(int n, std::vector<ExponentVector> monomials);

    int dimension() const noexcept { return n_; }
    std::size_t size() const noexcept { return monomials_.size(); }
    const ExponentVector& operator[](std::size_t j) const { return monomials_[j]; }
    std::span<const ExponentVector> monomials() const noexcept { return monomials_; }

    /// Offset of monomial j's first slot in a flat per-factor array.
    std::size_t slot_offset(std::size_t j) const { return offsets_[j]; }
    std::size_t total_slots() const noexcept { return offsets_.empty() ? 0 : offsets_.back(); }

    /// Index of the constant monomial, or size() if absent.
    std::size_t constant_index() const noexcept;

    friend bool operator==(const Support& a, const Support& b)
    {
        return a.n_ == b.n_ && a.monomials_ == b.monomials_;
    }

private:
    int n_ = 0;
    std::vector<ExponentVector> monomials_;
    std::vector<std::size_t> offsets_;
};

} // namespace pathtrack
