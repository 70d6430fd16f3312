#pragma once

#include <span>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "pathtrack/polysys/system.hpp"
#include "pathtrack/scalar/complex.hpp"

namespace pathtrack {

/// Value of a single monomial by repeated multiplication, x_{i1}^{a1} first.
template <typename R>
Complex<R> power_product(std::span<const Complex<R>> x, const ExponentVector& e)
{
    Complex<R> value(R(1.0));
    for (const auto& f : e.factors()) {
        for (int r = 0; r < f.exponent; ++r) {
            value = value * x[static_cast<std::size_t>(f.var)];
        }
    }
    return value;
}

/// h(x, t) = sum_j c_ij(t) x^{a_j} with coefficients linear in t:
/// C(t) = (1 - t) * start + t * target, so C(0) = start and C(1) = target.
template <typename R>
class Homotopy {
public:
    Homotopy(Support support, std::vector<Complex<R>> start, std::vector<Complex<R>> target,
             std::vector<Complex<R>> start_solution)
        : support_(std::move(support)), start_(std::move(start)), target_(std::move(target)),
          start_solution_(std::move(start_solution))
    {
        const auto n = static_cast<std::size_t>(support_.dimension());
        if (start_.size() != n * support_.size() || target_.size() != start_.size()) {
            throw std::invalid_argument("homotopy coefficient matrices must be n-by-m");
        }
        if (start_solution_.size() != n) {
            throw std::invalid_argument("start solution must have n coordinates");
        }
    }

    int dimension() const noexcept { return support_.dimension(); }
    std::size_t monomial_count() const noexcept { return support_.size(); }
    const Support& support() const noexcept { return support_; }
    std::span<const Complex<R>> start_solution() const noexcept { return start_solution_; }
    std::span<const Complex<R>> start_coefficients() const noexcept { return start_; }
    std::span<const Complex<R>> target_coefficients() const noexcept { return target_; }

    /// c_ij(t); returns the stored endpoint coefficient bitwise at t = 0 and t = 1.
    Complex<R> coefficient_at(int i, std::size_t j, const R& t) const
    {
        const std::size_t idx = static_cast<std::size_t>(i) * support_.size() + j;
        if (t == R(0.0)) {
            return start_[idx];
        }
        if (t == R(1.0)) {
            return target_[idx];
        }
        return (R(1.0) - t) * start_[idx] + t * target_[idx];
    }

    std::vector<Complex<R>> coefficients_at(const R& t) const
    {
        std::vector<Complex<R>> c(start_.size());
        for (int i = 0; i < dimension(); ++i) {
            for (std::size_t j = 0; j < monomial_count(); ++j) {
                c[static_cast<std::size_t>(i) * monomial_count() + j] = coefficient_at(i, j, t);
            }
        }
        return c;
    }

private:
    Support support_;
    std::vector<Complex<R>> start_;
    std::vector<Complex<R>> target_;
    std::vector<Complex<R>> start_solution_;
};

/// Newton homotopy h(x, t) = f(x) - (1 - t) f(z0). Only the constant column
/// differs between start and target; the constant monomial is appended to
/// the support when f lacks one. f(z0) is computed in the working precision.
template <typename R>
Homotopy<R> newton_homotopy(const SupportedSystem& f, std::span<const Complex<R>> z0)
{
    const int n = f.dimension();
    if (z0.size() != static_cast<std::size_t>(n)) {
        throw std::invalid_argument("start point must have n coordinates");
    }
    std::vector<ExponentVector> monomials(f.support().monomials().begin(), f.support().monomials().end());
    std::size_t constant = f.support().constant_index();
    const bool append = constant == monomials.size();
    if (append) {
        monomials.emplace_back();
    }
    const std::size_t m = monomials.size();

    std::vector<Complex<R>> target(static_cast<std::size_t>(n) * m, Complex<R>(R(0.0)));
    for (int i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < f.monomial_count(); ++j) {
            target[static_cast<std::size_t>(i) * m + j] = Complex<R>::convert(f.coefficient(i, j));
        }
    }

    std::vector<Complex<R>> values(m);
    for (std::size_t j = 0; j < m; ++j) {
        values[j] = power_product<R>(z0, monomials[j]);
    }
    std::vector<Complex<R>> start = target;
    for (int i = 0; i < n; ++i) {
        Complex<R> fz(R(0.0));
        for (std::size_t j = 0; j < m; ++j) {
            fz += target[static_cast<std::size_t>(i) * m + j] * values[j];
        }
        auto& c = start[static_cast<std::size_t>(i) * m + constant];
        c = c - fz;
    }
    return Homotopy<R>(Support(n, std::move(monomials)), std::move(start), std::move(target),
                       std::vector<Complex<R>>(z0.begin(), z0.end()));
}

template <typename R>
Homotopy<R> newton_homotopy(const SupportedSystem& f, std::span<const Complex<double>> z0)
    requires(!std::is_same_v<R, double>)
{
    std::vector<Complex<R>> z(z0.size());
    for (std::size_t i = 0; i < z0.size(); ++i) {
        z[i] = Complex<R>::convert(z0[i]);
    }
    return newton_homotopy<R>(f, std::span<const Complex<R>>(z));
}

} // namespace pathtrack
