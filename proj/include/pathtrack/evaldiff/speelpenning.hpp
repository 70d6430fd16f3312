#pragma once

// Monomial evaluation with all first-order shifted monomials.
//
// For x^a = x_{i1}^{a1} ... x_{ik}^{ak} the shifted monomials are
// x^{a - e_{im}}, m = 1..k (the partial derivatives without their exponent
// factor). They share the common factor x_{i1}^{a1-1} ... x_{ik}^{ak-1},
// which is multiplied by the all-but-one products
//   omega_m = prod_{j != m} x_{ij},
// obtained from prefix products psi and suffix products phi in 3k - 6
// multiplications for k >= 2.
//
// The element type T only needs copy construction, operator* and
// construction from the multiplicative identity (T(1)); tests instantiate
// it with a counting wrapper.

#include <cstddef>
#include <span>
#include <vector>

#include "pathtrack/polysys/support.hpp"

namespace pathtrack {

/// Fills omega[m] = prod_{j != m} v[j]. Uses `scratch` (size >= k) for the
/// suffix products. omega[0] = 1 when k == 1.
template <typename T>
void suffix_prefix_products(std::span<const T> v, std::span<T> omega, std::span<T> scratch)
{
    const std::size_t k = v.size();
    if (k == 0) {
        return;
    }
    if (k == 1) {
        omega[0] = T(1.0);
        return;
    }
    // omega[m] temporarily holds psi_m = v[0] * ... * v[m-1] for m = 1..k-1
    omega[1] = v[0];
    for (std::size_t m = 2; m < k; ++m) {
        omega[m] = omega[m - 1] * v[m - 1];
    }
    // scratch[m] holds phi over v[m+1..k-1], for m = k-2 down to 0
    scratch[k - 2] = v[k - 1];
    for (std::size_t m = k - 2; m-- > 0;) {
        scratch[m] = scratch[m + 1] * v[m + 1];
    }
    omega[0] = scratch[0];
    for (std::size_t m = 1; m + 1 < k; ++m) {
        omega[m] = omega[m] * scratch[m];
    }
    // omega[k-1] = psi_{k-1} is already in place
}

template <typename T>
std::vector<T> suffix_prefix_products(std::span<const T> v)
{
    std::vector<T> omega(v.size());
    std::vector<T> scratch(v.size());
    suffix_prefix_products<T>(v, omega, scratch);
    return omega;
}

/// Evaluates x^e and writes the k shifted monomials x^{e - e_{im}} into
/// `partials` (size e.size()). `gathered` and `scratch` are work arrays of
/// at least e.size() entries. Returns the monomial value.
template <typename T>
T eval_monomial_with_partials(std::span<const T> x, const ExponentVector& e, std::span<T> partials,
                              std::span<T> gathered, std::span<T> scratch)
{
    const auto factors = e.factors();
    const std::size_t k = factors.size();
    if (k == 0) {
        return T(1.0);
    }

    // common factor x_{i1}^{a1-1} ... x_{ik}^{ak-1}, by plain repeated products
    bool have_common = false;
    T common(1.0);
    for (std::size_t s = 0; s < k; ++s) {
        const T& xv = x[static_cast<std::size_t>(factors[s].var)];
        gathered[s] = xv;
        for (int r = 1; r < factors[s].exponent; ++r) {
            if (have_common) {
                common = common * xv;
            } else {
                common = xv;
                have_common = true;
            }
        }
    }

    suffix_prefix_products<T>(std::span<const T>(gathered.data(), k), partials.first(k), scratch);
    if (have_common) {
        for (std::size_t s = 0; s < k; ++s) {
            partials[s] = common * partials[s];
        }
    }
    return partials[0] * gathered[0];
}

} // namespace pathtrack
