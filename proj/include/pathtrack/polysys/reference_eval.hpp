#pragma once

// Independent evaluation oracle: every monomial of every polynomial is
// powered out from scratch, nothing is shared between rows.

#include <span>
#include <vector>

#include "pathtrack/polysys/homotopy.hpp"
#include "pathtrack/polysys/system.hpp"

namespace pathtrack {

template <typename R>
std::vector<Complex<R>> eval_reference(const SupportedSystem& sys, std::span<const Complex<R>> x)
{
    std::vector<Complex<R>> y(static_cast<std::size_t>(sys.dimension()), Complex<R>(R(0.0)));
    for (int i = 0; i < sys.dimension(); ++i) {
        for (std::size_t j = 0; j < sys.monomial_count(); ++j) {
            y[static_cast<std::size_t>(i)] +=
                Complex<R>::convert(sys.coefficient(i, j)) * power_product<R>(x, sys.support()[j]);
        }
    }
    return y;
}

} // namespace pathtrack
