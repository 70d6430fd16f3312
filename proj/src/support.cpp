#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

#include "pathtrack/polysys/support.hpp"

namespace pathtrack {

ExponentVector::ExponentVector(std::vector<VarPower> factors, int n) : factors_(std::move(factors))
{
    int previous = -1;
    for (const auto& f : factors_) {
        if (f.var < 0 || f.var >= n) {
            throw std::invalid_argument("variable index " + std::to_string(f.var + 1) + " outside 1.." +
                                        std::to_string(n));
        }
        if (f.var <= previous) {
            throw std::invalid_argument("variable indices of a monomial must strictly increase");
        }
        if (f.exponent < 1) {
            throw std::invalid_argument("monomial exponents must be positive");
        }
        previous = f.var;
    }
}

int ExponentVector::total_degree() const noexcept
{
    int d = 0;
    for (const auto& f : factors_) {
        d += f.exponent;
    }
    return d;
}

Support::Support(int n, std::vector<ExponentVector> monomials) : n_(n), monomials_(std::move(monomials))
{
    if (n < 1) {
        throw std::invalid_argument("dimension must be at least 1");
    }
    std::set<ExponentVector> seen;
    offsets_.reserve(monomials_.size() + 1);
    offsets_.push_back(0);
    for (const auto& e : monomials_) {
        if (!seen.insert(e).second) {
            throw std::invalid_argument("duplicate monomial in support");
        }
        for (const auto& f : e.factors()) {
            if (f.var >= n) {
                throw std::invalid_argument("monomial uses a variable beyond the dimension");
            }
        }
        offsets_.push_back(offsets_.back() + e.size());
    }
}

std::size_t Support::constant_index() const noexcept
{
    const auto it = std::find_if(monomials_.begin(), monomials_.end(),
                                 [](const ExponentVector& e) { return e.is_constant(); });
    return static_cast<std::size_t>(it - monomials_.begin());
}

} // namespace pathtrack
