#pragma once

// Baseline evaluator that treats the continuation parameter as variable
// n+1: h_i = sum_j start_ij x^{a_j} + (target_ij - start_ij) t x^{a_j}.
// Every monomial and every derivative monomial of this (n+1)-variable
// system is powered out independently; nothing is shared between a
// monomial and its derivatives. Used as a cross-check and as the "before"
// side of the evaluation benchmark.

#include <span>
#include <vector>

#include "pathtrack/evaldiff/evaluator.hpp"
#include "pathtrack/polysys/homotopy.hpp"

namespace pathtrack {

template <typename R>
class ExtendedSystem {
public:
    explicit ExtendedSystem(const Homotopy<R>& h) : n_(h.dimension())
    {
        const Support& support = h.support();
        const std::size_t m = support.size();
        for (std::size_t j = 0; j < m; ++j) {
            std::vector<VarPower> plain(support[j].factors().begin(), support[j].factors().end());
            std::vector<VarPower> with_t = plain;
            with_t.push_back({n_, 1});
            monomials_.emplace_back(std::move(plain), n_ + 1);
            monomials_.emplace_back(std::move(with_t), n_ + 1);
        }
        const auto start = h.start_coefficients();
        const auto target = h.target_coefficients();
        coeffs_.resize(static_cast<std::size_t>(n_) * 2 * m);
        for (int i = 0; i < n_; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                const std::size_t src = static_cast<std::size_t>(i) * m + j;
                const std::size_t dst = static_cast<std::size_t>(i) * 2 * m + 2 * j;
                coeffs_[dst] = start[src];
                coeffs_[dst + 1] = target[src] - start[src];
            }
        }
    }

    int dimension() const noexcept { return n_; }
    std::span<const ExponentVector> monomials() const noexcept { return monomials_; }
    const Complex<R>& coefficient(int i, std::size_t j) const
    {
        return coeffs_[static_cast<std::size_t>(i) * monomials_.size() + j];
    }

private:
    int n_;
    std::vector<ExponentVector> monomials_;
    std::vector<Complex<R>> coeffs_;
};

template <typename R>
struct OldEvaluation {
    EvaluatedSystem<R> system;
    std::vector<Complex<R>> dt; // dh/dt, the extra column of the (n+1)-variable Jacobian
};

namespace detail {

// a_v x^{e - e_v} by repeated multiplication, or x^e when v < 0
template <typename R>
Complex<R> naive_monomial(std::span<const Complex<R>> point, const ExponentVector& e, int v)
{
    Complex<R> value(R(1.0));
    int factor = 1;
    for (const auto& f : e.factors()) {
        int power = f.exponent;
        if (f.var == v) {
            factor = f.exponent;
            --power;
        }
        for (int r = 0; r < power; ++r) {
            value = value * point[static_cast<std::size_t>(f.var)];
        }
    }
    return factor == 1 ? value : value * R(static_cast<double>(factor));
}

} // namespace detail

template <typename R>
void eval_old_baseline(const ExtendedSystem<R>& sys, std::span<const Complex<R>> z, const R& t,
                       OldEvaluation<R>& out)
{
    const int n = sys.dimension();
    std::vector<Complex<R>> point(z.begin(), z.end());
    point.push_back(Complex<R>(t));

    const auto monomials = sys.monomials();
    const std::size_t mm = monomials.size();
    // values[j * (n + 2)]: monomial j; then derivative with respect to each of the n+1 variables
    const std::size_t stride = static_cast<std::size_t>(n) + 2;
    std::vector<Complex<R>> values(mm * stride, Complex<R>(R(0.0)));
    for (std::size_t j = 0; j < mm; ++j) {
        values[j * stride] = detail::naive_monomial<R>(point, monomials[j], -1);
        for (const auto& f : monomials[j].factors()) {
            values[j * stride + 1 + static_cast<std::size_t>(f.var)] =
                detail::naive_monomial<R>(point, monomials[j], f.var);
        }
    }

    out.system = EvaluatedSystem<R>(n);
    out.dt.assign(static_cast<std::size_t>(n), Complex<R>(R(0.0)));
    for (int i = 0; i < n; ++i) {
        Complex<R> sum(R(0.0));
        for (std::size_t j = 0; j < mm; ++j) {
            const Complex<R>& c = sys.coefficient(i, j);
            sum += c * values[j * stride];
            for (const auto& f : monomials[j].factors()) {
                const Complex<R> term = c * values[j * stride + 1 + static_cast<std::size_t>(f.var)];
                if (f.var == n) {
                    out.dt[static_cast<std::size_t>(i)] += term;
                } else {
                    out.system.jac(i, f.var) += term;
                }
            }
        }
        out.system.residual[static_cast<std::size_t>(i)] = sum;
    }
}

template <typename R>
EvaluatedSystem<R> eval_old_baseline(const Homotopy<R>& h, std::span<const Complex<R>> z, const R& t)
{
    ExtendedSystem<R> sys(h);
    OldEvaluation<R> out;
    eval_old_baseline<R>(sys, z, t, out);
    return out.system;
}

} // namespace pathtrack
