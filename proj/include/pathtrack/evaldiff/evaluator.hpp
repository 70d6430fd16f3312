#pragma once

// Two-stage evaluation of a homotopy and its Jacobian at (z, t).
//
// Stage 1 (monomial stage) evaluates every monomial of the shared support
// once, together with its shifted monomials, into MonomialValues.
// Stage 2 (coefficient stage) multiplies by c_ij(t), applying the exponent
// factor a_m, to assemble residuals and Jacobian rows.
//
// Work is split by index stride: monomial j and row i belong to worker
// j mod p and i mod p. Each stage writes only to its owner's slots, so the
// stages need no synchronization inside; callers separate them by a barrier.

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "pathtrack/evaldiff/speelpenning.hpp"
#include "pathtrack/polysys/homotopy.hpp"
#include "pathtrack/scalar/complex.hpp"

namespace pathtrack {

/// Owner of index `index` under the stride partition.
constexpr int stride_owner(std::size_t index, int workers) noexcept
{
    return static_cast<int>(index % static_cast<std::size_t>(workers));
}

template <typename R>
struct MonomialValues {
    std::vector<Complex<R>> value;    // one per monomial
    std::vector<Complex<R>> partials; // Support::slot_offset layout

    MonomialValues() = default;
    explicit MonomialValues(const Support& s) : value(s.size()), partials(s.total_slots()) {}
};

template <typename R>
struct EvaluatedSystem {
    int n = 0;
    std::vector<Complex<R>> residual; // h(z, t)
    std::vector<Complex<R>> jacobian; // row-major n-by-n, dh_i/dx_v

    EvaluatedSystem() = default;
    explicit EvaluatedSystem(int dim)
        : n(dim), residual(static_cast<std::size_t>(dim)),
          jacobian(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim))
    {
    }

    Complex<R>& jac(int i, int v) { return jacobian[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(v)]; }
    const Complex<R>& jac(int i, int v) const { return jacobian[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(v)]; }
};

/// Per-worker scratch for the monomial stage (sized to the largest monomial).
template <typename R>
struct MonomialScratch {
    std::vector<Complex<R>> gathered;
    std::vector<Complex<R>> suffix;

    explicit MonomialScratch(const Support& s)
    {
        std::size_t k = 1;
        for (const auto& e : s.monomials()) {
            k = std::max(k, e.size());
        }
        gathered.resize(k);
        suffix.resize(k);
    }
};

template <typename R>
void monomial_stage(int worker, int workers, const Support& support, std::span<const Complex<R>> z,
                    MonomialValues<R>& V, MonomialScratch<R>& scratch)
{
    for (std::size_t j = static_cast<std::size_t>(worker); j < support.size(); j += static_cast<std::size_t>(workers)) {
        const auto& e = support[j];
        std::span<Complex<R>> partials(V.partials.data() + support.slot_offset(j), e.size());
        V.value[j] = eval_monomial_with_partials<Complex<R>>(z, e, partials, scratch.gathered, scratch.suffix);
    }
}

/// Writes c_ij(t) for the worker's rows into C (row-major n-by-m).
template <typename R>
void coefficient_rows(int worker, int workers, const Homotopy<R>& h, const R& t, std::span<Complex<R>> C)
{
    const std::size_t m = h.monomial_count();
    for (int i = worker; i < h.dimension(); i += workers) {
        for (std::size_t j = 0; j < m; ++j) {
            C[static_cast<std::size_t>(i) * m + j] = h.coefficient_at(i, j, t);
        }
    }
}

/// Row i: residual_i = sum_j C_ij V.value_j and
/// jacobian(i, v) = sum_j C_ij a_{j,v} V.partial_{j,v}, both accumulated
/// in increasing j. C holds the coefficients at the current t and is read
/// only on the worker's own rows.
template <typename R>
void coefficient_stage(int worker, int workers, const Support& support, std::span<const Complex<R>> C,
                       const MonomialValues<R>& V, EvaluatedSystem<R>& Y)
{
    const int n = Y.n;
    const std::size_t m = support.size();
    for (int i = worker; i < n; i += workers) {
        Complex<R> sum(R(0.0));
        Complex<R>* row = Y.jacobian.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(n);
        for (int v = 0; v < n; ++v) {
            row[v] = Complex<R>(R(0.0));
        }
        const Complex<R>* crow = C.data() + static_cast<std::size_t>(i) * m;
        for (std::size_t j = 0; j < m; ++j) {
            const Complex<R>& c = crow[j];
            sum += c * V.value[j];
            const auto factors = support[j].factors();
            const Complex<R>* partial = V.partials.data() + support.slot_offset(j);
            for (std::size_t s = 0; s < factors.size(); ++s) {
                row[factors[s].var] += scale(c, static_cast<double>(factors[s].exponent)) * partial[s];
            }
        }
        Y.residual[static_cast<std::size_t>(i)] = sum;
    }
}

/// Same, computing the worker's coefficient rows at t first. C must hold
/// n * m entries.
template <typename R>
void coefficient_stage(int worker, int workers, const Homotopy<R>& h, const R& t, const MonomialValues<R>& V,
                       EvaluatedSystem<R>& Y, std::span<Complex<R>> C)
{
    coefficient_rows<R>(worker, workers, h, t, C);
    coefficient_stage<R>(worker, workers, h.support(), C, V, Y);
}

/// Sequential evaluation: both stages with a single worker.
template <typename R>
void evaluate(const Homotopy<R>& h, std::span<const Complex<R>> z, const R& t, MonomialValues<R>& V,
              EvaluatedSystem<R>& Y)
{
    MonomialScratch<R> scratch(h.support());
    std::vector<Complex<R>> C(static_cast<std::size_t>(h.dimension()) * h.monomial_count());
    monomial_stage<R>(0, 1, h.support(), z, V, scratch);
    coefficient_stage<R>(0, 1, h, t, V, Y, std::span<Complex<R>>(C));
}

template <typename R>
EvaluatedSystem<R> evaluate(const Homotopy<R>& h, std::span<const Complex<R>> z, const R& t)
{
    MonomialValues<R> V(h.support());
    EvaluatedSystem<R> Y(h.dimension());
    evaluate<R>(h, z, t, V, Y);
    return Y;
}

} // namespace pathtrack
