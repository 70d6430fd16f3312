#pragma once

// Row reduction with partial pivoting on [A | b] and back substitution,
// written for a team of p workers.
//
// Rows are owned by index stride (row r belongs to worker r mod p, after
// physical row swaps). For each column the coordinator picks the pivot in a
// barrier duty, so the pivot choice always sees every row update of the
// previous column. Back substitution finalizes unknowns from the bottom up:
// the owner of row j computes x_j, a barrier publishes it, and every worker
// folds x_j into the right-hand sides of its rows above j.
//
// The arithmetic applied to each entry does not depend on p, so the reduced
// matrix, the pivot record and the solution are bitwise identical for any
// team size.

#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

#include "pathtrack/evaldiff/evaluator.hpp"
#include "pathtrack/parallel/team.hpp"
#include "pathtrack/scalar/complex.hpp"

namespace pathtrack {

/// Per-column record of the pivot search, filled when tracing is enabled.
template <typename R>
struct PivotStep {
    std::size_t chosen = 0;          // row position picked
    std::vector<R> candidate_norms;  // |re|+|im| of rows c..n-1 before the swap
};

template <typename R>
class GaussSolver {
public:
    explicit GaussSolver(int n)
        : n_(n), ab_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n + 1)),
          row_norm_(static_cast<std::size_t>(n)), permutation_(static_cast<std::size_t>(n))
    {
    }

    int dimension() const noexcept { return n_; }

    Complex<R>& at(int r, int c) { return ab_[static_cast<std::size_t>(r) * static_cast<std::size_t>(n_ + 1) + static_cast<std::size_t>(c)]; }
    const Complex<R>& at(int r, int c) const { return ab_[static_cast<std::size_t>(r) * static_cast<std::size_t>(n_ + 1) + static_cast<std::size_t>(c)]; }
    std::span<const Complex<R>> augmented() const noexcept { return ab_; }

    /// permutation()[r] is the original index of the row now at position r.
    std::span<const int> permutation() const noexcept { return permutation_; }

    void enable_trace(bool on) { tracing_ = on; }
    const std::vector<PivotStep<R>>& trace() const noexcept { return trace_; }

    /// Copies the worker's rows of [J | -h] from an evaluated system.
    void load(const WorkerContext& ctx, const EvaluatedSystem<R>& Y)
    {
        for (int r = ctx.id; r < n_; r += ctx.workers) {
            for (int c = 0; c < n_; ++c) {
                at(r, c) = Y.jac(r, c);
            }
            at(r, n_) = -Y.residual[static_cast<std::size_t>(r)];
            finish_row_load(r);
        }
    }

    /// Copies the worker's rows of [A | b] (A row-major n-by-n).
    void load(const WorkerContext& ctx, std::span<const Complex<R>> A, std::span<const Complex<R>> b)
    {
        for (int r = ctx.id; r < n_; r += ctx.workers) {
            for (int c = 0; c < n_; ++c) {
                at(r, c) = A[static_cast<std::size_t>(r) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(c)];
            }
            at(r, n_) = b[static_cast<std::size_t>(r)];
            finish_row_load(r);
        }
    }

    /// Forward elimination; every worker calls it. Returns false on all
    /// workers when a pivot falls below the singularity threshold
    /// epsilon * max_r sum_c |A_rc|.
    bool reduce(WorkerContext& ctx, StageBarrier& barrier)
    {
        for (int c = 0; c < n_; ++c) {
            barrier.sync(ctx, [&] { select_pivot(c); });
            if (singular_) {
                return false;
            }
            if (c + 1 == n_) {
                break;
            }
            const Complex<R>& inverse = pivot_inverse_;
            // first owned row strictly below c
            int r = c + 1 + ((ctx.id - (c + 1)) % ctx.workers + ctx.workers) % ctx.workers;
            for (; r < n_; r += ctx.workers) {
                const Complex<R> factor = at(r, c) * inverse;
                at(r, c) = Complex<R>(R(0.0));
                for (int k = c + 1; k <= n_; ++k) {
                    at(r, k) -= factor * at(c, k);
                }
            }
        }
        return true;
    }

    /// Solves the reduced upper-triangular system into x (size n). Returns
    /// false on every worker when a diagonal entry is zero or a component
    /// comes out non-finite.
    bool back_substitute(WorkerContext& ctx, StageBarrier& barrier, std::span<Complex<R>> x)
    {
        for (int j = n_ - 1; j >= 0; --j) {
            if (stride_owner(static_cast<std::size_t>(j), ctx.workers) == ctx.id) {
                const Complex<R>& d = at(j, j);
                if (d.re == R(0.0) && d.im == R(0.0)) {
                    backsub_failed_.store(true, std::memory_order_relaxed);
                }
                x[static_cast<std::size_t>(j)] = at(j, n_) / d;
                if (!is_finite(x[static_cast<std::size_t>(j)])) {
                    backsub_failed_.store(true, std::memory_order_relaxed);
                }
            }
            barrier.sync(ctx);
            const Complex<R> xj = x[static_cast<std::size_t>(j)];
            for (int i = ctx.id; i < j; i += ctx.workers) {
                at(i, n_) -= at(i, j) * xj;
            }
        }
        return !backsub_failed_.load(std::memory_order_relaxed);
    }

    /// Convenience: load, reduce and back-substitute A x = b on a team.
    /// Returns false if the matrix is numerically singular.
    bool solve(WorkerTeam& team, std::span<const Complex<R>> A, std::span<const Complex<R>> b,
               std::vector<Complex<R>>& x)
    {
        x.assign(static_cast<std::size_t>(n_), Complex<R>(R(0.0)));
        bool ok = false;
        team.run([&](WorkerContext& ctx) {
            load(ctx, A, b);
            const bool reduced = reduce(ctx, team.barrier());
            const bool solved = reduced && back_substitute(ctx, team.barrier(), x);
            if (ctx.is_coordinator()) {
                ok = solved;
            }
        });
        return ok;
    }

private:
    void finish_row_load(int r)
    {
        R sum(0.0);
        for (int c = 0; c < n_; ++c) {
            sum += norm1(at(r, c));
        }
        row_norm_[static_cast<std::size_t>(r)] = sum;
    }

    // coordinator only, between barrier arrival and release
    void select_pivot(int c)
    {
        if (c == 0) {
            singular_ = false;
            backsub_failed_.store(false, std::memory_order_relaxed);
            std::iota(permutation_.begin(), permutation_.end(), 0);
            trace_.clear();
            R largest(0.0);
            for (const auto& v : row_norm_) {
                largest = max_of(largest, v);
            }
            threshold_ = R(RealTraits<R>::epsilon()) * largest;
        }
        int best = c;
        R best_norm = norm1(at(c, c));
        PivotStep<R> step;
        if (tracing_) {
            step.candidate_norms.push_back(best_norm);
        }
        for (int r = c + 1; r < n_; ++r) {
            const R v = norm1(at(r, c));
            if (tracing_) {
                step.candidate_norms.push_back(v);
            }
            if (best_norm < v) {
                best = r;
                best_norm = v;
            }
        }
        if (!(best_norm > threshold_)) {
            singular_ = true;
            return;
        }
        if (best != c) {
            for (int k = 0; k <= n_; ++k) {
                std::swap(at(c, k), at(best, k));
            }
            std::swap(permutation_[static_cast<std::size_t>(c)], permutation_[static_cast<std::size_t>(best)]);
        }
        if (tracing_) {
            step.chosen = static_cast<std::size_t>(best);
            trace_.push_back(std::move(step));
        }
        pivot_inverse_ = Complex<R>(R(1.0)) / at(c, c);
    }

    int n_;
    std::vector<Complex<R>> ab_;
    std::vector<R> row_norm_;
    std::vector<int> permutation_;
    R threshold_{0.0};
    Complex<R> pivot_inverse_{};
    bool singular_ = false;
    std::atomic<bool> backsub_failed_{false};
    bool tracing_ = false;
    std::vector<PivotStep<R>> trace_;
};

} // namespace pathtrack
