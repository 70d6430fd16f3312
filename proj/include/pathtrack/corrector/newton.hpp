#pragma once

// Staged multithreaded Newton corrector at fixed t.
//
// Per iteration, every worker runs the same sequence of stages separated by
// barriers:
//   monomial stage -> coefficient stage -> [coordinator: residual, stop test]
//   -> row reduction -> back substitution -> [coordinator: z += dz, i += 1]
// The stop test uses the residual at the current z, so the loop ends with the
// residual of the last update already evaluated; that is the reported value.
// The linear system solved is J dz = -h.

#include <chrono>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "pathtrack/evaldiff/evaluator.hpp"
#include "pathtrack/linsolve/gauss.hpp"
#include "pathtrack/parallel/team.hpp"
#include "pathtrack/polysys/homotopy.hpp"

namespace pathtrack {

template <typename R>
struct NewtonConfig {
    R tolerance{RealTraits<R>::default_tolerance()};
    int max_iterations = 4;
};

template <typename R>
struct NewtonOutcome {
    std::vector<Complex<R>> z;
    R residual{0.0};
    int iterations = 0;
    bool success = false;
    bool singular = false;
    std::vector<R> residual_history; // one entry per evaluation
};

/// Wall-clock seconds spent in each stage, measured by the coordinator.
struct StageTimes {
    double predict = 0.0;
    double evaluate = 0.0;
    double eliminate = 0.0;
    double backsub = 0.0;

    double total() const noexcept { return predict + evaluate + eliminate + backsub; }
    StageTimes& operator+=(const StageTimes& o) noexcept
    {
        predict += o.predict;
        evaluate += o.evaluate;
        eliminate += o.eliminate;
        backsub += o.backsub;
        return *this;
    }
};

struct NewtonCounters {
    std::uint64_t evaluations = 0;
    std::uint64_t reductions = 0;
    std::uint64_t back_substitutions = 0;
};

/// Max of the moduli of the residual vector (coordinator only).
template <typename R>
R residual_norm(const EvaluatedSystem<R>& Y)
{
    return max_modulus<R>(Y.residual);
}

/// Shared state of one team running the corrector.
template <typename R>
class NewtonWorkspace {
public:
    NewtonWorkspace(const Homotopy<R>& h, int workers)
        : V(h.support()), Y(h.dimension()), solver(h.dimension()),
          z(static_cast<std::size_t>(h.dimension())), dz(static_cast<std::size_t>(h.dimension())),
          coeffs_(static_cast<std::size_t>(h.dimension()) * h.monomial_count()),
          coeff_t_(static_cast<std::size_t>(workers)), coeff_valid_(static_cast<std::size_t>(workers), 0)
    {
        scratch.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            scratch.emplace_back(h.support());
        }
    }

    MonomialValues<R> V;
    EvaluatedSystem<R> Y;
    GaussSolver<R> solver;
    std::vector<MonomialScratch<R>> scratch;
    std::vector<Complex<R>> z;  // current iterate; written only by the coordinator
    std::vector<Complex<R>> dz;
    NewtonOutcome<R> outcome;   // valid after the corrector returns
    NewtonCounters counters;
    StageTimes times;
    bool record_history = false;

    // evaluation, reduction and back substitution at the current z, no update
    void evaluate_stages(WorkerContext& ctx, StageBarrier& barrier, const Homotopy<R>& h, const R& t)
    {
        monomial_stage<R>(ctx.id, ctx.workers, h.support(), z, V, scratch[static_cast<std::size_t>(ctx.id)]);
        barrier.sync(ctx, [&] { ++counters.evaluations; });
        // each worker refreshes its own coefficient rows when t moves
        const auto w = static_cast<std::size_t>(ctx.id);
        if (!coeff_valid_[w] || !same_bits(coeff_t_[w], t)) {
            coefficient_rows<R>(ctx.id, ctx.workers, h, t, coeffs_);
            coeff_t_[w] = t;
            coeff_valid_[w] = 1;
        }
        coefficient_stage<R>(ctx.id, ctx.workers, h.support(), coeffs_, V, Y);
    }

    bool solve_stages(WorkerContext& ctx, StageBarrier& barrier)
    {
        using clock = std::chrono::steady_clock;
        const auto t0 = clock::now();
        solver.load(ctx, Y);
        const bool reduced = solver.reduce(ctx, barrier);
        const auto t1 = clock::now();
        bool solved = false;
        if (reduced) {
            solved = solver.back_substitute(ctx, barrier, dz);
        }
        if (ctx.is_coordinator()) {
            ++counters.reductions;
            times.eliminate += std::chrono::duration<double>(t1 - t0).count();
            if (reduced) {
                ++counters.back_substitutions;
                times.backsub += std::chrono::duration<double>(clock::now() - t1).count();
            }
            singular_ = !reduced;
        }
        return solved;
    }

    // decision published by the coordinator inside a barrier duty
    bool done_ = false;
    bool singular_ = false;

private:
    // C(t) rows, owned like the residual rows; coeff_t_[w] is worker w's last t
    std::vector<Complex<R>> coeffs_;
    std::vector<R> coeff_t_;
    std::vector<char> coeff_valid_;
};

/// SPMD body of the corrector: every worker of the team calls it with the
/// same arguments. The initial guess must be in ws.z, written before entry
/// behind a barrier. On return ws.outcome holds the result on the
/// coordinator; other workers may read it after the next barrier.
template <typename R>
void newton_correct_worker(WorkerContext& ctx, StageBarrier& barrier, const Homotopy<R>& h, const R& t,
                           const NewtonConfig<R>& cfg, NewtonWorkspace<R>& ws)
{
    using clock = std::chrono::steady_clock;
    int iterations = 0; // meaningful on the coordinator only
    if (ctx.is_coordinator()) {
        ws.outcome.residual_history.clear();
    }
    for (;;) {
        const auto t0 = clock::now();
        ws.evaluate_stages(ctx, barrier, h, t);
        barrier.sync(ctx, [&] {
            const R r = residual_norm(ws.Y);
            ws.outcome.residual = r;
            ws.singular_ = false;
            if (ws.record_history) {
                ws.outcome.residual_history.push_back(r);
            }
            ws.outcome.success = is_finite(r) && r < cfg.tolerance;
            ws.done_ = !is_finite(r) || ws.outcome.success || iterations >= cfg.max_iterations;
            ws.times.evaluate += std::chrono::duration<double>(clock::now() - t0).count();
        });
        if (ws.done_) {
            break;
        }
        const bool solved = ws.solve_stages(ctx, barrier);
        if (!solved) {
            if (ctx.is_coordinator()) {
                ws.outcome.success = false;
            }
            break;
        }
        barrier.sync(ctx, [&] {
            for (std::size_t v = 0; v < ws.z.size(); ++v) {
                ws.z[v] += ws.dz[v];
            }
            ++iterations;
        });
    }
    if (ctx.is_coordinator()) {
        ws.outcome.iterations = iterations;
        ws.outcome.singular = ws.singular_;
        ws.outcome.z = ws.z;
    }
}

/// Runs the corrector from z on the given team.
template <typename R>
NewtonOutcome<R> newton_correct(const Homotopy<R>& h, std::span<const Complex<R>> z, const R& t,
                                const NewtonConfig<R>& cfg, WorkerTeam& team, NewtonWorkspace<R>* workspace = nullptr,
                                bool record_history = true)
{
    std::unique_ptr<NewtonWorkspace<R>> owned;
    if (workspace == nullptr) {
        owned = std::make_unique<NewtonWorkspace<R>>(h, team.size());
        workspace = owned.get();
    }
    NewtonWorkspace<R>& ws = *workspace;
    ws.z.assign(z.begin(), z.end());
    ws.record_history = record_history;
    team.run([&](WorkerContext& ctx) { newton_correct_worker<R>(ctx, team.barrier(), h, t, cfg, ws); });
    return ws.outcome;
}

} // namespace pathtrack
