#pragma once

// Predictor-corrector path tracking from t = 0 to t = 1 on a resident team.
//
// The whole tracking loop is one SPMD job. Each cycle is three phases:
//   [coordinator duty] stop test, t_try = min(t + lambda, 1), predict
//   [all workers]      staged Newton correction at t_try
//   [coordinator duty] accept or step back, adjust lambda
// A rejected trial point is discarded: (t, z) and the predictor history
// keep the last accepted values.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <memory>
#include <stdexcept>
#include <vector>

#include "pathtrack/corrector/newton.hpp"
#include "pathtrack/parallel/team.hpp"
#include "pathtrack/predictor/predictor.hpp"

namespace pathtrack {

/// State after one correction, as seen by the coordinator once the step has
/// been accepted or rejected.
template <typename R>
struct TrackEvent {
    const R& t_try;
    bool success;
    const R& t;                      // last accepted t
    std::span<const Complex<R>> z;   // last accepted z
    double lambda;                   // step size for the next trial
};

template <typename R>
struct TrackerConfig {
    double initial_step = 0.01;
    double min_step = RealTraits<R>::default_min_step();
    double max_step = 0.1;
    double contraction = 0.5;
    double expansion = 2.0;
    std::uint64_t max_corrections = 200000;
    NewtonConfig<R> newton{};
    PredictorKind predictor = PredictorKind::Quadratic;
    int workers = 1;
    /// Called by the coordinator after every correction; must not throw.
    std::function<void(const TrackEvent<R>&)> observer;

    /// Throws std::invalid_argument if the step bounds or factors are inconsistent.
    void validate() const
    {
        if (!(0.0 < min_step && min_step <= max_step && max_step <= 1.0)) {
            throw std::invalid_argument("step bounds must satisfy 0 < min <= max <= 1");
        }
        if (!(initial_step > 0.0 && initial_step <= max_step)) {
            throw std::invalid_argument("initial step must lie in (0, max step]");
        }
        if (!(0.0 < contraction && contraction < 1.0 && expansion > 1.0)) {
            throw std::invalid_argument("need 0 < contraction < 1 < expansion");
        }
        if (!(newton.tolerance > R(0.0)) || newton.max_iterations < 1) {
            throw std::invalid_argument("Newton tolerance must be positive and max iterations >= 1");
        }
        if (workers < 1) {
            throw std::invalid_argument("need at least one worker");
        }
    }
};

struct PathStats {
    std::uint64_t successful_corrections = 0;
    std::uint64_t total_corrections = 0;
    double min_step = 0.0;
    double avg_step = 0.0;
    std::vector<double> accepted_steps; // t increments of accepted steps, in order
    StageTimes times;
    double wall = 0.0;
};

template <typename R>
struct TrackResult {
    std::vector<Complex<R>> endpoint;
    R reached_t{0.0};
    bool fail = true;
    PathStats stats;
    std::uint64_t threads_created = 0;
};

/// New step size after a correction. On success the step grows by the
/// expansion factor, capped by max_step and by the distance 1 - t left from
/// the (new) accepted t; on failure it shrinks by the contraction factor.
inline double step_size_control(double lambda, bool success, double remaining, double expansion, double contraction,
                                double max_step)
{
    if (success) {
        return std::min({lambda * expansion, max_step, remaining});
    }
    return lambda * contraction;
}

template <typename R>
TrackResult<R> track_path(const Homotopy<R>& h, const TrackerConfig<R>& cfg, WorkerTeam* team = nullptr)
{
    cfg.validate();
    std::unique_ptr<WorkerTeam> owned;
    if (team == nullptr) {
        owned = std::make_unique<WorkerTeam>(cfg.workers);
        team = owned.get();
    }
    using clock = std::chrono::steady_clock;
    const auto started = clock::now();

    NewtonWorkspace<R> ws(h, team->size());
    PathHistory<R> history;
    R t(0.0);
    R t_try(0.0);
    std::vector<Complex<R>> z(h.start_solution().begin(), h.start_solution().end());
    history.push(t, z);
    double lambda = cfg.initial_step;
    bool last_failed = true; // the stop test on lambda applies before the first step
    bool running = true;
    PathStats stats;

    team->run([&](WorkerContext& ctx) {
        StageBarrier& barrier = team->barrier();
        for (;;) {
            barrier.sync(ctx, [&] {
                const auto t0 = clock::now();
                if (!(t < R(1.0))) {
                    running = false;
                    return;
                }
                if ((last_failed && lambda < cfg.min_step) || stats.total_corrections > cfg.max_corrections) {
                    running = false;
                    return;
                }
                // lambda equals the remaining distance after clamping; land on 1 exactly
                t_try = t + R(lambda);
                if (!(t_try < R(1.0)) || !(lambda < to_double(R(1.0) - t))) {
                    t_try = R(1.0);
                }
                predict<R>(cfg.predictor, history, t_try, ws.z);
                stats.times.predict += std::chrono::duration<double>(clock::now() - t0).count();
            });
            if (!running) {
                break;
            }
            newton_correct_worker<R>(ctx, barrier, h, t_try, cfg.newton, ws);
            barrier.sync(ctx, [&] {
                ++stats.total_corrections;
                if (ws.outcome.success) {
                    ++stats.successful_corrections;
                    stats.accepted_steps.push_back(to_double(t_try - t));
                    t = t_try;
                    z = ws.outcome.z;
                    history.push(t, z);
                    lambda = step_size_control(lambda, true, to_double(R(1.0) - t), cfg.expansion, cfg.contraction,
                                               cfg.max_step);
                    last_failed = false;
                } else {
                    lambda = step_size_control(lambda, false, 0.0, cfg.expansion, cfg.contraction, cfg.max_step);
                    last_failed = true;
                }
                if (cfg.observer) {
                    cfg.observer(TrackEvent<R>{t_try, ws.outcome.success, t, z, lambda});
                }
            });
        }
    });

    stats.times.evaluate = ws.times.evaluate;
    stats.times.eliminate = ws.times.eliminate;
    stats.times.backsub = ws.times.backsub;
    if (!stats.accepted_steps.empty()) {
        double sum = 0.0;
        double smallest = std::numeric_limits<double>::infinity();
        for (double s : stats.accepted_steps) {
            sum += s;
            smallest = std::min(smallest, s);
        }
        stats.min_step = smallest;
        stats.avg_step = sum / static_cast<double>(stats.accepted_steps.size());
    }
    stats.wall = std::chrono::duration<double>(clock::now() - started).count();

    TrackResult<R> result;
    result.endpoint = std::move(z);
    result.reached_t = t;
    result.fail = t < R(1.0);
    result.stats = std::move(stats);
    result.threads_created = team->threads_created();
    return result;
}

} // namespace pathtrack
