#pragma once

// A fixed team of p workers running the same code (SPMD). Worker 0 is the
// calling thread and acts as coordinator; workers 1..p-1 are created once in
// the constructor and stay resident until the team is destroyed.
//
// Stages inside a job are separated by StageBarrier::sync. The barrier is
// built from two monotone counters, mirroring the flag/counter protocol of
// staged Newton solvers: every worker increments `arrived`; the coordinator
// waits until all p arrivals of the current epoch are in, runs its exclusive
// duty, then publishes the epoch in `released`. Waiting spins briefly and
// then blocks on the atomic, so oversubscribed teams (p > cores) still make
// progress.

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <thread>
#include <vector>

namespace pathtrack {

/// Thread-local view of a worker; `epoch` is its private barrier counter.
struct WorkerContext {
    int id = 0;
    int workers = 1;
    std::uint64_t epoch = 0;

    bool is_coordinator() const noexcept { return id == 0; }
};

class StageBarrier {
public:
    explicit StageBarrier(int workers) : workers_(workers) {}

    StageBarrier(const StageBarrier&) = delete;
    StageBarrier& operator=(const StageBarrier&) = delete;

    /// All workers call sync once per stage. No worker returns before every
    /// worker has arrived; the coordinator runs `duty` after all arrivals and
    /// before anyone is released. Other workers ignore `duty`.
    template <typename Duty>
    void sync(WorkerContext& ctx, Duty&& duty)
    {
        const std::uint64_t epoch = ++ctx.epoch;
        if (workers_ == 1) {
            duty();
            released_.store(epoch, std::memory_order_release);
            return;
        }
        const std::uint64_t target = epoch * static_cast<std::uint64_t>(workers_);
        if (arrived_.fetch_add(1, std::memory_order_acq_rel) + 1 == target) {
            arrived_.notify_all();
        }
        if (ctx.is_coordinator()) {
            wait_at_least(arrived_, target);
            duty();
            released_.store(epoch, std::memory_order_release);
            released_.notify_all();
        } else {
            wait_at_least(released_, epoch);
        }
    }

    void sync(WorkerContext& ctx)
    {
        sync(ctx, [] {});
    }

    std::uint64_t completed_epochs() const noexcept { return released_.load(std::memory_order_acquire); }
    int workers() const noexcept { return workers_; }

    /// Spins briefly, then blocks until counter >= target.
    static void wait_at_least(std::atomic<std::uint64_t>& counter, std::uint64_t target);

private:
    int workers_;
    alignas(64) std::atomic<std::uint64_t> arrived_{0};
    alignas(64) std::atomic<std::uint64_t> released_{0};
};

class WorkerTeam {
public:
    /// Throws std::invalid_argument for workers < 1 and std::system_error if
    /// a thread cannot be started.
    explicit WorkerTeam(int workers);
    ~WorkerTeam();

    WorkerTeam(const WorkerTeam&) = delete;
    WorkerTeam& operator=(const WorkerTeam&) = delete;

    int size() const noexcept { return workers_; }
    StageBarrier& barrier() noexcept { return barrier_; }

    /// Runs job(ctx) on every worker and returns once all have finished.
    /// Jobs must not throw: an exception escaping a worker terminates the
    /// process, since the other workers would block at the next barrier.
    void run(const std::function<void(WorkerContext&)>& job);

    /// Threads started over the team's lifetime (p - 1 for a healthy team).
    std::uint64_t threads_created() const noexcept { return threads_created_; }
    std::uint64_t jobs_run() const noexcept { return jobs_run_; }

private:
    void worker_loop(int id);

    int workers_;
    StageBarrier barrier_;
    std::vector<WorkerContext> contexts_;
    std::vector<std::thread> threads_;
    const std::function<void(WorkerContext&)>* job_ = nullptr;
    alignas(64) std::atomic<std::uint64_t> dispatched_{0};
    alignas(64) std::atomic<std::uint64_t> finished_{0};
    std::atomic<bool> shutdown_{false};
    std::uint64_t threads_created_ = 0;
    std::uint64_t jobs_run_ = 0;
};

} // namespace pathtrack
