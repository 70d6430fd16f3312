#include <exception>
#include <stdexcept>

#include "pathtrack/parallel/team.hpp"
#include "pathtrack/scalar/eft.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define PATHTRACK_PAUSE() _mm_pause()
#else
#define PATHTRACK_PAUSE() std::this_thread::yield()
#endif

namespace pathtrack {

namespace {

int spin_budget()
{
    static const int budget = std::thread::hardware_concurrency() > 1 ? 4000 : 0;
    return budget;
}

} // namespace

void StageBarrier::wait_at_least(std::atomic<std::uint64_t>& counter, std::uint64_t target)
{
    for (int i = spin_budget(); i > 0; --i) {
        if (counter.load(std::memory_order_acquire) >= target) {
            return;
        }
        PATHTRACK_PAUSE();
    }
    for (;;) {
        const std::uint64_t seen = counter.load(std::memory_order_acquire);
        if (seen >= target) {
            return;
        }
        counter.wait(seen, std::memory_order_acquire);
    }
}

WorkerTeam::WorkerTeam(int workers) : workers_(workers), barrier_(workers < 1 ? 1 : workers)
{
    if (workers < 1) {
        throw std::invalid_argument("a worker team needs at least one worker");
    }
    check_rounding_mode();
    contexts_.resize(static_cast<std::size_t>(workers));
    for (int id = 0; id < workers; ++id) {
        contexts_[static_cast<std::size_t>(id)] = WorkerContext{id, workers, 0};
    }
    threads_.reserve(static_cast<std::size_t>(workers - 1));
    try {
        for (int id = 1; id < workers; ++id) {
            threads_.emplace_back([this, id] { worker_loop(id); });
            ++threads_created_;
        }
    } catch (...) {
        shutdown_.store(true, std::memory_order_release);
        dispatched_.fetch_add(1, std::memory_order_acq_rel);
        dispatched_.notify_all();
        for (auto& th : threads_) {
            th.join();
        }
        throw;
    }
}

WorkerTeam::~WorkerTeam()
{
    shutdown_.store(true, std::memory_order_release);
    dispatched_.fetch_add(1, std::memory_order_acq_rel);
    dispatched_.notify_all();
    for (auto& th : threads_) {
        th.join();
    }
}

void WorkerTeam::run(const std::function<void(WorkerContext&)>& job)
{
    job_ = &job;
    ++jobs_run_;
    const std::uint64_t round = dispatched_.fetch_add(1, std::memory_order_acq_rel) + 1;
    dispatched_.notify_all();
    try {
        job(contexts_[0]);
    } catch (...) {
        std::terminate();
    }
    const std::uint64_t expected = round * static_cast<std::uint64_t>(workers_ - 1);
    StageBarrier::wait_at_least(finished_, expected);
    job_ = nullptr;
}

void WorkerTeam::worker_loop(int id)
{
    std::uint64_t seen = 0;
    for (;;) {
        StageBarrier::wait_at_least(dispatched_, seen + 1);
        seen = dispatched_.load(std::memory_order_acquire);
        if (shutdown_.load(std::memory_order_acquire)) {
            return;
        }
        try {
            (*job_)(contexts_[static_cast<std::size_t>(id)]);
        } catch (...) {
            std::terminate();
        }
        finished_.fetch_add(1, std::memory_order_acq_rel);
        finished_.notify_all();
    }
}

} // namespace pathtrack
