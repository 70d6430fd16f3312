#include <chrono>
#include <cmath>
#include <span>
#include <string>

#include "pathtrack/corrector/newton.hpp"
#include "pathtrack/evaldiff/evaluator.hpp"
#include "pathtrack/evaldiff/old_baseline.hpp"
#include "pathtrack/metrics/bench.hpp"
#include "pathtrack/polysys/homotopy.hpp"
#include "pathtrack/scalar/double_double.hpp"

namespace pathtrack {

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point start)
{
    return std::chrono::duration<double>(clock_type::now() - start).count();
}

template <typename R>
std::vector<Complex<R>> to_precision(const std::vector<Complex<double>>& z)
{
    std::vector<Complex<R>> out;
    out.reserve(z.size());
    for (const auto& v : z) {
        out.push_back(Complex<R>::convert(v));
    }
    return out;
}

// Homotopy and evaluation point shared by both benchmarks.
template <typename R>
struct Workload {
    Homotopy<R> h;
    std::vector<Complex<R>> point;
    R t{0.5};
};

template <typename R>
Workload<R> make_workload(const SystemSpec& spec)
{
    const SupportedSystem f = generate_system(spec);
    const auto z0 = random_point(spec.n, spec.seed + 1);
    const auto point = random_point(spec.n, spec.seed + 2);
    return {newton_homotopy<R>(f, std::span<const Complex<double>>(z0)), to_precision<R>(point), R(0.5)};
}

struct NewtonRun {
    StageTimes times;
    double wall = 0.0;
};

template <typename R>
void verify_same_step_impl(std::span<const Complex<R>> reference, std::span<const Complex<R>> step,
                           int reference_workers, int workers)
{
    if (!same_bits<R>(reference, step)) {
        throw VerificationError("Newton step differs between " + std::to_string(reference_workers) + " and " +
                                std::to_string(workers) + " workers; timings withheld");
    }
}

template <typename R>
NewtonBenchReport bench_newton_impl(const NewtonBenchConfig& cfg)
{
    if (cfg.iterations < 1 || cfg.runs < 1 || cfg.workers.empty()) {
        throw std::invalid_argument("bench_newton needs iterations >= 1, runs >= 1 and a team size");
    }
    const Workload<R> w = make_workload<R>(cfg.spec);
    NewtonBenchReport report;
    std::vector<Complex<R>> reference_step;

    for (int p : cfg.workers) {
        WorkerTeam team(p);
        NewtonWorkspace<R> ws(w.h, p);
        bool solved = true;

        auto one_run = [&] {
            ws.times = StageTimes{};
            ws.z = w.point;
            const auto started = clock_type::now();
            team.run([&](WorkerContext& ctx) {
                StageBarrier& barrier = team.barrier();
                for (int it = 0; it < cfg.iterations; ++it) {
                    const auto t0 = clock_type::now();
                    ws.evaluate_stages(ctx, barrier, w.h, w.t);
                    barrier.sync(ctx, [&] { ws.times.evaluate += seconds_since(t0); });
                    const bool ok = ws.solve_stages(ctx, barrier);
                    if (ctx.is_coordinator()) {
                        solved = solved && ok;
                    }
                }
            });
            return NewtonRun{ws.times, seconds_since(started)};
        };

        one_run(); // warmup
        if (reference_step.empty()) {
            reference_step = ws.dz;
        } else {
            verify_same_step(std::span<const Complex<R>>(reference_step), std::span<const Complex<R>>(ws.dz),
                             cfg.workers.front(), p);
        }
        report.singular = report.singular || !solved;

        std::vector<double> eval, elim, back, total;
        for (int r = 0; r < cfg.runs; ++r) {
            const NewtonRun run = one_run();
            eval.push_back(run.times.evaluate);
            elim.push_back(run.times.eliminate);
            back.push_back(run.times.backsub);
            total.push_back(run.wall);
        }
        NewtonBenchRow row;
        row.workers = p;
        row.evaluate = median(eval);
        row.eliminate = median(elim);
        row.backsub = median(back);
        row.total = median(total);
        row.speedup = report.rows.empty() ? 1.0 : speedup(report.rows.front().total, row.total);
        report.rows.push_back(row);

        TimingRecord rec;
        rec.label = "newton";
        rec.workers = p;
        rec.wall = row.total;
        rec.breakdown = {{"evaluate", row.evaluate}, {"eliminate", row.eliminate}, {"backsub", row.backsub}};
        report.records.push_back(std::move(rec));
    }
    return report;
}

template <typename R>
double relative_difference(std::span<const Complex<R>> a, std::span<const Complex<R>> b)
{
    double diff = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        diff = std::max(diff, to_double(modulus(a[i] - b[i])));
        scale = std::max(scale, to_double(modulus(b[i])));
    }
    return scale > 0.0 ? diff / scale : diff;
}

template <typename R>
EvalBenchRow bench_eval_impl(const EvalBenchConfig& cfg)
{
    if (cfg.repetitions < 1 || cfg.runs < 1) {
        throw std::invalid_argument("bench_eval_old_vs_new needs repetitions >= 1 and runs >= 1");
    }
    const Workload<R> w = make_workload<R>(cfg.spec);
    MonomialValues<R> V(w.h.support());
    EvaluatedSystem<R> Y(w.h.dimension());
    MonomialScratch<R> scratch(w.h.support());
    std::vector<Complex<R>> C(static_cast<std::size_t>(w.h.dimension()) * w.h.monomial_count());
    const ExtendedSystem<R> extended(w.h);
    OldEvaluation<R> old;

    auto run_new = [&] {
        monomial_stage<R>(0, 1, w.h.support(), w.point, V, scratch);
        coefficient_stage<R>(0, 1, w.h, w.t, V, Y, std::span<Complex<R>>(C));
    };
    auto run_old = [&] { eval_old_baseline<R>(extended, w.point, w.t, old); };

    run_new();
    run_old();
    EvalBenchRow row;
    row.max_degree = cfg.spec.max_degree;
    row.discrepancy = std::max(
        relative_difference<R>(std::span<const Complex<R>>(Y.residual), std::span<const Complex<R>>(old.system.residual)),
        relative_difference<R>(std::span<const Complex<R>>(Y.jacobian), std::span<const Complex<R>>(old.system.jacobian)));
    verify_evaluator_agreement(row.discrepancy, RealTraits<R>::level);

    auto time_it = [&](auto&& body) {
        std::vector<double> sample;
        for (int r = 0; r <= cfg.runs; ++r) {
            const auto started = clock_type::now();
            for (int k = 0; k < cfg.repetitions; ++k) {
                body();
            }
            if (r > 0) { // run 0 is the warmup
                sample.push_back(seconds_since(started));
            }
        }
        return median(sample);
    };
    row.new_time = time_it(run_new);
    row.old_time = time_it(run_old);
    row.ratio = speedup(row.old_time, row.new_time);
    row.pure = row.ratio / 3.0;
    return row;
}

} // namespace

void verify_same_step(std::span<const Complex<double>> reference, std::span<const Complex<double>> step,
                      int reference_workers, int workers)
{
    verify_same_step_impl<double>(reference, step, reference_workers, workers);
}

void verify_same_step(std::span<const Complex<DoubleDouble>> reference, std::span<const Complex<DoubleDouble>> step,
                      int reference_workers, int workers)
{
    verify_same_step_impl<DoubleDouble>(reference, step, reference_workers, workers);
}

NewtonBenchReport bench_newton(const NewtonBenchConfig& cfg)
{
    if (cfg.precision == PrecisionLevel::DoubleDouble) {
        return bench_newton_impl<DoubleDouble>(cfg);
    }
    return bench_newton_impl<double>(cfg);
}

Table newton_bench_table(const NewtonBenchReport& report)
{
    Table table({"p", "Pol.Ev.", "Gauss.El.", "Back Subs.", "Total", "speedup"});
    for (const auto& r : report.rows) {
        table.add_row({std::to_string(r.workers), format_seconds(r.evaluate), format_seconds(r.eliminate),
                       format_seconds(r.backsub), format_seconds(r.total), format_fixed(r.speedup, 3)});
    }
    return table;
}

double evaluator_agreement_tolerance(PrecisionLevel precision)
{
    return precision == PrecisionLevel::DoubleDouble ? 1e-26 : 1e-12;
}

void verify_evaluator_agreement(double discrepancy, PrecisionLevel precision)
{
    if (!(discrepancy <= evaluator_agreement_tolerance(precision))) {
        throw VerificationError("evaluators disagree (relative difference " + format_sci(discrepancy) +
                                "); timings withheld");
    }
}

EvalBenchRow bench_eval_old_vs_new(const EvalBenchConfig& cfg)
{
    if (cfg.precision == PrecisionLevel::DoubleDouble) {
        return bench_eval_impl<DoubleDouble>(cfg);
    }
    return bench_eval_impl<double>(cfg);
}

Table eval_bench_table(const std::vector<EvalBenchRow>& rows)
{
    Table table({"degrees", "new time", "old time", "speedup", "pure speedup"});
    for (const auto& r : rows) {
        table.add_row({std::to_string(r.max_degree), format_seconds(r.new_time), format_seconds(r.old_time),
                       format_fixed(r.ratio, 2), format_fixed(r.pure, 2)});
    }
    return table;
}

} // namespace pathtrack
