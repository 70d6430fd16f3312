#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "pathtrack/cli/cli.hpp"
#include "pathtrack/evaldiff/evaluator.hpp"
#include "pathtrack/metrics/bench.hpp"
#include "pathtrack/metrics/metrics.hpp"
#include "pathtrack/polysys/homotopy.hpp"
#include "pathtrack/polysys/system.hpp"
#include "pathtrack/tracker/tracker.hpp"

namespace pathtrack::cli {

namespace {

constexpr std::uint64_t kDefaultSeed = 20111;

struct SystemFlags {
    int dim = 20;
    int monomials = 20;
    int degree = 10;
    int avg_degree = 0;
    std::uint64_t seed = kDefaultSeed;

    SystemSpec spec() const { return {dim, monomials, degree, avg_degree, seed}; }
};

void add_system_flags(CLI::App& app, SystemFlags& f)
{
    app.add_option("--dim", f.dim, "number of variables and equations")->check(CLI::PositiveNumber);
    app.add_option("--monomials", f.monomials, "monomials in the shared support")->check(CLI::PositiveNumber);
    app.add_option("--degree", f.degree, "largest total degree of a monomial")->check(CLI::PositiveNumber);
    app.add_option("--avg-degree", f.avg_degree, "centre of the degree window (0: uniform on [1, degree])")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--seed", f.seed, "random seed");
}

void print_system_flags(std::ostream& out, const SystemFlags& f)
{
    out << "  dim: " << f.dim << "\n  monomials: " << f.monomials << "\n  degree: " << f.degree
        << "\n  avg-degree: " << f.avg_degree << "\n  seed: " << f.seed << '\n';
}

struct TrackFlags {
    SystemFlags system;
    std::string system_path;
    int threads = 1;
    std::string precision = "d";
    std::string predictor = "quadratic";
    std::optional<double> tol;
    int max_it = 4;
    double initial_step = 0.01;
    std::optional<double> min_step;
    double max_step = 0.1;
    std::uint64_t max_corrections = 200000;
    std::string format = "table";
};

template <typename R>
int track(const TrackFlags& f, std::ostream& out)
{
    const SupportedSystem sys = f.system_path.empty() ? generate_system(f.system.spec()) : read_system(f.system_path);
    const auto z0 = random_unit_point(sys.dimension(), f.system.seed);
    const Homotopy<R> h = newton_homotopy<R>(sys, std::span<const Complex<double>>(z0));

    TrackerConfig<R> cfg;
    cfg.initial_step = f.initial_step;
    cfg.min_step = f.min_step.value_or(RealTraits<R>::default_min_step());
    cfg.max_step = f.max_step;
    cfg.max_corrections = f.max_corrections;
    cfg.newton.tolerance = R(f.tol.value_or(RealTraits<R>::default_tolerance()));
    cfg.newton.max_iterations = f.max_it;
    cfg.predictor = parse_predictor(f.predictor);
    cfg.workers = f.threads;
    const TableFormat format = parse_table_format(f.format);
    cfg.validate();

    out << "configuration:\n  command: track\n  system: "
        << (f.system_path.empty() ? std::string("generated") : f.system_path) << '\n';
    if (f.system_path.empty()) {
        print_system_flags(out, f.system);
    } else {
        out << "  seed: " << f.system.seed << '\n';
    }
    out << "  dimension: " << sys.dimension() << "\n  support size: " << sys.monomial_count()
        << "\n  threads: " << cfg.workers << "\n  precision: " << f.precision
        << "\n  predictor: " << to_string(cfg.predictor) << "\n  tol: " << format_sci(to_double(cfg.newton.tolerance))
        << "\n  max-it: " << cfg.newton.max_iterations << "\n  initial-step: " << format_sci(cfg.initial_step)
        << "\n  min-step: " << format_sci(cfg.min_step) << "\n  max-step: " << format_sci(cfg.max_step)
        << "\n  contraction: " << cfg.contraction << "\n  expansion: " << cfg.expansion
        << "\n  max-corrections: " << cfg.max_corrections << "\n  format: " << f.format << "\n\n";

    const TrackResult<R> result = track_path(h, cfg);
    const auto& s = result.stats;
    const R residual = max_modulus<R>(evaluate<R>(h, result.endpoint, result.reached_t).residual);

    Table table({"#succ.corrs", "#corrs", "time", "avg step", "min step"});
    table.add_row({std::to_string(s.successful_corrections), std::to_string(s.total_corrections),
                   format_seconds(s.wall), format_sci(s.avg_step), format_sci(s.min_step)});
    out << table.render(format);

    out << "result: fail=" << (result.fail ? 1 : 0) << " reached_t=" << to_string(DoubleDouble(result.reached_t), 17)
        << " successful_corrections=" << s.successful_corrections << " total_corrections=" << s.total_corrections
        << " avg_step=" << format_sci(s.avg_step, 6) << " min_step=" << format_sci(s.min_step, 6)
        << " residual=" << format_sci(to_double(residual), 3) << " time=" << format_fixed(s.wall, 6)
        << " predict=" << format_fixed(s.times.predict, 6) << " evaluate=" << format_fixed(s.times.evaluate, 6)
        << " eliminate=" << format_fixed(s.times.eliminate, 6) << " backsub=" << format_fixed(s.times.backsub, 6)
        << '\n';
    for (std::size_t v = 0; v < result.endpoint.size(); ++v) {
        const auto& z = result.endpoint[v];
        out << "endpoint[" << v + 1 << "]: " << to_string(DoubleDouble(z.re), 17) << ' '
            << to_string(DoubleDouble(z.im), 17) << '\n';
    }
    return result.fail ? TrackingFailed : Ok;
}

std::string join(const std::vector<int>& values)
{
    std::string s;
    for (std::size_t i = 0; i < values.size(); ++i) {
        s += (i ? "," : "") + std::to_string(values[i]);
    }
    return s;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Path tracking for polynomial homotopies with staged multithreaded Newton correction",
                 "pathtrack"};
    app.require_subcommand(1);

    // generate
    SystemFlags gen;
    std::string gen_out;
    auto* generate = app.add_subcommand("generate", "write a random system with a shared support");
    add_system_flags(*generate, gen);
    generate->add_option("--out", gen_out, "output file (standard output when omitted)");

    // track
    TrackFlags trk;
    auto* track_cmd = app.add_subcommand("track", "track one path of the Newton homotopy from t = 0 to t = 1");
    add_system_flags(*track_cmd, trk.system);
    track_cmd->add_option("--system", trk.system_path, "system file (generated from the size flags when omitted)");
    track_cmd->add_option("--threads", trk.threads, "workers in the team")->check(CLI::PositiveNumber);
    track_cmd->add_option("--precision", trk.precision, "d or dd")->check(CLI::IsMember({"d", "dd"}));
    track_cmd->add_option("--predictor", trk.predictor, "secant or quadratic")
        ->check(CLI::IsMember({"secant", "quadratic"}));
    track_cmd->add_option("--tol", trk.tol, "Newton residual tolerance (default 1e-8 for d, 1e-24 for dd)");
    track_cmd->add_option("--max-it", trk.max_it, "Newton iterations per correction")->check(CLI::PositiveNumber);
    track_cmd->add_option("--initial-step", trk.initial_step, "first step size");
    track_cmd->add_option("--min-step", trk.min_step, "smallest step size (default 1e-6 for d, 1e-8 for dd)");
    track_cmd->add_option("--max-step", trk.max_step, "largest step size");
    track_cmd->add_option("--max-corrections", trk.max_corrections, "correction budget");
    track_cmd->add_option("--format", trk.format, "csv or table")->check(CLI::IsMember({"csv", "table"}));

    // bench-newton
    SystemFlags bn_sys{40, 200, 40, 0, kDefaultSeed};
    std::vector<int> bn_threads{1, 2, 4, 8};
    std::string bn_precision = "dd";
    int bn_reps = 1000;
    std::string bn_format = "table";
    auto* bench_newton_cmd = app.add_subcommand("bench-newton", "time repeated Newton stage pipelines per team size");
    add_system_flags(*bench_newton_cmd, bn_sys);
    bench_newton_cmd->add_option("--threads", bn_threads, "comma-separated team sizes")
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    bench_newton_cmd->add_option("--precision", bn_precision, "d or dd")->check(CLI::IsMember({"d", "dd"}));
    bench_newton_cmd->add_option("--repetitions", bn_reps, "Newton cycles per run")->check(CLI::PositiveNumber);
    bench_newton_cmd->add_option("--format", bn_format, "csv or table")->check(CLI::IsMember({"csv", "table"}));

    // bench-eval
    SystemFlags be_sys{20, 20, 10, 0, kDefaultSeed};
    std::vector<int> be_degrees;
    std::string be_precision = "dd";
    int be_reps = 400;
    std::string be_format = "table";
    auto* bench_eval_cmd = app.add_subcommand("bench-eval", "time the shared-monomial evaluator against the baseline");
    add_system_flags(*bench_eval_cmd, be_sys);
    bench_eval_cmd->remove_option(bench_eval_cmd->get_option("--degree"));
    bench_eval_cmd->add_option("--degree", be_degrees, "comma-separated largest degrees, one row each (default 10)")
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    bench_eval_cmd->add_option("--precision", be_precision, "d or dd")->check(CLI::IsMember({"d", "dd"}));
    bench_eval_cmd->add_option("--repetitions", be_reps, "evaluations per run")->check(CLI::PositiveNumber);
    bench_eval_cmd->add_option("--format", be_format, "csv or table")->check(CLI::IsMember({"csv", "table"}));

    // quality-up
    double t_high = 0.0;
    double t_budget = 0.0;
    int cores = 1;
    auto* quality_cmd = app.add_subcommand("quality-up", "cores needed and quality-up factor at fixed time");
    quality_cmd->add_option("--t-high", t_high, "time of the higher-precision run on p cores")
        ->required()
        ->check(CLI::PositiveNumber);
    quality_cmd->add_option("--t-budget", t_budget, "time budget (the lower-precision run)")
        ->required()
        ->check(CLI::PositiveNumber);
    quality_cmd->add_option("--cores", cores, "cores p of both runs")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? Ok : UsageError;
    }

    try {
        if (generate->parsed()) {
            const SupportedSystem sys = generate_system(gen.spec());
            if (gen_out.empty()) {
                write_system(sys, out);
            } else {
                write_system(sys, gen_out);
                out << "configuration:\n  command: generate\n";
                print_system_flags(out, gen);
                out << "  out: " << gen_out << '\n' << "wrote " << gen_out << '\n';
            }
            return Ok;
        }
        if (track_cmd->parsed()) {
            return parse_precision(trk.precision) == PrecisionLevel::DoubleDouble ? track<DoubleDouble>(trk, out)
                                                                                   : track<double>(trk, out);
        }
        if (bench_newton_cmd->parsed()) {
            NewtonBenchConfig cfg;
            cfg.spec = bn_sys.spec();
            cfg.iterations = bn_reps;
            cfg.workers = bn_threads;
            cfg.precision = parse_precision(bn_precision);
            const TableFormat format = parse_table_format(bn_format);
            out << "configuration:\n  command: bench-newton\n";
            print_system_flags(out, bn_sys);
            out << "  threads: " << join(bn_threads) << "\n  precision: " << bn_precision
                << "\n  repetitions: " << bn_reps << "\n  runs: " << cfg.runs << " (median, after one warmup)"
                << "\n  format: " << bn_format << "\n  hardware: " << hardware_description() << "\n\n";
            const NewtonBenchReport report = bench_newton(cfg);
            out << newton_bench_table(report).render(format);
            if (report.singular) {
                out << "note: the Jacobian at the benchmark point was numerically singular\n";
            }
            return Ok;
        }
        if (bench_eval_cmd->parsed()) {
            if (be_degrees.empty()) {
                be_degrees.push_back(10);
            }
            const TableFormat format = parse_table_format(be_format);
            out << "configuration:\n  command: bench-eval\n  dim: " << be_sys.dim << "\n  monomials: "
                << be_sys.monomials << "\n  degree: " << join(be_degrees) << "\n  avg-degree: " << be_sys.avg_degree
                << "\n  seed: " << be_sys.seed << "\n  precision: " << be_precision << "\n  repetitions: " << be_reps
                << "\n  runs: 3 (median, after one warmup)\n  format: " << be_format << "\n\n";
            std::vector<EvalBenchRow> rows;
            for (int d : be_degrees) {
                EvalBenchConfig cfg;
                cfg.spec = be_sys.spec();
                cfg.spec.max_degree = d;
                cfg.repetitions = be_reps;
                cfg.precision = parse_precision(be_precision);
                rows.push_back(bench_eval_old_vs_new(cfg));
            }
            out << eval_bench_table(rows).render(format);
            return Ok;
        }
        if (quality_cmd->parsed()) {
            out << "configuration:\n  command: quality-up\n  t-high: " << t_high << "\n  t-budget: " << t_budget
                << "\n  cores: " << cores << "\n\n";
            const int needed = cores_for_fixed_time(t_high, t_budget, cores);
            const QualityUpResult q = quality_up_factor(cores, needed);
            out << "cores needed: " << needed << ", quality up: " << format_fixed(q.factor, 3) << '\n';
            if (q.degenerate) {
                out << "note: one core suffices, the precision doubling is free\n";
            }
            return Ok;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return UsageError;
    }
    return UsageError;
}

} // namespace pathtrack::cli
