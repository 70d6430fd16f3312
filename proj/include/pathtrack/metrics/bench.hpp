#pragma once

// Benchmark harness: repeated Newton stage pipelines across team sizes and
// the shared-monomial evaluator against the baseline evaluator.
//
// Every benchmark checks its numerical output before reporting timings and
// throws VerificationError when the check fails.

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pathtrack/metrics/metrics.hpp"
#include "pathtrack/polysys/system.hpp"
#include "pathtrack/scalar/complex.hpp"
#include "pathtrack/scalar/double_double.hpp"
#include "pathtrack/scalar/real.hpp"

namespace pathtrack {

class VerificationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct NewtonBenchConfig {
    SystemSpec spec;
    int iterations = 1000;
    std::vector<int> workers{1, 2, 4, 8};
    PrecisionLevel precision = PrecisionLevel::Double;
    int runs = 3; // timed runs after one discarded warmup
};

struct NewtonBenchRow {
    int workers = 1;
    double evaluate = 0.0;
    double eliminate = 0.0;
    double backsub = 0.0;
    double total = 0.0;
    double speedup = 1.0; // relative to the first row
};

struct NewtonBenchReport {
    std::vector<NewtonBenchRow> rows;
    std::vector<TimingRecord> records; // median run per team size
    bool singular = false;             // the fixed point gave a singular Jacobian
};

/// Throws VerificationError unless `step` equals `reference` bitwise.
void verify_same_step(std::span<const Complex<double>> reference, std::span<const Complex<double>> step,
                      int reference_workers, int workers);
void verify_same_step(std::span<const Complex<DoubleDouble>> reference, std::span<const Complex<DoubleDouble>> step,
                      int reference_workers, int workers);

/// Runs `iterations` evaluation / elimination / back-substitution cycles at
/// a fixed point for each team size. The Newton step must be bitwise
/// identical across team sizes.
NewtonBenchReport bench_newton(const NewtonBenchConfig& cfg);

Table newton_bench_table(const NewtonBenchReport& report);

struct EvalBenchConfig {
    SystemSpec spec;
    int repetitions = 400;
    PrecisionLevel precision = PrecisionLevel::Double;
    int runs = 3;
};

struct EvalBenchRow {
    int max_degree = 0;
    double new_time = 0.0;
    double old_time = 0.0;
    double ratio = 0.0;
    double pure = 0.0;        // ratio / 3, discounting t as an extra variable
    double discrepancy = 0.0; // normwise relative difference of the two evaluations
};

/// Relative normwise tolerance for the evaluator agreement check.
double evaluator_agreement_tolerance(PrecisionLevel precision);

/// Throws VerificationError when the discrepancy exceeds the tolerance or is NaN.
void verify_evaluator_agreement(double discrepancy, PrecisionLevel precision);

/// Sequential timing of the shared-monomial evaluator against the baseline.
EvalBenchRow bench_eval_old_vs_new(const EvalBenchConfig& cfg);

Table eval_bench_table(const std::vector<EvalBenchRow>& rows);

} // namespace pathtrack
