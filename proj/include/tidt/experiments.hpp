#pragma once

#include "tidt/sampling.hpp"
#include "tidt/solver.hpp"
#include "tidt/tensor.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace tidt {

/// t x n x n tensor with M(i_t, i_1, i_2) = sum_{l=1}^{a(i_1,i_2)} sin(2 pi l i_t / t)
/// (1-based i_t), a(i_1, i_2) uniform on {1..a_max} and a(n, n) = a_max.
/// Its temporal Hankel tensor with k = t has tubal rank at most 2 a_max.
Tensor generate_synthetic(std::size_t t, std::size_t n, std::size_t a_max, std::uint64_t seed);

/// SplitMix64-style mixing of a base seed with two coordinates.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0);

/// Mean absolute / root-mean-square error over entries where scope != 0.
/// Throws DomainError on an empty scope.
double mae(const Tensor& est, const Tensor& truth, const Tensor& scope);
double rmse(const Tensor& est, const Tensor& truth, const Tensor& scope);

/// 1 where the mask is 0; the default scope for imputation metrics.
Tensor missing_scope(const SamplingMask& mask);

/// x + N(0, sigma^2) i.i.d.
Tensor add_noise(const Tensor& x, double sigma, std::uint64_t seed);

struct PhaseGridSpec {
    std::size_t t = 21;
    std::size_t n = 21;
    std::vector<std::size_t> rank_values; ///< target Hankel ranks r = 2 a_max
    std::vector<double> rho_values;
    PatternKind pattern = PatternKind::Pattern1;
    std::size_t trials = 50;
    double success_rmse = 0.01;
    double noise_sigma = 0.0;
    std::uint64_t seed = 0;

    /// t = n = 21, r = 2, 4, ..., 20, rho = 1/21 ... 20/21, 50 trials.
    static PhaseGridSpec standard_preset(PatternKind pattern = PatternKind::Pattern1);
};

struct TrialRecord {
    std::size_t rank = 0;
    double rho = 0.0;
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    double rmse = 0.0;
    double mae = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
    double wall_seconds = 0.0;
    std::string error; ///< solver failure message, empty on success
};

struct CellRecord {
    std::size_t rank = 0;
    double rho = 0.0;
    double mean_rmse = 0.0;
    double mean_mae = 0.0;
    bool success = false;
};

struct PhaseResult {
    PhaseGridSpec spec;
    std::vector<std::vector<int>> success; ///< [rank index][rho index], 1 = success
    std::vector<CellRecord> cells;         ///< row-major over (rank, rho)
    std::vector<TrialRecord> trials;       ///< keyed by (cell, trial)
};

/// One recovery instance of the phase-transition protocol.
TrialRecord run_phase_trial(const PhaseGridSpec& spec, std::size_t rank, double rho, std::size_t trial,
                            const SolverConfig& solver);

/// Runs every (rank, rho) cell, `spec.trials` times each, spreading trials
/// over `jobs` threads. Output is independent of `jobs`.
PhaseResult run_phase_transition(const PhaseGridSpec& spec, const SolverConfig& solver, std::size_t jobs = 1);

/// Number of success/failure changes along each rank row.
std::vector<std::size_t> boundary_flips(const std::vector<std::vector<int>>& success);

void write_grid_csv(std::ostream& os, const PhaseResult& result);
std::string phase_records_json(const PhaseResult& result);

struct BenchRow {
    std::size_t a = 0;
    double seconds_per_iter = 0.0;       ///< median over repetitions
    std::vector<double> rep_seconds;     ///< per-repetition seconds/iteration
};

/// Per-iteration ADMM time on random a x a x a tensors with k = a.
std::vector<BenchRow> run_scaling_bench(const std::vector<std::size_t>& sizes, std::size_t reps,
                                        std::size_t iters_per_rep = 5, std::uint64_t seed = 7);

void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows);

/// Least-squares slope of log(seconds) against log(a).
double bench_growth_exponent(const std::vector<BenchRow>& rows);

} // namespace tidt
