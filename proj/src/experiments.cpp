#include "tidt/experiments.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <thread>

namespace tidt {

Tensor generate_synthetic(std::size_t t, std::size_t n, std::size_t a_max, std::uint64_t seed) {
    if (a_max < 1) throw DomainError("a_max must be at least 1");
    if (t < 1 || n < 1) throw DomainError("synthetic tensor extents must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(1, a_max);
    std::vector<std::size_t> terms(n * n);
    for (auto& a : terms) a = pick(rng);
    terms.back() = a_max;

    // sines[l - 1][i] = sin(2 pi l (i + 1) / t)
    std::vector<std::vector<double>> sines(a_max, std::vector<double>(t));
    for (std::size_t l = 1; l <= a_max; ++l)
        for (std::size_t i = 0; i < t; ++i)
            sines[l - 1][i] = std::sin(2.0 * std::numbers::pi * static_cast<double>(l) *
                                       static_cast<double>(i + 1) / static_cast<double>(t));

    Tensor m({t, n, n});
    for (std::size_t q = 0; q < n * n; ++q)
        for (std::size_t i = 0; i < t; ++i) {
            double v = 0.0;
            for (std::size_t l = 0; l < terms[q]; ++l) v += sines[l][i];
            m[i * n * n + q] = v;
        }
    return m;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    return mix(mix(mix(base) ^ a) ^ (b * 0x632be59bd9b4e019ULL));
}

namespace {

struct ErrorSums {
    double abs = 0.0;
    double sq = 0.0;
    std::size_t count = 0;
};

ErrorSums error_sums(const Tensor& est, const Tensor& truth, const Tensor& scope) {
    est.require_same_shape(truth, "metrics");
    est.require_same_shape(scope, "metrics");
    ErrorSums s;
    for (std::size_t i = 0; i < est.size(); ++i) {
        if (scope[i] == 0.0) continue;
        const double d = est[i] - truth[i];
        s.abs += std::abs(d);
        s.sq += d * d;
        ++s.count;
    }
    if (s.count == 0) throw DomainError("metric scope selects no entries");
    return s;
}

} // namespace

double mae(const Tensor& est, const Tensor& truth, const Tensor& scope) {
    const ErrorSums s = error_sums(est, truth, scope);
    return s.abs / static_cast<double>(s.count);
}

double rmse(const Tensor& est, const Tensor& truth, const Tensor& scope) {
    const ErrorSums s = error_sums(est, truth, scope);
    return std::sqrt(s.sq / static_cast<double>(s.count));
}

Tensor missing_scope(const SamplingMask& mask) {
    Tensor out(mask.mask.shape());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = mask.mask[i] == 0.0 ? 1.0 : 0.0;
    return out;
}

Tensor add_noise(const Tensor& x, double sigma, std::uint64_t seed) {
    if (!(sigma >= 0.0)) throw DomainError("noise sigma must be nonnegative");
    Tensor out = x;
    if (sigma == 0.0) return out;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, sigma);
    for (double& v : out.data()) v += gauss(rng);
    return out;
}

PhaseGridSpec PhaseGridSpec::standard_preset(PatternKind pattern) {
    PhaseGridSpec s;
    s.t = s.n = 21;
    for (std::size_t r = 2; r <= 20; r += 2) s.rank_values.push_back(r);
    for (std::size_t i = 1; i <= 20; ++i) s.rho_values.push_back(static_cast<double>(i) / 21.0);
    s.pattern = pattern;
    s.trials = 50;
    s.success_rmse = 0.01;
    return s;
}

TrialRecord run_phase_trial(const PhaseGridSpec& spec, std::size_t rank, double rho, std::size_t trial,
                            const SolverConfig& solver) {
    TrialRecord rec;
    rec.rank = rank;
    rec.rho = rho;
    rec.trial = trial;
    // the rho grid is indexed through its bit pattern so equal rates share seeds
    std::uint64_t rho_bits = 0;
    static_assert(sizeof(rho_bits) == sizeof(rho));
    std::memcpy(&rho_bits, &rho, sizeof(rho));
    rec.seed = derive_seed(spec.seed ^ (rank << 48), rho_bits, trial);
    const auto start = std::chrono::steady_clock::now();
    try {
        const std::size_t a_max = std::max<std::size_t>(1, rank / 2);
        const Tensor truth = generate_synthetic(spec.t, spec.n, a_max, derive_seed(rec.seed, 1));
        const SamplingMask mask = gen_pattern(spec.pattern, truth.shape(), rho, derive_seed(rec.seed, 2));
        const Tensor noisy = add_noise(truth, spec.noise_sigma, derive_seed(rec.seed, 3));
        const Recovery out = admm_solve(apply_mask(noisy, mask), mask, solver);
        Tensor scope = missing_scope(mask);
        if (std::all_of(scope.data().begin(), scope.data().end(), [](double v) { return v == 0.0; }))
            scope = Tensor::ones(truth.shape());
        rec.rmse = rmse(out.x, truth, scope);
        rec.mae = mae(out.x, truth, scope);
        rec.iterations = out.report.iterations;
        rec.converged = out.report.converged;
    } catch (const Error& e) {
        rec.rmse = rec.mae = std::numeric_limits<double>::infinity();
        rec.error = e.what();
    }
    rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rec;
}

PhaseResult run_phase_transition(const PhaseGridSpec& spec, const SolverConfig& solver, std::size_t jobs) {
    if (spec.trials == 0) throw DomainError("phase grid needs at least one trial per cell");
    PhaseResult result;
    result.spec = spec;
    const std::size_t rows = spec.rank_values.size(), cols = spec.rho_values.size();
    const std::size_t total = rows * cols * spec.trials;
    result.trials.resize(total);

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t idx = next++; idx < total; idx = next++) {
            const std::size_t cell = idx / spec.trials;
            const std::size_t trial = idx % spec.trials;
            result.trials[idx] = run_phase_trial(spec, spec.rank_values[cell / cols],
                                                 spec.rho_values[cell % cols], trial, solver);
        }
    };
    jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(1, total));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    }

    result.success.assign(rows, std::vector<int>(cols, 0));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            CellRecord c;
            c.rank = spec.rank_values[i];
            c.rho = spec.rho_values[j];
            const std::size_t base = (i * cols + j) * spec.trials;
            for (std::size_t q = 0; q < spec.trials; ++q) {
                c.mean_rmse += result.trials[base + q].rmse;
                c.mean_mae += result.trials[base + q].mae;
            }
            c.mean_rmse /= static_cast<double>(spec.trials);
            c.mean_mae /= static_cast<double>(spec.trials);
            c.success = c.mean_rmse < spec.success_rmse;
            result.success[i][j] = c.success ? 1 : 0;
            result.cells.push_back(c);
        }
    return result;
}

std::vector<std::size_t> boundary_flips(const std::vector<std::vector<int>>& success) {
    std::vector<std::size_t> out;
    for (const auto& row : success) {
        std::size_t flips = 0;
        for (std::size_t j = 1; j < row.size(); ++j) flips += row[j] != row[j - 1];
        out.push_back(flips);
    }
    return out;
}

void write_grid_csv(std::ostream& os, const PhaseResult& result) {
    os << "rank";
    os << std::setprecision(17);
    for (double rho : result.spec.rho_values) os << ',' << rho;
    os << '\n';
    for (std::size_t i = 0; i < result.success.size(); ++i) {
        os << result.spec.rank_values[i];
        for (int v : result.success[i]) os << ',' << v;
        os << '\n';
    }
}

std::string phase_records_json(const PhaseResult& result) {
    using nlohmann::json;
    const PhaseGridSpec& s = result.spec;
    json doc;
    doc["config"] = {{"t", s.t},
                     {"n", s.n},
                     {"rank_values", s.rank_values},
                     {"rho_values", s.rho_values},
                     {"pattern", to_string(s.pattern)},
                     {"trials", s.trials},
                     {"success_rmse", s.success_rmse},
                     {"noise_sigma", s.noise_sigma},
                     {"seed", s.seed}};
    auto finite_or_null = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
    json cells = json::array();
    for (const CellRecord& c : result.cells)
        cells.push_back({{"rank", c.rank},
                         {"rho", c.rho},
                         {"mean_rmse", finite_or_null(c.mean_rmse)},
                         {"mean_mae", finite_or_null(c.mean_mae)},
                         {"success", c.success}});
    doc["cells"] = std::move(cells);
    json trials = json::array();
    for (const TrialRecord& r : result.trials) {
        json t = {{"rank", r.rank},
                  {"rho", r.rho},
                  {"trial", r.trial},
                  {"seed", r.seed},
                  {"rmse", finite_or_null(r.rmse)},
                  {"mae", finite_or_null(r.mae)},
                  {"iterations", r.iterations},
                  {"converged", r.converged},
                  {"wall_seconds", r.wall_seconds}};
        if (!r.error.empty()) t["error"] = r.error;
        trials.push_back(std::move(t));
    }
    doc["trials"] = std::move(trials);
    return doc.dump(2);
}

std::vector<BenchRow> run_scaling_bench(const std::vector<std::size_t>& sizes, std::size_t reps,
                                        std::size_t iters_per_rep, std::uint64_t seed) {
    if (reps == 0 || iters_per_rep == 0) throw DomainError("bench needs at least one repetition and iteration");
    if (!std::is_sorted(sizes.begin(), sizes.end())) throw DomainError("bench sizes must be sorted ascending");
    std::vector<BenchRow> rows;
    for (std::size_t a : sizes) {
        if (a < 1) throw DomainError("bench sizes must be positive");
        std::mt19937_64 rng(derive_seed(seed, a));
        std::normal_distribution<double> gauss(0.0, 1.0);
        Tensor x({a, a, a});
        for (double& v : x.data()) v = gauss(rng);
        const SamplingMask mask = gen_bernoulli(x.shape(), 0.8, derive_seed(seed, a, 1));
        SolverConfig cfg;
        cfg.k = a;
        cfg.max_iters = iters_per_rep;
        cfg.tol = std::numeric_limits<double>::min(); // run the full iteration budget
        // with the default mu0 the threshold 1/mu zeroes every face early on and
        // the SVDs are skipped; start where every timed iteration pays for them
        cfg.mu0 = 1.0;
        BenchRow row;
        row.a = a;
        for (std::size_t r = 0; r < reps; ++r) {
            const Recovery out = admm_solve(apply_mask(x, mask), mask, cfg);
            row.rep_seconds.push_back(out.report.wall_time.count() / static_cast<double>(out.report.iterations));
        }
        std::vector<double> sorted = row.rep_seconds;
        std::sort(sorted.begin(), sorted.end());
        row.seconds_per_iter = sorted[sorted.size() / 2];
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows) {
    os << "a,seconds_per_iter\n" << std::setprecision(17);
    for (const BenchRow& r : rows) os << r.a << ',' << r.seconds_per_iter << '\n';
}

double bench_growth_exponent(const std::vector<BenchRow>& rows) {
    if (rows.size() < 2) throw DomainError("growth exponent needs at least two sizes");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(rows.size());
    for (const BenchRow& r : rows) {
        const double lx = std::log(static_cast<double>(r.a));
        const double ly = std::log(r.seconds_per_iter);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace tidt
