#include "tidt/cli.hpp"

#include "tidt/experiments.hpp"
#include "tidt/sampling.hpp"
#include "tidt/solver.hpp"
#include "tidt/tensor_file.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>

namespace tidt {

namespace {

using nlohmann::json;

struct Streams {
    std::ostream& out;
    std::ostream& err;
};

// Raised when the solver stops at max_iters; output has already been written.
struct NotConverged {};

std::vector<std::size_t> parse_size_list(const std::string& csv, const char* what) {
    std::vector<std::size_t> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        unsigned long long v = 0;
        try {
            v = std::stoull(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size() || item.front() == '-')
            throw DomainError(std::string(what) + ": '" + item + "' is not a nonnegative integer");
        out.push_back(static_cast<std::size_t>(v));
    }
    if (out.empty()) throw DomainError(std::string(what) + " is empty");
    return out;
}

std::vector<double> parse_double_list(const std::string& csv, const char* what) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size()) throw DomainError(std::string(what) + ": '" + item + "' is not a number");
        out.push_back(v);
    }
    if (out.empty()) throw DomainError(std::string(what) + " is empty");
    return out;
}

std::string file_hash(const std::string& path) { return fnv1a64_hex(read_file(path)); }

json solver_to_json(const SolverConfig& c) {
    return {{"k", c.k},
            {"lambda", c.lambda},
            {"mu0", c.mu0},
            {"mu_growth", c.mu_growth},
            {"mu_max", c.mu_max},
            {"max_iters", c.max_iters},
            {"tol", c.tol},
            {"transform", to_string(c.transform.kind)},
            {"transform_seed", c.transform.seed},
            {"padding", to_string(c.padding)}};
}

void solver_from_json(const json& j, SolverConfig& c) {
    if (!j.is_object()) throw FormatError("solver configuration must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (key == "k") c.k = value.get<std::size_t>();
        else if (key == "lambda") c.lambda = value.get<double>();
        else if (key == "mu0") c.mu0 = value.get<double>();
        else if (key == "mu_growth") c.mu_growth = value.get<double>();
        else if (key == "mu_max") c.mu_max = value.get<double>();
        else if (key == "max_iters") c.max_iters = value.get<std::size_t>();
        else if (key == "tol") c.tol = value.get<double>();
        else if (key == "transform") c.transform.kind = parse_transform_kind(value.get<std::string>());
        else if (key == "transform_seed") c.transform.seed = value.get<std::uint64_t>();
        else if (key == "padding") c.padding = parse_padding(value.get<std::string>());
        else throw FormatError("unknown solver setting '" + key + "'");
    }
}

json parse_json_file(const std::string& path) {
    try {
        return json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw FormatError(path + ": " + e.what());
    }
}

std::size_t default_jobs() {
    if (const char* env = std::getenv("TIDT_JOBS")) {
        const auto v = parse_size_list(env, "TIDT_JOBS");
        if (v.size() != 1 || v[0] == 0) throw DomainError("TIDT_JOBS must be a single positive integer");
        return v[0];
    }
    return 1;
}

// recover ------------------------------------------------------------------

struct RecoverArgs {
    std::string input, mask, out, truth, report, config, manifest;
    std::string transform = "dft", pad = "none", scope = "missing";
    SolverConfig solver;
    CLI::Option *k = nullptr, *lambda = nullptr, *transform_opt = nullptr, *transform_seed = nullptr,
                *pad_opt = nullptr, *tol = nullptr, *max_iters = nullptr, *mu0 = nullptr,
                *input_opt = nullptr, *mask_opt = nullptr, *out_opt = nullptr, *truth_opt = nullptr;
};

void setup_recover(CLI::App& app, RecoverArgs& a) {
    a.input_opt = app.add_option("--input", a.input, "observed tensor file");
    a.mask_opt = app.add_option("--mask", a.mask, "observation mask file (1 = observed)");
    a.k = app.add_option("--k", a.solver.k, "Hankel column count (0 = t)");
    a.lambda = app.add_option("--lambda", a.solver.lambda, "data-fit weight");
    a.transform_opt = app.add_option("--transform", a.transform, "dft | dct | rot");
    a.transform_seed = app.add_option("--transform-seed", a.solver.transform.seed, "seed of the rot transform");
    a.pad_opt = app.add_option("--pad", a.pad, "none | symmetric");
    a.tol = app.add_option("--tol", a.solver.tol, "stopping tolerance");
    a.max_iters = app.add_option("--max-iters", a.solver.max_iters, "iteration cap");
    a.mu0 = app.add_option("--mu0", a.solver.mu0, "initial ADMM penalty");
    a.out_opt = app.add_option("--out", a.out, "recovered tensor file");
    a.truth_opt = app.add_option("--truth", a.truth, "ground truth for MAE/RMSE");
    app.add_option("--scope", a.scope, "metric scope: missing | all")->check(CLI::IsMember({"missing", "all"}));
    app.add_option("--report", a.report, "run manifest JSON (default: <out>.json)");
    app.add_option("--config", a.config, "JSON file with solver settings");
    app.add_option("--manifest", a.manifest, "re-run from a previous run manifest");
}

int cmd_recover(RecoverArgs& a, Streams io) {
    // defaults < manifest < config file < flags
    SolverConfig cfg;
    std::string input, mask_path, out_path, truth_path;
    std::string scope = a.scope;
    if (!a.manifest.empty()) {
        const json m = parse_json_file(a.manifest);
        solver_from_json(m.at("solver"), cfg);
        input = m.at("input").at("path").get<std::string>();
        mask_path = m.at("mask").at("path").get<std::string>();
        out_path = m.at("output").at("path").get<std::string>();
        if (m.contains("truth")) truth_path = m.at("truth").at("path").get<std::string>();
        if (m.contains("metrics_scope")) scope = m.at("metrics_scope").get<std::string>();
        if (input.empty() || mask_path.empty()) throw FormatError(a.manifest + ": manifest lacks input paths");
        if (file_hash(input) != m.at("input").at("hash").get<std::string>())
            throw FormatError(input + " changed since the manifest was written (hash mismatch)");
        if (file_hash(mask_path) != m.at("mask").at("hash").get<std::string>())
            throw FormatError(mask_path + " changed since the manifest was written (hash mismatch)");
    }
    if (!a.config.empty()) solver_from_json(parse_json_file(a.config), cfg);
    if (a.k->count()) cfg.k = a.solver.k;
    if (a.lambda->count()) cfg.lambda = a.solver.lambda;
    if (a.transform_opt->count()) cfg.transform.kind = parse_transform_kind(a.transform);
    if (a.transform_seed->count()) cfg.transform.seed = a.solver.transform.seed;
    if (a.pad_opt->count()) cfg.padding = parse_padding(a.pad);
    if (a.tol->count()) cfg.tol = a.solver.tol;
    if (a.max_iters->count()) cfg.max_iters = a.solver.max_iters;
    if (a.mu0->count()) cfg.mu0 = a.solver.mu0;
    if (a.input_opt->count()) input = a.input;
    if (a.mask_opt->count()) mask_path = a.mask;
    if (a.out_opt->count()) out_path = a.out;
    if (a.truth_opt->count()) truth_path = a.truth;
    if (input.empty()) throw DomainError("recover needs --input");
    if (mask_path.empty()) throw DomainError("recover needs --mask");
    if (out_path.empty()) throw DomainError("recover needs --out");
    cfg.validate();

    const std::string input_bytes = read_file(input);
    const std::string mask_bytes = read_file(mask_path);
    const Tensor y = decode_tensor(input_bytes, input);
    const SamplingMask mask = SamplingMask::custom(decode_tensor(mask_bytes, mask_path));
    std::optional<Tensor> truth;
    if (!truth_path.empty()) {
        truth = read_tensor(truth_path);
        truth->require_same_shape(y, "truth");
    }

    Recovery rec = admm_solve(y, mask, cfg);
    if (truth) {
        Tensor sc = scope == "all" ? Tensor::ones(y.shape()) : missing_scope(mask);
        rec.report.mae = mae(rec.x, *truth, sc);
        rec.report.rmse = rmse(rec.x, *truth, sc);
    }
    const std::string out_bytes = encode_tensor(rec.x);
    write_file_atomic(out_path, out_bytes);

    const RecoveryReport& r = rec.report;
    json manifest = {{"command", "recover"},
                     {"solver", solver_to_json(cfg)},
                     {"k_effective", effective_k(cfg.hankel(), y.extent(0))},
                     {"input", {{"path", input}, {"hash", fnv1a64_hex(input_bytes)}, {"shape", y.shape()}}},
                     {"mask",
                      {{"path", mask_path},
                       {"hash", fnv1a64_hex(mask_bytes)},
                       {"observed_fraction", mask.observed_fraction()},
                       {"rho", min_temporal_sampling_rate(mask)}}},
                     {"output", {{"path", out_path}, {"hash", fnv1a64_hex(out_bytes)}}},
                     {"metrics_scope", scope}};
    const std::string provenance = mask_path + ".json";
    if (std::filesystem::exists(provenance)) manifest["mask"]["provenance"] = parse_json_file(provenance);
    if (truth) manifest["truth"] = {{"path", truth_path}, {"hash", file_hash(truth_path)}};
    json report = {{"iterations", r.iterations},
                   {"converged", r.converged},
                   {"primal_residual", r.primal_residuals.empty() ? 0.0 : r.primal_residuals.back()},
                   {"relative_change", r.relative_changes.empty() ? 0.0 : r.relative_changes.back()},
                   {"objective", r.objective_trace.empty() ? 0.0 : r.objective_trace.back()},
                   {"wall_seconds", r.wall_time.count()}};
    if (r.mae) report["mae"] = *r.mae;
    if (r.rmse) report["rmse"] = *r.rmse;
    manifest["report"] = std::move(report);
    write_file_atomic(a.report.empty() ? out_path + ".json" : a.report, manifest.dump(2) + "\n");

    io.out << "iterations " << r.iterations << " converged " << (r.converged ? "true" : "false") << "\n";
    if (r.mae) io.out << "mae " << format_double(*r.mae) << " rmse " << format_double(*r.rmse) << "\n";
    if (!r.converged) {
        io.err << "tidt: warning: no convergence within " << cfg.max_iters << " iterations; output written\n";
        throw NotConverged{};
    }
    return kExitOk;
}

// mask gen -----------------------------------------------------------------

struct MaskArgs {
    std::string pattern, shape, out;
    double rate = 1.0, theta = 1.0;
    std::size_t horizon = 0;
    std::uint64_t seed = 0;
    CLI::Option *rate_opt = nullptr, *theta_opt = nullptr, *horizon_opt = nullptr;
};

void setup_mask(CLI::App& gen, MaskArgs& a) {
    gen.add_option("--pattern", a.pattern, "1 | 2 | 3 | bernoulli | prediction")->required();
    gen.add_option("--shape", a.shape, "comma-separated extents, time first")->required();
    a.rate_opt = gen.add_option("--rate", a.rate, "observed rate for patterns 1-3");
    a.theta_opt = gen.add_option("--theta", a.theta, "Bernoulli observation probability");
    a.horizon_opt = gen.add_option("--horizon", a.horizon, "forecast horizon h");
    gen.add_option("--seed", a.seed, "random seed");
    gen.add_option("--out", a.out, "mask file")->required();
}

int cmd_mask(const MaskArgs& a, Streams io) {
    const Shape shape = parse_size_list(a.shape, "--shape");
    const PatternKind kind = parse_pattern_kind(a.pattern);
    SamplingMask m;
    json prov = {{"pattern", to_string(kind)}, {"shape", shape}};
    switch (kind) {
    case PatternKind::Bernoulli:
        if (!a.theta_opt->count() && !a.rate_opt->count()) throw DomainError("bernoulli pattern needs --theta");
        m = gen_bernoulli(shape, a.theta_opt->count() ? a.theta : a.rate, a.seed);
        prov["theta"] = m.rate;
        prov["seed"] = a.seed;
        break;
    case PatternKind::Prediction:
        if (!a.horizon_opt->count()) throw DomainError("prediction pattern needs --horizon");
        m = gen_prediction(shape, a.horizon);
        prov["horizon"] = a.horizon;
        break;
    case PatternKind::Custom:
        throw DomainError("custom masks are not generated; pass a mask file to recover instead");
    default:
        if (!a.rate_opt->count()) throw DomainError("pattern " + a.pattern + " needs --rate");
        m = gen_pattern(kind, shape, a.rate, a.seed);
        prov["rate"] = a.rate;
        prov["seed"] = a.seed;
    }
    const double rho = min_temporal_sampling_rate(m);
    const std::string bytes = encode_tensor(m.mask);
    prov["rho"] = rho;
    prov["observed_fraction"] = m.observed_fraction();
    prov["hash"] = fnv1a64_hex(bytes);
    write_file_atomic(a.out, bytes);
    write_file_atomic(a.out + ".json", prov.dump(2) + "\n");
    io.out << "rho " << format_double(rho) << "\n";
    return kExitOk;
}

// analyze ------------------------------------------------------------------

struct AnalyzeArgs {
    std::string input, mask, transform = "dft", pad = "none";
    std::size_t k = 0;
    double alpha = kDefaultAlpha;
};

int cmd_analyze(const AnalyzeArgs& a, Streams io) {
    const Tensor m = read_tensor(a.input);
    const SamplingMask mask =
        a.mask.empty() ? SamplingMask::full(m.shape()) : SamplingMask::custom(read_tensor(a.mask));
    const TransformSpec spec{parse_transform_kind(a.transform), 0};
    const TheoryDiagnostics d = theory_bound(m, mask, HankelConfig{a.k, parse_padding(a.pad)}, spec, a.alpha);
    const json j = {{"rho", d.rho},         {"mu", d.mu},       {"r", d.r},
                    {"r_s", d.r_s},         {"k", d.k},         {"t", d.t},
                    {"alpha", d.alpha},     {"rho_bound", d.rho_bound},
                    {"h_max", d.h_max},     {"satisfied", d.satisfied}};
    io.out << j.dump() << "\n";
    return kExitOk;
}

// simulate phase -----------------------------------------------------------

struct PhaseArgs {
    std::size_t t = 21, n = 21, trials = 50, jobs = 0, max_iters = 500;
    std::uint64_t seed = 0;
    std::string pattern = "1", ranks, rhos, out_grid, out_records;
    double noise = 0.0, lambda = 1e10;
};

int cmd_phase(const PhaseArgs& a, Streams io) {
    PhaseGridSpec spec = PhaseGridSpec::standard_preset(parse_pattern_kind(a.pattern));
    spec.t = a.t;
    spec.n = a.n;
    spec.trials = a.trials;
    spec.seed = a.seed;
    spec.noise_sigma = a.noise;
    if (a.t != 21) {
        spec.rho_values.clear();
        for (std::size_t i = 1; i < a.t; ++i) spec.rho_values.push_back(static_cast<double>(i) / static_cast<double>(a.t));
    }
    if (!a.ranks.empty()) spec.rank_values = parse_size_list(a.ranks, "--ranks");
    if (!a.rhos.empty()) spec.rho_values = parse_double_list(a.rhos, "--rhos");
    SolverConfig cfg;
    cfg.lambda = a.lambda;
    cfg.max_iters = a.max_iters;
    const std::size_t jobs = a.jobs ? a.jobs : default_jobs();
    const PhaseResult res = run_phase_transition(spec, cfg, jobs);
    std::ostringstream grid;
    write_grid_csv(grid, res);
    if (!a.out_grid.empty()) write_file_atomic(a.out_grid, grid.str());
    else io.out << grid.str();
    if (!a.out_records.empty()) write_file_atomic(a.out_records, phase_records_json(res) + "\n");
    return kExitOk;
}

// bench --------------------------------------------------------------------

struct BenchArgs {
    std::string sizes = "10,15,20", out;
    std::size_t reps = 3, iters = 5;
    std::uint64_t seed = 7;
};

int cmd_bench(const BenchArgs& a, Streams io) {
    const auto rows = run_scaling_bench(parse_size_list(a.sizes, "--sizes"), a.reps, a.iters, a.seed);
    std::ostringstream csv;
    write_bench_csv(csv, rows);
    if (!a.out.empty()) write_file_atomic(a.out, csv.str());
    else io.out << csv.str();
    if (rows.size() >= 2) io.err << "growth exponent " << format_double(bench_growth_exponent(rows)) << "\n";
    return kExitOk;
}

// metrics ------------------------------------------------------------------

struct MetricsArgs {
    std::string est, truth, mask, scope; // scope defaults to missing with a mask, all without
};

int cmd_metrics(const MetricsArgs& a, Streams io) {
    const Tensor est = read_tensor(a.est);
    const Tensor truth = read_tensor(a.truth);
    est.require_same_shape(truth, "metrics");
    Tensor scope = Tensor::ones(est.shape());
    const std::string mode = a.scope.empty() ? (a.mask.empty() ? "all" : "missing") : a.scope;
    if (mode == "missing") {
        if (a.mask.empty()) throw DomainError("--scope missing needs --mask");
        scope = missing_scope(SamplingMask::custom(read_tensor(a.mask)));
        scope.require_same_shape(est, "metrics mask");
    }
    io.out << format_double(mae(est, truth, scope)) << " " << format_double(rmse(est, truth, scope)) << "\n";
    return kExitOk;
}

// ingest / export ----------------------------------------------------------

struct IngestArgs {
    std::string input, out, mask_out, shape;
    bool time_major = false;
};

int cmd_ingest(const IngestArgs& a, Streams io) {
    const Shape shape = a.shape.empty() ? Shape{} : parse_size_list(a.shape, "--shape");
    const CsvTensor csv = parse_csv(read_file(a.input), a.time_major, shape);
    write_tensor(a.out, csv.data);
    write_tensor(a.mask_out.empty() ? a.out + ".mask" : a.mask_out, csv.mask);
    io.out << "shape " << shape_to_string(csv.data.shape()) << " missing " << csv.missing << "\n";
    return kExitOk;
}

struct ExportArgs {
    std::string input, out;
    bool time_major = false;
};

int cmd_export(const ExportArgs& a, Streams) {
    write_file_atomic(a.out, to_csv(read_tensor(a.input), a.time_major));
    return kExitOk;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Low-rank completion of multidimensional time series via temporal Hankel tensors", "tidt"};
    app.require_subcommand(1);

    RecoverArgs recover;
    CLI::App* recover_cmd = app.add_subcommand("recover", "recover missing entries of a tensor");
    setup_recover(*recover_cmd, recover);

    MaskArgs mask;
    CLI::App* mask_cmd = app.add_subcommand("mask", "sampling masks");
    mask_cmd->require_subcommand(1);
    CLI::App* mask_gen = mask_cmd->add_subcommand("gen", "generate a mask file");
    setup_mask(*mask_gen, mask);

    AnalyzeArgs analyze;
    CLI::App* analyze_cmd = app.add_subcommand("analyze", "incoherence and sampling-bound diagnostics");
    analyze_cmd->add_option("--input", analyze.input, "ground-truth tensor")->required();
    analyze_cmd->add_option("--k", analyze.k, "Hankel column count (0 = t)");
    analyze_cmd->add_option("--mask", analyze.mask, "mask file (default: full)");
    analyze_cmd->add_option("--alpha", analyze.alpha, "bound constant in (0, 1]");
    analyze_cmd->add_option("--transform", analyze.transform, "dft | dct | rot");
    analyze_cmd->add_option("--pad", analyze.pad, "none | symmetric");

    PhaseArgs phase;
    CLI::App* sim_cmd = app.add_subcommand("simulate", "synthetic experiments");
    sim_cmd->require_subcommand(1);
    CLI::App* phase_cmd = sim_cmd->add_subcommand("phase", "phase-transition grid");
    phase_cmd->add_option("--t", phase.t, "series length");
    phase_cmd->add_option("--n", phase.n, "spatial extent (tensor is t x n x n)");
    phase_cmd->add_option("--pattern", phase.pattern, "1 | 2 | 3 | bernoulli");
    phase_cmd->add_option("--trials", phase.trials, "trials per cell");
    phase_cmd->add_option("--seed", phase.seed, "base seed");
    phase_cmd->add_option("--ranks", phase.ranks, "comma-separated Hankel ranks");
    phase_cmd->add_option("--rhos", phase.rhos, "comma-separated sampling rates");
    phase_cmd->add_option("--noise", phase.noise, "Gaussian noise sigma");
    phase_cmd->add_option("--lambda", phase.lambda, "data-fit weight");
    phase_cmd->add_option("--max-iters", phase.max_iters, "iteration cap");
    phase_cmd->add_option("--jobs", phase.jobs, "worker threads (default: TIDT_JOBS or 1)");
    phase_cmd->add_option("--out-grid", phase.out_grid, "success grid CSV");
    phase_cmd->add_option("--out-records", phase.out_records, "per-trial JSON records");

    BenchArgs bench;
    CLI::App* bench_cmd = app.add_subcommand("bench", "per-iteration scaling benchmark");
    bench_cmd->add_option("--sizes", bench.sizes, "comma-separated cube sizes a");
    bench_cmd->add_option("--reps", bench.reps, "repetitions per size");
    bench_cmd->add_option("--iters", bench.iters, "iterations timed per repetition");
    bench_cmd->add_option("--seed", bench.seed, "random seed");
    bench_cmd->add_option("--out", bench.out, "CSV output (default: stdout)");

    MetricsArgs metrics;
    CLI::App* metrics_cmd = app.add_subcommand("metrics", "MAE and RMSE of an estimate");
    metrics_cmd->add_option("--est", metrics.est, "estimate")->required();
    metrics_cmd->add_option("--truth", metrics.truth, "ground truth")->required();
    metrics_cmd->add_option("--mask", metrics.mask, "observation mask");
    metrics_cmd->add_option("--scope", metrics.scope, "missing | all")->check(CLI::IsMember({"missing", "all"}));

    IngestArgs ingest;
    CLI::App* ingest_cmd = app.add_subcommand("ingest", "CSV to tensor file");
    ingest_cmd->add_option("--input", ingest.input, "CSV file")->required();
    ingest_cmd->add_option("--out", ingest.out, "tensor file")->required();
    ingest_cmd->add_option("--mask-out", ingest.mask_out, "mask file (default: <out>.mask)");
    ingest_cmd->add_option("--shape", ingest.shape, "reshape, time extent first");
    ingest_cmd->add_flag("--time-major", ingest.time_major, "rows are time points");

    ExportArgs exporter;
    CLI::App* export_cmd = app.add_subcommand("export", "tensor file to CSV");
    export_cmd->add_option("--input", exporter.input, "tensor file")->required();
    export_cmd->add_option("--out", exporter.out, "CSV file")->required();
    export_cmd->add_flag("--time-major", exporter.time_major, "rows are time points");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "tidt: error: " << e.what() << "\n";
        return kExitError;
    }

    const Streams io{out, err};
    try {
        if (recover_cmd->parsed()) return cmd_recover(recover, io);
        if (mask_gen->parsed()) return cmd_mask(mask, io);
        if (analyze_cmd->parsed()) return cmd_analyze(analyze, io);
        if (phase_cmd->parsed()) return cmd_phase(phase, io);
        if (bench_cmd->parsed()) return cmd_bench(bench, io);
        if (metrics_cmd->parsed()) return cmd_metrics(metrics, io);
        if (ingest_cmd->parsed()) return cmd_ingest(ingest, io);
        if (export_cmd->parsed()) return cmd_export(exporter, io);
    } catch (const NotConverged&) {
        return kExitNotConverged;
    } catch (const json::exception& e) {
        err << "tidt: error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        err << "tidt: error: " << e.what() << "\n";
        return kExitError;
    }
    err << "tidt: error: no command given\n";
    return kExitError;
}

} // namespace tidt
