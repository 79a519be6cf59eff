#include "tidt/cli.hpp"
#include "tidt/experiments.hpp"
#include "tidt/sampling.hpp"
#include "tidt/tensor_file.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace tidt;

namespace fs = std::filesystem;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("tidt_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

std::size_t line_count(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

} // namespace

TEST_F(Cli, FullMaskRecoveryReturnsInput) {
    const Tensor y = generate_synthetic(10, 3, 1, 1);
    write_tensor(path("y.tidt"), y);
    write_tensor(path("m.tidt"), Tensor::ones(y.shape()));
    const CliRun r = cli({"recover", "--input", path("y.tidt"), "--mask", path("m.tidt"), "--k", "10", "--lambda", "1e10",
                       "--out", path("x.tidt")});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    const Tensor x = read_tensor(path("x.tidt"));
    EXPECT_LT(relative_error(x, y), 1e-6);
    EXPECT_TRUE(fs::exists(path("x.tidt.json")));
}

TEST_F(Cli, MissingInputExitsOneWithoutOutput) {
    write_tensor(path("m.tidt"), Tensor::ones({4, 2}));
    const CliRun r = cli({"recover", "--input", path("nope.tidt"), "--mask", path("m.tidt"), "--out", path("x.tidt")});
    EXPECT_EQ(r.code, kExitError);
    EXPECT_EQ(line_count(r.err), 1u);
    EXPECT_EQ(r.err.rfind("tidt: error:", 0), 0u);
    EXPECT_FALSE(fs::exists(path("x.tidt")));
    EXPECT_FALSE(fs::exists(path("x.tidt.json")));
}

TEST_F(Cli, ShapeMismatchExitsOne) {
    write_tensor(path("y.tidt"), Tensor::ones({4, 2}));
    write_tensor(path("m.tidt"), Tensor::ones({4, 3}));
    const CliRun r = cli({"recover", "--input", path("y.tidt"), "--mask", path("m.tidt"), "--out", path("x.tidt")});
    EXPECT_EQ(r.code, kExitError);
    EXPECT_FALSE(fs::exists(path("x.tidt")));
}

TEST_F(Cli, NonConvergenceExitsTwoWithOutput) {
    const Tensor y = generate_synthetic(10, 3, 1, 1);
    const SamplingMask m = gen_bernoulli(y.shape(), 0.6, 2);
    write_tensor(path("y.tidt"), apply_mask(y, m));
    write_tensor(path("m.tidt"), m.mask);
    const CliRun r = cli({"recover", "--input", path("y.tidt"), "--mask", path("m.tidt"), "--max-iters", "2", "--out",
                       path("x.tidt")});
    EXPECT_EQ(r.code, kExitNotConverged);
    EXPECT_TRUE(fs::exists(path("x.tidt")));
}

TEST_F(Cli, TruthAddsMetricsAndManifestReproduces) {
    const Tensor y = generate_synthetic(12, 3, 1, 4);
    ASSERT_EQ(cli({"mask", "gen", "--pattern", "1", "--shape", "12,3,3", "--rate", "0.75", "--seed", "5", "--out",
                   path("m.tidt")})
                  .code,
              kExitOk);
    const SamplingMask m = SamplingMask::custom(read_tensor(path("m.tidt")));
    write_tensor(path("y.tidt"), apply_mask(y, m));
    write_tensor(path("truth.tidt"), y);
    const CliRun r = cli({"recover", "--input", path("y.tidt"), "--mask", path("m.tidt"), "--k", "12", "--truth",
                       path("truth.tidt"), "--out", path("x.tidt"), "--report", path("run.json")});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.out.find("mae "), std::string::npos);

    std::ifstream in(path("run.json"));
    const nlohmann::json manifest = nlohmann::json::parse(in);
    EXPECT_TRUE(manifest.at("report").contains("rmse"));
    EXPECT_EQ(manifest.at("mask").at("provenance").at("seed"), 5);
    EXPECT_EQ(manifest.at("solver").at("k"), 12);

    const CliRun again = cli({"recover", "--manifest", path("run.json"), "--out", path("x2.tidt"), "--report",
                           path("run2.json")});
    ASSERT_EQ(again.code, kExitOk) << again.err;
    EXPECT_EQ(read_file(path("x.tidt")), read_file(path("x2.tidt")));
}

TEST_F(Cli, ManifestDetectsChangedInput) {
    const Tensor y = generate_synthetic(8, 2, 1, 4);
    write_tensor(path("y.tidt"), y);
    write_tensor(path("m.tidt"), Tensor::ones(y.shape()));
    ASSERT_EQ(cli({"recover", "--input", path("y.tidt"), "--mask", path("m.tidt"), "--out", path("x.tidt")}).code,
              kExitOk);
    write_tensor(path("y.tidt"), y * 2.0);
    EXPECT_EQ(cli({"recover", "--manifest", path("x.tidt.json")}).code, kExitError);
}

TEST_F(Cli, ConfigFileSitsBelowFlags) {
    const Tensor y = generate_synthetic(8, 2, 1, 4);
    const SamplingMask m = gen_bernoulli(y.shape(), 0.7, 1);
    write_tensor(path("y.tidt"), apply_mask(y, m));
    write_tensor(path("m.tidt"), m.mask);
    std::ofstream(path("cfg.json")) << R"({"max_iters": 3, "k": 4})";
    const CliRun a = cli({"recover", "--input", path("y.tidt"), "--mask", path("m.tidt"), "--config", path("cfg.json"),
                       "--out", path("x.tidt")});
    EXPECT_NE(a.out.find("iterations 3 "), std::string::npos) << a.out;
    const CliRun b = cli({"recover", "--input", path("y.tidt"), "--mask", path("m.tidt"), "--config", path("cfg.json"),
                       "--max-iters", "5", "--out", path("x.tidt")});
    EXPECT_NE(b.out.find("iterations 5 "), std::string::npos) << b.out;
}

TEST_F(Cli, MaskGenIsDeterministic) {
    const std::vector<std::string> base{"mask", "gen", "--pattern", "1", "--shape", "204,12,12", "--rate", "0.2", "--seed", "3"};
    auto a = base, b = base;
    a.insert(a.end(), {"--out", path("a.tidt")});
    b.insert(b.end(), {"--out", path("b.tidt")});
    const CliRun ra = cli(a);
    ASSERT_EQ(ra.code, kExitOk) << ra.err;
    ASSERT_EQ(cli(b).code, kExitOk);
    EXPECT_EQ(read_file(path("a.tidt")), read_file(path("b.tidt")));
    const double rho = std::stod(ra.out.substr(ra.out.find(' ') + 1));
    EXPECT_NEAR(rho, 0.2, 1.0 / 204);
}

TEST_F(Cli, MaskGenPredictionHorizonZeroIsFull) {
    ASSERT_EQ(cli({"mask", "gen", "--pattern", "prediction", "--shape", "6,2", "--horizon", "0", "--out", path("m.tidt")}).code,
              kExitOk);
    EXPECT_EQ(read_tensor(path("m.tidt")), Tensor::ones({6, 2}));
}

TEST_F(Cli, AnalyzeReportsBound) {
    write_tensor(path("m.tidt"), generate_synthetic(24, 6, 1, 7));
    const CliRun full = cli({"analyze", "--input", path("m.tidt"), "--k", "24"});
    ASSERT_EQ(full.code, kExitOk) << full.err;
    const auto j = nlohmann::json::parse(full.out);
    EXPECT_TRUE(j.at("satisfied").get<bool>());
    EXPECT_LE(j.at("r").get<int>(), 2);
    const double mu = j.at("mu"), alpha = j.at("alpha");
    const double r = j.at("r"), rs = j.at("r_s"), k = j.at("k"), t = j.at("t");
    EXPECT_NEAR(j.at("rho_bound").get<double>(), std::max(0.0, 1.0 - alpha * k / (2 * mu * r * (rs + 1) * t)), 1e-12);

    write_tensor(path("zero.tidt"), Tensor({6, 2}));
    EXPECT_EQ(cli({"analyze", "--input", path("zero.tidt")}).code, kExitError);
}

TEST_F(Cli, MetricsOfIdenticalTensors) {
    write_tensor(path("a.tidt"), generate_synthetic(6, 2, 1, 1));
    const CliRun r = cli({"metrics", "--est", path("a.tidt"), "--truth", path("a.tidt")});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(r.out, "0.0 0.0\n");
}

TEST_F(Cli, BenchSingleSize) {
    const CliRun r = cli({"bench", "--sizes", "6", "--reps", "1", "--iters", "1", "--out", path("b.csv")});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(line_count(read_file(path("b.csv"))), 2u);
}

TEST_F(Cli, SimulatePhaseWritesGridAndRecords) {
    const CliRun r = cli({"simulate", "phase", "--t", "6", "--n", "2", "--trials", "1", "--ranks", "2", "--rhos",
                       "0.5,0.8333333333333334", "--max-iters", "50", "--out-grid", path("g.csv"), "--out-records",
                       path("r.json")});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(line_count(read_file(path("g.csv"))), 2u);
    EXPECT_EQ(nlohmann::json::parse(read_file(path("r.json"))).at("trials").size(), 2u);
}

TEST_F(Cli, IngestAndExport) {
    std::ofstream(path("a.csv")) << "1,2\n3,NaN\n5,6\n";
    const CliRun r = cli({"ingest", "--input", path("a.csv"), "--out", path("a.tidt"), "--time-major"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(read_tensor(path("a.tidt")).shape(), (Shape{3, 2}));
    EXPECT_EQ(read_tensor(path("a.tidt.mask")), Tensor({3, 2}, {1, 1, 1, 0, 1, 1}));

    std::ofstream(path("b.csv")) << "1.5,2.25\n-3,4e-7\n";
    ASSERT_EQ(cli({"ingest", "--input", path("b.csv"), "--out", path("b.tidt"), "--time-major"}).code, kExitOk);
    ASSERT_EQ(cli({"export", "--input", path("b.tidt"), "--out", path("c.csv"), "--time-major"}).code, kExitOk);
    ASSERT_EQ(cli({"ingest", "--input", path("c.csv"), "--out", path("c.tidt"), "--time-major"}).code, kExitOk);
    EXPECT_EQ(read_file(path("b.tidt")), read_file(path("c.tidt")));

    std::ofstream(path("bad.csv")) << "1,2\n3\n";
    EXPECT_EQ(cli({"ingest", "--input", path("bad.csv"), "--out", path("bad.tidt")}).code, kExitError);
}

TEST_F(Cli, UnknownCommandAndBadFlags) {
    EXPECT_EQ(cli({"frobnicate"}).code, kExitError);
    EXPECT_EQ(cli({"mask", "gen", "--pattern", "1"}).code, kExitError);
    EXPECT_EQ(cli({"metrics", "--est", "a", "--truth", "b", "--scope", "some"}).code, kExitError);
}
