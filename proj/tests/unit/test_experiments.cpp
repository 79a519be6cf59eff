#include "oracles.hpp"

#include "tidt/error.hpp"
#include "tidt/experiments.hpp"
#include "tidt/hankel.hpp"
#include "tidt/tsvd.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

using namespace tidt;

TEST(Synthetic, SmallFiberValues) {
    const Tensor m = generate_synthetic(4, 2, 1, 3);
    const double want[] = {1, 0, -1, 0};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t a = 0; a < 2; ++a)
            for (std::size_t b = 0; b < 2; ++b) EXPECT_NEAR(m.at({i, a, b}), want[i], 1e-15);
}

TEST(Synthetic, HankelRankAtMostTwiceAmax) {
    for (std::size_t a_max : {1u, 2u, 3u, 5u}) {
        for (std::uint64_t seed : {1u, 2u, 3u}) {
            const Tensor m = generate_synthetic(21, 5, a_max, seed);
            EXPECT_LE(tsvd_rank(hankel_forward(m, {21, Padding::None})), 2 * a_max);
        }
    }
}

TEST(Synthetic, LastFiberUsesAmax) {
    const Tensor m = generate_synthetic(16, 3, 4, 1);
    for (std::size_t i = 0; i < 16; ++i) {
        double want = 0.0;
        for (int l = 1; l <= 4; ++l) want += std::sin(2.0 * std::numbers::pi * l * (i + 1) / 16.0);
        EXPECT_NEAR(m.at({i, 2, 2}), want, 1e-12);
    }
}

TEST(Synthetic, DeterministicAndValidated) {
    EXPECT_EQ(generate_synthetic(10, 4, 3, 8), generate_synthetic(10, 4, 3, 8));
    EXPECT_THROW(generate_synthetic(10, 4, 0, 8), DomainError);
}

TEST(Metrics, Examples) {
    std::mt19937_64 rng(1);
    const Tensor a = oracle::random_tensor({6, 4}, rng);
    const Tensor all = Tensor::ones(a.shape());
    EXPECT_EQ(mae(a, a, all), 0.0);
    EXPECT_EQ(rmse(a, a, all), 0.0);
    const Tensor shifted = a + all;
    EXPECT_NEAR(mae(shifted, a, all), 1.0, 1e-15);
    EXPECT_NEAR(rmse(shifted, a, all), 1.0, 1e-15);
    EXPECT_THROW(mae(a, a, Tensor(a.shape())), DomainError);
}

TEST(Metrics, MatchLoopOracle) {
    std::mt19937_64 rng(2);
    const Tensor a = oracle::random_tensor({7, 3, 2}, rng);
    const Tensor b = oracle::random_tensor({7, 3, 2}, rng);
    const Tensor scope = missing_scope(gen_bernoulli(a.shape(), 0.5, 3));
    EXPECT_NEAR(mae(a, b, scope), oracle::mae(a, b, scope), 1e-12);
    EXPECT_NEAR(rmse(a, b, scope), oracle::rmse(a, b, scope), 1e-12);
}

TEST(Metrics, MissingScopeIsComplement) {
    const SamplingMask m = gen_prediction({5, 2}, 2);
    const Tensor s = missing_scope(m);
    for (std::size_t i = 0; i < s.size(); ++i) EXPECT_EQ(s[i], 1.0 - m.mask[i]);
}

TEST(Noise, SigmaZeroIsIdentityAndSeeded) {
    std::mt19937_64 rng(3);
    const Tensor x = oracle::random_tensor({10, 10}, rng);
    EXPECT_EQ(add_noise(x, 0.0, 5), x);
    EXPECT_EQ(add_noise(x, 1.0, 5), add_noise(x, 1.0, 5));
    EXPECT_THROW(add_noise(x, -1.0, 5), DomainError);
}

TEST(Noise, SampleStdNearSigma) {
    const Tensor x({100, 20, 20});
    const Tensor n = add_noise(x, 1.0, 11);
    double s = 0.0, ss = 0.0;
    for (double v : n.data()) {
        s += v;
        ss += v * v;
    }
    const double cnt = static_cast<double>(n.size());
    const double sd = std::sqrt(ss / cnt - (s / cnt) * (s / cnt));
    EXPECT_NEAR(sd, 1.0, 0.03);
}

TEST(Seeds, DerivedSeedsDiffer) {
    EXPECT_NE(derive_seed(1, 0, 0), derive_seed(1, 1, 0));
    EXPECT_NE(derive_seed(1, 0, 1), derive_seed(1, 1, 0));
    EXPECT_EQ(derive_seed(9, 2, 3), derive_seed(9, 2, 3));
}

TEST(Phase, StandardPresetGrid) {
    const PhaseGridSpec p = PhaseGridSpec::standard_preset();
    EXPECT_EQ(p.t, 21u);
    EXPECT_EQ(p.n, 21u);
    EXPECT_EQ(p.trials, 50u);
    EXPECT_EQ(p.success_rmse, 0.01);
    ASSERT_EQ(p.rank_values.size(), 10u);
    EXPECT_EQ(p.rank_values.front(), 2u);
    EXPECT_EQ(p.rank_values.back(), 20u);
    ASSERT_EQ(p.rho_values.size(), 20u);
    EXPECT_DOUBLE_EQ(p.rho_values.front(), 1.0 / 21);
    EXPECT_DOUBLE_EQ(p.rho_values.back(), 20.0 / 21);
}

TEST(Phase, SmallGridIsReproducibleAndJobIndependent) {
    PhaseGridSpec p;
    p.t = 8;
    p.n = 3;
    p.rank_values = {2, 4};
    p.rho_values = {3.0 / 8, 7.0 / 8};
    p.trials = 2;
    p.seed = 4;
    SolverConfig cfg;
    cfg.max_iters = 150;
    const PhaseResult a = run_phase_transition(p, cfg, 1);
    const PhaseResult b = run_phase_transition(p, cfg, 3);
    EXPECT_EQ(a.success, b.success);
    ASSERT_EQ(a.trials.size(), 8u);
    for (std::size_t i = 0; i < a.trials.size(); ++i) {
        EXPECT_EQ(a.trials[i].seed, b.trials[i].seed);
        EXPECT_EQ(a.trials[i].rmse, b.trials[i].rmse);
    }
    ASSERT_EQ(a.cells.size(), 4u);
    for (const CellRecord& c : a.cells) EXPECT_EQ(c.success, c.mean_rmse < p.success_rmse);

    std::ostringstream csv;
    write_grid_csv(csv, a);
    EXPECT_FALSE(csv.str().empty());
    EXPECT_NE(phase_records_json(a).find("\"trials\""), std::string::npos);
}

TEST(Phase, BoundaryFlips) {
    EXPECT_EQ(boundary_flips({{0, 0, 1, 1}, {0, 1, 0, 1}, {1, 1, 1, 1}}), (std::vector<std::size_t>{1, 3, 0}));
}

TEST(Bench, SingleSizeGivesOneRow) {
    const auto rows = run_scaling_bench({6}, 1, 2);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0].a, 6u);
    EXPECT_GT(rows[0].seconds_per_iter, 0.0);
    std::ostringstream csv;
    write_bench_csv(csv, rows);
    EXPECT_NE(csv.str().find("6,"), std::string::npos);
    EXPECT_THROW(bench_growth_exponent(rows), DomainError);
    EXPECT_THROW(run_scaling_bench({8, 6}, 1), DomainError);
}

TEST(Bench, GrowthExponentOfExactPowerLaw) {
    std::vector<BenchRow> rows;
    for (std::size_t a : {10u, 20u, 40u}) rows.push_back({a, 1e-6 * std::pow(static_cast<double>(a), 4.0), {}});
    EXPECT_NEAR(bench_growth_exponent(rows), 4.0, 1e-12);
}
