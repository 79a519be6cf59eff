#include "oracles.hpp"

#include "tidt/error.hpp"
#include "tidt/hankel.hpp"
#include "tidt/tsvd.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace tidt;

TEST(Hankel, SmallVectorExample) {
    const Tensor h = hankel_forward(Tensor({3}, {1, 2, 3}), {2, Padding::None});
    const double s = 1.0 / std::sqrt(2.0);
    EXPECT_EQ(h.shape(), (Shape{3, 2}));
    const Tensor want({3, 2}, {1 * s, 2 * s, 2 * s, 3 * s, 3 * s, 1 * s});
    EXPECT_LT(distance(h, want), 1e-15);
    EXPECT_NEAR(h.frobenius_norm() * h.frobenius_norm(), 14.0, 1e-12);
}

TEST(Hankel, MatchesLoopDefinition) {
    std::mt19937_64 rng(1);
    for (const Shape& s : {Shape{5}, Shape{6, 3}, Shape{4, 2, 3}}) {
        const Tensor m = oracle::random_tensor(s, rng);
        for (std::size_t k : {1u, 2u, 4u}) {
            EXPECT_LT(distance(hankel_forward(m, {k, Padding::None}), oracle::hankel(m, k)), 1e-14);
        }
    }
}

TEST(Hankel, OrderGrowsByOneAndFacesAreHankel) {
    std::mt19937_64 rng(2);
    const Tensor m = oracle::random_tensor({7, 2, 3}, rng);
    const Tensor h = hankel_forward(m, {5, Padding::None});
    EXPECT_EQ(h.order(), m.order() + 1);
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 3; ++b)
            for (std::size_t i = 0; i < 7; ++i)
                for (std::size_t j = 1; j < 5; ++j)
                    EXPECT_EQ(h.at({i, j, a, b}), h.at({(i + 1) % 7, j - 1, a, b}));
}

TEST(Hankel, AdjointIdentity) {
    std::mt19937_64 rng(3);
    for (Padding p : {Padding::None, Padding::Symmetric}) {
        const Tensor m = oracle::random_tensor({6, 3}, rng);
        const HankelConfig cfg{4, p};
        const Tensor h = hankel_forward(m, cfg);
        const Tensor z = oracle::random_tensor(h.shape(), rng);
        const double lhs = inner(h, z);
        const double rhs = inner(m, hankel_inverse(z, cfg));
        if (p == Padding::None) EXPECT_NEAR(lhs, rhs, 1e-12);
        // averaging the mirrored halves halves the adjoint
        else EXPECT_NEAR(lhs, 2.0 * rhs, 1e-12);
        EXPECT_LT(distance(hankel_inverse(h, cfg), m), 1e-12);
    }
}

TEST(Hankel, IsometryWithoutPadding) {
    std::mt19937_64 rng(4);
    for (int rep = 0; rep < 20; ++rep) {
        const Tensor x = oracle::random_tensor({9, 2, 2}, rng);
        const Tensor y = oracle::random_tensor({9, 2, 2}, rng);
        const HankelConfig cfg{static_cast<std::size_t>(rep % 9 + 1), Padding::None};
        EXPECT_NEAR(distance(hankel_forward(x, cfg), hankel_forward(y, cfg)), distance(x, y), 1e-12);
    }
}

TEST(Hankel, SymmetricPadMirrorsTime) {
    const Tensor p = symmetric_pad(Tensor({3}, {1, 2, 3}));
    EXPECT_EQ(p, Tensor({6}, {1, 2, 3, 3, 2, 1}));
    EXPECT_EQ(symmetric_unpad(Tensor({4}, {1, 2, 4, 3})), Tensor({2}, {2, 3}));
}

TEST(Hankel, EffectiveK) {
    EXPECT_EQ(effective_k({0, Padding::None}, 10), 10u);
    EXPECT_EQ(effective_k({0, Padding::Symmetric}, 10), 20u);
    EXPECT_EQ(effective_k({15, Padding::Symmetric}, 10), 15u);
    EXPECT_THROW(effective_k({11, Padding::None}, 10), DomainError);
}

TEST(Hankel, UnscaledEmbeddingKeepsMasksBinary) {
    const Tensor h = hankel_embed_unscaled(Tensor({3}, {1, 0, 1}), {3, Padding::None});
    for (double v : h.data()) EXPECT_TRUE(v == 0.0 || v == 1.0);
}

TEST(Smoothness, Examples) {
    EXPECT_NEAR(smoothness(Tensor({4}, {1, 2, 3, 4})), std::sqrt(12.0), 1e-14);
    EXPECT_EQ(smoothness(Tensor({5, 2}, 3.0)), 0.0);
}

TEST(Periodicity, ExactPeriodGivesZero) {
    Tensor m({12});
    for (std::size_t i = 0; i < 12; ++i) m[i] = static_cast<double>(i % 4);
    EXPECT_EQ(periodicity(m, 4), 0.0);
    EXPECT_GT(periodicity(m, 3), 0.0);
}

TEST(RankError, Extremes) {
    std::mt19937_64 rng(5);
    const Tensor m = oracle::random_tensor({6, 2}, rng);
    const Tensor z = hankel_forward(m, {4, Padding::None});
    EXPECT_NEAR(rank_error(z, 0), z.frobenius_norm(), 1e-12);
    EXPECT_NEAR(rank_error(z, 4), 0.0, 1e-12);
    EXPECT_THROW(rank_error(z, 5), DomainError);
}

TEST(RankError, ConstantSignalIsRankOne) {
    const Tensor z = hankel_forward(Tensor({8, 3}, 2.5), {6, Padding::None});
    EXPECT_NEAR(rank_error(z, 1), 0.0, 1e-12);
    EXPECT_EQ(tsvd_rank(z), 1u);
}

TEST(Bounds, ConstantAndPeriodicSignals) {
    const BoundCheck c = check_smoothness_bound(Tensor({10}, 1.0), 5, 2);
    EXPECT_TRUE(c.holds);
    EXPECT_NEAR(c.lhs, 0.0, 1e-12);
    EXPECT_EQ(c.rhs, 0.0);

    Tensor m({12, 2});
    for (std::size_t i = 0; i < 12; ++i) {
        m.at({i, 0}) = std::sin(2.0 * std::numbers::pi * i / 3.0);
        m.at({i, 1}) = static_cast<double>(i % 3);
    }
    const BoundCheck p = check_periodicity_bound(m, 6, 3);
    EXPECT_TRUE(p.holds);
    EXPECT_NEAR(p.lhs, 0.0, 1e-10);
    EXPECT_NEAR(p.rhs, 0.0, 1e-12);
}

TEST(Bounds, RandomWalksSatisfySmoothnessBound) {
    std::mt19937_64 rng(6);
    std::normal_distribution<double> nd(0.0, 0.1);
    for (std::size_t r = 1; r <= 8; ++r) {
        Tensor m({64});
        double acc = 0.0;
        for (double& v : m.data()) v = acc += nd(rng);
        const BoundCheck b = check_smoothness_bound(m, 32, r);
        EXPECT_TRUE(b.holds) << "r=" << r;
        EXPECT_GE(b.slack(), -kBoundSlack);
    }
}

TEST(Bounds, RejectInvalidArguments) {
    const Tensor m({8}, 1.0);
    EXPECT_THROW(check_smoothness_bound(m, 4, 0), DomainError);
    EXPECT_THROW(check_periodicity_bound(m, 4, 0), DomainError);
    EXPECT_THROW(check_smoothness_bound(m, 9, 1), DomainError);
}

TEST(Padding, ParseNames) {
    EXPECT_EQ(parse_padding("none"), Padding::None);
    EXPECT_EQ(parse_padding("symmetric"), Padding::Symmetric);
    EXPECT_THROW(parse_padding("reflect"), DomainError);
}
