// Copyright (C) 2026 facekit authors
// SPDX-License-Identifier: Apache-2.0
//

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "support/oracles.hpp"
#include "support/synth.hpp"

namespace facekit {
namespace {

using testing::Rng;
using testing::uniform_int;
using testing::uniform_real;

std::vector<double> random_block(Rng& rng, std::size_t n) {
    std::vector<double> b(n * n);
    for (auto& v : b) v = uniform_real(rng, -100.0, 100.0);
    return b;
}

TEST(ZigZag, TwoByTwo) { EXPECT_EQ(zigzag_order(2), (std::vector<std::size_t>{0, 1, 2, 3})); }

TEST(ZigZag, ThreeByThree) {
    // (0,0),(0,1),(1,0),(2,0),(1,1),(0,2),(1,2),(2,1),(2,2) as row-major indices
    EXPECT_EQ(zigzag_order(3), (std::vector<std::size_t>{0, 1, 3, 6, 4, 2, 5, 7, 8}));
}

TEST(ZigZag, IsPermutationAndMatchesSortedOrder) {
    for (std::size_t n = 1; n <= 33; ++n) {
        auto order = zigzag_order(n);
        EXPECT_EQ(order, testing::sorted_zigzag(n)) << n;
        std::sort(order.begin(), order.end());
        std::vector<std::size_t> expected(n * n);
        std::iota(expected.begin(), expected.end(), 0);
        EXPECT_EQ(order, expected);
    }
}

TEST(ZigZag, JpegEightByEightPrefix) {
    const std::vector<std::size_t> jpeg{0, 1, 8, 16, 9, 2, 3, 10, 17, 24, 32, 25, 18, 11, 4, 5};
    const auto order = zigzag_order(8);
    EXPECT_TRUE(std::equal(jpeg.begin(), jpeg.end(), order.begin()));
    EXPECT_EQ(order.back(), 63u);
}

TEST(Dct, ConstantBlockHasOnlyDc) {
    for (std::size_t n : {1u, 4u, 8u, 32u}) {
        const std::vector<double> block(n * n, 7.5);
        const auto c = dct2d(block, n);
        EXPECT_NEAR(c[0], 7.5 * static_cast<double>(n), 1e-9);
        for (std::size_t i = 1; i < c.size(); ++i) EXPECT_NEAR(c[i], 0.0, 1e-9);
    }
}

TEST(Dct, Parseval) {
    Rng rng(9);
    for (int i = 0; i < 20; ++i) {
        const std::size_t n = static_cast<std::size_t>(uniform_int(rng, 1, 32));
        const auto block = random_block(rng, n);
        const auto c = dct2d(block, n);
        double e_in = 0.0, e_out = 0.0;
        for (double v : block) e_in += v * v;
        for (double v : c) e_out += v * v;
        EXPECT_NEAR(e_out, e_in, 1e-6 * e_in);
    }
}

TEST(Dct, MatchesLiteralDoubleSum) {
    Rng rng(10);
    for (std::size_t n : {1u, 2u, 3u, 8u, 8u, 8u, 16u, 32u}) {
        const auto block = random_block(rng, n);
        const auto fast = dct2d(block, n);
        const auto slow = testing::naive_dct2d(block, n);
        for (std::size_t i = 0; i < fast.size(); ++i) EXPECT_NEAR(fast[i], slow[i], 1e-9);
    }
}

TEST(Dct, RejectsBadSizes) {
    EXPECT_THROW((void)Dct2d(0), Error);
    const std::vector<double> wrong(5, 0.0);
    EXPECT_THROW((void)dct2d(wrong, 2), Error);
}

TEST(EncodeFace, ConstantCropGivesZeroEncoding) {
    const GrayImage img(40, 40, 200);
    const auto e = encode_face(img, {3, 4, 20, 30});
    EXPECT_TRUE(e.is_zero());
    EXPECT_TRUE(is_valid_encoding(e));
}

TEST(EncodeFace, NonConstantCropIsUnitNorm) {
    Rng rng(12);
    for (int i = 0; i < 50; ++i) {
        const auto img = testing::random_gray(rng, 70, 70);
        const int w = uniform_int(rng, 8, 70);
        const int h = uniform_int(rng, 8, 70);
        const auto e = encode_face(img, {uniform_int(rng, 0, 70 - w), uniform_int(rng, 0, 70 - h), w, h});
        EXPECT_NEAR(e.norm(), 1.0, 1e-9);
        EXPECT_TRUE(is_valid_encoding(e));
    }
}

TEST(EncodeFace, MatchesStraightLineOracle) {
    Rng rng(13);
    for (int i = 0; i < 10; ++i) {
        const auto img = testing::random_gray(rng, 80, 90);
        const Rect face{uniform_int(rng, 0, 30), uniform_int(rng, 0, 30), 50, 60};
        const auto got = encode_face(img, face);
        const auto want = testing::oracle_encode(img, face);
        for (std::size_t k = 0; k < kEncodingSize; ++k) EXPECT_NEAR(got.values[k], want.values[k], 1e-9) << k;
    }
    const auto smooth = testing::identity_texture(4, 64, 64);
    for (const Rect face : {Rect{0, 0, 64, 64}, Rect{5, 7, 32, 32}, Rect{10, 3, 9, 41}}) {
        const auto got = encode_face(smooth, face);
        const auto want = testing::oracle_encode(smooth, face);
        for (std::size_t k = 0; k < kEncodingSize; ++k) EXPECT_NEAR(got.values[k], want.values[k], 1e-9) << k;
    }
}

TEST(EncodeFace, Deterministic) {
    Rng rng(14);
    const auto img = testing::random_gray(rng, 60, 60);
    const Rect face{4, 6, 45, 37};
    EXPECT_EQ(encode_face(img, face), encode_face(img, face));
}

TEST(EncodeFace, AffineIntensityInvariance) {
    Rng rng(15);
    for (int trial = 0; trial < 10; ++trial) {
        // Even samples in [60, 112] keep a*I+b integral and inside [0,255]
        // for every (a, b) below; a 32x32 crop makes the resample exact.
        GrayImage img(40, 40);
        for (auto& s : img.samples()) s = static_cast<std::uint8_t>(2 * uniform_int(rng, 30, 56));
        const Rect face{uniform_int(rng, 0, 8), uniform_int(rng, 0, 8), 32, 32};
        const auto base = encode_face(img, face);
        for (double a : {0.5, 2.0}) {
            for (double b : {-30.0, 30.0}) {
                GrayImage t = img;
                for (auto& s : t.samples()) s = static_cast<std::uint8_t>(a * s + b);
                const auto e = encode_face(t, face);
                for (std::size_t k = 0; k < kEncodingSize; ++k) {
                    EXPECT_NEAR(e.values[k], base.values[k], 1e-6) << "a=" << a << " b=" << b;
                }
            }
        }
    }
}

TEST(EncodeFace, UniformOffsetAfterNormalizationIsIgnored) {
    Rng rng(16);
    const auto img = testing::random_gray(rng, 50, 50);
    const auto block = *normalized_face_block(img, {2, 3, 40, 44});
    const auto base = encode_block(block);
    for (double c : {-3.0, 0.25, 17.0}) {
        auto shifted = block;
        for (double& v : shifted) v += c;
        const auto e = encode_block(shifted);
        for (std::size_t k = 0; k < kEncodingSize; ++k) EXPECT_NEAR(e.values[k], base.values[k], 1e-9);
    }
}

TEST(EncodeFace, NormalizedBlockHasZeroMeanUnitStd) {
    Rng rng(17);
    const auto img = testing::random_gray(rng, 30, 30);
    const auto block = *normalized_face_block(img, {0, 0, 30, 30});
    ASSERT_EQ(block.size(), 1024u);
    double mean = 0.0, sq = 0.0;
    for (double v : block) mean += v;
    mean /= 1024.0;
    for (double v : block) sq += (v - mean) * (v - mean);
    EXPECT_NEAR(mean, 0.0, 1e-12);
    EXPECT_NEAR(std::sqrt(sq / 1024.0), 1.0, 1e-12);
}

TEST(EncodeFace, Errors) {
    const GrayImage img(20, 20, 1);
    try {
        (void)encode_face(img, {0, 0, 7, 12});
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::FaceTooSmall);
    }
    try {
        (void)encode_face(img, {15, 0, 8, 8});
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::RectOutOfBounds);
    }
    EXPECT_NO_THROW((void)encode_face(img, {12, 12, 8, 8}));
}

TEST(EncodeFace, DifferentTexturesAreFarApart) {
    const auto a = encode_face(testing::identity_texture(1, 48, 48), {0, 0, 48, 48});
    const auto b = encode_face(testing::identity_texture(2, 48, 48), {0, 0, 48, 48});
    const auto a_noisy = encode_face(testing::with_noise(testing::identity_texture(1, 48, 48), 2.0, 99), {0, 0, 48, 48});
    EXPECT_LT(euclidean_distance(a, a_noisy), 0.2);
    EXPECT_GT(euclidean_distance(a, b), 0.6);
}

}  // namespace
}  // namespace facekit
