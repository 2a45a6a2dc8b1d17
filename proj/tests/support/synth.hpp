// Copyright (C) 2026 facekit authors
// SPDX-License-Identifier: Apache-2.0
//

// Synthetic inputs shared by the unit and acceptance suites.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "facekit/facekit.hpp"

namespace facekit::testing {

using Rng = std::mt19937_64;

inline std::string toy_cascade_path() { return std::string(FACEKIT_DATA_DIR) + "/toy_cascade.xml"; }

inline std::string toy_cascade_text() { return read_text_file(toy_cascade_path()); }

inline CascadeModel toy_cascade() { return parse_cascade_xml(toy_cascade_text()); }

inline int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline double uniform_real(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline GrayImage random_gray(Rng& rng, int w, int h) {
    GrayImage img(w, h);
    for (auto& s : img.samples()) s = static_cast<std::uint8_t>(uniform_int(rng, 0, 255));
    return img;
}

inline RgbImage random_rgb(Rng& rng, int w, int h) {
    std::vector<std::uint8_t> samples(static_cast<std::size_t>(w) * h * 3);
    for (auto& s : samples) s = static_cast<std::uint8_t>(uniform_int(rng, 0, 255));
    return RgbImage(w, h, std::move(samples));
}

/// Any rect (possibly empty) inside a w x h raster.
inline Rect random_rect(Rng& rng, int w, int h) {
    const int x = uniform_int(rng, 0, w);
    const int y = uniform_int(rng, 0, h);
    return {x, y, uniform_int(rng, 0, w - x), uniform_int(rng, 0, h - y)};
}

// Rows of the 4x4 toy "face": dark left column, bright centre, mid right.
inline constexpr std::uint8_t kToyFaceRow[4] = {20, 120, 220, 160};
// Mirror image: bright left, dark right.
inline constexpr std::uint8_t kToyAntiRow[4] = {220, 160, 20, 120};

inline GrayImage toy_pattern(const std::uint8_t (&row)[4], int block = 1) {
    GrayImage img(4 * block, 4 * block);
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) img.at(x, y) = row[x / block];
    }
    return img;
}

/// Pastes `patch` into `img` with its top-left corner at (x, y).
inline void paste(GrayImage& img, const GrayImage& patch, int x, int y) {
    for (int j = 0; j < patch.height(); ++j) {
        for (int i = 0; i < patch.width(); ++i) img.at(x + i, y + j) = patch.at(i, j);
    }
}

/// Random valid cascade: every feature is zero-sum by construction (rect 0's
/// weight balances the others), thresholds and leaves are random.
inline CascadeModel random_cascade(Rng& rng, int base_w, int base_h, int n_stages, int n_features) {
    CascadeModel m;
    m.base_width = base_w;
    m.base_height = base_h;
    for (int k = 0; k < n_features; ++k) {
        HaarFeature f;
        const int n_rects = uniform_int(rng, 2, 3);
        double others = 0.0;
        Rect first;
        do {
            first = random_rect(rng, base_w, base_h);
        } while (first.area() == 0);
        f.rects.push_back({first, 0.0});
        for (int r = 1; r < n_rects; ++r) {
            Rect rr;
            do {
                rr = random_rect(rng, base_w, base_h);
            } while (rr.area() == 0);
            const double w = uniform_real(rng, -3.0, 3.0);
            f.rects.push_back({rr, w});
            others += w * static_cast<double>(rr.area());
        }
        f.rects[0].weight = -others / static_cast<double>(first.area());
        m.features.push_back(f);
    }
    for (int s = 0; s < n_stages; ++s) {
        Stage st;
        const int n_stumps = uniform_int(rng, 1, 5);
        for (int j = 0; j < n_stumps; ++j) {
            st.stumps.push_back({static_cast<std::size_t>(uniform_int(rng, 0, n_features - 1)),
                                 uniform_real(rng, -0.3, 0.3), uniform_real(rng, -1.0, 1.0),
                                 uniform_real(rng, -1.0, 1.0)});
        }
        st.stage_threshold = uniform_real(rng, -0.6, 0.4) * n_stumps;
        m.stages.push_back(st);
    }
    return m;
}

/// Smooth random texture: a sum of random oriented sinusoids and Gaussian
/// blobs, used as a stand-in "identity". Same seed, same texture.
inline GrayImage identity_texture(std::uint64_t seed, int w, int h) {
    Rng rng(seed);
    struct Wave {
        double fx, fy, phase, amp;
    };
    struct Blob {
        double cx, cy, sigma, amp;
    };
    std::vector<Wave> waves;
    for (int i = 0; i < 6; ++i) {
        waves.push_back({uniform_real(rng, -4.0, 4.0), uniform_real(rng, -4.0, 4.0), uniform_real(rng, 0, 6.283),
                         uniform_real(rng, 10.0, 30.0)});
    }
    std::vector<Blob> blobs;
    for (int i = 0; i < 5; ++i) {
        blobs.push_back({uniform_real(rng, 0.1, 0.9), uniform_real(rng, 0.1, 0.9), uniform_real(rng, 0.06, 0.2),
                         uniform_real(rng, -50.0, 50.0)});
    }
    GrayImage img(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double u = (x + 0.5) / w;
            const double v = (y + 0.5) / h;
            double val = 128.0;
            for (const auto& wv : waves) val += wv.amp * std::sin(6.283185307 * (wv.fx * u + wv.fy * v) + wv.phase);
            for (const auto& b : blobs) {
                const double d2 = (u - b.cx) * (u - b.cx) + (v - b.cy) * (v - b.cy);
                val += b.amp * std::exp(-d2 / (2 * b.sigma * b.sigma));
            }
            img.at(x, y) = clamp_sample(val);
        }
    }
    return img;
}

/// Adds zero-mean Gaussian noise with the given standard deviation.
inline GrayImage with_noise(const GrayImage& img, double sigma, std::uint64_t seed) {
    Rng rng(seed);
    std::normal_distribution<double> noise(0.0, sigma);
    GrayImage out = img;
    for (auto& s : out.samples()) s = clamp_sample(s + noise(rng));
    return out;
}

}  // namespace facekit::testing
