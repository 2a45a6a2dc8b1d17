// Copyright (C) 2026 facekit authors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "facekit/error.hpp"

namespace facekit {

/// Half-up rounding used for every real -> integer conversion in the toolkit.
inline std::int64_t round_half_up(double v) noexcept {
    return static_cast<std::int64_t>(std::floor(v + 0.5));
}

inline std::uint8_t clamp_sample(double v) noexcept {
    return static_cast<std::uint8_t>(std::clamp<std::int64_t>(round_half_up(v), 0, 255));
}

struct Rect {
    int x = 0;
    int y = 0;
    int w = 0;
    int h = 0;

    std::int64_t area() const noexcept { return std::int64_t{w} * h; }
    int right() const noexcept { return x + w; }
    int bottom() const noexcept { return y + h; }

    bool contains(const Rect& o) const noexcept {
        return o.x >= x && o.y >= y && o.right() <= right() && o.bottom() <= bottom();
    }

    friend bool operator==(const Rect&, const Rect&) = default;
};

inline std::string to_string(const Rect& r) {
    return "(" + std::to_string(r.x) + "," + std::to_string(r.y) + "," + std::to_string(r.w) +
           "," + std::to_string(r.h) + ")";
}

/// True when r is a non-negative rectangle lying inside a width x height raster.
inline bool fits_within(const Rect& r, int width, int height) noexcept {
    return r.x >= 0 && r.y >= 0 && r.w >= 0 && r.h >= 0 && std::int64_t{r.x} + r.w <= width &&
           std::int64_t{r.y} + r.h <= height;
}

/// Row-major 8-bit luminance raster.
class GrayImage {
public:
    GrayImage() = default;

    GrayImage(int width, int height, std::uint8_t fill = 0)
        : width_(width), height_(height) {
        check_dims(width, height);
        samples_.assign(static_cast<std::size_t>(width) * height, fill);
    }

    GrayImage(int width, int height, std::vector<std::uint8_t> samples)
        : width_(width), height_(height), samples_(std::move(samples)) {
        check_dims(width, height);
        if (samples_.size() != static_cast<std::size_t>(width) * height) {
            throw Error(ErrorCode::BadDimensions, "sample count does not equal width*height");
        }
    }

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    bool empty() const noexcept { return samples_.empty(); }
    Rect bounds() const noexcept { return {0, 0, width_, height_}; }

    std::uint8_t at(int x, int y) const noexcept {
        return samples_[static_cast<std::size_t>(y) * width_ + x];
    }
    std::uint8_t& at(int x, int y) noexcept {
        return samples_[static_cast<std::size_t>(y) * width_ + x];
    }

    std::span<const std::uint8_t> samples() const noexcept { return samples_; }
    std::span<std::uint8_t> samples() noexcept { return samples_; }

    friend bool operator==(const GrayImage&, const GrayImage&) = default;

private:
    static void check_dims(int width, int height) {
        if (width < 1 || height < 1) {
            throw Error(ErrorCode::BadDimensions, "image dimensions must be >= 1, got " +
                                                      std::to_string(width) + "x" +
                                                      std::to_string(height));
        }
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> samples_;
};

struct Rgb {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// Row-major interleaved R,G,B raster.
class RgbImage {
public:
    RgbImage() = default;

    RgbImage(int width, int height, Rgb fill = {})
        : width_(width), height_(height) {
        check_dims(width, height);
        samples_.resize(static_cast<std::size_t>(width) * height * 3);
        for (std::size_t i = 0; i < samples_.size(); i += 3) {
            samples_[i] = fill.r;
            samples_[i + 1] = fill.g;
            samples_[i + 2] = fill.b;
        }
    }

    RgbImage(int width, int height, std::vector<std::uint8_t> samples)
        : width_(width), height_(height), samples_(std::move(samples)) {
        check_dims(width, height);
        if (samples_.size() != static_cast<std::size_t>(width) * height * 3) {
            throw Error(ErrorCode::BadDimensions, "sample count does not equal 3*width*height");
        }
    }

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    bool empty() const noexcept { return samples_.empty(); }
    Rect bounds() const noexcept { return {0, 0, width_, height_}; }

    Rgb at(int x, int y) const noexcept {
        const auto i = index(x, y);
        return {samples_[i], samples_[i + 1], samples_[i + 2]};
    }
    void set(int x, int y, Rgb c) noexcept {
        const auto i = index(x, y);
        samples_[i] = c.r;
        samples_[i + 1] = c.g;
        samples_[i + 2] = c.b;
    }

    std::span<const std::uint8_t> samples() const noexcept { return samples_; }

    friend bool operator==(const RgbImage&, const RgbImage&) = default;

private:
    std::size_t index(int x, int y) const noexcept {
        return (static_cast<std::size_t>(y) * width_ + x) * 3;
    }

    static void check_dims(int width, int height) {
        if (width < 1 || height < 1) {
            throw Error(ErrorCode::BadDimensions, "image dimensions must be >= 1");
        }
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> samples_;
};

/// BT.601 luma, round(0.299R + 0.587G + 0.114B) half-up, in exact integer arithmetic.
inline GrayImage to_gray(const RgbImage& img) {
    std::vector<std::uint8_t> out(static_cast<std::size_t>(img.width()) * img.height());
    const auto in = img.samples();
    for (std::size_t i = 0; i < out.size(); ++i) {
        const unsigned weighted = 299u * in[3 * i] + 587u * in[3 * i + 1] + 114u * in[3 * i + 2];
        out[i] = static_cast<std::uint8_t>(std::min(255u, (weighted + 500u) / 1000u));
    }
    return GrayImage(img.width(), img.height(), std::move(out));
}

inline RgbImage to_rgb(const GrayImage& img) {
    std::vector<std::uint8_t> out;
    out.reserve(img.samples().size() * 3);
    for (auto s : img.samples()) {
        out.insert(out.end(), {s, s, s});
    }
    return RgbImage(img.width(), img.height(), std::move(out));
}

inline GrayImage crop(const GrayImage& img, const Rect& r) {
    if (!fits_within(r, img.width(), img.height()) || r.w < 1 || r.h < 1) {
        throw Error(ErrorCode::RectOutOfBounds,
                    "crop rect " + to_string(r) + " outside " + std::to_string(img.width()) + "x" +
                        std::to_string(img.height()) + " image");
    }
    std::vector<std::uint8_t> out;
    out.reserve(static_cast<std::size_t>(r.area()));
    const auto src = img.samples();
    for (int y = r.y; y < r.bottom(); ++y) {
        const auto row = src.subspan(static_cast<std::size_t>(y) * img.width() + r.x, r.w);
        out.insert(out.end(), row.begin(), row.end());
    }
    return GrayImage(r.w, r.h, std::move(out));
}

/// Bilinear resampling with pixel-center alignment. Output (i, j) samples the
/// source at ((i + 0.5) * w / out_w - 0.5, (j + 0.5) * h / out_h - 0.5),
/// clamped to the valid coordinate range.
inline GrayImage resize_bilinear(const GrayImage& img, int out_w, int out_h) {
    if (out_w < 1 || out_h < 1) {
        throw Error(ErrorCode::BadDimensions, "resize target must be >= 1x1");
    }
    if (out_w == img.width() && out_h == img.height()) {
        return img;
    }

    struct Tap {
        int lo;
        int hi;
        double frac;
    };
    auto taps = [](int src, int dst) {
        std::vector<Tap> t(static_cast<std::size_t>(dst));
        const double ratio = static_cast<double>(src) / dst;
        for (int i = 0; i < dst; ++i) {
            const double pos = std::clamp((i + 0.5) * ratio - 0.5, 0.0, static_cast<double>(src - 1));
            const int lo = static_cast<int>(std::floor(pos));
            t[static_cast<std::size_t>(i)] = {lo, std::min(lo + 1, src - 1), pos - lo};
        }
        return t;
    };
    const auto tx = taps(img.width(), out_w);
    const auto ty = taps(img.height(), out_h);

    GrayImage out(out_w, out_h);
    for (int j = 0; j < out_h; ++j) {
        const Tap& vy = ty[static_cast<std::size_t>(j)];
        for (int i = 0; i < out_w; ++i) {
            const Tap& vx = tx[static_cast<std::size_t>(i)];
            const double top = img.at(vx.lo, vy.lo) + vx.frac * (img.at(vx.hi, vy.lo) - img.at(vx.lo, vy.lo));
            const double bot = img.at(vx.lo, vy.hi) + vx.frac * (img.at(vx.hi, vy.hi) - img.at(vx.lo, vy.hi));
            out.at(i, j) = clamp_sample(top + vy.frac * (bot - top));
        }
    }
    return out;
}

}  // namespace facekit
