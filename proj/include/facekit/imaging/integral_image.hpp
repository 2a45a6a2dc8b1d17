// Copyright (C) 2026 facekit authors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <vector>

#include "facekit/imaging/image.hpp"

namespace facekit {

/// Summed-area tables of a GrayImage: plain and squared prefix sums, each
/// (width + 1) x (height + 1) with a zero first row and column.
class IntegralImage {
public:
    IntegralImage() = default;

    explicit IntegralImage(const GrayImage& img)
        : width_(img.width()), height_(img.height()) {
        const std::size_t stride = static_cast<std::size_t>(width_) + 1;
        sum_.assign(stride * (static_cast<std::size_t>(height_) + 1), 0);
        sqsum_.assign(sum_.size(), 0);
        for (int y = 0; y < height_; ++y) {
            std::uint64_t row = 0;
            std::uint64_t row_sq = 0;
            const std::size_t above = static_cast<std::size_t>(y) * stride;
            const std::size_t here = above + stride;
            for (int x = 0; x < width_; ++x) {
                const std::uint64_t v = img.at(x, y);
                row += v;
                row_sq += v * v;
                sum_[here + x + 1] = sum_[above + x + 1] + row;
                sqsum_[here + x + 1] = sqsum_[above + x + 1] + row_sq;
            }
        }
    }

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }

    /// Table entry (x, y) = sum over [0, x) x [0, y).
    std::uint64_t sum_at(int x, int y) const noexcept { return sum_[index(x, y)]; }
    std::uint64_t sqsum_at(int x, int y) const noexcept { return sqsum_[index(x, y)]; }

    std::uint64_t rect_sum(const Rect& r) const {
        check(r);
        return rect_sum_unchecked(r);
    }
    std::uint64_t rect_sqsum(const Rect& r) const {
        check(r);
        return rect_sqsum_unchecked(r);
    }

    // Caller guarantees r lies within the image. Unsigned wraparound in the
    // intermediate terms cancels because the true result is non-negative.
    std::uint64_t rect_sum_unchecked(const Rect& r) const noexcept {
        return four_corner(sum_, r);
    }
    std::uint64_t rect_sqsum_unchecked(const Rect& r) const noexcept {
        return four_corner(sqsum_, r);
    }

private:
    std::size_t index(int x, int y) const noexcept {
        return static_cast<std::size_t>(y) * (static_cast<std::size_t>(width_) + 1) + x;
    }

    std::uint64_t four_corner(const std::vector<std::uint64_t>& t, const Rect& r) const noexcept {
        return t[index(r.right(), r.bottom())] - t[index(r.x, r.bottom())] -
               t[index(r.right(), r.y)] + t[index(r.x, r.y)];
    }

    void check(const Rect& r) const {
        if (!fits_within(r, width_, height_)) {
            throw Error(ErrorCode::RectOutOfBounds, "rect " + to_string(r) + " outside " +
                                                        std::to_string(width_) + "x" +
                                                        std::to_string(height_) + " image");
        }
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint64_t> sum_;
    std::vector<std::uint64_t> sqsum_;
};

inline IntegralImage integral(const GrayImage& img) { return IntegralImage(img); }

inline std::uint64_t rect_sum(const IntegralImage& ii, const Rect& r) { return ii.rect_sum(r); }
inline std::uint64_t rect_sqsum(const IntegralImage& ii, const Rect& r) { return ii.rect_sqsum(r); }

}  // namespace facekit
