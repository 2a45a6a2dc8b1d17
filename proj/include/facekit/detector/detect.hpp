// Copyright (C) 2026 facekit authors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <thread>
#include <vector>

#include "facekit/detector/grouping.hpp"
#include "facekit/detector/window.hpp"

namespace facekit {

struct ScanParams {
    double scale_factor = 1.1;
    // Scan step in base-window pixels; multiplied by the current scale.
    double stride_factor = 2.0;
    int min_neighbors = 3;
    std::optional<int> min_size;
    std::optional<int> max_size;
    // Worker threads over scales; 0 picks the hardware concurrency.
    unsigned threads = 1;
};

inline void check_scan_params(const ScanParams& p) {
    if (!(p.scale_factor > 1.0) || !std::isfinite(p.scale_factor)) {
        throw Error(ErrorCode::InvalidArgument, "scale_factor must be > 1");
    }
    if (!(p.stride_factor > 0.0) || !std::isfinite(p.stride_factor)) {
        throw Error(ErrorCode::InvalidArgument, "stride_factor must be > 0");
    }
    if (p.min_neighbors < 0) throw Error(ErrorCode::InvalidArgument, "min_neighbors must be >= 0");
    if ((p.min_size && *p.min_size < 1) || (p.max_size && *p.max_size < 1)) {
        throw Error(ErrorCode::InvalidArgument, "min_size and max_size must be >= 1");
    }
    if (p.min_size && p.max_size && *p.min_size > *p.max_size) {
        throw Error(ErrorCode::InvalidArgument, "min_size must not exceed max_size");
    }
}

/// Scales 1, f, f^2, ... for which the scaled window fits the image and the
/// optional size bounds.
inline std::vector<double> scan_scales(const CascadeModel& model, int image_w, int image_h,
                                       const ScanParams& p) {
    std::vector<double> scales;
    for (double s = 1.0;; s *= p.scale_factor) {
        const auto w = round_half_up(model.base_width * s);
        const auto h = round_half_up(model.base_height * s);
        if (w > image_w || h > image_h) break;
        if (p.max_size && (w > *p.max_size || h > *p.max_size)) break;
        if (p.min_size && (w < *p.min_size || h < *p.min_size)) continue;
        scales.push_back(s);
    }
    return scales;
}

inline int scan_stride(const ScanParams& p, double scale) noexcept {
    return static_cast<int>(std::max<std::int64_t>(1, round_half_up(p.stride_factor * scale)));
}

namespace detail {

inline std::vector<Rect> scan_one_scale(const CascadeModel& model, const IntegralImage& ii,
                                        double scale, int stride) {
    const ScaledCascade sc(model, scale);
    std::vector<Rect> hits;
    for (int y = 0; y + sc.window_height() <= ii.height(); y += stride) {
        for (int x = 0; x + sc.window_width() <= ii.width(); x += stride) {
            if (evaluate_window_unchecked(sc, ii, {x, y}).passed) {
                hits.push_back({x, y, sc.window_width(), sc.window_height()});
            }
        }
    }
    return hits;
}

}  // namespace detail

/// Every window accepted by the cascade over all scan scales, before grouping,
/// in canonical order. Scales may run on several threads; the result does not
/// depend on the thread count.
inline std::vector<Rect> scan_windows(const CascadeModel& model, const IntegralImage& ii,
                                      const ScanParams& p) {
    check_scan_params(p);
    const auto scales = scan_scales(model, ii.width(), ii.height(), p);
    std::vector<std::vector<Rect>> per_scale(scales.size());

    unsigned threads = p.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : p.threads;
    threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, scales.size())));
    auto work = [&](unsigned worker) {
        for (std::size_t i = worker; i < scales.size(); i += threads) {
            per_scale[i] = detail::scan_one_scale(model, ii, scales[i], scan_stride(p, scales[i]));
        }
    };
    if (threads <= 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    }

    std::vector<Rect> raw;
    for (auto& hits : per_scale) raw.insert(raw.end(), hits.begin(), hits.end());
    std::stable_sort(raw.begin(), raw.end(), canonical_less);
    return raw;
}

/// Multi-scale sliding-window detection with feature scaling over a single
/// integral image, followed by group_rectangles.
inline std::vector<Detection> detect_multiscale(const CascadeModel& model, const GrayImage& img,
                                                const ScanParams& p = {}) {
    check_scan_params(p);
    if (img.width() < model.base_width || img.height() < model.base_height) {
        throw Error(ErrorCode::ImageTooSmall,
                    std::to_string(img.width()) + "x" + std::to_string(img.height()) +
                        " image is smaller than the " + std::to_string(model.base_width) + "x" +
                        std::to_string(model.base_height) + " model window");
    }
    const IntegralImage ii(img);
    const auto raw = scan_windows(model, ii, p);
    return group_rectangles(raw, p.min_neighbors);
}

}  // namespace facekit
