// Copyright (C) 2026 facekit authors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "facekit/cascade/cascade_model.hpp"
#include "facekit/imaging/integral_image.hpp"

namespace facekit {

struct ScaledRect {
    Rect rect;
    double weight = 0.0;
};

struct ScaledFeature {
    std::array<ScaledRect, 3> rects{};
    std::size_t count = 0;
};

/// A cascade with every feature rectangle mapped to one detection scale.
///
/// Coordinates are rounded half-up and clipped to the scaled window. Rounding
/// breaks the zero-sum property, so the weight of rect 0 is recomputed from
/// the rounded areas of the others; weights of rects 1.. are kept.
class ScaledCascade {
public:
    ScaledCascade(const CascadeModel& model, double scale)
        : model_(&model),
          scale_(scale),
          window_w_(static_cast<int>(round_half_up(model.base_width * scale))),
          window_h_(static_cast<int>(round_half_up(model.base_height * scale))) {
        features_.reserve(model.features.size());
        for (const auto& f : model.features) {
            ScaledFeature sf;
            sf.count = std::min<std::size_t>(f.rects.size(), 3);
            double others = 0.0;
            for (std::size_t i = 0; i < sf.count; ++i) {
                const Rect& r = f.rects[i].rect;
                Rect s{static_cast<int>(round_half_up(r.x * scale)),
                       static_cast<int>(round_half_up(r.y * scale)),
                       static_cast<int>(round_half_up(r.w * scale)),
                       static_cast<int>(round_half_up(r.h * scale))};
                s.x = std::min(s.x, window_w_);
                s.y = std::min(s.y, window_h_);
                s.w = std::min(s.w, window_w_ - s.x);
                s.h = std::min(s.h, window_h_ - s.y);
                sf.rects[i] = {s, f.rects[i].weight};
                if (i > 0) others += f.rects[i].weight * static_cast<double>(s.area());
            }
            if (sf.count > 0 && sf.rects[0].rect.area() > 0) {
                sf.rects[0].weight = -others / static_cast<double>(sf.rects[0].rect.area());
            }
            features_.push_back(sf);
        }
    }

    const CascadeModel& model() const noexcept { return *model_; }
    double scale() const noexcept { return scale_; }
    int window_width() const noexcept { return window_w_; }
    int window_height() const noexcept { return window_h_; }
    const std::vector<ScaledFeature>& features() const noexcept { return features_; }

private:
    const CascadeModel* model_;
    double scale_;
    int window_w_;
    int window_h_;
    std::vector<ScaledFeature> features_;
};

struct WindowResult {
    bool passed = false;
    // First failing stage on rejection; number of stages on a pass.
    std::size_t stage = 0;

    friend bool operator==(const WindowResult&, const WindowResult&) = default;
};

struct WindowTrace {
    WindowResult result;
    double mean = 0.0;
    double sigma = 1.0;
    // One entry per evaluated stage, ending with the rejecting stage if any.
    std::vector<double> stage_sums;
};

namespace detail {

template <typename OnStage>
WindowResult run_cascade(const ScaledCascade& sc, const IntegralImage& ii, int x, int y,
                         double& mean_out, double& sigma_out, OnStage&& on_stage) {
    const Rect window{x, y, sc.window_width(), sc.window_height()};
    const double area = static_cast<double>(window.area());
    const double mean = static_cast<double>(ii.rect_sum_unchecked(window)) / area;
    const double variance = static_cast<double>(ii.rect_sqsum_unchecked(window)) / area - mean * mean;
    const double sigma = variance > 0.0 ? std::sqrt(variance) : 1.0;
    mean_out = mean;
    sigma_out = sigma;

    const auto& model = sc.model();
    const auto& features = sc.features();
    for (std::size_t si = 0; si < model.stages.size(); ++si) {
        const Stage& stage = model.stages[si];
        double stage_sum = 0.0;
        for (const Stump& stump : stage.stumps) {
            const ScaledFeature& f = features[stump.feature_index];
            double weighted = 0.0;
            for (std::size_t r = 0; r < f.count; ++r) {
                const Rect& fr = f.rects[r].rect;
                weighted += f.rects[r].weight *
                            static_cast<double>(ii.rect_sum_unchecked({x + fr.x, y + fr.y, fr.w, fr.h}));
            }
            const double value = weighted / area;
            stage_sum += value < stump.threshold * sigma ? stump.left_leaf : stump.right_leaf;
        }
        on_stage(stage_sum);
        if (stage_sum < stage.stage_threshold) return {false, si};
    }
    return {true, model.stages.size()};
}

inline void check_window(const ScaledCascade& sc, const IntegralImage& ii, int x, int y) {
    const Rect window{x, y, sc.window_width(), sc.window_height()};
    if (window.w < 1 || window.h < 1 || !fits_within(window, ii.width(), ii.height())) {
        throw Error(ErrorCode::WindowOutOfBounds,
                    "window " + to_string(window) + " at scale " + std::to_string(sc.scale()) +
                        " does not fit " + std::to_string(ii.width()) + "x" +
                        std::to_string(ii.height()) + " image");
    }
}

}  // namespace detail

struct Origin {
    int x = 0;
    int y = 0;
};

/// Runs the cascade on one window. Hot-path overload: the caller has already
/// checked that the scaled window fits.
inline WindowResult evaluate_window_unchecked(const ScaledCascade& sc, const IntegralImage& ii,
                                              Origin origin) noexcept {
    double mean = 0.0;
    double sigma = 0.0;
    return detail::run_cascade(sc, ii, origin.x, origin.y, mean, sigma, [](double) {});
}

inline WindowResult evaluate_window(const ScaledCascade& sc, const IntegralImage& ii, Origin origin) {
    detail::check_window(sc, ii, origin.x, origin.y);
    return evaluate_window_unchecked(sc, ii, origin);
}

inline WindowResult evaluate_window(const CascadeModel& model, const IntegralImage& ii, Origin origin,
                                    double scale) {
    return evaluate_window(ScaledCascade(model, scale), ii, origin);
}

/// Same evaluation as evaluate_window, additionally reporting window
/// statistics and every stage sum computed before the decision.
inline WindowTrace evaluate_window_trace(const CascadeModel& model, const IntegralImage& ii,
                                         Origin origin, double scale) {
    const ScaledCascade sc(model, scale);
    detail::check_window(sc, ii, origin.x, origin.y);
    WindowTrace trace;
    trace.result = detail::run_cascade(sc, ii, origin.x, origin.y, trace.mean, trace.sigma,
                                       [&](double s) { trace.stage_sums.push_back(s); });
    return trace;
}

}  // namespace facekit
