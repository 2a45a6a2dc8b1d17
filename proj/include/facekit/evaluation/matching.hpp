// Copyright (C) 2026 facekit authors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <algorithm>
#include <span>
#include <tuple>
#include <utility>
#include <vector>

#include "facekit/detector/grouping.hpp"
#include "facekit/imaging/image.hpp"

namespace facekit {

inline constexpr double kDefaultIouMin = 0.5;

/// Intersection over union; 0 when the union is empty.
inline double iou(const Rect& a, const Rect& b) noexcept {
    const std::int64_t ix = std::max(0, std::min(a.right(), b.right()) - std::max(a.x, b.x));
    const std::int64_t iy = std::max(0, std::min(a.bottom(), b.bottom()) - std::max(a.y, b.y));
    const std::int64_t inter = ix * iy;
    const std::int64_t uni = a.area() + b.area() - inter;
    return uni > 0 ? static_cast<double>(inter) / static_cast<double>(uni) : 0.0;
}

struct BoxMatching {
    std::vector<std::pair<std::size_t, std::size_t>> matched;  // (prediction, truth)
    std::vector<std::size_t> unmatched_predictions;              // false positives
    std::vector<std::size_t> unmatched_truths;                   // false negatives
};

/// Greedy one-to-one matching: candidate pairs with IoU >= iou_min (and a
/// non-empty overlap) are taken in descending IoU order, skipping pairs whose
/// prediction or truth is already used. Equal-IoU pairs are ordered by their
/// boxes, independent of which list they came from, so swapping the two
/// inputs swaps FP and FN exactly.
inline BoxMatching match_detections(std::span<const Rect> pred, std::span<const Rect> truth,
                                    double iou_min = kDefaultIouMin) {
    struct Candidate {
        double overlap;
        Rect lo, hi;
        std::size_t p, t;
    };
    std::vector<Candidate> candidates;
    for (std::size_t p = 0; p < pred.size(); ++p) {
        for (std::size_t t = 0; t < truth.size(); ++t) {
            const double o = iou(pred[p], truth[t]);
            if (o > 0.0 && o >= iou_min) {
                const bool pred_first = !canonical_less(truth[t], pred[p]);
                candidates.push_back({o, pred_first ? pred[p] : truth[t], pred_first ? truth[t] : pred[p], p, t});
            }
        }
    }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        if (a.overlap != b.overlap) return a.overlap > b.overlap;
        if (a.lo != b.lo) return canonical_less(a.lo, b.lo);
        if (a.hi != b.hi) return canonical_less(a.hi, b.hi);
        return std::tie(a.p, a.t) < std::tie(b.p, b.t);
    });

    std::vector<bool> pred_used(pred.size(), false);
    std::vector<bool> truth_used(truth.size(), false);
    BoxMatching m;
    for (const auto& c : candidates) {
        if (pred_used[c.p] || truth_used[c.t]) continue;
        pred_used[c.p] = true;
        truth_used[c.t] = true;
        m.matched.emplace_back(c.p, c.t);
    }
    std::sort(m.matched.begin(), m.matched.end());
    for (std::size_t p = 0; p < pred.size(); ++p) {
        if (!pred_used[p]) m.unmatched_predictions.push_back(p);
    }
    for (std::size_t t = 0; t < truth.size(); ++t) {
        if (!truth_used[t]) m.unmatched_truths.push_back(t);
    }
    return m;
}

}  // namespace facekit
