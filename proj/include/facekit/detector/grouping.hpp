// Copyright (C) 2026 facekit authors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <span>
#include <tuple>
#include <vector>

#include "facekit/imaging/image.hpp"

namespace facekit {

struct Detection {
    Rect box;
    int neighbors = 0;

    friend bool operator==(const Detection&, const Detection&) = default;
};

/// Canonical detection order: (y, x, h, w) ascending.
inline bool canonical_less(const Rect& a, const Rect& b) noexcept {
    return std::tie(a.y, a.x, a.h, a.w) < std::tie(b.y, b.x, b.h, b.w);
}

/// Two raw windows belong to the same face when every coordinate differs by
/// at most 0.2 * (min(w1, w2) + min(h1, h2)) / 2.
inline bool similar_rects(const Rect& a, const Rect& b) noexcept {
    const double delta = 0.2 * (std::min(a.w, b.w) + std::min(a.h, b.h)) / 2.0;
    return std::abs(a.x - b.x) <= delta && std::abs(a.y - b.y) <= delta &&
           std::abs(a.w - b.w) <= delta && std::abs(a.h - b.h) <= delta;
}

namespace detail {

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t i) noexcept {
        while (parent_[i] != i) {
            parent_[i] = parent_[parent_[i]];
            i = parent_[i];
        }
        return i;
    }

    void unite(std::size_t a, std::size_t b) noexcept {
        a = find(a);
        b = find(b);
        if (a != b) parent_[std::max(a, b)] = std::min(a, b);
    }

private:
    std::vector<std::size_t> parent_;
};

// round(sum / count) half-up, exact for non-negative sums.
inline int rounded_mean(std::int64_t sum, std::int64_t count) noexcept {
    return static_cast<int>((2 * sum + count) / (2 * count));
}

}  // namespace detail

/// Clusters raw detections (transitive closure of similar_rects), keeps
/// clusters with at least max(1, min_neighbors) members as their rounded mean
/// rect, then drops any kept rect lying inside another kept rect that has at
/// least as many neighbors. Output is in canonical order.
inline std::vector<Detection> group_rectangles(std::span<const Rect> raw, int min_neighbors) {
    const std::size_t n = raw.size();
    detail::DisjointSets sets(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (similar_rects(raw[i], raw[j])) sets.unite(i, j);
        }
    }

    struct Accum {
        std::int64_t x = 0, y = 0, w = 0, h = 0, count = 0;
    };
    std::vector<Accum> clusters(n);
    for (std::size_t i = 0; i < n; ++i) {
        Accum& a = clusters[sets.find(i)];
        a.x += raw[i].x;
        a.y += raw[i].y;
        a.w += raw[i].w;
        a.h += raw[i].h;
        ++a.count;
    }

    const std::int64_t needed = std::max(1, min_neighbors);
    std::vector<Detection> kept;
    for (const Accum& a : clusters) {
        if (a.count < needed) continue;
        kept.push_back({Rect{detail::rounded_mean(a.x, a.count), detail::rounded_mean(a.y, a.count),
                             detail::rounded_mean(a.w, a.count), detail::rounded_mean(a.h, a.count)},
                        static_cast<int>(a.count)});
    }
    std::sort(kept.begin(), kept.end(), [](const Detection& a, const Detection& b) {
        if (a.box == b.box) return a.neighbors > b.neighbors;
        return canonical_less(a.box, b.box);
    });

    std::vector<Detection> out;
    for (std::size_t i = 0; i < kept.size(); ++i) {
        bool inside = false;
        for (std::size_t j = 0; j < kept.size() && !inside; ++j) {
            if (i == j || kept[j].neighbors < kept[i].neighbors) continue;
            if (!kept[j].box.contains(kept[i].box)) continue;
            // Of two identical boxes with equal support, the first survives.
            inside = kept[j].box != kept[i].box || kept[j].neighbors > kept[i].neighbors || j < i;
        }
        if (!inside) out.push_back(kept[i]);
    }
    return out;
}

}  // namespace facekit
