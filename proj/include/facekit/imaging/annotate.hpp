// Copyright (C) 2026 facekit authors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "facekit/imaging/font5x7.hpp"
#include "facekit/imaging/image.hpp"

namespace facekit {

struct Annotation {
    Rect box;
    std::optional<std::string> label;
};

struct AnnotateStyle {
    Rgb color{0, 255, 0};
    int thickness = 2;
};

/// Integer glyph magnification for a box: one step per 48 px of box width.
inline int label_scale(const Rect& box) noexcept { return std::max(1, box.w / 48); }

/// Top-left corner of the label text. Labels sit 2 px below the box; when they
/// would run off the bottom edge they move 2 px above it, if that fits.
inline std::pair<int, int> label_anchor(const Rect& box, int image_height) noexcept {
    const int text_h = kGlyphHeight * label_scale(box);
    const int below = box.bottom() + 2;
    if (below + text_h <= image_height) return {box.x, below};
    const int above = box.y - 2 - text_h;
    if (above >= 0) return {box.x, above};
    return {box.x, below};
}

namespace detail {

inline void draw_outline(RgbImage& img, const Rect& r, const AnnotateStyle& style) {
    const int t = style.thickness;
    for (int y = r.y; y < r.bottom(); ++y) {
        for (int x = r.x; x < r.right(); ++x) {
            const bool edge = x < r.x + t || x >= r.right() - t || y < r.y + t || y >= r.bottom() - t;
            if (edge) img.set(x, y, style.color);
        }
    }
}

inline void draw_text(RgbImage& img, int x0, int y0, int scale, const std::string& text, Rgb color) {
    int pen = x0;
    for (unsigned char c : text) {
        for (int col = 0; col < kGlyphWidth; ++col) {
            for (int row = 0; row < kGlyphHeight; ++row) {
                if (!glyph_pixel(c, col, row)) continue;
                for (int dy = 0; dy < scale; ++dy) {
                    for (int dx = 0; dx < scale; ++dx) {
                        const int x = pen + col * scale + dx;
                        const int y = y0 + row * scale + dy;
                        if (x >= 0 && y >= 0 && x < img.width() && y < img.height()) {
                            img.set(x, y, color);
                        }
                    }
                }
            }
        }
        pen += (kGlyphWidth + 1) * scale;
    }
}

}  // namespace detail

/// Draws box outlines (style.thickness px, inside each rect) and optional
/// labels in the embedded 5x7 font. Label pixels falling outside the image are
/// clipped.
inline RgbImage annotate(const RgbImage& img, const std::vector<Annotation>& boxes,
                         const AnnotateStyle& style = {}) {
    for (const auto& a : boxes) {
        if (!fits_within(a.box, img.width(), img.height())) {
            throw Error(ErrorCode::RectOutOfBounds, "annotation box " + to_string(a.box) +
                                                        " outside image");
        }
    }
    RgbImage out = img;
    for (const auto& a : boxes) {
        detail::draw_outline(out, a.box, style);
        if (a.label) {
            const auto [x, y] = label_anchor(a.box, out.height());
            detail::draw_text(out, x, y, label_scale(a.box), *a.label, style.color);
        }
    }
    return out;
}

}  // namespace facekit
