// Copyright (C) 2026 facekit authors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace facekit {

inline constexpr std::size_t kEncodingSize = 128;

/// 128-component face descriptor. Valid encodings are unit length, or all
/// zero for a featureless (constant) crop.
struct Encoding {
    std::array<double, kEncodingSize> values{};

    double norm() const noexcept {
        double s = 0.0;
        for (double v : values) s += v * v;
        return std::sqrt(s);
    }

    bool is_zero() const noexcept {
        for (double v : values) {
            if (v != 0.0) return false;
        }
        return true;
    }

    friend bool operator==(const Encoding&, const Encoding&) = default;
};

inline constexpr double kUnitNormTolerance = 1e-9;

inline bool is_valid_encoding(const Encoding& e) noexcept {
    for (double v : e.values) {
        if (!std::isfinite(v)) return false;
    }
    return e.is_zero() || std::abs(e.norm() - 1.0) <= kUnitNormTolerance;
}

}  // namespace facekit
