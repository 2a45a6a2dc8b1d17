// Copyright (C) 2026 facekit authors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "facekit/encoder/dct.hpp"
#include "facekit/encoder/encoding.hpp"
#include "facekit/imaging/image.hpp"

namespace facekit {

inline constexpr int kFaceBlockSize = 32;
inline constexpr int kMinFaceSide = 8;
inline constexpr double kMinContrast = 1e-6;

/// Crop, resample to 32x32 and standardize to zero mean and unit population
/// standard deviation. Returns nullopt for a crop whose std is below 1e-6.
inline std::optional<std::vector<double>> normalized_face_block(const GrayImage& img, const Rect& face) {
    if (!fits_within(face, img.width(), img.height())) {
        throw Error(ErrorCode::RectOutOfBounds, "face " + to_string(face) + " outside image");
    }
    if (face.w < kMinFaceSide || face.h < kMinFaceSide) {
        throw Error(ErrorCode::FaceTooSmall, "face " + to_string(face) + " is smaller than 8x8");
    }
    const GrayImage patch = resize_bilinear(crop(img, face), kFaceBlockSize, kFaceBlockSize);

    std::vector<double> block(patch.samples().begin(), patch.samples().end());
    const double count = static_cast<double>(block.size());
    double mean = 0.0;
    for (double v : block) mean += v;
    mean /= count;
    double var = 0.0;
    for (double v : block) var += (v - mean) * (v - mean);
    const double sd = std::sqrt(var / count);
    if (sd < kMinContrast) return std::nullopt;
    for (double& v : block) v = (v - mean) / sd;
    return block;
}

/// Transform stage of the encoder: 2-D DCT of a 32x32 block, the first 128 AC
/// coefficients in zig-zag order (DC skipped), scaled to unit length.
inline Encoding encode_block(std::span<const double> block) {
    static const Dct2d dct(kFaceBlockSize);
    static const std::vector<std::size_t> order = zigzag_order(kFaceBlockSize);

    const auto coeffs = dct(block);
    Encoding e;
    double sq = 0.0;
    for (std::size_t i = 0; i < kEncodingSize; ++i) {
        e.values[i] = coeffs[order[i + 1]];
        sq += e.values[i] * e.values[i];
    }
    if (sq == 0.0) return Encoding{};
    const double inv = 1.0 / std::sqrt(sq);
    for (double& v : e.values) v *= inv;
    return e;
}

/// Encodes the face at `face` into a 128-d descriptor. Constant crops map to
/// the all-zero encoding.
inline Encoding encode_face(const GrayImage& img, const Rect& face) {
    const auto block = normalized_face_block(img, face);
    if (!block) return Encoding{};
    return encode_block(*block);
}

}  // namespace facekit
