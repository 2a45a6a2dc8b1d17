// Copyright (C) 2026 facekit authors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "facekit/encoder/encoding.hpp"
#include "facekit/error.hpp"

namespace facekit {

inline constexpr double kDefaultMatchThreshold = 0.6;
inline constexpr std::size_t kMaxLabelBytes = 255;

/// Euclidean distance between two encodings.
inline double euclidean_distance(const Encoding& a, const Encoding& b) noexcept {
    double s = 0.0;
    for (std::size_t i = 0; i < kEncodingSize; ++i) {
        const double d = b.values[i] - a.values[i];
        s += d * d;
    }
    return std::sqrt(s);
}

/// Empty string when `label` is acceptable, otherwise the reason it is not:
/// labels are 1..255 bytes of well-formed UTF-8 without control characters.
inline std::string label_problem(std::string_view label) {
    if (label.empty()) return "label is empty";
    if (label.size() > kMaxLabelBytes) return "label exceeds 255 bytes";
    std::size_t i = 0;
    while (i < label.size()) {
        const auto c = static_cast<unsigned char>(label[i]);
        std::size_t len = 0;
        std::uint32_t cp = 0;
        if (c < 0x80) {
            len = 1;
            cp = c;
        } else if ((c & 0xE0) == 0xC0) {
            len = 2;
            cp = c & 0x1F;
        } else if ((c & 0xF0) == 0xE0) {
            len = 3;
            cp = c & 0x0F;
        } else if ((c & 0xF8) == 0xF0) {
            len = 4;
            cp = c & 0x07;
        } else {
            return "label is not valid UTF-8";
        }
        if (i + len > label.size()) return "label is not valid UTF-8";
        for (std::size_t k = 1; k < len; ++k) {
            const auto cc = static_cast<unsigned char>(label[i + k]);
            if ((cc & 0xC0) != 0x80) return "label is not valid UTF-8";
            cp = (cp << 6) | (cc & 0x3F);
        }
        const bool overlong = (len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000);
        if (overlong || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return "label is not valid UTF-8";
        if (cp < 0x20 || (cp >= 0x7F && cp <= 0x9F)) return "label contains a control character";
        i += len;
    }
    return {};
}

struct GalleryEntry {
    std::string label;
    Encoding encoding;

    friend bool operator==(const GalleryEntry&, const GalleryEntry&) = default;
};

/// Ordered, immutable collection of labeled encodings. Several entries may
/// share a label (multiple exemplars of one person).
class Gallery {
public:
    Gallery() = default;

    const std::vector<GalleryEntry>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }

    /// Number of distinct labels.
    std::size_t distinct_labels() const {
        std::set<std::string_view> labels;
        for (const auto& e : entries_) labels.insert(e.label);
        return labels.size();
    }

    friend bool operator==(const Gallery&, const Gallery&) = default;

    /// Builds a gallery from entries, validating each label and encoding.
    static Gallery from_entries(std::vector<GalleryEntry> entries) {
        for (std::size_t i = 0; i < entries.size(); ++i) check_entry(entries[i], i);
        Gallery g;
        g.entries_ = std::move(entries);
        return g;
    }

    static void check_entry(const GalleryEntry& e, std::size_t index) {
        const std::string where = "entry " + std::to_string(index) + ": ";
        if (auto problem = label_problem(e.label); !problem.empty()) {
            throw Error(ErrorCode::InvalidLabel, where + problem);
        }
        if (!is_valid_encoding(e.encoding)) {
            throw Error(ErrorCode::InvalidEncoding, where + "encoding must be unit length or all zero");
        }
    }

private:
    std::vector<GalleryEntry> entries_;
};

/// Returns `g` with one more entry appended.
inline Gallery enroll(const Gallery& g, std::string label, const Encoding& encoding) {
    auto entries = g.entries();
    entries.push_back({std::move(label), encoding});
    return Gallery::from_entries(std::move(entries));
}

struct MatchResult {
    std::optional<std::string> label;  // nullopt: unknown face
    double distance = std::numeric_limits<double>::infinity();
    std::size_t entry = 0;  // index of the nearest entry

    friend bool operator==(const MatchResult&, const MatchResult&) = default;
};

/// Nearest-entry identification. The nearest entry's label is reported when
/// its distance is <= threshold; distance ties go to the lexicographically
/// smallest label, then the lowest index.
inline MatchResult match_probe(const Gallery& g, const Encoding& probe, double threshold) {
    if (g.empty()) throw Error(ErrorCode::EmptyGallery, "gallery has no entries");
    if (!(threshold >= 0.0)) throw Error(ErrorCode::InvalidArgument, "threshold must be >= 0");

    const auto& entries = g.entries();
    std::size_t best = 0;
    double best_d = euclidean_distance(entries[0].encoding, probe);
    for (std::size_t i = 1; i < entries.size(); ++i) {
        const double d = euclidean_distance(entries[i].encoding, probe);
        if (d < best_d || (d == best_d && entries[i].label < entries[best].label)) {
            best = i;
            best_d = d;
        }
    }
    MatchResult r;
    r.distance = best_d;
    r.entry = best;
    if (best_d <= threshold) r.label = entries[best].label;
    return r;
}

}  // namespace facekit
