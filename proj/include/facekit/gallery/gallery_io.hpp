// Copyright (C) 2026 facekit authors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <bit>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "facekit/gallery/gallery.hpp"
#include "facekit/io.hpp"

namespace facekit {

// FGAL layout, all integers little-endian:
//   "FGAL" | u16 version (1) | u32 entry count
//   per entry: u8 label length | label bytes | 128 x f64 (IEEE-754 bits, LE)
// A header is 10 bytes; an entry with an L-byte label is 1 + L + 1024 bytes.
inline constexpr std::uint16_t kGalleryVersion = 1;
inline constexpr std::size_t kGalleryHeaderBytes = 10;

namespace detail {

inline void put_le(std::vector<std::uint8_t>& out, std::uint64_t v, int bytes) {
    for (int i = 0; i < bytes; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

class LeReader {
public:
    explicit LeReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    bool has(std::size_t n) const noexcept { return bytes_.size() - pos_ >= n; }
    std::size_t remaining() const noexcept { return bytes_.size() - pos_; }

    std::uint64_t get(int n) noexcept {
        std::uint64_t v = 0;
        for (int i = 0; i < n; ++i) v |= std::uint64_t{bytes_[pos_ + static_cast<std::size_t>(i)]} << (8 * i);
        pos_ += static_cast<std::size_t>(n);
        return v;
    }

    std::string text(std::size_t n) {
        std::string s(reinterpret_cast<const char*>(bytes_.data() + pos_), n);
        pos_ += n;
        return s;
    }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline std::vector<std::uint8_t> save_gallery(const Gallery& g) {
    std::vector<std::uint8_t> out{'F', 'G', 'A', 'L'};
    detail::put_le(out, kGalleryVersion, 2);
    detail::put_le(out, g.size(), 4);
    for (const auto& e : g.entries()) {
        detail::put_le(out, e.label.size(), 1);
        out.insert(out.end(), e.label.begin(), e.label.end());
        for (double v : e.encoding.values) detail::put_le(out, std::bit_cast<std::uint64_t>(v), 8);
    }
    return out;
}

inline Gallery load_gallery(std::span<const std::uint8_t> bytes) {
    detail::LeReader in(bytes);
    if (!in.has(4) || in.text(4) != "FGAL") throw Error(ErrorCode::BadMagic, "not an FGAL gallery");
    if (!in.has(6)) throw Error(ErrorCode::TruncatedEntry, "header is truncated");
    const auto version = in.get(2);
    if (version != kGalleryVersion) {
        throw Error(ErrorCode::UnsupportedVersion, "gallery version " + std::to_string(version));
    }
    const auto count = in.get(4);

    std::vector<GalleryEntry> entries;
    for (std::uint64_t i = 0; i < count; ++i) {
        const std::string where = "entry " + std::to_string(i);
        if (!in.has(1)) throw Error(ErrorCode::TruncatedEntry, where + ": missing label length");
        const auto len = static_cast<std::size_t>(in.get(1));
        if (!in.has(len + 8 * kEncodingSize)) throw Error(ErrorCode::TruncatedEntry, where + " is truncated");
        GalleryEntry entry{in.text(len), {}};
        for (double& v : entry.encoding.values) v = std::bit_cast<double>(in.get(8));
        Gallery::check_entry(entry, entries.size());
        entries.push_back(std::move(entry));
    }
    if (in.remaining() != 0) {
        throw Error(ErrorCode::TrailingData, std::to_string(in.remaining()) + " bytes after last entry");
    }
    return Gallery::from_entries(std::move(entries));
}

inline Gallery load_gallery_file(const std::filesystem::path& path) { return load_gallery(read_file(path)); }

inline void save_gallery_file(const std::filesystem::path& path, const Gallery& g) {
    write_file_atomic(path, save_gallery(g));
}

}  // namespace facekit
