// Copyright (C) 2026 facekit authors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "facekit/imaging/image.hpp"

namespace facekit {

using AnyImage = std::variant<GrayImage, RgbImage>;

enum class NetpbmEncoding { Binary, Ascii };

namespace detail {

class NetpbmReader {
public:
    explicit NetpbmReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    char magic() {
        if (bytes_.size() < 2 || bytes_[0] != 'P') {
            throw Error(ErrorCode::UnsupportedMagic, "missing Netpbm magic");
        }
        const char kind = static_cast<char>(bytes_[1]);
        if (kind != '2' && kind != '3' && kind != '5' && kind != '6') {
            throw Error(ErrorCode::UnsupportedMagic,
                        std::string("magic P") + kind + " is not one of P2, P3, P5, P6");
        }
        pos_ = 2;
        return kind;
    }

    // Header field: decimal digits preceded by whitespace and '#' comments.
    std::uint64_t header_number(const char* field) {
        skip_space_and_comments();
        if (pos_ >= bytes_.size()) {
            throw Error(ErrorCode::TruncatedPayload, std::string("header ends before ") + field);
        }
        std::uint64_t value = 0;
        std::size_t digits = 0;
        while (pos_ < bytes_.size() && is_digit(bytes_[pos_])) {
            if (value > 100'000'000) {
                throw Error(ErrorCode::NonNumericHeader, std::string(field) + " is too large");
            }
            value = value * 10 + (bytes_[pos_] - '0');
            ++pos_;
            ++digits;
        }
        if (digits == 0 || (pos_ < bytes_.size() && !is_space(bytes_[pos_]) && bytes_[pos_] != '#')) {
            throw Error(ErrorCode::NonNumericHeader, std::string(field) + " is not a decimal number");
        }
        return value;
    }

    // ASCII payload sample; comments are tolerated between samples.
    std::uint8_t ascii_sample() {
        skip_space_and_comments();
        if (pos_ >= bytes_.size()) {
            throw Error(ErrorCode::TruncatedPayload, "ASCII payload ends early");
        }
        unsigned value = 0;
        std::size_t digits = 0;
        while (pos_ < bytes_.size() && is_digit(bytes_[pos_])) {
            if (value > 255) break;
            value = value * 10 + (bytes_[pos_] - '0');
            ++pos_;
            ++digits;
        }
        if (digits == 0 || (pos_ < bytes_.size() && !is_space(bytes_[pos_]) && bytes_[pos_] != '#')) {
            throw Error(ErrorCode::TruncatedPayload, "non-numeric sample in ASCII payload");
        }
        if (value > 255) {
            throw Error(ErrorCode::SampleOutOfRange, "sample exceeds maxval 255");
        }
        return static_cast<std::uint8_t>(value);
    }

    // Binary payload begins after exactly one whitespace byte following maxval.
    std::span<const std::uint8_t> binary_payload(std::size_t count) {
        if (pos_ >= bytes_.size() || !is_space(bytes_[pos_])) {
            throw Error(ErrorCode::TruncatedPayload, "missing whitespace after maxval");
        }
        ++pos_;
        if (bytes_.size() - pos_ < count) {
            throw Error(ErrorCode::TruncatedPayload,
                        "payload has " + std::to_string(bytes_.size() - pos_) + " bytes, expected " +
                            std::to_string(count));
        }
        return bytes_.subspan(pos_, count);
    }

private:
    static bool is_digit(std::uint8_t c) noexcept { return c >= '0' && c <= '9'; }
    static bool is_space(std::uint8_t c) noexcept {
        return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
    }

    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            if (is_space(bytes_[pos_])) {
                ++pos_;
            } else if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
            } else {
                break;
            }
        }
    }

    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

inline void append_text(std::vector<std::uint8_t>& out, const std::string& s) {
    out.insert(out.end(), s.begin(), s.end());
}

inline std::vector<std::uint8_t> encode_netpbm(char magic, int width, int height,
                                               std::span<const std::uint8_t> samples) {
    std::vector<std::uint8_t> out;
    append_text(out, std::string("P") + magic + "\n" + std::to_string(width) + " " +
                         std::to_string(height) + "\n255\n");
    if (magic == '5' || magic == '6') {
        out.insert(out.end(), samples.begin(), samples.end());
        return out;
    }
    std::size_t line = 0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const std::string token = std::to_string(samples[i]);
        if (line > 0 && line + token.size() + 1 > 70) {
            out.push_back('\n');
            line = 0;
        } else if (line > 0) {
            out.push_back(' ');
            ++line;
        }
        append_text(out, token);
        line += token.size();
    }
    out.push_back('\n');
    return out;
}

}  // namespace detail

/// Decodes P2/P5 into a GrayImage and P3/P6 into an RgbImage. Only maxval 255
/// is accepted.
inline AnyImage load_netpbm(std::span<const std::uint8_t> bytes) {
    detail::NetpbmReader reader(bytes);
    const char kind = reader.magic();
    const auto width = reader.header_number("width");
    const auto height = reader.header_number("height");
    const auto maxval = reader.header_number("maxval");
    if (width < 1 || height < 1 || width * height > (1ull << 28)) {
        throw Error(ErrorCode::BadDimensions, "unsupported image size " + std::to_string(width) +
                                                  "x" + std::to_string(height));
    }
    if (maxval != 255) {
        throw Error(ErrorCode::MaxvalOutOfRange, "maxval " + std::to_string(maxval) + " != 255");
    }

    const std::size_t channels = (kind == '3' || kind == '6') ? 3 : 1;
    const std::size_t count = static_cast<std::size_t>(width * height) * channels;
    std::vector<std::uint8_t> samples;
    if (kind == '5' || kind == '6') {
        const auto payload = reader.binary_payload(count);
        samples.assign(payload.begin(), payload.end());
    } else {
        samples.resize(count);
        for (auto& s : samples) s = reader.ascii_sample();
    }

    const int w = static_cast<int>(width);
    const int h = static_cast<int>(height);
    if (channels == 3) return RgbImage(w, h, std::move(samples));
    return GrayImage(w, h, std::move(samples));
}

/// Loads any supported Netpbm image and converts color input to luma.
inline GrayImage load_netpbm_gray(std::span<const std::uint8_t> bytes) {
    auto img = load_netpbm(bytes);
    if (auto* rgb = std::get_if<RgbImage>(&img)) return to_gray(*rgb);
    return std::get<GrayImage>(std::move(img));
}

inline std::vector<std::uint8_t> save_netpbm(const GrayImage& img,
                                             NetpbmEncoding enc = NetpbmEncoding::Binary) {
    return detail::encode_netpbm(enc == NetpbmEncoding::Binary ? '5' : '2', img.width(),
                                 img.height(), img.samples());
}

inline std::vector<std::uint8_t> save_netpbm(const RgbImage& img,
                                             NetpbmEncoding enc = NetpbmEncoding::Binary) {
    return detail::encode_netpbm(enc == NetpbmEncoding::Binary ? '6' : '3', img.width(),
                                 img.height(), img.samples());
}

}  // namespace facekit
