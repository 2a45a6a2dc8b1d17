// Copyright (C) 2026 facekit authors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace facekit {

enum class ErrorCode {
    // imaging
    UnsupportedMagic,
    TruncatedPayload,
    MaxvalOutOfRange,
    NonNumericHeader,
    BadDimensions,
    SampleOutOfRange,
    RectOutOfBounds,
    // cascade model
    MalformedXml,
    UnsupportedFormat,
    InvariantViolation,
    // detector
    WindowOutOfBounds,
    ImageTooSmall,
    // encoder
    FaceTooSmall,
    // gallery
    EmptyGallery,
    InvalidLabel,
    InvalidEncoding,
    BadMagic,
    UnsupportedVersion,
    TruncatedEntry,
    TrailingData,
    // evaluation
    EmptyInput,
    UnknownLabelInTruth,
    SchemaViolation,
    // general
    InvalidArgument,
    IoFailure,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::UnsupportedMagic: return "UnsupportedMagic";
    case ErrorCode::TruncatedPayload: return "TruncatedPayload";
    case ErrorCode::MaxvalOutOfRange: return "MaxvalOutOfRange";
    case ErrorCode::NonNumericHeader: return "NonNumericHeader";
    case ErrorCode::BadDimensions: return "BadDimensions";
    case ErrorCode::SampleOutOfRange: return "SampleOutOfRange";
    case ErrorCode::RectOutOfBounds: return "RectOutOfBounds";
    case ErrorCode::MalformedXml: return "MalformedXml";
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::WindowOutOfBounds: return "WindowOutOfBounds";
    case ErrorCode::ImageTooSmall: return "ImageTooSmall";
    case ErrorCode::FaceTooSmall: return "FaceTooSmall";
    case ErrorCode::EmptyGallery: return "EmptyGallery";
    case ErrorCode::InvalidLabel: return "InvalidLabel";
    case ErrorCode::InvalidEncoding: return "InvalidEncoding";
    case ErrorCode::BadMagic: return "BadMagic";
    case ErrorCode::UnsupportedVersion: return "UnsupportedVersion";
    case ErrorCode::TruncatedEntry: return "TruncatedEntry";
    case ErrorCode::TrailingData: return "TrailingData";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::UnknownLabelInTruth: return "UnknownLabelInTruth";
    case ErrorCode::SchemaViolation: return "SchemaViolation";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoFailure: return "IoFailure";
    }
    return "Unknown";
}

/// Every recoverable failure in the library is reported as an Error carrying
/// a machine-readable code; what() is "<Code>: <detail>".
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail)
        : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace facekit
