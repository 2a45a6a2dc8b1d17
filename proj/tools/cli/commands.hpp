// Copyright (C) 2026 facekit authors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "facekit/detector/detect.hpp"
#include "facekit/gallery/gallery.hpp"

namespace facekit::cli {

// Process exit codes. Every failure path maps to exactly one of these.
enum ExitCode : int {
    kOk = 0,
    kBadFlags = 2,
    kBadInput = 3,
    kBadModel = 4,
    kNoFace = 5,
    kEmptyGallery = 6,
    kSchemaViolation = 7,
};

inline constexpr const char* kCascadeEnvVar = "FACE_CASCADE";

// Input quality warnings fire below these limits.
inline constexpr int kLowResolutionSide = 64;
inline constexpr double kNearConstantStd = 2.0;

enum class OutputFormat { Json, Table };

struct DetectConfig {
    std::string cascade;
    std::string image;
    std::string annotate;  // empty: no annotated output
    std::string output;    // empty: stdout
    ScanParams scan;
};

struct EnrollConfig {
    std::string gallery;
    std::string label;
    std::string image;
    std::optional<Rect> box;
    std::string cascade;  // needed only without box
    ScanParams scan;
};

struct EncodeConfig {
    std::string image;
    std::optional<Rect> box;
    std::string output;
};

struct RecognizeConfig {
    std::string cascade;
    std::string gallery;
    std::string image;
    double threshold = kDefaultMatchThreshold;
    std::string annotate;
    std::string output;
    ScanParams scan;
};

struct EvalConfig {
    std::vector<std::string> predictions;
    std::vector<std::string> truth;
    std::string roster;
    std::string counts;
    double iou_min = 0.5;
    OutputFormat format = OutputFormat::Json;
    std::string output;
};

struct GalleryListConfig {
    std::string gallery;
    OutputFormat format = OutputFormat::Json;
};

int cmd_detect(const DetectConfig& config, std::ostream& out, std::ostream& err);
int cmd_enroll(const EnrollConfig& config, std::ostream& out, std::ostream& err);
int cmd_encode(const EncodeConfig& config, std::ostream& out, std::ostream& err);
int cmd_recognize(const RecognizeConfig& config, std::ostream& out, std::ostream& err);
int cmd_eval_detect(const EvalConfig& config, std::ostream& out, std::ostream& err);
int cmd_eval_recognize(const EvalConfig& config, std::ostream& out, std::ostream& err);
int cmd_gallery_list(const GalleryListConfig& config, std::ostream& out, std::ostream& err);

/// Parses "x,y,w,h".
std::optional<Rect> parse_box(const std::string& text);

/// Full command-line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace facekit::cli
