// Copyright (C) 2026 facekit authors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "facekit/evaluation/matching.hpp"

namespace facekit {

// ---- detection accuracy ------------------------------------------------

struct DetectionReportRow {
    std::string image;
    int total_faces = 0;
    int detected_faces = 0;
    int fp = 0;
    int tp = 0;
    int fn = 0;
    double accuracy = 0.0;  // percent

    friend bool operator==(const DetectionReportRow&, const DetectionReportRow&) = default;
};

struct DetectionReport {
    std::vector<DetectionReportRow> rows;
    double mean_accuracy = 0.0;
};

inline double percent(double numerator, double denominator) noexcept {
    return 100.0 * numerator / denominator;
}

/// Table row from explicit counts. An image without faces scores 100%.
inline DetectionReportRow detection_row_from_counts(std::string image, int total_faces, int detected_faces,
                                                    int fp = 0) {
    if (total_faces < 0 || detected_faces < 0 || fp < 0 || detected_faces > total_faces) {
        throw Error(ErrorCode::InvalidArgument, "need 0 <= detected_faces <= total_faces and fp >= 0");
    }
    DetectionReportRow row;
    row.image = std::move(image);
    row.total_faces = total_faces;
    row.detected_faces = detected_faces;
    row.tp = detected_faces;
    row.fn = total_faces - detected_faces;
    row.fp = fp;
    row.accuracy = total_faces > 0 ? percent(detected_faces, total_faces) : 100.0;
    return row;
}

inline DetectionReportRow detection_row(std::string image, const BoxMatching& m) {
    const int tp = static_cast<int>(m.matched.size());
    return detection_row_from_counts(std::move(image), tp + static_cast<int>(m.unmatched_truths.size()), tp,
                                     static_cast<int>(m.unmatched_predictions.size()));
}

/// Per-image rows plus the unweighted mean of their accuracies.
inline DetectionReport detection_report(std::vector<DetectionReportRow> rows) {
    if (rows.empty()) throw Error(ErrorCode::EmptyInput, "detection report needs at least one image");
    DetectionReport r;
    double sum = 0.0;
    for (const auto& row : rows) sum += row.accuracy;
    r.mean_accuracy = sum / static_cast<double>(rows.size());
    r.rows = std::move(rows);
    return r;
}

// ---- recognition accuracy ----------------------------------------------

struct Roster {
    std::set<std::string> labels;

    std::size_t size() const noexcept { return labels.size(); }
    bool contains(const std::string& l) const { return labels.count(l) != 0; }
};

struct TruthFace {
    Rect box;
    std::optional<std::string> identity;  // nullopt: stranger
};

struct GroundTruthImage {
    std::string image;
    std::vector<TruthFace> faces;
};

struct LabeledBox {
    Rect box;
    std::optional<std::string> label;  // nullopt: predicted unknown
};

/// Counts are reals so that externally tallied fractional credit can pass
/// through; tallies computed here are always whole numbers.
struct RecognitionReportRow {
    std::string image;
    int roster_size = 0;  // C
    int total_faces = 0;
    double a_pp = 0;  // present, labeled correctly
    double a_aa = 0;  // absent, correctly not reported
    double a_ps = 0;  // stranger labeled as a present person
    double a_ap = 0;  // present person labeled unknown or wrong
    double a_as = 0;  // stranger labeled as an absent person
    double accuracy = 0.0;

    friend bool operator==(const RecognitionReportRow&, const RecognitionReportRow&) = default;
};

struct RecognitionReport {
    std::vector<RecognitionReportRow> rows;
    double mean_accuracy = 0.0;
};

inline RecognitionReportRow recognition_row_from_counts(std::string image, int roster_size, int total_faces,
                                                        double a_pp, double a_aa, double a_ps = 0,
                                                        double a_ap = 0, double a_as = 0) {
    if (roster_size < 1) throw Error(ErrorCode::InvalidArgument, "roster size C must be >= 1");
    if (total_faces < 0 || a_pp < 0 || a_aa < 0 || a_ps < 0 || a_ap < 0 || a_as < 0) {
        throw Error(ErrorCode::InvalidArgument, "counts must be non-negative");
    }
    if (a_pp > total_faces || a_pp + a_aa > roster_size) {
        throw Error(ErrorCode::InvalidArgument, "need a_pp <= total_faces and a_pp + a_aa <= C");
    }
    RecognitionReportRow row{std::move(image), roster_size, total_faces, a_pp, a_aa, a_ps, a_ap, a_as, 0.0};
    row.accuracy = percent(a_pp + a_aa, roster_size);
    return row;
}

/// Tallies one image. Predictions are matched to truth faces by box; each
/// matched enrolled face counts a_pp (correct label) or a_ap (unknown or
/// wrong), each missed enrolled face counts a_ap, and a stranger given a label
/// counts a_ps when that person is in the image, a_as otherwise. a_aa is C
/// minus the roster members either present or claimed by an a_as label.
inline RecognitionReportRow recognition_tally(const GroundTruthImage& truth,
                                              const std::vector<LabeledBox>& predictions,
                                              const Roster& roster, double iou_min = kDefaultIouMin) {
    if (roster.size() == 0) throw Error(ErrorCode::InvalidArgument, "roster is empty");
    std::set<std::string> present;
    for (const auto& f : truth.faces) {
        if (!f.identity) continue;
        if (!roster.contains(*f.identity)) {
            throw Error(ErrorCode::UnknownLabelInTruth,
                        "image " + truth.image + ": label '" + *f.identity + "' is not in the roster");
        }
        if (!present.insert(*f.identity).second) {
            throw Error(ErrorCode::SchemaViolation,
                        "image " + truth.image + ": label '" + *f.identity + "' appears twice");
        }
    }

    std::vector<Rect> pred_boxes;
    for (const auto& p : predictions) pred_boxes.push_back(p.box);
    std::vector<Rect> truth_boxes;
    for (const auto& f : truth.faces) truth_boxes.push_back(f.box);
    const auto m = match_detections(pred_boxes, truth_boxes, iou_min);

    int a_pp = 0, a_ps = 0, a_ap = 0, a_as = 0;
    std::set<std::string> claimed_absent;
    for (const auto& [p, t] : m.matched) {
        const auto& identity = truth.faces[t].identity;
        const auto& label = predictions[p].label;
        if (identity) {
            if (label && *label == *identity) ++a_pp;
            else ++a_ap;
        } else if (label) {
            if (present.count(*label) != 0) {
                ++a_ps;
            } else {
                ++a_as;
                if (roster.contains(*label)) claimed_absent.insert(*label);
            }
        }
    }
    for (std::size_t t : m.unmatched_truths) {
        if (truth.faces[t].identity) ++a_ap;
    }

    const int roster_size = static_cast<int>(roster.size());
    const int a_aa = roster_size - static_cast<int>(present.size() + claimed_absent.size());
    return recognition_row_from_counts(truth.image, roster_size, static_cast<int>(truth.faces.size()), a_pp,
                                       a_aa, a_ps, a_ap, a_as);
}

inline RecognitionReport recognition_report(std::vector<RecognitionReportRow> rows) {
    if (rows.empty()) throw Error(ErrorCode::EmptyInput, "recognition report needs at least one image");
    RecognitionReport r;
    double sum = 0.0;
    for (const auto& row : rows) sum += row.accuracy;
    r.mean_accuracy = sum / static_cast<double>(rows.size());
    r.rows = std::move(rows);
    return r;
}

}  // namespace facekit
