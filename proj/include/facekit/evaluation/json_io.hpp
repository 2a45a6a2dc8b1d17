// Copyright (C) 2026 facekit authors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "facekit/evaluation/reports.hpp"

namespace facekit {

using Json = nlohmann::json;

namespace detail {

[[noreturn]] inline void schema(const std::string& field, const std::string& problem) {
    throw Error(ErrorCode::SchemaViolation, field + ": " + problem);
}

inline const Json& field(const Json& obj, const char* key, const std::string& path) {
    if (!obj.is_object()) schema(path, "expected an object");
    const auto it = obj.find(key);
    if (it == obj.end()) schema(path + "." + key, "missing");
    return *it;
}

inline std::string string_field(const Json& obj, const char* key, const std::string& path) {
    const Json& v = field(obj, key, path);
    if (!v.is_string()) schema(path + "." + key, "expected a string");
    return v.get<std::string>();
}

inline long long integer_value(const Json& v, const std::string& path) {
    if (!v.is_number_integer()) {
        if (v.is_number_float()) {
            const double d = v.get<double>();
            if (d == static_cast<double>(static_cast<long long>(d))) return static_cast<long long>(d);
        }
        schema(path, "expected an integer");
    }
    return v.get<long long>();
}

inline int count_field(const Json& obj, const char* key, const std::string& path) {
    const auto v = integer_value(field(obj, key, path), path + "." + key);
    if (v < 0 || v > 1'000'000'000) schema(path + "." + key, "expected a non-negative count");
    return static_cast<int>(v);
}

inline double real_count_field(const Json& obj, const char* key, const std::string& path, bool required = true) {
    if (!required && (!obj.is_object() || !obj.contains(key))) return 0.0;
    const Json& v = field(obj, key, path);
    if (!v.is_number()) schema(path + "." + key, "expected a number");
    const double d = v.get<double>();
    if (!(d >= 0.0)) schema(path + "." + key, "expected a non-negative count");
    return d;
}

inline Rect box_value(const Json& v, const std::string& path) {
    if (!v.is_array() || v.size() != 4) schema(path, "expected [x, y, w, h]");
    long long c[4];
    for (std::size_t i = 0; i < 4; ++i) {
        c[i] = integer_value(v[i], path + "[" + std::to_string(i) + "]");
        if (c[i] < 0 || c[i] > 1'000'000) schema(path + "[" + std::to_string(i) + "]", "out of range");
    }
    return {static_cast<int>(c[0]), static_cast<int>(c[1]), static_cast<int>(c[2]), static_cast<int>(c[3])};
}

inline std::optional<std::string> optional_label(const Json& obj, const char* key, const std::string& path) {
    const Json& v = field(obj, key, path);
    if (v.is_null()) return std::nullopt;
    if (!v.is_string()) schema(path + "." + key, "expected a string or null");
    return v.get<std::string>();
}

// A file holds either one document or an array of documents.
inline std::vector<const Json*> documents(const Json& root) {
    std::vector<const Json*> out;
    if (root.is_array()) {
        for (const auto& d : root) out.push_back(&d);
    } else {
        out.push_back(&root);
    }
    return out;
}

inline std::string doc_path(const Json& root, std::size_t i) {
    return root.is_array() ? "[" + std::to_string(i) + "]" : "$";
}

}  // namespace detail

inline Json parse_json_text(const std::string& text, const std::string& what) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw Error(ErrorCode::SchemaViolation, what + ": invalid JSON (" + e.what() + ")");
    }
}

/// {"image": text, "faces": [{"box": [x,y,w,h], "label": text-or-null}]}, or an array of those.
inline std::vector<GroundTruthImage> parse_ground_truth(const Json& root) {
    std::vector<GroundTruthImage> out;
    const auto docs = detail::documents(root);
    for (std::size_t i = 0; i < docs.size(); ++i) {
        const std::string path = detail::doc_path(root, i);
        GroundTruthImage g;
        g.image = detail::string_field(*docs[i], "image", path);
        const Json& faces = detail::field(*docs[i], "faces", path);
        if (!faces.is_array()) detail::schema(path + ".faces", "expected an array");
        for (std::size_t k = 0; k < faces.size(); ++k) {
            const std::string fp = path + ".faces[" + std::to_string(k) + "]";
            g.faces.push_back({detail::box_value(detail::field(faces[k], "box", fp), fp + ".box"),
                               detail::optional_label(faces[k], "label", fp)});
        }
        out.push_back(std::move(g));
    }
    return out;
}

/// JSON array of distinct label strings.
inline Roster parse_roster(const Json& root) {
    if (!root.is_array() || root.empty()) detail::schema("$", "roster must be a non-empty array of labels");
    Roster r;
    for (std::size_t i = 0; i < root.size(); ++i) {
        const std::string path = "$[" + std::to_string(i) + "]";
        if (!root[i].is_string()) detail::schema(path, "expected a string");
        if (!r.labels.insert(root[i].get<std::string>()).second) {
            detail::schema(path, "duplicate label '" + root[i].get<std::string>() + "'");
        }
    }
    return r;
}

struct ImageBoxes {
    std::string image;
    std::vector<Rect> boxes;
};

/// Detector output documents: {"image": ..., "detections": [{"box": [...], ...}]}.
inline std::vector<ImageBoxes> parse_detection_predictions(const Json& root) {
    std::vector<ImageBoxes> out;
    const auto docs = detail::documents(root);
    for (std::size_t i = 0; i < docs.size(); ++i) {
        const std::string path = detail::doc_path(root, i);
        ImageBoxes ib{detail::string_field(*docs[i], "image", path), {}};
        const Json& dets = detail::field(*docs[i], "detections", path);
        if (!dets.is_array()) detail::schema(path + ".detections", "expected an array");
        for (std::size_t k = 0; k < dets.size(); ++k) {
            const std::string dp = path + ".detections[" + std::to_string(k) + "]";
            ib.boxes.push_back(detail::box_value(detail::field(dets[k], "box", dp), dp + ".box"));
        }
        out.push_back(std::move(ib));
    }
    return out;
}

struct ImageLabels {
    std::string image;
    std::vector<LabeledBox> faces;
};

/// Recognizer output documents: {"image": ..., "faces": [{"box": [...], "label": text-or-null}]}.
inline std::vector<ImageLabels> parse_recognition_predictions(const Json& root) {
    std::vector<ImageLabels> out;
    const auto docs = detail::documents(root);
    for (std::size_t i = 0; i < docs.size(); ++i) {
        const std::string path = detail::doc_path(root, i);
        ImageLabels il{detail::string_field(*docs[i], "image", path), {}};
        const Json& faces = detail::field(*docs[i], "faces", path);
        if (!faces.is_array()) detail::schema(path + ".faces", "expected an array");
        for (std::size_t k = 0; k < faces.size(); ++k) {
            const std::string fp = path + ".faces[" + std::to_string(k) + "]";
            il.faces.push_back({detail::box_value(detail::field(faces[k], "box", fp), fp + ".box"),
                                detail::optional_label(faces[k], "label", fp)});
        }
        out.push_back(std::move(il));
    }
    return out;
}

/// Count passthrough: [{"image", "total_faces", "detected_faces", "fp"?}].
inline std::vector<DetectionReportRow> parse_detection_counts(const Json& root) {
    std::vector<DetectionReportRow> rows;
    const auto docs = detail::documents(root);
    for (std::size_t i = 0; i < docs.size(); ++i) {
        const std::string path = detail::doc_path(root, i);
        const Json& d = *docs[i];
        const int total = detail::count_field(d, "total_faces", path);
        const int detected = detail::count_field(d, "detected_faces", path);
        const int fp = d.is_object() && d.contains("fp") ? detail::count_field(d, "fp", path) : 0;
        if (detected > total) detail::schema(path + ".detected_faces", "exceeds total_faces");
        rows.push_back(detection_row_from_counts(detail::string_field(d, "image", path), total, detected, fp));
    }
    return rows;
}

/// Count passthrough: [{"image", "C", "total_faces", "a_pp", "a_aa", "a_ps"?, "a_ap"?, "a_as"?}].
inline std::vector<RecognitionReportRow> parse_recognition_counts(const Json& root) {
    std::vector<RecognitionReportRow> rows;
    const auto docs = detail::documents(root);
    for (std::size_t i = 0; i < docs.size(); ++i) {
        const std::string path = detail::doc_path(root, i);
        const Json& d = *docs[i];
        const int c = detail::count_field(d, "C", path);
        const int total = detail::count_field(d, "total_faces", path);
        const double a_pp = detail::real_count_field(d, "a_pp", path);
        const double a_aa = detail::real_count_field(d, "a_aa", path);
        if (c < 1) detail::schema(path + ".C", "must be >= 1");
        if (a_pp > total) detail::schema(path + ".a_pp", "exceeds total_faces");
        if (a_pp + a_aa > c) detail::schema(path + ".a_aa", "a_pp + a_aa exceeds C");
        rows.push_back(recognition_row_from_counts(
            detail::string_field(d, "image", path), c, total, a_pp, a_aa,
            detail::real_count_field(d, "a_ps", path, false), detail::real_count_field(d, "a_ap", path, false),
            detail::real_count_field(d, "a_as", path, false)));
    }
    return rows;
}

inline Json to_json(const DetectionReport& r) {
    Json rows = Json::array();
    for (const auto& row : r.rows) {
        rows.push_back({{"image", row.image},
                        {"fp", row.fp},
                        {"tp", row.tp},
                        {"fn", row.fn},
                        {"total_faces", row.total_faces},
                        {"detected_faces", row.detected_faces},
                        {"accuracy", row.accuracy}});
    }
    return {{"rows", rows}, {"mean_accuracy", r.mean_accuracy}};
}

inline Json to_json(const RecognitionReport& r) {
    Json rows = Json::array();
    for (const auto& row : r.rows) {
        rows.push_back({{"image", row.image},
                        {"C", row.roster_size},
                        {"total_faces", row.total_faces},
                        {"a_pp", row.a_pp},
                        {"a_aa", row.a_aa},
                        {"a_ps", row.a_ps},
                        {"a_ap", row.a_ap},
                        {"a_as", row.a_as},
                        {"accuracy", row.accuracy}});
    }
    return {{"rows", rows}, {"mean_accuracy", r.mean_accuracy}};
}

namespace detail {

inline std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

// Whole counts print without decimals; fractional ones keep two.
inline std::string count_text(double v) {
    return v == static_cast<double>(static_cast<long long>(v)) ? std::to_string(static_cast<long long>(v))
                                                               : fixed(v, 2);
}

inline std::string render_table(const std::vector<std::string>& header,
                                const std::vector<std::vector<std::string>>& body, const std::string& footer) {
    std::vector<std::size_t> width(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
    for (const auto& row : body) {
        for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    }
    std::ostringstream out;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (c > 0) out << "  ";
            const std::string pad(width[c] - cells[c].size(), ' ');
            out << (c == 0 ? cells[c] + pad : pad + cells[c]);
        }
        out << '\n';
    };
    line(header);
    for (const auto& row : body) line(row);
    out << footer << '\n';
    return out.str();
}

}  // namespace detail

inline std::string format_table(const DetectionReport& r) {
    std::vector<std::vector<std::string>> body;
    for (const auto& row : r.rows) {
        body.push_back({row.image, std::to_string(row.fp), std::to_string(row.tp), std::to_string(row.fn),
                        std::to_string(row.total_faces), std::to_string(row.detected_faces),
                        detail::fixed(row.accuracy, 2) + "%"});
    }
    return detail::render_table({"Image", "FP", "TP", "FN", "Total faces", "Detected faces", "Accuracy"}, body,
                                "Mean accuracy: " + detail::fixed(r.mean_accuracy, 2) + "%");
}

inline std::string format_table(const RecognitionReport& r) {
    std::vector<std::vector<std::string>> body;
    for (const auto& row : r.rows) {
        body.push_back({row.image, std::to_string(row.roster_size), std::to_string(row.total_faces),
                        detail::count_text(row.a_pp), detail::count_text(row.a_aa), detail::count_text(row.a_ps),
                        detail::count_text(row.a_ap), detail::count_text(row.a_as),
                        detail::fixed(row.accuracy, 2) + "%"});
    }
    return detail::render_table({"Image", "C", "Total faces", "a_pp", "a_aa", "a_ps", "a_ap", "a_as", "Accuracy"},
                                body, "Mean accuracy: " + detail::fixed(r.mean_accuracy, 2) + "%");
}

}  // namespace facekit
