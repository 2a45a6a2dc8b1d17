// Copyright (C) 2026 facekit authors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "facekit/cascade/xml.hpp"
#include "facekit/error.hpp"
#include "facekit/imaging/image.hpp"

namespace facekit {

struct WeightedRect {
    Rect rect;
    double weight = 0.0;

    friend bool operator==(const WeightedRect&, const WeightedRect&) = default;
};

/// Upright Haar feature: 2 or 3 weighted rectangles whose weighted areas sum
/// to zero.
struct HaarFeature {
    std::vector<WeightedRect> rects;

    friend bool operator==(const HaarFeature&, const HaarFeature&) = default;
};

/// Single-split weak learner. Contributes left_leaf when the normalized feature
/// value is below threshold * sigma, right_leaf otherwise.
struct Stump {
    std::size_t feature_index = 0;
    double threshold = 0.0;
    double left_leaf = 0.0;
    double right_leaf = 0.0;

    friend bool operator==(const Stump&, const Stump&) = default;
};

struct Stage {
    std::vector<Stump> stumps;
    double stage_threshold = 0.0;

    friend bool operator==(const Stage&, const Stage&) = default;
};

struct CascadeModel {
    int base_width = 0;
    int base_height = 0;
    std::vector<Stage> stages;
    std::vector<HaarFeature> features;

    friend bool operator==(const CascadeModel&, const CascadeModel&) = default;
};

struct Violation {
    std::string path;
    std::string rule;
};

inline constexpr double kZeroSumTolerance = 1e-6;

/// Checks every structural invariant of a model. Returns one entry per broken
/// rule; an empty result means the model is usable by the detector.
inline std::vector<Violation> validate(const CascadeModel& model) {
    std::vector<Violation> out;
    if (model.base_width < 1 || model.base_height < 1) {
        out.push_back({"model", "base window must be at least 1x1"});
    }
    if (model.stages.empty()) {
        out.push_back({"model", "at least one stage required"});
    }
    for (std::size_t i = 0; i < model.stages.size(); ++i) {
        const Stage& stage = model.stages[i];
        const std::string stage_path = "stage " + std::to_string(i);
        if (stage.stumps.empty()) {
            out.push_back({stage_path, "at least one stump required"});
        }
        if (!std::isfinite(stage.stage_threshold)) {
            out.push_back({stage_path, "stageThreshold must be finite"});
        }
        for (std::size_t j = 0; j < stage.stumps.size(); ++j) {
            const Stump& s = stage.stumps[j];
            const std::string path = stage_path + " / stump " + std::to_string(j);
            if (s.feature_index >= model.features.size()) {
                out.push_back({path, "feature index " + std::to_string(s.feature_index) +
                                         " out of range (" + std::to_string(model.features.size()) +
                                         " features)"});
            }
            if (!std::isfinite(s.threshold) || !std::isfinite(s.left_leaf) ||
                !std::isfinite(s.right_leaf)) {
                out.push_back({path, "threshold and leaf values must be finite"});
            }
        }
    }
    for (std::size_t k = 0; k < model.features.size(); ++k) {
        const HaarFeature& f = model.features[k];
        const std::string path = "feature " + std::to_string(k);
        if (f.rects.size() < 2 || f.rects.size() > 3) {
            out.push_back({path, "feature must have 2 or 3 rects, has " + std::to_string(f.rects.size())});
        }
        double signed_sum = 0.0;
        double magnitude = 0.0;
        bool finite = true;
        for (std::size_t r = 0; r < f.rects.size(); ++r) {
            const WeightedRect& wr = f.rects[r];
            if (!fits_within(wr.rect, model.base_width, model.base_height)) {
                out.push_back({path + " / rect " + std::to_string(r),
                               "rect " + to_string(wr.rect) + " outside base window " +
                                   std::to_string(model.base_width) + "x" +
                                   std::to_string(model.base_height)});
            }
            if (!std::isfinite(wr.weight)) finite = false;
            const double term = wr.weight * static_cast<double>(wr.rect.area());
            signed_sum += term;
            magnitude += std::abs(term);
        }
        if (!finite) {
            out.push_back({path, "rect weights must be finite"});
        } else if (std::abs(signed_sum) > kZeroSumTolerance * magnitude) {
            out.push_back({path, "weighted areas sum to " + std::to_string(signed_sum) +
                                     ", expected zero"});
        }
    }
    return out;
}

namespace detail {

inline std::vector<std::string_view> split_tokens(std::string_view text) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\n' || text[i] == '\r')) ++i;
        const auto start = i;
        while (i < text.size() && !(text[i] == ' ' || text[i] == '\t' || text[i] == '\n' || text[i] == '\r')) ++i;
        if (i > start) out.push_back(text.substr(start, i - start));
    }
    return out;
}

inline std::string_view trimmed(std::string_view s) {
    const auto tokens = split_tokens(s);
    if (tokens.empty()) return {};
    return std::string_view(tokens.front().data(),
                            static_cast<std::size_t>(tokens.back().data() + tokens.back().size() -
                                                     tokens.front().data()));
}

[[noreturn]] inline void invalid(const std::string& what) {
    throw Error(ErrorCode::InvariantViolation, what);
}

[[noreturn]] inline void unsupported(const std::string& what) {
    throw Error(ErrorCode::UnsupportedFormat, what);
}

inline double to_real(std::string_view token, const std::string& where) {
    double v = 0.0;
    const auto* end = token.data() + token.size();
    auto [p, ec] = std::from_chars(token.data(), end, v);
    if (ec != std::errc{} || p != end || !std::isfinite(v)) {
        invalid(where + ": '" + std::string(token) + "' is not a finite number");
    }
    return v;
}

inline long long to_integer(std::string_view token, const std::string& where) {
    long long v = 0;
    const auto* end = token.data() + token.size();
    auto [p, ec] = std::from_chars(token.data(), end, v);
    if (ec != std::errc{} || p != end) {
        invalid(where + ": '" + std::string(token) + "' is not an integer");
    }
    return v;
}

inline const xml::Element& require_child(const xml::Element& parent, std::string_view name,
                                         const std::string& where) {
    const auto* c = parent.child(name);
    if (c == nullptr) invalid(where + ": missing " + std::string(name));
    return *c;
}

inline int positive_int(const xml::Element& parent, std::string_view name, const std::string& where) {
    const auto tokens = split_tokens(require_child(parent, name, where).text);
    if (tokens.size() != 1) invalid(where + ": " + std::string(name) + " must hold one integer");
    const auto v = to_integer(tokens[0], where + " " + std::string(name));
    if (v < 1 || v > 1'000'000) invalid(where + ": " + std::string(name) + " out of range");
    return static_cast<int>(v);
}

inline std::vector<const xml::Element*> list_items(const xml::Element& list) {
    std::vector<const xml::Element*> out;
    for (const auto& c : list.children) out.push_back(&c);
    return out;
}

inline bool is_old_style(const xml::Element& el) {
    return el.attribute("type_id") == std::optional<std::string_view>("opencv-haar-classifier");
}

inline Stage parse_stage(const xml::Element& item, std::size_t index) {
    const std::string where = "stage " + std::to_string(index);
    const auto* threshold = item.child("stageThreshold");
    if (threshold == nullptr) invalid(where + ": missing stageThreshold");
    const auto t_tokens = split_tokens(threshold->text);
    if (t_tokens.size() != 1) invalid(where + ": stageThreshold must hold one number");

    Stage stage;
    stage.stage_threshold = to_real(t_tokens[0], where + " stageThreshold");
    const int max_weak = positive_int(item, "maxWeakCount", where);
    const auto& weak = require_child(item, "weakClassifiers", where);

    for (const auto* wc : list_items(weak)) {
        const std::string wpath = where + " / stump " + std::to_string(stage.stumps.size());
        const auto nodes = split_tokens(require_child(*wc, "internalNodes", wpath).text);
        const auto leaves = split_tokens(require_child(*wc, "leafValues", wpath).text);
        if (nodes.size() % 4 != 0 || nodes.empty()) {
            invalid(wpath + ": internalNodes must hold groups of 4 values");
        }
        if (nodes.size() != 4) {
            unsupported(wpath + ": weak classifier is a tree with " + std::to_string(nodes.size() / 4) +
                        " internal nodes; only stumps are supported");
        }
        if (leaves.size() > 2) {
            unsupported(wpath + ": leafValues holds " + std::to_string(leaves.size()) +
                        " leaves; only stumps are supported");
        }
        if (leaves.size() != 2) invalid(wpath + ": leafValues must hold 2 values");
        if (to_integer(nodes[0], wpath + " internalNodes") != 0 ||
            to_integer(nodes[1], wpath + " internalNodes") != -1) {
            unsupported(wpath + ": internalNodes links must be \"0 -1\" for a stump");
        }
        const auto feature = to_integer(nodes[2], wpath + " feature index");
        if (feature < 0) invalid(wpath + ": negative feature index");

        Stump s;
        s.feature_index = static_cast<std::size_t>(feature);
        s.threshold = to_real(nodes[3], wpath + " node threshold");
        s.left_leaf = to_real(leaves[0], wpath + " leafValues");
        s.right_leaf = to_real(leaves[1], wpath + " leafValues");
        stage.stumps.push_back(s);
    }
    if (static_cast<std::size_t>(max_weak) != stage.stumps.size()) {
        invalid(where + ": maxWeakCount " + std::to_string(max_weak) + " but " +
                std::to_string(stage.stumps.size()) + " weak classifiers");
    }
    return stage;
}

inline HaarFeature parse_feature(const xml::Element& item, std::size_t index) {
    const std::string where = "feature " + std::to_string(index);
    if (const auto* tilted = item.child("tilted")) {
        const auto t = split_tokens(tilted->text);
        if (t.size() != 1 || t[0] != "0") {
            unsupported(where + ": tilted features are not supported");
        }
    }
    HaarFeature f;
    for (const auto* r : list_items(require_child(item, "rects", where))) {
        const std::string rpath = where + " / rect " + std::to_string(f.rects.size());
        const auto tokens = split_tokens(r->text);
        if (tokens.size() != 5) invalid(rpath + ": expected \"x y w h weight\"");
        long long v[4];
        for (int i = 0; i < 4; ++i) {
            v[i] = to_integer(tokens[static_cast<std::size_t>(i)], rpath);
            if (v[i] < 0 || v[i] > 1'000'000) invalid(rpath + ": coordinate out of range");
        }
        f.rects.push_back({Rect{static_cast<int>(v[0]), static_cast<int>(v[1]), static_cast<int>(v[2]),
                                static_cast<int>(v[3])},
                           to_real(tokens[4], rpath + " weight")});
    }
    return f;
}

}  // namespace detail

/// Reads a boosted Haar cascade in the index-based XML layout (a <cascade>
/// element with stageType BOOST, featureType HAAR, <stages> and <features>).
/// The result always passes validate().
inline CascadeModel parse_cascade_xml(std::string_view bytes) {
    using namespace detail;
    const xml::Element root = xml::parse(bytes);

    if (is_old_style(root)) unsupported("old-style cascade (type_id=\"opencv-haar-classifier\")");
    const xml::Element* cascade = root.name == "cascade" ? &root : root.child("cascade");
    if (cascade == nullptr) {
        for (const auto& c : root.children) {
            if (is_old_style(c)) {
                unsupported("old-style cascade <" + c.name + " type_id=\"opencv-haar-classifier\">");
            }
        }
        invalid("missing cascade element");
    }
    if (is_old_style(*cascade)) unsupported("old-style cascade (type_id=\"opencv-haar-classifier\")");

    const auto stage_type = trimmed(require_child(*cascade, "stageType", "cascade").text);
    if (stage_type != "BOOST") unsupported("stageType " + std::string(stage_type) + " (expected BOOST)");
    const auto feature_type = trimmed(require_child(*cascade, "featureType", "cascade").text);
    if (feature_type != "HAAR") {
        unsupported("featureType " + std::string(feature_type) + " (expected HAAR)");
    }
    CascadeModel model;
    model.base_height = positive_int(*cascade, "height", "cascade");
    model.base_width = positive_int(*cascade, "width", "cascade");

    const auto stage_items = list_items(require_child(*cascade, "stages", "cascade"));
    for (std::size_t i = 0; i < stage_items.size(); ++i) {
        model.stages.push_back(parse_stage(*stage_items[i], i));
    }
    if (cascade->child("stageNum") != nullptr) {
        const int declared = positive_int(*cascade, "stageNum", "cascade");
        if (static_cast<std::size_t>(declared) != model.stages.size()) {
            invalid("cascade: stageNum " + std::to_string(declared) + " but " +
                    std::to_string(model.stages.size()) + " stages");
        }
    }

    const auto feature_items = list_items(require_child(*cascade, "features", "cascade"));
    for (std::size_t k = 0; k < feature_items.size(); ++k) {
        model.features.push_back(parse_feature(*feature_items[k], k));
    }

    if (const auto violations = validate(model); !violations.empty()) {
        invalid(violations.front().path + ": " + violations.front().rule);
    }
    return model;
}

}  // namespace facekit
