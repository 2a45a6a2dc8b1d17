// Copyright (C) 2026 facekit authors
// SPDX-License-Identifier: Apache-2.0
//

#include "cli/commands.hpp"

#include <cmath>
#include <filesystem>
#include <functional>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "facekit/facekit.hpp"

namespace facekit::cli {
namespace {

struct Failure {
    int code;
    std::string message;
};

int exit_code_for(ErrorCode code) {
    switch (code) {
    case ErrorCode::SchemaViolation:
    case ErrorCode::UnknownLabelInTruth:
        return kSchemaViolation;
    case ErrorCode::EmptyGallery:
        return kEmptyGallery;
    case ErrorCode::MalformedXml:
    case ErrorCode::UnsupportedFormat:
    case ErrorCode::InvariantViolation:
        return kBadModel;
    case ErrorCode::InvalidArgument:
    case ErrorCode::InvalidLabel:
        return kBadFlags;
    default:
        return kBadInput;
    }
}

int guarded(std::ostream& err, const std::function<int()>& body) {
    try {
        return body();
    } catch (const Failure& f) {
        err << "error: " << f.message << '\n';
        return f.code;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kBadInput;
    }
}

std::vector<std::uint8_t> read_input(const std::string& path, const char* what) {
    try {
        return read_file(path);
    } catch (const Error& e) {
        throw Failure{kBadInput, std::string("cannot read ") + what + " '" + path + "'"};
    }
}

AnyImage load_image(const std::string& path) {
    const auto bytes = read_input(path, "image");
    try {
        return load_netpbm(bytes);
    } catch (const Error& e) {
        throw Failure{kBadInput, "cannot decode image '" + path + "': " + e.what()};
    }
}

GrayImage gray_of(const AnyImage& img) {
    if (const auto* rgb = std::get_if<RgbImage>(&img)) return to_gray(*rgb);
    return std::get<GrayImage>(img);
}

RgbImage rgb_of(const AnyImage& img) {
    if (const auto* gray = std::get_if<GrayImage>(&img)) return to_rgb(*gray);
    return std::get<RgbImage>(img);
}

CascadeModel load_model(const std::string& path) {
    if (path.empty()) throw Failure{kBadFlags, "no cascade model given (--cascade or FACE_CASCADE)"};
    const auto bytes = read_input(path, "cascade model");
    try {
        return parse_cascade_xml(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
    } catch (const Error& e) {
        throw Failure{kBadModel, "cannot load cascade '" + path + "': " + e.what()};
    }
}

Gallery load_gallery_or_fail(const std::string& path) {
    const auto bytes = read_input(path, "gallery");
    try {
        return load_gallery(bytes);
    } catch (const Error& e) {
        throw Failure{kBadInput, "cannot decode gallery '" + path + "': " + e.what()};
    }
}

Json load_json(const std::string& path, const char* what) {
    const auto bytes = read_input(path, what);
    try {
        return Json::parse(bytes.begin(), bytes.end());
    } catch (const Json::parse_error& e) {
        throw Failure{kSchemaViolation, std::string(what) + " '" + path + "' is not valid JSON: " + e.what()};
    }
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    try {
        write_text_file_atomic(path, text);
    } catch (const Error& e) {
        throw Failure{kBadInput, std::string("cannot write output: ") + e.what()};
    }
}

void write_annotated(const RgbImage& img, const std::vector<Annotation>& boxes, const std::string& path) {
    const auto bytes = save_netpbm(annotate(img, boxes), NetpbmEncoding::Binary);
    try {
        write_file_atomic(path, bytes);
    } catch (const Error& e) {
        throw Failure{kBadInput, std::string("cannot write annotated image: ") + e.what()};
    }
}

void warn_quality(const GrayImage& img, const std::string& path, std::ostream& err) {
    if (std::min(img.width(), img.height()) < kLowResolutionSide) {
        err << "warning: " << path << ": low resolution " << img.width() << "x" << img.height()
            << " (shorter side below " << kLowResolutionSide << " px); accuracy may suffer\n";
    }
    double mean = 0.0;
    for (auto s : img.samples()) mean += s;
    mean /= static_cast<double>(img.samples().size());
    double var = 0.0;
    for (auto s : img.samples()) var += (s - mean) * (s - mean);
    if (std::sqrt(var / static_cast<double>(img.samples().size())) < kNearConstantStd) {
        err << "warning: " << path << ": image is nearly constant; faces are unlikely to be found\n";
    }
}

std::vector<Detection> run_detector(const CascadeModel& model, const GrayImage& img, const ScanParams& scan,
                                    std::ostream& err) {
    try {
        return detect_multiscale(model, img, scan);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::ImageTooSmall) throw;
        err << "warning: " << e.what() << "; no faces can be found\n";
        return {};
    }
}

Json box_json(const Rect& r) { return Json::array({r.x, r.y, r.w, r.h}); }

std::string format_output(const Json& doc) { return doc.dump(2) + "\n"; }

}  // namespace

std::optional<Rect> parse_box(const std::string& text) {
    std::vector<long long> v;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        std::size_t used = 0;
        try {
            v.push_back(std::stoll(part, &used));
        } catch (const std::exception&) {
            return std::nullopt;
        }
        if (used != part.size()) return std::nullopt;
    }
    if (v.size() != 4) return std::nullopt;
    for (auto c : v) {
        if (c < 0 || c > 1'000'000) return std::nullopt;
    }
    return Rect{static_cast<int>(v[0]), static_cast<int>(v[1]), static_cast<int>(v[2]), static_cast<int>(v[3])};
}

int cmd_detect(const DetectConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        check_scan_params(config.scan);
        const CascadeModel model = load_model(config.cascade);
        const AnyImage img = load_image(config.image);
        const GrayImage gray = gray_of(img);
        warn_quality(gray, config.image, err);

        const auto detections = run_detector(model, gray, config.scan, err);
        Json list = Json::array();
        std::vector<Annotation> boxes;
        for (const auto& d : detections) {
            list.push_back({{"box", box_json(d.box)}, {"neighbors", d.neighbors}});
            boxes.push_back({d.box, std::nullopt});
        }
        if (!config.annotate.empty()) write_annotated(rgb_of(img), boxes, config.annotate);
        emit(format_output({{"image", config.image}, {"detections", list}}), config.output, out);
        return kOk;
    });
}

int cmd_enroll(const EnrollConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (auto problem = label_problem(config.label); !problem.empty()) {
            throw Failure{kBadFlags, "--label: " + problem};
        }
        Gallery gallery;
        if (std::filesystem::exists(config.gallery)) gallery = load_gallery_or_fail(config.gallery);

        const GrayImage gray = gray_of(load_image(config.image));
        warn_quality(gray, config.image, err);

        Rect face;
        if (config.box) {
            face = *config.box;
            if (!fits_within(face, gray.width(), gray.height())) {
                throw Failure{kBadFlags, "--box " + to_string(face) + " lies outside the image"};
            }
            if (face.w < kMinFaceSide || face.h < kMinFaceSide) {
                throw Failure{kBadFlags, "--box must be at least 8x8"};
            }
        } else {
            check_scan_params(config.scan);
            const CascadeModel model = load_model(config.cascade);
            const auto detections = run_detector(model, gray, config.scan, err);
            if (detections.empty()) throw Failure{kNoFace, "no face found in '" + config.image + "'"};
            const Detection* largest = &detections.front();
            for (const auto& d : detections) {
                if (d.box.area() > largest->box.area()) largest = &d;
            }
            face = largest->box;
            if (face.w < kMinFaceSide || face.h < kMinFaceSide) {
                throw Failure{kNoFace, "largest face " + to_string(face) + " is smaller than 8x8"};
            }
        }

        gallery = enroll(gallery, config.label, encode_face(gray, face));
        try {
            save_gallery_file(config.gallery, gallery);
        } catch (const Error& e) {
            throw Failure{kBadInput, std::string("cannot write gallery: ") + e.what()};
        }
        out << "entries: " << gallery.size() << "\n"
            << "distinct labels (C): " << gallery.distinct_labels() << "\n";
        return kOk;
    });
}

int cmd_encode(const EncodeConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const GrayImage gray = gray_of(load_image(config.image));
        const Rect face = config.box.value_or(gray.bounds());
        if (!fits_within(face, gray.width(), gray.height()) || face.w < kMinFaceSide || face.h < kMinFaceSide) {
            throw Failure{kBadFlags, "face box " + to_string(face) + " must lie inside the image and be >= 8x8"};
        }
        const Encoding e = encode_face(gray, face);
        emit(format_output({{"image", config.image}, {"box", box_json(face)}, {"encoding", e.values}}),
             config.output, out);
        return kOk;
    });
}

int cmd_recognize(const RecognizeConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (!(config.threshold >= 0.0)) throw Failure{kBadFlags, "--threshold must be >= 0"};
        check_scan_params(config.scan);
        const Gallery gallery = load_gallery_or_fail(config.gallery);
        if (gallery.empty()) throw Failure{kEmptyGallery, "gallery '" + config.gallery + "' has no entries"};
        const CascadeModel model = load_model(config.cascade);
        const AnyImage img = load_image(config.image);
        const GrayImage gray = gray_of(img);
        warn_quality(gray, config.image, err);

        Json faces = Json::array();
        std::vector<Annotation> boxes;
        for (const auto& d : run_detector(model, gray, config.scan, err)) {
            Json face = {{"box", box_json(d.box)}, {"label", nullptr}, {"distance", nullptr}};
            if (d.box.w >= kMinFaceSide && d.box.h >= kMinFaceSide) {
                const MatchResult m = match_probe(gallery, encode_face(gray, d.box), config.threshold);
                if (m.label) face["label"] = *m.label;
                face["distance"] = m.distance;
                boxes.push_back({d.box, m.label.value_or("unknown")});
            } else {
                boxes.push_back({d.box, std::string("unknown")});
            }
            faces.push_back(std::move(face));
        }
        if (!config.annotate.empty()) write_annotated(rgb_of(img), boxes, config.annotate);
        emit(format_output({{"image", config.image}, {"faces", faces}}), config.output, out);
        return kOk;
    });
}

namespace {

std::vector<GroundTruthImage> load_truth(const std::vector<std::string>& paths) {
    std::vector<GroundTruthImage> all;
    std::set<std::string> seen;
    for (const auto& path : paths) {
        for (auto& g : parse_ground_truth(load_json(path, "ground truth"))) {
            if (!seen.insert(g.image).second) {
                throw Failure{kSchemaViolation, "image: '" + g.image + "' appears twice in ground truth"};
            }
            all.push_back(std::move(g));
        }
    }
    return all;
}

template <typename Parsed, typename Parser>
std::map<std::string, Parsed> load_predictions(const std::vector<std::string>& paths,
                                               const std::vector<GroundTruthImage>& truth, Parser parse) {
    std::set<std::string> known;
    for (const auto& g : truth) known.insert(g.image);
    std::map<std::string, Parsed> by_image;
    for (const auto& path : paths) {
        for (auto& p : parse(load_json(path, "predictions"))) {
            if (known.count(p.image) == 0) {
                throw Failure{kSchemaViolation, "image: prediction for '" + p.image + "' has no ground truth"};
            }
            const std::string id = p.image;
            if (!by_image.emplace(id, std::move(p)).second) {
                throw Failure{kSchemaViolation, "image: '" + id + "' appears twice in predictions"};
            }
        }
    }
    return by_image;
}

void check_eval_inputs(const EvalConfig& config, bool needs_roster) {
    if (!config.counts.empty()) {
        if (!config.predictions.empty() || !config.truth.empty() || !config.roster.empty()) {
            throw Failure{kBadFlags, "--counts cannot be combined with --pred/--truth/--roster"};
        }
        return;
    }
    if (config.predictions.empty() || config.truth.empty()) {
        throw Failure{kBadFlags, "need --pred and --truth (or --counts)"};
    }
    if (needs_roster && config.roster.empty()) throw Failure{kBadFlags, "need --roster"};
    if (!(config.iou_min >= 0.0 && config.iou_min <= 1.0)) throw Failure{kBadFlags, "--iou must be in [0, 1]"};
}

}  // namespace

int cmd_eval_detect(const EvalConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        check_eval_inputs(config, false);
        std::vector<DetectionReportRow> rows;
        if (!config.counts.empty()) {
            rows = parse_detection_counts(load_json(config.counts, "counts"));
        } else {
            const auto truth = load_truth(config.truth);
            const auto preds = load_predictions<ImageBoxes>(config.predictions, truth, parse_detection_predictions);
            for (const auto& g : truth) {
                std::vector<Rect> truth_boxes;
                for (const auto& f : g.faces) truth_boxes.push_back(f.box);
                const auto it = preds.find(g.image);
                const std::vector<Rect> pred_boxes = it == preds.end() ? std::vector<Rect>{} : it->second.boxes;
                rows.push_back(detection_row(g.image, match_detections(pred_boxes, truth_boxes, config.iou_min)));
            }
        }
        const auto report = detection_report(std::move(rows));
        emit(config.format == OutputFormat::Json ? format_output(to_json(report)) : format_table(report),
             config.output, out);
        return kOk;
    });
}

int cmd_eval_recognize(const EvalConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        check_eval_inputs(config, true);
        std::vector<RecognitionReportRow> rows;
        if (!config.counts.empty()) {
            rows = parse_recognition_counts(load_json(config.counts, "counts"));
        } else {
            const Roster roster = parse_roster(load_json(config.roster, "roster"));
            const auto truth = load_truth(config.truth);
            const auto preds =
                load_predictions<ImageLabels>(config.predictions, truth, parse_recognition_predictions);
            for (const auto& g : truth) {
                const auto it = preds.find(g.image);
                const auto faces = it == preds.end() ? std::vector<LabeledBox>{} : it->second.faces;
                rows.push_back(recognition_tally(g, faces, roster, config.iou_min));
            }
        }
        const auto report = recognition_report(std::move(rows));
        emit(config.format == OutputFormat::Json ? format_output(to_json(report)) : format_table(report),
             config.output, out);
        return kOk;
    });
}

int cmd_gallery_list(const GalleryListConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const Gallery g = load_gallery_or_fail(config.gallery);
        if (config.format == OutputFormat::Table) {
            out << "index  label\n";
            for (std::size_t i = 0; i < g.size(); ++i) out << i << "  " << g.entries()[i].label << '\n';
            out << "entries: " << g.size() << "\ndistinct labels (C): " << g.distinct_labels() << '\n';
            return kOk;
        }
        Json entries = Json::array();
        for (std::size_t i = 0; i < g.size(); ++i) {
            entries.push_back({{"index", i}, {"label", g.entries()[i].label}});
        }
        out << format_output({{"count", g.size()}, {"distinct_labels", g.distinct_labels()}, {"entries", entries}});
        return kOk;
    });
}

namespace {

struct ScanFlags {
    double scale_factor = 1.1;
    double stride_factor = 2.0;
    int min_neighbors = 3;
    int min_size = 0;
    int max_size = 0;
    unsigned threads = 1;

    void attach(CLI::App* cmd) {
        cmd->add_option("--scale-factor", scale_factor, "Scale step between detection passes (> 1)")
            ->capture_default_str();
        cmd->add_option("--stride-factor", stride_factor, "Scan step in base-window pixels, scaled per pass")
            ->capture_default_str();
        cmd->add_option("--min-neighbors", min_neighbors, "Raw hits needed to keep a grouped detection")
            ->capture_default_str();
        cmd->add_option("--min-size", min_size, "Smallest window side in pixels (0: no limit)")
            ->capture_default_str();
        cmd->add_option("--max-size", max_size, "Largest window side in pixels (0: no limit)")
            ->capture_default_str();
        cmd->add_option("--threads", threads, "Detector worker threads (0: all cores)")->capture_default_str();
    }

    ScanParams params() const {
        ScanParams p;
        p.scale_factor = scale_factor;
        p.stride_factor = stride_factor;
        p.min_neighbors = min_neighbors;
        if (min_size > 0) p.min_size = min_size;
        if (max_size > 0) p.max_size = max_size;
        p.threads = threads;
        return p;
    }
};

const CLI::App* deepest_parsed(const CLI::App* app) {
    for (const auto* sub : app->get_subcommands()) return deepest_parsed(sub);
    return app;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"facekit: Haar cascade face detection, encoding and gallery recognition", "facekit"};
    app.require_subcommand(1);

    ScanFlags detect_scan, enroll_scan, recognize_scan;
    DetectConfig detect;
    EnrollConfig enroll_cfg;
    std::string enroll_box;
    EncodeConfig encode;
    std::string encode_box;
    RecognizeConfig recognize;
    EvalConfig eval_detect, eval_recognize;
    std::string eval_detect_format = "json", eval_recognize_format = "json";
    GalleryListConfig list;
    std::string list_format = "json";

    auto* detect_cmd = app.add_subcommand("detect", "Find faces and print them as JSON");
    detect_cmd->add_option("--cascade", detect.cascade, "Cascade model XML")->envname(kCascadeEnvVar)->required();
    detect_cmd->add_option("--image", detect.image, "Input image (PGM/PPM)")->required();
    detect_cmd->add_option("--annotate", detect.annotate, "Write a PPM with boxes drawn");
    detect_cmd->add_option("--output", detect.output, "Write JSON here instead of stdout");
    detect_scan.attach(detect_cmd);

    auto* enroll_cmd = app.add_subcommand("enroll", "Encode a face and append it to a gallery");
    enroll_cmd->add_option("--gallery", enroll_cfg.gallery, "Gallery file (created if absent)")->required();
    enroll_cmd->add_option("--label", enroll_cfg.label, "Identity label")->required();
    enroll_cmd->add_option("--image", enroll_cfg.image, "Face image (PGM/PPM)")->required();
    enroll_cmd->add_option("--box", enroll_box, "Face box x,y,w,h; skips detection");
    enroll_cmd->add_option("--cascade", enroll_cfg.cascade, "Cascade model XML (needed without --box)")
        ->envname(kCascadeEnvVar);
    enroll_scan.attach(enroll_cmd);

    auto* encode_cmd = app.add_subcommand("encode", "Print the 128-d encoding of a face box");
    encode_cmd->add_option("--image", encode.image, "Input image (PGM/PPM)")->required();
    encode_cmd->add_option("--box", encode_box, "Face box x,y,w,h (default: whole image)");
    encode_cmd->add_option("--output", encode.output, "Write JSON here instead of stdout");

    auto* recognize_cmd = app.add_subcommand("recognize", "Detect faces and label them from a gallery");
    recognize_cmd->add_option("--cascade", recognize.cascade, "Cascade model XML")
        ->envname(kCascadeEnvVar)
        ->required();
    recognize_cmd->add_option("--gallery", recognize.gallery, "Gallery file")->required();
    recognize_cmd->add_option("--image", recognize.image, "Input image (PGM/PPM)")->required();
    recognize_cmd->add_option("--threshold", recognize.threshold, "Largest distance accepted as a match")
        ->capture_default_str();
    recognize_cmd->add_option("--annotate", recognize.annotate, "Write a PPM with labeled boxes");
    recognize_cmd->add_option("--output", recognize.output, "Write JSON here instead of stdout");
    recognize_scan.attach(recognize_cmd);

    auto* eval_cmd = app.add_subcommand("eval", "Score predictions against ground truth");
    eval_cmd->require_subcommand(1);
    auto add_eval = [&](CLI::App* cmd, EvalConfig& cfg, std::string& format, bool roster) {
        cmd->add_option("--pred", cfg.predictions, "Prediction JSON file(s)");
        cmd->add_option("--truth", cfg.truth, "Ground-truth JSON file(s)");
        if (roster) cmd->add_option("--roster", cfg.roster, "Roster JSON (array of labels)");
        cmd->add_option("--counts", cfg.counts, "Per-image counts JSON, bypassing box matching");
        cmd->add_option("--iou", cfg.iou_min, "Minimum IoU for a box match")->capture_default_str();
        cmd->add_option("--format", format, "Output format")
            ->check(CLI::IsMember({"json", "table"}))
            ->capture_default_str();
        cmd->add_option("--output", cfg.output, "Write the report here instead of stdout");
    };
    add_eval(eval_cmd->add_subcommand("detect", "Detection accuracy report"), eval_detect, eval_detect_format,
             false);
    add_eval(eval_cmd->add_subcommand("recognize", "Recognition accuracy report"), eval_recognize,
             eval_recognize_format, true);

    auto* gallery_cmd = app.add_subcommand("gallery", "Inspect a gallery file");
    gallery_cmd->require_subcommand(1);
    auto* list_cmd = gallery_cmd->add_subcommand("list", "List gallery entries");
    list_cmd->add_option("--gallery", list.gallery, "Gallery file")->required();
    list_cmd->add_option("--format", list_format, "Output format")
        ->check(CLI::IsMember({"json", "table"}))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << deepest_parsed(&app)->help();
        return kBadFlags;
    }

    auto box_flag = [&](const std::string& text, std::optional<Rect>& target) {
        if (text.empty()) return true;
        target = parse_box(text);
        if (!target) err << "error: --box expects x,y,w,h with non-negative integers\n";
        return target.has_value();
    };
    auto format_of = [](const std::string& f) { return f == "table" ? OutputFormat::Table : OutputFormat::Json; };

    if (detect_cmd->parsed()) {
        detect.scan = detect_scan.params();
        return cmd_detect(detect, out, err);
    }
    if (enroll_cmd->parsed()) {
        if (!box_flag(enroll_box, enroll_cfg.box)) return kBadFlags;
        enroll_cfg.scan = enroll_scan.params();
        return cmd_enroll(enroll_cfg, out, err);
    }
    if (encode_cmd->parsed()) {
        if (!box_flag(encode_box, encode.box)) return kBadFlags;
        return cmd_encode(encode, out, err);
    }
    if (recognize_cmd->parsed()) {
        recognize.scan = recognize_scan.params();
        return cmd_recognize(recognize, out, err);
    }
    if (eval_cmd->parsed()) {
        if (eval_cmd->get_subcommand("detect")->parsed()) {
            eval_detect.format = format_of(eval_detect_format);
            return cmd_eval_detect(eval_detect, out, err);
        }
        eval_recognize.format = format_of(eval_recognize_format);
        return cmd_eval_recognize(eval_recognize, out, err);
    }
    list.format = format_of(list_format);
    return cmd_gallery_list(list, out, err);
}

}  // namespace facekit::cli
