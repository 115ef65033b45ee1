// heightnorm: command-line front end for height normalization.
//
//   heightnorm normalize  single view or --manifest batch
//   heightnorm fit        transform between two landmark files
//   heightnorm augment    random bottom-occlusion of a manifest
//   heightnorm simulate   synthetic capture grid
//   heightnorm verify     distance-invariance suite
//   heightnorm metrics    TP90 table from prediction / ground-truth CSVs

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "heightnorm/augment.hpp"
#include "heightnorm/error.hpp"
#include "heightnorm/metrics.hpp"
#include "heightnorm/pipeline.hpp"
#include "heightnorm/simverify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace heightnorm;

namespace {

ImageDims parse_dims(const std::string& text) {
    int w = 0, h = 0;
    char x = 0;
    if (std::sscanf(text.c_str(), "%d%c%d", &w, &x, &h) != 3 || (x != 'x' && x != 'X')) {
        throw Error(ErrorKind::validation, "image dims must look like 512x512, got '" + text + "'");
    }
    return {w, h};
}

Gender parse_gender(const std::string& text) {
    auto g = gender_from_name(text);
    if (!g) {
        throw Error(ErrorKind::validation, "gender must be female, male or neutral");
    }
    return *g;
}

void write_json(const fs::path& path, const json& doc) {
    std::ofstream out(path);
    if (!out) {
        throw Error(ErrorKind::io, "cannot write " + path.string());
    }
    out << doc.dump(2) << '\n';
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw Error(ErrorKind::io, "cannot create " + dir.string() + ": " + ec.message());
    }
}

std::string sim_name(double h, double d, double t) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "sim_h%g_d%g_t%g", h, d, t);
    std::string s = buf;
    for (char& c : s) {
        if (c == '.') c = 'p';
    }
    return s;
}

// Manifests written next to their files reference them by name.
ManifestRecord relative_to_dir(ManifestRecord rec) {
    rec.image = rec.image.filename();
    rec.mask = rec.mask.filename();
    rec.landmarks = rec.landmarks.filename();
    return rec;
}

struct NormalizeArgs {
    std::string image, mask, landmarks, manifest, template_file;
    std::string gender = "neutral";
    std::string dims;
    std::string transform = "scale-translate";
    std::string out_dir = ".";
    double height = 0.0;
    double fill = kDefaultFillFraction;
    double vis_threshold = kDefaultVisibilityThreshold;
    bool no_background_removal = false;
    int threads = 0;
};

int run_normalize(const NormalizeArgs& a) {
    NormalizationConfig cfg;
    if (!a.dims.empty()) {
        cfg.image_dims = parse_dims(a.dims);
    }
    cfg.fill_fraction = a.fill;
    cfg.vis_threshold = a.vis_threshold;
    cfg.background_removal = !a.no_background_removal;
    auto kind = transform_kind_from_name(a.transform);
    if (!kind) {
        throw Error(ErrorKind::validation, "transform must be scale-translate or affine");
    }
    cfg.transform_kind = *kind;
    if (!a.template_file.empty()) {
        cfg.template_override = load_template_file(a.template_file);
    }
    ensure_dir(a.out_dir);

    if (!a.manifest.empty()) {
        const auto records = read_manifest(a.manifest);
        const auto outcomes = process_batch(records, cfg, a.out_dir, a.threads);
        int code = 0;
        for (const auto& o : outcomes) {
            if (o.error) {
                std::cerr << o.image.string() << ": " << o.error->what() << '\n';
                if (code == 0) code = exit_code_for(o.error->kind());
            }
        }
        std::cout << "normalized " << outcomes.size() << " record(s) into " << a.out_dir << '\n';
        return code;
    }

    if (a.image.empty() || a.mask.empty() || a.landmarks.empty()) {
        throw Error(ErrorKind::validation, "--image, --mask and --landmarks are required without --manifest");
    }
    ManifestRecord rec{a.image, a.mask, a.landmarks, {a.height, parse_gender(a.gender)}};
    process_record(rec, cfg, a.out_dir);
    const OutputPaths out = output_paths(a.out_dir, rec.image);
    std::cout << out.image.string() << '\n' << out.mask.string() << '\n' << out.result.string() << '\n';
    return 0;
}

int run_fit(const std::string& src, const std::string& dst, const std::string& transform,
            double thr, const std::string& out) {
    auto kind = transform_kind_from_name(transform);
    if (!kind) {
        throw Error(ErrorKind::validation, "transform must be scale-translate or affine");
    }
    const FitReport r = fit_transform(*kind, read_landmarks_file(src), read_landmarks_file(dst), thr);
    const json doc = fit_report_to_json(r);
    if (out.empty()) {
        std::cout << doc.dump(2) << '\n';
    } else {
        write_json(out, doc);
    }
    return 0;
}

int run_augment(const std::string& manifest, const std::string& out_dir, const OcclusionSpec& spec) {
    spec.validate();
    ensure_dir(out_dir);
    const auto records = read_manifest(manifest);
    std::vector<json> out_manifest(records.size());
    std::vector<std::optional<Error>> errors(records.size());
    const int n = static_cast<int>(records.size());
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) {
        try {
            const auto& rec = records[i];
            const double alpha = sample_occlusion(spec, static_cast<std::uint64_t>(i));
            const OccludedSample s = occlude_bottom(read_png_image(rec.image), read_png_mask(rec.mask),
                                                    read_landmarks_file(rec.landmarks), alpha);
            const std::string stem = rec.image.stem().string() + "_aug";
            const fs::path base = fs::path(out_dir) / stem;
            ManifestRecord aug{base.string() + ".png", base.string() + "_mask.png",
                               base.string() + "_landmarks.json", rec.meta};
            write_png(aug.image, s.image);
            write_png(aug.mask, s.mask);
            write_landmarks_file(aug.landmarks, s.landmarks);
            json sidecar = occlusion_sidecar(s);
            sidecar["sample_index"] = i;
            write_json(base.string() + ".json", sidecar);
            out_manifest[i] = manifest_record_to_json(relative_to_dir(aug));
        } catch (const Error& e) {
            errors[i] = e;
        }
    }
    std::ofstream mf(fs::path(out_dir) / "augmented.jsonl");
    int code = 0;
    for (int i = 0; i < n; ++i) {
        if (errors[i]) {
            std::cerr << records[i].image.string() << ": " << errors[i]->what() << '\n';
            if (code == 0) code = exit_code_for(errors[i]->kind());
        } else {
            mf << out_manifest[i].dump() << '\n';
        }
    }
    std::cout << "augmented " << n << " record(s) into " << out_dir << '\n';
    return code;
}

struct SimulateArgs {
    std::vector<double> heights{66.0};
    std::vector<double> distances{36, 48, 60, 72, 84, 96};
    std::vector<double> truncations{0.0};
    std::string gender = "neutral";
    std::string dims = "512x512";
    double focal = 800.0;
    double noise = 0.0;
    std::uint64_t seed = 0;
    std::string out_dir = "sim";
};

int run_simulate(const SimulateArgs& a) {
    ensure_dir(a.out_dir);
    CameraModel cam = default_sim_camera();
    cam.dims = parse_dims(a.dims);
    cam.cx = 0.5 * cam.dims.width;
    cam.cy = 0.5 * cam.dims.height;
    cam.focal_px = a.focal;
    const Gender g = parse_gender(a.gender);

    std::ofstream manifest(fs::path(a.out_dir) / "manifest.jsonl");
    std::uint64_t index = 0;
    for (double h : a.heights) {
        for (double t : a.truncations) {
            for (double d : a.distances) {
                CaptureScenario sc;
                sc.subject = {h, g};
                sc.tmpl = builtin_template(g);
                sc.distance = d;
                sc.sim_camera = cam;
                if (t > 0.0) sc.truncation = t;
                sc.noise_px = a.noise;
                const Capture c = simulate_capture(sc, a.seed + index++);
                const fs::path base = fs::path(a.out_dir) / sim_name(h, d, t);
                ManifestRecord rec{base.string() + ".png", base.string() + "_mask.png",
                                   base.string() + ".json", sc.subject};
                write_png(rec.image, c.image);
                write_png(rec.mask, c.mask);
                write_landmarks_file(rec.landmarks, c.landmarks);
                manifest << manifest_record_to_json(relative_to_dir(rec)).dump() << '\n';
            }
        }
    }
    std::cout << "wrote " << index << " capture(s) and manifest.jsonl to " << a.out_dir << '\n';
    return 0;
}

int run_verify(const SimulateArgs& a, const std::string& transform, std::optional<double> tol) {
    SuiteOptions opt;
    opt.gender = parse_gender(a.gender);
    opt.noise_px = a.noise;
    opt.seed = a.seed;
    opt.tolerance_px = tol;
    opt.sim_camera.focal_px = a.focal;
    auto kind = transform_kind_from_name(transform);
    if (!kind) {
        throw Error(ErrorKind::validation, "transform must be scale-translate or affine");
    }
    opt.config.transform_kind = *kind;
    const InvarianceReport r = run_invariance_suite(a.distances, a.heights, a.truncations, opt);
    ensure_dir(a.out_dir);
    write_json(fs::path(a.out_dir) / "verify_report.json", report_to_json(r));
    const std::string text = report_to_text(r);
    std::ofstream(fs::path(a.out_dir) / "verify_report.txt") << text;
    std::cout << text;
    return r.passed() ? 0 : 1;
}

int run_metrics(const std::string& pred, const std::string& gt, const std::string& out_csv,
                const std::string& out_json) {
    const Matrix errors = absolute_errors(read_csv_matrix(pred), read_csv_matrix(gt));
    const Tp90Result r = tp90(errors);
    const bool named = errors.cols == kMeasurementCount;
    auto name = [&](std::size_t i) {
        return named ? measurement_names()[i] : "col" + std::to_string(i);
    };

    json doc{{"percentile_rule", "nearest-rank, rank = ceil(0.9 n)"},
             {"subjects", errors.rows},
             {"overall", r.overall}};
    json per = json::object();
    for (std::size_t i = 0; i < r.per_measurement.size(); ++i) {
        per[name(i)] = r.per_measurement[i];
    }
    doc["tp90"] = per;
    if (!out_json.empty()) {
        write_json(out_json, doc);
    }
    if (!out_csv.empty()) {
        std::ofstream csv(out_csv);
        csv.precision(17);
        csv << "measurement,tp90\n";
        for (std::size_t i = 0; i < r.per_measurement.size(); ++i) {
            csv << name(i) << ',' << r.per_measurement[i] << '\n';
        }
        csv << (named ? "overall_59" : "overall") << ',' << r.overall << '\n';
    }
    std::printf("subjects %zu, measurements %zu, overall TP90 %.4f in\n", errors.rows, errors.cols,
                r.overall);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Height normalization for partial-view body images"};
    app.require_subcommand(1);

    NormalizeArgs norm;
    auto* normalize = app.add_subcommand("normalize", "Normalize one view, or a manifest batch");
    normalize->add_option("--image", norm.image, "Input PNG");
    normalize->add_option("--mask", norm.mask, "Subject mask PNG");
    normalize->add_option("--landmarks", norm.landmarks, "Detected landmarks JSON");
    normalize->add_option("--height", norm.height, "Subject height, inches");
    normalize->add_option("--gender", norm.gender, "female | male | neutral");
    normalize->add_option("--manifest", norm.manifest, "JSON-lines manifest for batch mode");
    normalize->add_option("--threads", norm.threads, "Batch worker threads (0 = default)");
    normalize->add_option("--image-dims", norm.dims, "Output size WxH (default: input size)");
    normalize->add_option("--transform", norm.transform, "scale-translate | affine");
    normalize->add_option("--fill", norm.fill, "Reference camera fill fraction");
    normalize->add_option("--vis-threshold", norm.vis_threshold, "Minimum landmark visibility");
    normalize->add_option("--template", norm.template_file, "Skeleton template JSON");
    normalize->add_flag("--no-background-removal", norm.no_background_removal);
    normalize->add_option("--out-dir", norm.out_dir, "Output directory");

    std::string fit_src, fit_dst, fit_out, fit_kind = "scale-translate";
    double fit_thr = kDefaultVisibilityThreshold;
    auto* fit = app.add_subcommand("fit", "Fit the transform taking --src landmarks onto --dst");
    fit->add_option("--src", fit_src)->required();
    fit->add_option("--dst", fit_dst)->required();
    fit->add_option("--transform", fit_kind);
    fit->add_option("--vis-threshold", fit_thr);
    fit->add_option("--out", fit_out, "Write the report here instead of stdout");

    OcclusionSpec spec;
    std::string aug_manifest, aug_out = "augmented";
    auto* augment = app.add_subcommand("augment", "Random bottom occlusion of a manifest");
    augment->add_option("--manifest", aug_manifest)->required();
    augment->add_option("--out-dir", aug_out);
    augment->add_option("--alpha-min", spec.alpha_min);
    augment->add_option("--alpha-max", spec.alpha_max);
    augment->add_option("--p-zero", spec.p_zero);
    augment->add_option("--seed", spec.seed);

    SimulateArgs sim;
    auto add_grid = [&sim](CLI::App* cmd) {
        cmd->add_option("--heights", sim.heights)->delimiter(',');
        cmd->add_option("--distances", sim.distances)->delimiter(',');
        cmd->add_option("--truncations", sim.truncations)->delimiter(',');
        cmd->add_option("--gender", sim.gender);
        cmd->add_option("--focal", sim.focal, "Simulation camera focal length, px");
        cmd->add_option("--noise", sim.noise, "Landmark jitter std-dev, px");
        cmd->add_option("--seed", sim.seed);
        cmd->add_option("--out-dir", sim.out_dir);
    };
    auto* simulate = app.add_subcommand("simulate", "Render a synthetic capture grid");
    add_grid(simulate);
    simulate->add_option("--dims", sim.dims, "Simulation image size WxH");

    std::string verify_kind = "scale-translate";
    std::optional<double> verify_tol;
    auto* verify = app.add_subcommand("verify", "Run the distance-invariance suite");
    add_grid(verify);
    verify->add_option("--transform", verify_kind);
    verify->add_option("--tolerance", verify_tol, "Pass threshold, px");

    std::string pred, gt, out_csv, out_json;
    auto* metrics = app.add_subcommand("metrics", "TP90 errors from prediction and ground-truth CSVs");
    metrics->add_option("--pred", pred)->required();
    metrics->add_option("--gt", gt)->required();
    metrics->add_option("--out-csv", out_csv);
    metrics->add_option("--out-json", out_json);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*normalize) return run_normalize(norm);
        if (*fit) return run_fit(fit_src, fit_dst, fit_kind, fit_thr, fit_out);
        if (*augment) return run_augment(aug_manifest, aug_out, spec);
        if (*simulate) return run_simulate(sim);
        if (*verify) {
            if (verify->count("--out-dir") == 0) sim.out_dir = "verify";
            return run_verify(sim, verify_kind, verify_tol);
        }
        if (*metrics) return run_metrics(pred, gt, out_csv, out_json);
    } catch (const Error& e) {
        std::cerr << "heightnorm: " << e.what() << '\n';
        return exit_code_for(e.kind());
    }
    return 0;
}
