#include "heightnorm/pipeline.hpp"

#include <fstream>
#include <set>
#include <string>

#include <omp.h>

#include "heightnorm/imageops.hpp"

namespace heightnorm {

using nlohmann::json;

namespace {

template <typename F>
auto staged(const char* stage, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const Error& e) {
        throw e.with_stage(stage);
    }
}

const SkeletonTemplate& pick_template(const SubjectMeta& meta, const NormalizationConfig& cfg) {
    return cfg.template_override ? *cfg.template_override : builtin_template(meta.gender);
}

}  // namespace

Landmarks2D designated_landmarks(const SubjectMeta& meta, ImageDims dims,
                                 const NormalizationConfig& cfg) {
    const Skeleton3D skel =
        staged("skeleton", [&] { return build_reference_skeleton(meta, pick_template(meta, cfg)); });
    return staged("camera", [&] {
        return project_skeleton(skel, make_reference_camera(dims, cfg.fill_fraction));
    });
}

NormalizationResult normalize_view(const ImageBuffer& img, const MaskBuffer& mask,
                                   const Landmarks2D& detected, const SubjectMeta& meta,
                                   const NormalizationConfig& cfg) {
    staged("input", [&] {
        meta.validate();
        if (img.dims() != mask.dims()) {
            throw Error(ErrorKind::domain, "image and mask dimensions differ");
        }
    });
    const ImageDims dims = cfg.image_dims.value_or(img.dims());

    NormalizationResult r;
    r.meta = meta;
    r.config = cfg;
    r.target_landmarks = designated_landmarks(meta, dims, cfg);
    r.fit = staged("fit", [&] {
        return fit_transform(cfg.transform_kind, detected, r.target_landmarks, cfg.vis_threshold);
    });
    const AffineTransform2D& t = r.fit.transform;
    r.normalized_landmarks = apply_to_points(t, detected);
    staged("warp", [&] {
        r.image = warp_image(img, t, dims);
        r.mask = warp_mask(mask, t, dims);
    });
    if (cfg.background_removal) {
        r.image = staged("background", [&] { return suppress_background(r.image, r.mask); });
    }
    return r;
}

std::vector<ViewOutcome> normalize_multi_view(std::span<const ViewInput> views,
                                              const SubjectMeta& meta,
                                              const NormalizationConfig& cfg, bool strict) {
    if (views.empty()) {
        throw Error(ErrorKind::domain, "at least one view is required");
    }
    std::vector<ViewOutcome> out(views.size());
    for (std::size_t i = 0; i < views.size(); ++i) {
        try {
            out[i].result = normalize_view(views[i].image, views[i].mask, views[i].landmarks, meta, cfg);
        } catch (const Error& e) {
            if (strict) {
                throw;
            }
            out[i].error = e;
        }
    }
    return out;
}

json result_to_json(const NormalizationResult& r) {
    const auto& cfg = r.config;
    json config{
        {"fill_fraction", cfg.fill_fraction},
        {"transform", transform_kind_name(cfg.transform_kind)},
        {"vis_threshold", cfg.vis_threshold},
        {"background_removal", cfg.background_removal},
        {"template", cfg.template_override ? "file" : "builtin"},
        {"image_dims", {r.image.width(), r.image.height()}},
        {"root_distance_in", kReferenceRootDistance},
        {"designated_placement", "root on the optical axis, body vertical midpoint at the principal point"},
    };
    return json{
        {"meta", {{"height", r.meta.height}, {"gender", gender_name(r.meta.gender)}}},
        {"config", config},
        {"fit", fit_report_to_json(r.fit)},
        {"target_landmarks", landmarks_to_json(r.target_landmarks)},
        {"normalized_landmarks", landmarks_to_json(r.normalized_landmarks)},
    };
}

std::vector<ManifestRecord> read_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::io, "cannot open manifest " + path.string());
    }
    const std::filesystem::path base = path.parent_path();
    auto resolve = [&base](const std::string& p) {
        std::filesystem::path fp(p);
        return fp.is_absolute() ? fp : base / fp;
    };

    std::vector<ManifestRecord> records;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        const std::string where = path.string() + ":" + std::to_string(line_no);
        json doc;
        try {
            doc = json::parse(line);
        } catch (const json::exception& e) {
            throw Error(ErrorKind::schema, where + ": " + e.what());
        }
        for (const char* key : {"image", "mask", "landmarks"}) {
            if (!doc.contains(key) || !doc[key].is_string()) {
                throw Error(ErrorKind::schema, where + ": missing string field \"" + key + "\"");
            }
        }
        if (!doc.contains("height") || !doc["height"].is_number()) {
            throw Error(ErrorKind::schema, where + ": missing numeric field \"height\"");
        }
        ManifestRecord rec;
        rec.image = resolve(doc["image"].get<std::string>());
        rec.mask = resolve(doc["mask"].get<std::string>());
        rec.landmarks = resolve(doc["landmarks"].get<std::string>());
        rec.meta.height = doc["height"].get<double>();
        if (doc.contains("gender")) {
            auto g = doc["gender"].is_string() ? gender_from_name(doc["gender"].get<std::string>())
                                               : std::nullopt;
            if (!g) {
                throw Error(ErrorKind::schema, where + ": unknown gender");
            }
            rec.meta.gender = *g;
        }
        records.push_back(std::move(rec));
    }
    return records;
}

json manifest_record_to_json(const ManifestRecord& rec) {
    return json{{"image", rec.image.string()},
                {"mask", rec.mask.string()},
                {"landmarks", rec.landmarks.string()},
                {"height", rec.meta.height},
                {"gender", gender_name(rec.meta.gender)}};
}

OutputPaths output_paths(const std::filesystem::path& out_dir, const std::filesystem::path& image) {
    const std::string stem = image.stem().string();
    return {out_dir / (stem + "_norm.png"), out_dir / (stem + "_mask.png"),
            out_dir / (stem + "_result.json")};
}

void process_record(const ManifestRecord& rec, const NormalizationConfig& cfg,
                    const std::filesystem::path& out_dir) {
    const ImageBuffer img = staged("load", [&] { return read_png_image(rec.image); });
    const MaskBuffer mask = staged("load", [&] { return read_png_mask(rec.mask); });
    const Landmarks2D lm = staged("load", [&] { return read_landmarks_file(rec.landmarks); });
    const NormalizationResult r = normalize_view(img, mask, lm, rec.meta, cfg);

    staged("write", [&] {
        const OutputPaths out = output_paths(out_dir, rec.image);
        write_png(out.image, r.image);
        write_png(out.mask, r.mask);
        std::ofstream js(out.result);
        if (!js) {
            throw Error(ErrorKind::io, "cannot write " + out.result.string());
        }
        js << result_to_json(r).dump(2) << '\n';
    });
}

std::vector<BatchOutcome> process_batch(std::span<const ManifestRecord> records,
                                        const NormalizationConfig& cfg,
                                        const std::filesystem::path& out_dir, int threads) {
    std::set<std::string> stems;
    for (const auto& rec : records) {
        if (!stems.insert(rec.image.stem().string()).second) {
            throw Error(ErrorKind::validation,
                        "two manifest images share the file stem '" + rec.image.stem().string() + "'");
        }
    }

    std::vector<BatchOutcome> out(records.size());
    const int n = static_cast<int>(records.size());
    const int team = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(team)
    for (int i = 0; i < n; ++i) {
        out[i].image = records[i].image;
        try {
            process_record(records[i], cfg, out_dir);
        } catch (const Error& e) {
            out[i].error = e;
        } catch (const std::exception& e) {
            out[i].error = Error(ErrorKind::io, e.what());
        }
    }
    return out;
}

}  // namespace heightnorm
