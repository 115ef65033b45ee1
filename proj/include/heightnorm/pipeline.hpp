#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "heightnorm/camera.hpp"
#include "heightnorm/error.hpp"
#include "heightnorm/image.hpp"
#include "heightnorm/skeleton.hpp"
#include "heightnorm/transform.hpp"

namespace heightnorm {

struct NormalizationConfig {
    /// Output canvas and reference camera size; defaults to the input image.
    std::optional<ImageDims> image_dims;
    double fill_fraction = kDefaultFillFraction;
    TransformKind transform_kind = TransformKind::scale_translate;
    double vis_threshold = kDefaultVisibilityThreshold;
    bool background_removal = true;
    /// Built-in template for the subject's gender when empty.
    std::optional<SkeletonTemplate> template_override;
};

struct NormalizationResult {
    ImageBuffer image;
    MaskBuffer mask;
    FitReport fit;
    Landmarks2D target_landmarks;
    Landmarks2D normalized_landmarks;
    SubjectMeta meta;
    NormalizationConfig config;
};

/// Reference camera + projected skeleton for a subject.
Landmarks2D designated_landmarks(const SubjectMeta& meta, ImageDims dims,
                                 const NormalizationConfig& cfg);

/// Fits detected -> designated skeleton, warps image and mask onto the
/// designated location and optionally blanks the background. Errors carry
/// the failing stage in Error::stage().
NormalizationResult normalize_view(const ImageBuffer& img, const MaskBuffer& mask,
                                   const Landmarks2D& detected, const SubjectMeta& meta,
                                   const NormalizationConfig& cfg);

struct ViewInput {
    ImageBuffer image;
    MaskBuffer mask;
    Landmarks2D landmarks;
};

struct ViewOutcome {
    std::optional<NormalizationResult> result;
    std::optional<Error> error;

    bool ok() const { return result.has_value(); }
};

/// Normalizes each view independently with the same subject and config.
/// With `strict`, the first failure is rethrown; otherwise failures are
/// reported per view. Throws Error(domain) for an empty list.
std::vector<ViewOutcome> normalize_multi_view(std::span<const ViewInput> views,
                                              const SubjectMeta& meta,
                                              const NormalizationConfig& cfg,
                                              bool strict = false);

nlohmann::json result_to_json(const NormalizationResult& r);

// Batch processing over a manifest of JSON lines:
// {"image": .., "mask": .., "landmarks": .., "height": .., "gender": ..}
struct ManifestRecord {
    std::filesystem::path image;
    std::filesystem::path mask;
    std::filesystem::path landmarks;
    SubjectMeta meta;
};

std::vector<ManifestRecord> read_manifest(const std::filesystem::path& path);
nlohmann::json manifest_record_to_json(const ManifestRecord& rec);

struct BatchOutcome {
    std::filesystem::path image;
    std::optional<Error> error;
};

/// Output file names for a record: <stem>_norm.png, <stem>_mask.png,
/// <stem>_result.json.
struct OutputPaths {
    std::filesystem::path image;
    std::filesystem::path mask;
    std::filesystem::path result;
};
OutputPaths output_paths(const std::filesystem::path& out_dir, const std::filesystem::path& image);

/// Loads, normalizes and writes one record.
void process_record(const ManifestRecord& rec, const NormalizationConfig& cfg,
                    const std::filesystem::path& out_dir);

/// Runs process_record over all records on `threads` OpenMP threads
/// (0 = runtime default). Outputs do not depend on the thread count.
std::vector<BatchOutcome> process_batch(std::span<const ManifestRecord> records,
                                        const NormalizationConfig& cfg,
                                        const std::filesystem::path& out_dir, int threads = 0);

}  // namespace heightnorm
