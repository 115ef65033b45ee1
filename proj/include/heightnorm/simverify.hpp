#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "heightnorm/camera.hpp"
#include "heightnorm/image.hpp"
#include "heightnorm/pipeline.hpp"
#include "heightnorm/skeleton.hpp"

namespace heightnorm {

/// Simulation camera: 800 px focal length on a 512x512 sensor.
CameraModel default_sim_camera();

struct CaptureScenario {
    SubjectMeta subject;
    SkeletonTemplate tmpl = builtin_template(Gender::neutral);
    double distance = kReferenceRootDistance;  // camera to root, inches
    CameraModel sim_camera = default_sim_camera();
    /// Camera height above the floor; the subject's vertical midpoint if unset.
    std::optional<double> camera_height;
    /// Fraction of image rows cut from the bottom (no stretch-back).
    std::optional<double> truncation;
    double noise_px = 0.0;  // landmark jitter std-dev

    void validate() const;
};

struct Capture {
    ImageBuffer image;  // RGB stick figure on a gradient background
    MaskBuffer mask;
    Landmarks2D landmarks;
};

/// Renders the scenario. Joints outside the frame or below the truncation
/// line get visibility 0. Jitter is a pure function of `seed`.
/// Throws Error(geometry) if no joint lands inside the frame.
Capture simulate_capture(const CaptureScenario& s, std::uint64_t seed = 0);

namespace reference {
/// Serial stick-figure rasterizer (same output as the parallel one).
Capture simulate_capture(const CaptureScenario& s, std::uint64_t seed = 0);
}  // namespace reference

struct SuiteOptions {
    NormalizationConfig config;
    CameraModel sim_camera = default_sim_camera();
    Gender gender = Gender::neutral;
    double noise_px = 0.0;
    std::uint64_t seed = 0;
    /// Overrides the default pass threshold (0.5 px, or 1.0 px with noise or
    /// truncation).
    std::optional<double> tolerance_px;
};

struct SuiteCell {
    double height = 0.0;
    double truncation = 0.0;
    double tolerance_px = 0.0;
    /// Largest distance between the same joint's normalized positions over
    /// every pair of capture distances, counting joints visible in both.
    double max_pairwise_deviation = 0.0;
    /// Per joint: largest distance from its mean normalized position.
    JointArray<double> joint_spread{};
    std::vector<double> fitted_scales;
    std::vector<std::string> errors;
    bool passed = false;
};

struct InvarianceReport {
    std::vector<double> distances;
    std::vector<SuiteCell> cells;  // sorted by (height, truncation)

    bool passed() const;
};

/// Simulates every distance for each (height, truncation) cell and compares
/// the normalized landmarks. Cells run in parallel.
InvarianceReport run_invariance_suite(const std::vector<double>& distances,
                                      const std::vector<double>& heights,
                                      const std::vector<double>& truncations,
                                      const SuiteOptions& options = {});

nlohmann::json report_to_json(const InvarianceReport& r);
std::string report_to_text(const InvarianceReport& r);

}  // namespace heightnorm
