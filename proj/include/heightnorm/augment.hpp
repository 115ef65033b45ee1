#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "heightnorm/image.hpp"
#include "heightnorm/landmarks.hpp"

namespace heightnorm {

/// Occlusion level sampling. alpha is the fraction of image rows removed
/// from the bottom; p_zero is the chance of keeping the full image.
struct OcclusionSpec {
    double alpha_min = 0.0;
    double alpha_max = 0.4;
    double p_zero = 0.1;
    std::uint64_t seed = 0;

    /// Throws Error(domain) unless 0 <= alpha_min <= alpha_max < 1 and
    /// 0 <= p_zero <= 1.
    void validate() const;
};

/// Draw number `index` of the stream keyed by spec.seed. Returns exactly 0
/// with probability p_zero, otherwise uniform on [alpha_min, alpha_max).
double sample_occlusion(const OcclusionSpec& spec, std::uint64_t index);

/// ceil(alpha * height).
int removed_rows(int height, double alpha);

struct OccludedSample {
    ImageBuffer image;
    MaskBuffer mask;
    Landmarks2D landmarks;
    double alpha = 0.0;
    int removed_rows = 0;
    std::vector<JointId> invisible_joints;  // present joints with visibility 0 after cropping
};

/// Removes the bottom ceil(alpha*h) rows and stretches the rest back to the
/// original height (bilinear image, nearest mask). Landmarks follow the same
/// map; joints below the last kept row become invisible.
OccludedSample occlude_bottom(const ImageBuffer& img, const MaskBuffer& mask,
                              const Landmarks2D& landmarks, double alpha);

/// Vertical map used by occlude_bottom: y_out = y_in * (h - 1) / (h - r - 1).
double occlusion_stretch(int height, int removed);

/// `{"alpha": .., "removed_rows": .., "invisible_joints": [..]}`
nlohmann::json occlusion_sidecar(const OccludedSample& s);

}  // namespace heightnorm
