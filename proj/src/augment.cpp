#include "heightnorm/augment.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "heightnorm/error.hpp"
#include "heightnorm/imageops.hpp"
#include "heightnorm/random.hpp"

namespace heightnorm {

void OcclusionSpec::validate() const {
    if (!(alpha_min >= 0.0 && alpha_min <= alpha_max && alpha_max < 1.0)) {
        throw Error(ErrorKind::domain, "occlusion bounds must satisfy 0 <= alpha_min <= alpha_max < 1");
    }
    if (!(p_zero >= 0.0 && p_zero <= 1.0)) {
        throw Error(ErrorKind::domain, "p_zero must be in [0, 1]");
    }
}

double sample_occlusion(const OcclusionSpec& spec, std::uint64_t index) {
    spec.validate();
    const CounterStream stream(spec.seed);
    if (stream.uniform(index, 0) < spec.p_zero) {
        return 0.0;
    }
    return spec.alpha_min + stream.uniform(index, 1) * (spec.alpha_max - spec.alpha_min);
}

int removed_rows(int height, double alpha) {
    return static_cast<int>(std::ceil(alpha * height));
}

double occlusion_stretch(int height, int removed) {
    return (height - 1.0) / (height - removed - 1.0);
}

namespace {
std::vector<JointId> invisible(const Landmarks2D& lm) {
    std::vector<JointId> out;
    for (JointId j : lm.joints()) {
        if (lm.at(j).visibility == 0.0) {
            out.push_back(j);
        }
    }
    return out;
}
}  // namespace

OccludedSample occlude_bottom(const ImageBuffer& img, const MaskBuffer& mask,
                              const Landmarks2D& landmarks, double alpha) {
    if (!(alpha >= 0.0 && alpha < 1.0)) {
        throw Error(ErrorKind::domain, "occlusion level must be in [0, 1), got " + std::to_string(alpha));
    }
    if (img.dims() != mask.dims()) {
        throw Error(ErrorKind::domain, "image and mask dimensions differ");
    }

    OccludedSample out;
    out.alpha = alpha;
    const int h = img.height();
    const int w = img.width();
    const int removed = removed_rows(h, alpha);
    out.removed_rows = removed;
    if (removed == 0) {
        out.image = img;
        out.mask = mask;
        out.landmarks = landmarks;
        out.invisible_joints = invisible(landmarks);
        return out;
    }
    const int kept = h - removed;
    if (kept < 2) {
        throw Error(ErrorKind::domain, "occlusion level " + std::to_string(alpha) +
                                           " leaves fewer than 2 rows");
    }

    ImageBuffer crop(w, kept, img.channels());
    MaskBuffer crop_mask(w, kept);
    for (int y = 0; y < kept; ++y) {
        std::copy_n(img.row(y), static_cast<std::size_t>(w) * img.channels(), crop.row(y));
        std::copy_n(mask.row(y), static_cast<std::size_t>(w), crop_mask.row(y));
    }

    const auto stretch = AffineTransform2D::affine(1.0, 0.0, 0.0, 0.0, occlusion_stretch(h, removed), 0.0);
    out.image = warp_image(crop, stretch, img.dims());
    out.mask = warp_mask(crop_mask, stretch, img.dims());

    const double last_kept = kept - 1.0;
    for (JointId j : landmarks.joints()) {
        const Keypoint& kp = landmarks.at(j);
        const Vec2 p = stretch.apply(kp.position());
        out.landmarks.set(j, {p.x, p.y, kp.y > last_kept ? 0.0 : kp.visibility});
    }
    out.invisible_joints = invisible(out.landmarks);
    return out;
}

nlohmann::json occlusion_sidecar(const OccludedSample& s) {
    nlohmann::json names = nlohmann::json::array();
    for (JointId j : s.invisible_joints) {
        names.push_back(joint_name(j));
    }
    return {{"alpha", s.alpha}, {"removed_rows", s.removed_rows}, {"invisible_joints", names}};
}

}  // namespace heightnorm
