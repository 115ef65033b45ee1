#include "heightnorm/camera.hpp"

#include <cmath>
#include <string>

#include "heightnorm/error.hpp"

namespace heightnorm {

void CameraModel::validate() const {
    if (dims.width <= 0 || dims.height <= 0) {
        throw Error(ErrorKind::domain, "camera image dimensions must be positive");
    }
    if (!(focal_px > 0.0) || !std::isfinite(focal_px)) {
        throw Error(ErrorKind::domain, "camera focal length must be positive");
    }
    if (!(cx >= 0.0 && cx < dims.width && cy >= 0.0 && cy < dims.height)) {
        throw Error(ErrorKind::domain, "principal point must lie inside the image");
    }
    if (!(root_distance > 0.0) || !std::isfinite(root_distance)) {
        throw Error(ErrorKind::domain, "root distance must be positive");
    }
}

CameraModel make_reference_camera(ImageDims dims, double fill_fraction) {
    if (dims.width <= 0 || dims.height <= 0) {
        throw Error(ErrorKind::domain, "image dimensions must be positive, got " +
                                           std::to_string(dims.width) + "x" +
                                           std::to_string(dims.height));
    }
    if (!(fill_fraction > 0.0 && fill_fraction <= 1.0)) {
        throw Error(ErrorKind::domain, "fill fraction must be in (0, 1]");
    }
    CameraModel cam;
    cam.dims = dims;
    cam.cx = 0.5 * dims.width;
    cam.cy = 0.5 * dims.height;
    cam.root_distance = kReferenceRootDistance;
    // span = f * H / Z: a 78-inch subject at the root distance covers fill * height.
    cam.focal_px = fill_fraction * dims.height * kReferenceRootDistance / kContainmentHeight;
    return cam;
}

double vertical_midpoint(const Skeleton3D& skel) {
    // The floor (y = 0) is the lower extent; ankles sit above it.
    return 0.5 * skel.at(JointId::head_top).y;
}

Landmarks2D project_from(const Skeleton3D& skel, const CameraModel& cam, const Viewpoint& view) {
    cam.validate();
    const Vec3& root = skel.at(skel.root);
    Landmarks2D out;
    for (JointId j : kAllJoints) {
        const Vec3& p = skel.at(j);
        if (!is_finite(p)) {
            throw Error(ErrorKind::geometry, "joint '" + std::string(joint_name(j)) + "' is not finite");
        }
        const double x = p.x - root.x;
        const double y = p.y - view.eye_height;
        const double z = view.depth + (p.z - root.z);
        if (!(z > 0.0)) {
            throw Error(ErrorKind::geometry,
                        "joint '" + std::string(joint_name(j)) + "' is at or behind the camera");
        }
        out.set(j, {cam.cx + cam.focal_px * x / z, cam.cy - cam.focal_px * y / z, 1.0});
    }
    return out;
}

Landmarks2D project_skeleton(const Skeleton3D& skel, const CameraModel& cam) {
    return project_from(skel, cam, {cam.root_distance, vertical_midpoint(skel)});
}

bool inside_image(const Keypoint& kp, ImageDims dims) {
    return kp.x >= 0.0 && kp.x <= dims.width - 1.0 && kp.y >= 0.0 && kp.y <= dims.height - 1.0;
}

bool inside_fill_band(const Keypoint& kp, const CameraModel& cam, double fill_fraction, double tol) {
    const double half = 0.5 * fill_fraction * cam.dims.height;
    return std::abs(kp.y - cam.cy) <= half + tol;
}

}  // namespace heightnorm
