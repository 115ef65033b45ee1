#pragma once

#include "heightnorm/geometry.hpp"
#include "heightnorm/landmarks.hpp"
#include "heightnorm/skeleton.hpp"

namespace heightnorm {

/// Distance from the reference camera to the skeleton root, inches.
inline constexpr double kReferenceRootDistance = 70.0;
/// Tallest subject the reference camera is sized to contain, inches.
inline constexpr double kContainmentHeight = 78.0;
inline constexpr double kDefaultFillFraction = 0.9;

/// Pinhole camera with square pixels and no distortion.
struct CameraModel {
    double focal_px = 0.0;
    double cx = 0.0;
    double cy = 0.0;
    ImageDims dims{};
    double root_distance = kReferenceRootDistance;

    void validate() const;
};

/// Principal point at the image centre; focal length chosen so that a
/// 78-inch body at 70 inches spans `fill_fraction` of the image height.
CameraModel make_reference_camera(ImageDims dims, double fill_fraction = kDefaultFillFraction);

/// Camera placement relative to the skeleton: the optical axis is horizontal,
/// passes through the root's vertical line at height `eye_height` (world
/// inches) and the root sits at `depth` inches along it.
struct Viewpoint {
    double depth = kReferenceRootDistance;
    double eye_height = 0.0;
};

/// Vertical midpoint of the skeleton: halfway between the floor and head_top.
double vertical_midpoint(const Skeleton3D& skel);

/// Projects every joint from `view`. All visibilities are 1.
/// Throws Error(geometry) if a joint ends up at or behind the camera.
Landmarks2D project_from(const Skeleton3D& skel, const CameraModel& cam, const Viewpoint& view);

/// Designated target skeleton: root at `cam.root_distance`, vertical midpoint
/// on the principal point.
Landmarks2D project_skeleton(const Skeleton3D& skel, const CameraModel& cam);

/// True when the point lies inside [0, w-1] x [0, h-1].
bool inside_image(const Keypoint& kp, ImageDims dims);

/// Vertical band of height `fill_fraction * h` centred on cy, the span the
/// reference camera reserves for a 78-inch subject.
bool inside_fill_band(const Keypoint& kp, const CameraModel& cam, double fill_fraction,
                      double tol = 1e-9);

}  // namespace heightnorm
