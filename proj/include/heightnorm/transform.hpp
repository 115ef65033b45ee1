#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "heightnorm/geometry.hpp"
#include "heightnorm/landmarks.hpp"

namespace heightnorm {

enum class TransformKind { scale_translate, full_affine };

std::string_view transform_kind_name(TransformKind k);
std::optional<TransformKind> transform_kind_from_name(std::string_view name);

inline constexpr double kDefaultVisibilityThreshold = 0.5;

/// 2x3 matrix, row-major [a b tx; c d ty], mapping p -> M * [p; 1].
struct AffineTransform2D {
    TransformKind kind = TransformKind::scale_translate;
    std::array<double, 6> m{1.0, 0.0, 0.0, 0.0, 1.0, 0.0};

    static AffineTransform2D identity() { return {}; }
    static AffineTransform2D scale_translate(double s, double tx, double ty);
    static AffineTransform2D affine(double a, double b, double tx, double c, double d, double ty);

    double a() const { return m[0]; }
    double b() const { return m[1]; }
    double tx() const { return m[2]; }
    double c() const { return m[3]; }
    double d() const { return m[4]; }
    double ty() const { return m[5]; }

    Vec2 apply(Vec2 p) const { return {m[0] * p.x + m[1] * p.y + m[2], m[3] * p.x + m[4] * p.y + m[5]}; }
    double determinant() const { return m[0] * m[4] - m[1] * m[3]; }

    /// Throws Error(geometry) when |det| <= 1e-12.
    AffineTransform2D inverse() const;

    friend bool operator==(const AffineTransform2D&, const AffineTransform2D&) = default;
};

/// outer(inner(p)). The result is scale_translate only if both are.
AffineTransform2D compose(const AffineTransform2D& outer, const AffineTransform2D& inner);

struct FitReport {
    AffineTransform2D transform;
    double rms_residual = 0.0;  // px, weighted
    int points_used = 0;
    JointArray<double> weights{};
};

/// Per-joint fitting weights: the source visibility when it reaches
/// `vis_threshold` and the joint is present in both sets, otherwise 0.
JointArray<double> correspondence_weights(const Landmarks2D& src, const Landmarks2D& dst,
                                          double vis_threshold);

/// Weighted least-squares uniform scale + translation taking src onto dst.
FitReport fit_scale_translation(const Landmarks2D& src, const Landmarks2D& dst,
                                double vis_threshold = kDefaultVisibilityThreshold);

/// Weighted least-squares 6-DOF affine map taking src onto dst.
FitReport fit_full_affine(const Landmarks2D& src, const Landmarks2D& dst,
                          double vis_threshold = kDefaultVisibilityThreshold);

FitReport fit_transform(TransformKind kind, const Landmarks2D& src, const Landmarks2D& dst,
                        double vis_threshold = kDefaultVisibilityThreshold);

/// Maps every point; visibilities are kept.
Landmarks2D apply_to_points(const AffineTransform2D& t, const Landmarks2D& pts);

/// sqrt(sum w_i |T(p_i) - q_i|^2 / sum w_i). Joints missing from either set
/// are skipped. Throws Error(domain) when the weights sum to zero.
double residual(const AffineTransform2D& t, const Landmarks2D& src, const Landmarks2D& dst,
                const JointArray<double>& weights);

nlohmann::json fit_report_to_json(const FitReport& r);

}  // namespace heightnorm
