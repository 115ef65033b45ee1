#include "heightnorm/transform.hpp"

#include <cmath>
#include <string>

#include "heightnorm/error.hpp"

namespace heightnorm {

using nlohmann::json;

namespace {
constexpr double kMinDeterminant = 1e-12;
constexpr double kMinSpread = 1e-12;
constexpr double kMaxCondition = 1e10;
}  // namespace

std::string_view transform_kind_name(TransformKind k) {
    return k == TransformKind::scale_translate ? "scale_translate" : "full_affine";
}

std::optional<TransformKind> transform_kind_from_name(std::string_view name) {
    if (name == "scale_translate" || name == "scale-translate") return TransformKind::scale_translate;
    if (name == "full_affine" || name == "affine") return TransformKind::full_affine;
    return std::nullopt;
}

AffineTransform2D AffineTransform2D::scale_translate(double s, double tx, double ty) {
    return {TransformKind::scale_translate, {s, 0.0, tx, 0.0, s, ty}};
}

AffineTransform2D AffineTransform2D::affine(double a, double b, double tx, double c, double d,
                                            double ty) {
    return {TransformKind::full_affine, {a, b, tx, c, d, ty}};
}

AffineTransform2D AffineTransform2D::inverse() const {
    const double det = determinant();
    if (!(std::abs(det) > kMinDeterminant) || !std::isfinite(det)) {
        throw Error(ErrorKind::geometry, "transform is not invertible (det " + std::to_string(det) + ")");
    }
    const double ia = m[4] / det;
    const double ib = -m[1] / det;
    const double ic = -m[3] / det;
    const double id = m[0] / det;
    return {kind, {ia, ib, -(ia * m[2] + ib * m[5]), ic, id, -(ic * m[2] + id * m[5])}};
}

AffineTransform2D compose(const AffineTransform2D& outer, const AffineTransform2D& inner) {
    const auto& o = outer.m;
    const auto& i = inner.m;
    const TransformKind kind =
        outer.kind == TransformKind::scale_translate && inner.kind == TransformKind::scale_translate
            ? TransformKind::scale_translate
            : TransformKind::full_affine;
    return {kind,
            {o[0] * i[0] + o[1] * i[3], o[0] * i[1] + o[1] * i[4], o[0] * i[2] + o[1] * i[5] + o[2],
             o[3] * i[0] + o[4] * i[3], o[3] * i[1] + o[4] * i[4], o[3] * i[2] + o[4] * i[5] + o[5]}};
}

JointArray<double> correspondence_weights(const Landmarks2D& src, const Landmarks2D& dst,
                                          double vis_threshold) {
    JointArray<double> w{};
    for (JointId j : kAllJoints) {
        if (src.has(j) && dst.has(j)) {
            const double v = src.at(j).visibility;
            w[index_of(j)] = v >= vis_threshold ? v : 0.0;
        }
    }
    return w;
}

namespace {

struct WeightedCentroids {
    Vec2 src;
    Vec2 dst;
    double total = 0.0;
    int used = 0;
};

WeightedCentroids centroids(const Landmarks2D& src, const Landmarks2D& dst,
                            const JointArray<double>& w) {
    WeightedCentroids c;
    for (JointId j : kAllJoints) {
        const double wi = w[index_of(j)];
        if (wi <= 0.0) {
            continue;
        }
        c.src = c.src + wi * src.at(j).position();
        c.dst = c.dst + wi * dst.at(j).position();
        c.total += wi;
        ++c.used;
    }
    if (c.total > 0.0) {
        c.src = (1.0 / c.total) * c.src;
        c.dst = (1.0 / c.total) * c.dst;
    }
    return c;
}

[[noreturn]] void throw_insufficient(int used, int needed, double vis_threshold) {
    throw Error(ErrorKind::insufficient_correspondence,
                "need at least " + std::to_string(needed) +
                    " landmarks present in both sets with visibility >= " +
                    std::to_string(vis_threshold) + ", found " + std::to_string(used));
}

FitReport finish(const AffineTransform2D& t, const Landmarks2D& src, const Landmarks2D& dst,
                 const JointArray<double>& w, int used) {
    FitReport r;
    r.transform = t;
    r.weights = w;
    r.points_used = used;
    r.rms_residual = residual(t, src, dst, w);
    return r;
}

}  // namespace

FitReport fit_scale_translation(const Landmarks2D& src, const Landmarks2D& dst,
                                double vis_threshold) {
    const JointArray<double> w = correspondence_weights(src, dst, vis_threshold);
    const WeightedCentroids c = centroids(src, dst, w);
    if (c.used < 2) {
        throw_insufficient(c.used, 2, vis_threshold);
    }

    double cross = 0.0;
    double spread = 0.0;
    for (JointId j : kAllJoints) {
        const double wi = w[index_of(j)];
        if (wi <= 0.0) {
            continue;
        }
        const Vec2 dp = src.at(j).position() - c.src;
        const Vec2 dq = dst.at(j).position() - c.dst;
        cross += wi * dot(dp, dq);
        spread += wi * dot(dp, dp);
    }
    if (!(spread > kMinSpread)) {
        throw Error(ErrorKind::degenerate_configuration, "usable source landmarks coincide");
    }
    const double s = cross / spread;
    if (!(s > 0.0)) {
        throw Error(ErrorKind::degenerate_configuration,
                    "least-squares scale is not positive (" + std::to_string(s) + ")");
    }
    const Vec2 t = c.dst - s * c.src;
    return finish(AffineTransform2D::scale_translate(s, t.x, t.y), src, dst, w, c.used);
}

FitReport fit_full_affine(const Landmarks2D& src, const Landmarks2D& dst, double vis_threshold) {
    const JointArray<double> w = correspondence_weights(src, dst, vis_threshold);
    const WeightedCentroids c = centroids(src, dst, w);
    if (c.used < 3) {
        throw_insufficient(c.used, 3, vis_threshold);
    }

    // Centered normal equations: A = B C^-1 with C the weighted second moment
    // of the source and B the cross moment; translation follows from centroids.
    double cxx = 0.0, cxy = 0.0, cyy = 0.0;
    double bxx = 0.0, bxy = 0.0, byx = 0.0, byy = 0.0;
    for (JointId j : kAllJoints) {
        const double wi = w[index_of(j)];
        if (wi <= 0.0) {
            continue;
        }
        const Vec2 dp = src.at(j).position() - c.src;
        const Vec2 dq = dst.at(j).position() - c.dst;
        cxx += wi * dp.x * dp.x;
        cxy += wi * dp.x * dp.y;
        cyy += wi * dp.y * dp.y;
        bxx += wi * dq.x * dp.x;
        bxy += wi * dq.x * dp.y;
        byx += wi * dq.y * dp.x;
        byy += wi * dq.y * dp.y;
    }

    const double det = cxx * cyy - cxy * cxy;
    const double half_trace = 0.5 * (cxx + cyy);
    const double lambda_max = half_trace + std::hypot(0.5 * (cxx - cyy), cxy);
    const double lambda_min = lambda_max > 0.0 ? det / lambda_max : 0.0;
    if (!(lambda_min > 0.0) || lambda_max / lambda_min > kMaxCondition) {
        throw Error(ErrorKind::degenerate_configuration,
                    "usable source landmarks are collinear (normal matrix is ill-conditioned)");
    }

    const double a = (bxx * cyy - bxy * cxy) / det;
    const double b = (bxy * cxx - bxx * cxy) / det;
    const double cc = (byx * cyy - byy * cxy) / det;
    const double d = (byy * cxx - byx * cxy) / det;
    const double tx = c.dst.x - (a * c.src.x + b * c.src.y);
    const double ty = c.dst.y - (cc * c.src.x + d * c.src.y);
    return finish(AffineTransform2D::affine(a, b, tx, cc, d, ty), src, dst, w, c.used);
}

FitReport fit_transform(TransformKind kind, const Landmarks2D& src, const Landmarks2D& dst,
                        double vis_threshold) {
    return kind == TransformKind::scale_translate ? fit_scale_translation(src, dst, vis_threshold)
                                                  : fit_full_affine(src, dst, vis_threshold);
}

Landmarks2D apply_to_points(const AffineTransform2D& t, const Landmarks2D& pts) {
    Landmarks2D out;
    for (JointId j : pts.joints()) {
        const Keypoint& kp = pts.at(j);
        const Vec2 p = t.apply(kp.position());
        out.set(j, {p.x, p.y, kp.visibility});
    }
    return out;
}

double residual(const AffineTransform2D& t, const Landmarks2D& src, const Landmarks2D& dst,
                const JointArray<double>& weights) {
    double total = 0.0;
    double sum = 0.0;
    for (JointId j : kAllJoints) {
        const double wi = weights[index_of(j)];
        if (wi == 0.0 || !src.has(j) || !dst.has(j)) {
            continue;
        }
        if (wi < 0.0) {
            throw Error(ErrorKind::domain, "residual weights must be nonnegative");
        }
        const Vec2 e = t.apply(src.at(j).position()) - dst.at(j).position();
        sum += wi * dot(e, e);
        total += wi;
    }
    if (!(total > 0.0)) {
        throw Error(ErrorKind::domain, "residual weights sum to zero");
    }
    return std::sqrt(sum / total);
}

json fit_report_to_json(const FitReport& r) {
    const auto& m = r.transform.m;
    json weights = json::object();
    for (JointId j : kAllJoints) {
        weights[std::string(joint_name(j))] = r.weights[index_of(j)];
    }
    return json{{"kind", transform_kind_name(r.transform.kind)},
                {"matrix", {{m[0], m[1], m[2]}, {m[3], m[4], m[5]}}},
                {"rms_residual", r.rms_residual},
                {"points_used", r.points_used},
                {"weights", weights}};
}

}  // namespace heightnorm
