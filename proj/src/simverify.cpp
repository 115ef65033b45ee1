#include "heightnorm/simverify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "heightnorm/augment.hpp"
#include "heightnorm/error.hpp"
#include "heightnorm/random.hpp"
#include "kernels.hpp"

namespace heightnorm {

using nlohmann::json;

CameraModel default_sim_camera() {
    CameraModel cam;
    cam.dims = {512, 512};
    cam.focal_px = 800.0;
    cam.cx = 256.0;
    cam.cy = 256.0;
    return cam;
}

void CaptureScenario::validate() const {
    subject.validate();
    tmpl.validate();
    sim_camera.validate();
    if (!(distance > 0.0) || !std::isfinite(distance)) {
        throw Error(ErrorKind::domain, "capture distance must be positive");
    }
    if (truncation && !(*truncation >= 0.0 && *truncation < 1.0)) {
        throw Error(ErrorKind::domain, "truncation must be in [0, 1)");
    }
    if (!(noise_px >= 0.0)) {
        throw Error(ErrorKind::domain, "noise_px must be nonnegative");
    }
}

namespace {

// Stick-figure proportions, fractions of subject height.
constexpr double kLimbRadius = 0.02;
constexpr double kHeadRadius = 0.065;

struct Figure {
    std::array<std::array<Vec2, 2>, kLimbs.size()> segments;
    double limb_radius_px = 0.0;
    Vec2 head_center;
    double head_radius_px = 0.0;
    int cut_row = 0;  // rows at and below are blanked
};

double segment_distance_sq(Vec2 p, Vec2 a, Vec2 b) {
    const Vec2 ab = b - a;
    const double len_sq = dot(ab, ab);
    double t = len_sq > 0.0 ? dot(p - a, ab) / len_sq : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const Vec2 e = p - (a + t * ab);
    return dot(e, e);
}

void render_row(const Figure& fig, int y, ImageDims dims, std::uint8_t* img_row, std::uint8_t* mask_row) {
    const double limb_sq = fig.limb_radius_px * fig.limb_radius_px;
    const double head_sq = fig.head_radius_px * fig.head_radius_px;
    for (int x = 0; x < dims.width; ++x) {
        std::uint8_t* px = img_row + 3 * static_cast<std::size_t>(x);
        if (y >= fig.cut_row) {
            px[0] = px[1] = px[2] = 0;
            mask_row[x] = MaskBuffer::kBackground;
            continue;
        }
        const Vec2 p{static_cast<double>(x), static_cast<double>(y)};
        bool subject = dot(p - fig.head_center, p - fig.head_center) <= head_sq;
        for (std::size_t k = 0; !subject && k < fig.segments.size(); ++k) {
            subject = segment_distance_sq(p, fig.segments[k][0], fig.segments[k][1]) <= limb_sq;
        }
        if (subject) {
            px[0] = 230;
            px[1] = 190;
            px[2] = 160;
        } else {
            px[0] = detail::round_to_u8(60.0 + 80.0 * y / dims.height);
            px[1] = detail::round_to_u8(70.0 + 40.0 * x / dims.width);
            px[2] = 90;
        }
        mask_row[x] = subject ? MaskBuffer::kSubject : MaskBuffer::kBackground;
    }
}

struct Prepared {
    Figure figure;
    Landmarks2D landmarks;
    ImageDims dims;
};

Prepared prepare(const CaptureScenario& s, std::uint64_t seed) {
    s.validate();
    const Skeleton3D skel = build_reference_skeleton(s.subject, s.tmpl);
    const CameraModel& cam = s.sim_camera;
    const Viewpoint view{s.distance, s.camera_height.value_or(vertical_midpoint(skel))};
    const Landmarks2D projected = project_from(skel, cam, view);

    Prepared out;
    out.dims = cam.dims;
    Figure& fig = out.figure;
    for (std::size_t k = 0; k < kLimbs.size(); ++k) {
        fig.segments[k] = {projected.at(kLimbs[k][0]).position(), projected.at(kLimbs[k][1]).position()};
    }
    fig.limb_radius_px = cam.focal_px * kLimbRadius * s.subject.height / s.distance;
    const double head_r = kHeadRadius * s.subject.height;
    Skeleton3D head = skel;
    head.joints[index_of(JointId::head_top)].y -= head_r;
    fig.head_center = project_from(head, cam, view).at(JointId::head_top).position();
    fig.head_radius_px = cam.focal_px * head_r / s.distance;

    const int h = cam.dims.height;
    fig.cut_row = h - (s.truncation ? removed_rows(h, *s.truncation) : 0);

    bool any_in_frame = false;
    const CounterStream jitter(seed);
    for (JointId j : kAllJoints) {
        Keypoint kp = projected.at(j);
        const bool in_frame = inside_image(kp, cam.dims);
        any_in_frame = any_in_frame || in_frame;
        const bool above_cut = kp.y <= fig.cut_row - 1.0;
        kp.visibility = in_frame && above_cut ? 1.0 : 0.0;
        if (s.noise_px > 0.0) {
            kp.x += s.noise_px * jitter.normal(index_of(j), 0);
            kp.y += s.noise_px * jitter.normal(index_of(j), 1);
        }
        out.landmarks.set(j, kp);
    }
    if (!any_in_frame) {
        throw Error(ErrorKind::geometry, "subject projects entirely outside the frame");
    }
    return out;
}

}  // namespace

Capture simulate_capture(const CaptureScenario& s, std::uint64_t seed) {
    const Prepared p = prepare(s, seed);
    Capture c{ImageBuffer(p.dims.width, p.dims.height, 3), MaskBuffer(p.dims.width, p.dims.height),
              p.landmarks};
#pragma omp parallel for schedule(static)
    for (int y = 0; y < p.dims.height; ++y) {
        render_row(p.figure, y, p.dims, c.image.row(y), c.mask.row(y));
    }
    return c;
}

namespace reference {
Capture simulate_capture(const CaptureScenario& s, std::uint64_t seed) {
    const Prepared p = prepare(s, seed);
    Capture c{ImageBuffer(p.dims.width, p.dims.height, 3), MaskBuffer(p.dims.width, p.dims.height),
              p.landmarks};
    for (int y = 0; y < p.dims.height; ++y) {
        render_row(p.figure, y, p.dims, c.image.row(y), c.mask.row(y));
    }
    return c;
}
}  // namespace reference

bool InvarianceReport::passed() const {
    return !cells.empty() && std::ranges::all_of(cells, &SuiteCell::passed);
}

namespace {

SuiteCell run_cell(const std::vector<double>& distances, double height, double truncation,
                   const SuiteOptions& opt) {
    SuiteCell cell;
    cell.height = height;
    cell.truncation = truncation;
    cell.tolerance_px =
        opt.tolerance_px.value_or(opt.noise_px > 0.0 || truncation > 0.0 ? 1.0 : 0.5);

    std::vector<Landmarks2D> normalized;
    for (std::size_t i = 0; i < distances.size(); ++i) {
        char label[64];
        std::snprintf(label, sizeof label, "distance %g: ", distances[i]);
        try {
            CaptureScenario sc;
            sc.subject = {height, opt.gender};
            sc.tmpl = opt.config.template_override.value_or(builtin_template(opt.gender));
            sc.distance = distances[i];
            sc.sim_camera = opt.sim_camera;
            if (truncation > 0.0) {
                sc.truncation = truncation;
            }
            sc.noise_px = opt.noise_px;
            const Capture cap = simulate_capture(sc, opt.seed + i);
            const NormalizationResult r =
                normalize_view(cap.image, cap.mask, cap.landmarks, sc.subject, opt.config);
            normalized.push_back(r.normalized_landmarks);
            cell.fitted_scales.push_back(r.fit.transform.a());
        } catch (const Error& e) {
            cell.errors.push_back(label + std::string(e.what()));
        }
    }

    const double thr = opt.config.vis_threshold;
    auto usable = [thr](const Landmarks2D& lm, JointId j) {
        return lm.has(j) && lm.at(j).visibility >= thr;
    };
    for (std::size_t a = 0; a < normalized.size(); ++a) {
        for (std::size_t b = a + 1; b < normalized.size(); ++b) {
            for (JointId j : kAllJoints) {
                if (usable(normalized[a], j) && usable(normalized[b], j)) {
                    const double dev = norm(normalized[a].at(j).position() - normalized[b].at(j).position());
                    cell.max_pairwise_deviation = std::max(cell.max_pairwise_deviation, dev);
                }
            }
        }
    }
    for (JointId j : kAllJoints) {
        Vec2 mean;
        int n = 0;
        for (const auto& lm : normalized) {
            if (usable(lm, j)) {
                mean = mean + lm.at(j).position();
                ++n;
            }
        }
        if (n == 0) {
            continue;
        }
        mean = (1.0 / n) * mean;
        double spread = 0.0;
        for (const auto& lm : normalized) {
            if (usable(lm, j)) {
                spread = std::max(spread, norm(lm.at(j).position() - mean));
            }
        }
        cell.joint_spread[index_of(j)] = spread;
    }
    cell.passed = cell.errors.empty() && cell.max_pairwise_deviation < cell.tolerance_px;
    return cell;
}

}  // namespace

InvarianceReport run_invariance_suite(const std::vector<double>& distances,
                                      const std::vector<double>& heights,
                                      const std::vector<double>& truncations,
                                      const SuiteOptions& options) {
    if (distances.empty() || heights.empty() || truncations.empty()) {
        throw Error(ErrorKind::domain, "distance, height and truncation lists must be non-empty");
    }
    std::vector<std::pair<double, double>> keys;
    for (double h : heights) {
        for (double t : truncations) {
            keys.emplace_back(h, t);
        }
    }
    std::ranges::sort(keys);

    InvarianceReport report;
    report.distances = distances;
    report.cells.resize(keys.size());
    const int n = static_cast<int>(keys.size());
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) {
        report.cells[i] = run_cell(distances, keys[i].first, keys[i].second, options);
    }
    return report;
}

json report_to_json(const InvarianceReport& r) {
    json cells = json::array();
    for (const SuiteCell& c : r.cells) {
        json spread = json::object();
        for (JointId j : kAllJoints) {
            spread[std::string(joint_name(j))] = c.joint_spread[index_of(j)];
        }
        cells.push_back({{"height", c.height},
                         {"truncation", c.truncation},
                         {"tolerance_px", c.tolerance_px},
                         {"max_pairwise_deviation_px", c.max_pairwise_deviation},
                         {"joint_spread_px", spread},
                         {"fitted_scales", c.fitted_scales},
                         {"errors", c.errors},
                         {"passed", c.passed}});
    }
    return json{{"distances", r.distances}, {"cells", cells}, {"passed", r.passed()}};
}

std::string report_to_text(const InvarianceReport& r) {
    std::ostringstream out;
    out << "distances:";
    for (double d : r.distances) {
        out << ' ' << d;
    }
    out << '\n';
    for (const SuiteCell& c : r.cells) {
        char line[160];
        std::snprintf(line, sizeof line, "H=%-5g trunc=%-4g max deviation %.3e px (tol %g) %s\n",
                      c.height, c.truncation, c.max_pairwise_deviation, c.tolerance_px,
                      c.passed ? "PASS" : "FAIL");
        out << line;
        for (const auto& e : c.errors) {
            out << "    " << e << '\n';
        }
    }
    out << (r.passed() ? "suite PASSED" : "suite FAILED") << '\n';
    return out.str();
}

}  // namespace heightnorm
