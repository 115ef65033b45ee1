#include "heightnorm/skeleton.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "heightnorm/error.hpp"

namespace heightnorm {

using nlohmann::json;

std::string_view gender_name(Gender g) {
    switch (g) {
    case Gender::female: return "female";
    case Gender::male: return "male";
    case Gender::neutral: return "neutral";
    }
    return "neutral";
}

std::optional<Gender> gender_from_name(std::string_view name) {
    if (name == "female") return Gender::female;
    if (name == "male") return Gender::male;
    if (name == "neutral") return Gender::neutral;
    return std::nullopt;
}

void SkeletonTemplate::validate() const {
    for (JointId j : kAllJoints) {
        if (!is_finite(at(j))) {
            throw Error(ErrorKind::validation,
                        "template joint '" + std::string(joint_name(j)) + "' is not finite");
        }
    }
    if (std::abs(at(JointId::head_top).y - 1.0) > 1e-6) {
        throw Error(ErrorKind::validation, "template head_top.y must be 1.0, got " +
                                               std::to_string(at(JointId::head_top).y));
    }
    const auto lowest = std::ranges::min(joints, {}, &Vec3::y);
    if (lowest.y < 0.0) {
        throw Error(ErrorKind::validation, "template joints must satisfy y >= 0");
    }
}

void SubjectMeta::validate() const {
    if (!(height > 0.0) || !(height <= kMaxSubjectHeight)) {
        throw Error(ErrorKind::domain, "subject height must be in (0, 108] inches, got " +
                                           std::to_string(height));
    }
}

namespace {

// Drillis-Contini segment ratios, fractions of standing height.
constexpr double kShoulderLevel = 0.818;
constexpr double kChinLevel = 0.870;
constexpr double kHipLevel = 0.530;
constexpr double kKneeLevel = 0.285;
constexpr double kAnkleLevel = 0.039;
constexpr double kShoulderWidth = 0.259;
constexpr double kHipWidth = 0.191;
constexpr double kUpperArm = 0.186;
constexpr double kForearm = 0.146;
constexpr double kArmAbduction = std::numbers::pi / 4.0;

SkeletonTemplate make_builtin(Gender g) {
    SkeletonTemplate t;
    t.gender = g;
    auto set = [&t](JointId j, double x, double y) { t.joints[index_of(j)] = {x, y, 0.0}; };

    set(JointId::head_top, 0.0, 1.0);
    set(JointId::neck, 0.0, 0.5 * (kChinLevel + kShoulderLevel));
    set(JointId::pelvis, 0.0, kHipLevel);

    const double arm_dx = std::sin(kArmAbduction);
    const double arm_dy = -std::cos(kArmAbduction);
    for (double side : {1.0, -1.0}) {
        const bool left = side > 0.0;
        const double sx = side * 0.5 * kShoulderWidth;
        const double hx = side * 0.5 * kHipWidth;
        set(left ? JointId::l_shoulder : JointId::r_shoulder, sx, kShoulderLevel);
        set(left ? JointId::l_elbow : JointId::r_elbow, sx + side * kUpperArm * arm_dx,
            kShoulderLevel + kUpperArm * arm_dy);
        set(left ? JointId::l_wrist : JointId::r_wrist,
            sx + side * (kUpperArm + kForearm) * arm_dx,
            kShoulderLevel + (kUpperArm + kForearm) * arm_dy);
        set(left ? JointId::l_hip : JointId::r_hip, hx, kHipLevel);
        set(left ? JointId::l_knee : JointId::r_knee, hx, kKneeLevel);
        set(left ? JointId::l_ankle : JointId::r_ankle, hx, kAnkleLevel);
    }
    return t;
}

}  // namespace

const SkeletonTemplate& builtin_template(Gender g) {
    static const SkeletonTemplate female = make_builtin(Gender::female);
    static const SkeletonTemplate male = make_builtin(Gender::male);
    static const SkeletonTemplate neutral = make_builtin(Gender::neutral);
    switch (g) {
    case Gender::female: return female;
    case Gender::male: return male;
    default: return neutral;
    }
}

SkeletonTemplate load_template(std::string_view json_text) {
    // nlohmann/json keeps the last of duplicated keys, so duplicates are
    // caught while parsing.
    std::vector<std::set<std::string>> seen;
    std::string duplicate;
    json::parser_callback_t on_event = [&](int, json::parse_event_t ev, json& parsed) {
        switch (ev) {
        case json::parse_event_t::object_start: seen.emplace_back(); break;
        case json::parse_event_t::object_end: seen.pop_back(); break;
        case json::parse_event_t::key:
            if (!seen.back().insert(parsed.get<std::string>()).second && duplicate.empty()) {
                duplicate = parsed.get<std::string>();
            }
            break;
        default: break;
        }
        return true;
    };

    json doc;
    try {
        doc = json::parse(json_text, on_event);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::schema, std::string("template is not valid JSON: ") + e.what());
    }
    if (!duplicate.empty()) {
        throw Error(ErrorKind::schema, "duplicate key '" + duplicate + "' in template");
    }
    if (!doc.is_object() || !doc.contains("joints") || !doc["joints"].is_object()) {
        throw Error(ErrorKind::schema, "template needs a \"joints\" object");
    }

    SkeletonTemplate t;
    if (doc.contains("gender")) {
        if (!doc["gender"].is_string()) {
            throw Error(ErrorKind::schema, "template \"gender\" must be a string");
        }
        auto g = gender_from_name(doc["gender"].get<std::string>());
        if (!g) {
            throw Error(ErrorKind::schema,
                        "unknown template gender '" + doc["gender"].get<std::string>() + "'");
        }
        t.gender = *g;
    }

    JointArray<bool> filled{};
    for (const auto& [name, value] : doc["joints"].items()) {
        auto j = joint_from_name(name);
        if (!j) {
            throw Error(ErrorKind::schema, "unknown joint '" + name + "' in template");
        }
        if (!value.is_array() || value.size() != 3 ||
            !std::ranges::all_of(value, [](const json& v) { return v.is_number(); })) {
            throw Error(ErrorKind::schema, "joint '" + name + "' must be [x, y, z]");
        }
        t.joints[index_of(*j)] = {value[0].get<double>(), value[1].get<double>(),
                                  value[2].get<double>()};
        filled[index_of(*j)] = true;
    }
    for (JointId j : kAllJoints) {
        if (!filled[index_of(j)]) {
            throw Error(ErrorKind::schema,
                        "template is missing joint '" + std::string(joint_name(j)) + "'");
        }
    }
    t.validate();
    return t;
}

SkeletonTemplate load_template_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::io, "cannot open template file " + path.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return load_template(buf.str());
}

std::string template_to_json(const SkeletonTemplate& t) {
    json joints = json::object();
    for (JointId j : kAllJoints) {
        const Vec3& p = t.at(j);
        joints[std::string(joint_name(j))] = {p.x, p.y, p.z};
    }
    return json{{"gender", gender_name(t.gender)}, {"joints", joints}}.dump(2);
}

Skeleton3D build_reference_skeleton(const SubjectMeta& meta, const SkeletonTemplate& tmpl) {
    meta.validate();
    if (tmpl.gender != Gender::neutral && tmpl.gender != meta.gender) {
        throw Error(ErrorKind::validation,
                    std::string("template gender '") + std::string(gender_name(tmpl.gender)) +
                        "' does not match subject gender '" +
                        std::string(gender_name(meta.gender)) + "'");
    }
    Skeleton3D skel;
    for (std::size_t i = 0; i < kJointCount; ++i) {
        skel.joints[i] = meta.height * tmpl.joints[i];
    }
    skel.root = kRootJoint;
    return skel;
}

}  // namespace heightnorm
