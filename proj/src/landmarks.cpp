#include "heightnorm/landmarks.hpp"

#include <cmath>
#include <fstream>

#include "heightnorm/error.hpp"

namespace heightnorm {

using nlohmann::json;

const Keypoint& Landmarks2D::at(JointId j) const {
    const auto& p = points_[index_of(j)];
    if (!p) {
        throw Error(ErrorKind::validation, "landmark '" + std::string(joint_name(j)) + "' is absent");
    }
    return *p;
}

void Landmarks2D::set(JointId j, const Keypoint& kp) {
    if (!std::isfinite(kp.x) || !std::isfinite(kp.y)) {
        throw Error(ErrorKind::validation,
                    "landmark '" + std::string(joint_name(j)) + "' has non-finite coordinates");
    }
    if (!(kp.visibility >= 0.0 && kp.visibility <= 1.0)) {
        throw Error(ErrorKind::validation,
                    "landmark '" + std::string(joint_name(j)) + "' visibility outside [0, 1]");
    }
    points_[index_of(j)] = kp;
}

std::size_t Landmarks2D::size() const {
    std::size_t n = 0;
    for (const auto& p : points_) {
        n += p.has_value() ? 1 : 0;
    }
    return n;
}

std::vector<JointId> Landmarks2D::joints() const {
    std::vector<JointId> out;
    for (JointId j : kAllJoints) {
        if (has(j)) {
            out.push_back(j);
        }
    }
    return out;
}

json landmarks_to_json(const Landmarks2D& lm) {
    json joints = json::object();
    for (JointId j : lm.joints()) {
        const Keypoint& kp = lm.at(j);
        joints[std::string(joint_name(j))] = {{"x", kp.x}, {"y", kp.y}, {"v", kp.visibility}};
    }
    return json{{"joints", joints}};
}

Landmarks2D landmarks_from_json(const json& doc) {
    if (!doc.is_object() || !doc.contains("joints") || !doc["joints"].is_object()) {
        throw Error(ErrorKind::schema, "landmarks document needs a \"joints\" object");
    }
    Landmarks2D lm;
    for (const auto& [name, value] : doc["joints"].items()) {
        auto j = joint_from_name(name);
        if (!j) {
            throw Error(ErrorKind::schema, "unknown joint '" + name + "' in landmarks");
        }
        if (!value.is_object() || !value.contains("x") || !value.contains("y") ||
            !value["x"].is_number() || !value["y"].is_number()) {
            throw Error(ErrorKind::schema, "landmark '" + name + "' needs numeric \"x\" and \"y\"");
        }
        Keypoint kp{value["x"].get<double>(), value["y"].get<double>(), 1.0};
        if (value.contains("v")) {
            if (!value["v"].is_number()) {
                throw Error(ErrorKind::schema, "landmark '" + name + "' visibility must be a number");
            }
            kp.visibility = value["v"].get<double>();
        }
        lm.set(*j, kp);
    }
    return lm;
}

Landmarks2D read_landmarks_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::io, "cannot open landmarks file " + path.string());
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::schema, path.string() + ": " + e.what());
    }
    return landmarks_from_json(doc);
}

void write_landmarks_file(const std::filesystem::path& path, const Landmarks2D& lm) {
    std::ofstream out(path);
    if (!out) {
        throw Error(ErrorKind::io, "cannot write " + path.string());
    }
    out << landmarks_to_json(lm).dump(2) << '\n';
}

}  // namespace heightnorm
