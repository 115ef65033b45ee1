#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include <json.hpp>

#include "heightnorm/geometry.hpp"
#include "heightnorm/joints.hpp"

namespace heightnorm {

struct Keypoint {
    double x = 0.0;  // px
    double y = 0.0;  // px, grows downward
    double visibility = 1.0;

    Vec2 position() const { return {x, y}; }

    friend bool operator==(const Keypoint&, const Keypoint&) = default;
};

/// Sparse set of 2D joints. Coordinates may lie outside the image.
class Landmarks2D {
public:
    bool has(JointId j) const { return points_[index_of(j)].has_value(); }
    const Keypoint& at(JointId j) const;
    const std::optional<Keypoint>& find(JointId j) const { return points_[index_of(j)]; }

    /// Throws Error(validation) for non-finite coordinates or visibility
    /// outside [0, 1].
    void set(JointId j, const Keypoint& kp);
    void erase(JointId j) { points_[index_of(j)].reset(); }

    std::size_t size() const;
    std::vector<JointId> joints() const;

    friend bool operator==(const Landmarks2D&, const Landmarks2D&) = default;

private:
    JointArray<std::optional<Keypoint>> points_{};
};

/// `{"joints": {name: {"x": .., "y": .., "v": ..}}}`
nlohmann::json landmarks_to_json(const Landmarks2D& lm);
Landmarks2D landmarks_from_json(const nlohmann::json& doc);

Landmarks2D read_landmarks_file(const std::filesystem::path& path);
void write_landmarks_file(const std::filesystem::path& path, const Landmarks2D& lm);

}  // namespace heightnorm
