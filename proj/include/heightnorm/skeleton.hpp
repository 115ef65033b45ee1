#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "heightnorm/geometry.hpp"
#include "heightnorm/joints.hpp"

namespace heightnorm {

enum class Gender { female, male, neutral };

std::string_view gender_name(Gender g);
std::optional<Gender> gender_from_name(std::string_view name);

/// Largest subject height accepted, in inches.
inline constexpr double kMaxSubjectHeight = 108.0;

/// Joint layout of a unit-height A-pose body. y runs from the floor (0) to
/// the top of the head (1), x is lateral (subject's left is +x), z is depth.
struct SkeletonTemplate {
    Gender gender = Gender::neutral;
    JointArray<Vec3> joints{};

    const Vec3& at(JointId j) const { return joints[index_of(j)]; }

    /// Throws Error(validation) when the template invariants do not hold.
    void validate() const;
};

struct SubjectMeta {
    double height = 0.0;  // inches
    Gender gender = Gender::neutral;

    /// Throws Error(domain) unless 0 < height <= 108.
    void validate() const;
};

/// Template scaled to a subject, world inches with the floor at y = 0.
struct Skeleton3D {
    JointArray<Vec3> joints{};
    JointId root = kRootJoint;

    const Vec3& at(JointId j) const { return joints[index_of(j)]; }
};

/// Built-in A-pose template from Drillis-Contini segment ratios with the arms
/// abducted 45 degrees.
const SkeletonTemplate& builtin_template(Gender g);

/// Parses `{"gender": str, "joints": {name: [x, y, z], ...}}`.
SkeletonTemplate load_template(std::string_view json_text);
SkeletonTemplate load_template_file(const std::filesystem::path& path);
std::string template_to_json(const SkeletonTemplate& t);

/// Uniformly scales `tmpl` by the subject height. A neutral template is
/// accepted for any subject; otherwise genders must match.
Skeleton3D build_reference_skeleton(const SubjectMeta& meta, const SkeletonTemplate& tmpl);

}  // namespace heightnorm
