#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace heightnorm {

enum class JointId : std::uint8_t {
    head_top,
    neck,
    l_shoulder,
    r_shoulder,
    l_elbow,
    r_elbow,
    l_wrist,
    r_wrist,
    pelvis,
    l_hip,
    r_hip,
    l_knee,
    r_knee,
    l_ankle,
    r_ankle,
};

inline constexpr std::size_t kJointCount = 15;
inline constexpr JointId kRootJoint = JointId::pelvis;

inline constexpr std::array<JointId, kJointCount> kAllJoints = {
    JointId::head_top, JointId::neck,    JointId::l_shoulder, JointId::r_shoulder,
    JointId::l_elbow,  JointId::r_elbow, JointId::l_wrist,    JointId::r_wrist,
    JointId::pelvis,   JointId::l_hip,   JointId::r_hip,      JointId::l_knee,
    JointId::r_knee,   JointId::l_ankle, JointId::r_ankle,
};

constexpr std::size_t index_of(JointId j) { return static_cast<std::size_t>(j); }

std::string_view joint_name(JointId j);
std::optional<JointId> joint_from_name(std::string_view name);

/// Left/right counterpart; joints on the midline map to themselves.
JointId mirror_joint(JointId j);

/// Per-joint value table indexed by JointId.
template <typename T>
using JointArray = std::array<T, kJointCount>;

/// Limb segments used for stick-figure rendering.
inline constexpr std::array<std::array<JointId, 2>, 14> kLimbs = {{
    {JointId::head_top, JointId::neck},
    {JointId::neck, JointId::l_shoulder},
    {JointId::neck, JointId::r_shoulder},
    {JointId::l_shoulder, JointId::l_elbow},
    {JointId::r_shoulder, JointId::r_elbow},
    {JointId::l_elbow, JointId::l_wrist},
    {JointId::r_elbow, JointId::r_wrist},
    {JointId::neck, JointId::pelvis},
    {JointId::pelvis, JointId::l_hip},
    {JointId::pelvis, JointId::r_hip},
    {JointId::l_hip, JointId::l_knee},
    {JointId::r_hip, JointId::r_knee},
    {JointId::l_knee, JointId::l_ankle},
    {JointId::r_knee, JointId::r_ankle},
}};

}  // namespace heightnorm
