#include "heightnorm/joints.hpp"

namespace heightnorm {

namespace {
constexpr std::array<std::string_view, kJointCount> kNames = {
    "head_top", "neck",    "l_shoulder", "r_shoulder", "l_elbow",
    "r_elbow",  "l_wrist", "r_wrist",    "pelvis",     "l_hip",
    "r_hip",    "l_knee",  "r_knee",     "l_ankle",    "r_ankle",
};
}  // namespace

std::string_view joint_name(JointId j) { return kNames[index_of(j)]; }

std::optional<JointId> joint_from_name(std::string_view name) {
    for (std::size_t i = 0; i < kJointCount; ++i) {
        if (kNames[i] == name) {
            return static_cast<JointId>(i);
        }
    }
    return std::nullopt;
}

JointId mirror_joint(JointId j) {
    switch (j) {
    case JointId::l_shoulder: return JointId::r_shoulder;
    case JointId::r_shoulder: return JointId::l_shoulder;
    case JointId::l_elbow: return JointId::r_elbow;
    case JointId::r_elbow: return JointId::l_elbow;
    case JointId::l_wrist: return JointId::r_wrist;
    case JointId::r_wrist: return JointId::l_wrist;
    case JointId::l_hip: return JointId::r_hip;
    case JointId::r_hip: return JointId::l_hip;
    case JointId::l_knee: return JointId::r_knee;
    case JointId::r_knee: return JointId::l_knee;
    case JointId::l_ankle: return JointId::r_ankle;
    case JointId::r_ankle: return JointId::l_ankle;
    default: return j;
    }
}

}  // namespace heightnorm
