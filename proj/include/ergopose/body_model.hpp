#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Geometry>

namespace ergopose {

/// Modified (Khalil-Kleinfinger) Denavit-Hartenberg parameters of one joint.
/// The transform from frame i-1 to frame i is
/// RotX(twist) * TransX(link_length) * RotZ(angle_offset + q) * TransZ(link_offset).
struct DhParams {
  double link_offset = 0.0;   // d [m]
  double link_length = 0.0;   // a [m]
  double twist = 0.0;         // alpha [rad]
  double angle_offset = 0.0;  // theta offset [rad]
};

struct JointSpec {
  std::string name;
  DhParams dh;
  double lower = 0.0;    // [rad]
  double upper = 0.0;    // [rad]
  double neutral = 0.0;  // [rad]
  double gamma = 1.0;    // discomfort weight

  double range() const { return upper - lower; }
  /// Throws InvalidParameter unless lower < upper, lower <= neutral <= upper, gamma >= 0.
  void validate() const;
};

/// Serial chain of revolute joints. Immutable once constructed.
class KinematicChain {
public:
  KinematicChain(std::vector<JointSpec> joints, const Eigen::Isometry3d& base_frame,
                 const Eigen::Isometry3d& end_effector_offset);

  std::size_t size() const { return joints_.size(); }
  const std::vector<JointSpec>& joints() const { return joints_; }
  const JointSpec& joint(std::size_t i) const { return joints_.at(i); }
  std::optional<std::size_t> index_of(std::string_view name) const;

  const Eigen::Isometry3d& base_frame() const { return base_frame_; }
  const Eigen::Isometry3d& end_effector_offset() const { return end_effector_offset_; }

private:
  std::vector<JointSpec> joints_;
  Eigen::Isometry3d base_frame_;
  Eigen::Isometry3d end_effector_offset_;
};

struct BodyParams {
  double stature_m = 1.75;
  double mass_kg = 70.0;
};

/// Uniform-density cylinder approximation of one limb segment.
struct Segment {
  double length = 0.0;      // h [m]
  double radius = 0.0;      // r [m]
  double mass = 0.0;        // m [kg]
  double com_offset = 0.0;  // proximal joint to mass center, along the segment [m]
  Eigen::Matrix3d inertia = Eigen::Matrix3d::Zero();  // about the mass center [kg m^2]
};

/// Arm segments. The hand is folded into the forearm.
struct SegmentSet {
  Segment upper_arm;
  Segment forearm;
};

/// Anthropometric segment lengths, radii, masses and cylinder inertias from
/// stature and body mass.
SegmentSet derive_segments(const BodyParams& body);

/// Cylinder inertia about the mass center, long axis = local z.
Eigen::Matrix3d cylinder_inertia(double mass, double radius, double length);

namespace arm {

inline constexpr std::size_t kJointCount = 5;
inline constexpr std::size_t kShoulderFlexion = 0;
inline constexpr std::size_t kShoulderAbduction = 1;
inline constexpr std::size_t kHumeralRotation = 2;
inline constexpr std::size_t kElbowFlexion = 3;
inline constexpr std::size_t kForearmRotation = 4;

inline constexpr std::array<std::string_view, kJointCount> kJointNames = {
    "shoulder_flexion", "shoulder_abduction", "humeral_rotation", "elbow_flexion",
    "forearm_rotation"};

/// Default range of motion [deg], indexed like kJointNames.
inline constexpr std::array<std::array<double, 2>, kJointCount> kDefaultLimitsDeg = {{
    {-60.0, 180.0},
    {-30.0, 135.0},
    {-90.0, 90.0},
    {0.0, 145.0},
    {-90.0, 85.0},
}};

inline constexpr double kDefaultGripOffset = 0.10;  // [m]

}  // namespace arm

struct JointOverride {
  std::optional<double> lower_deg;
  std::optional<double> upper_deg;
  std::optional<double> neutral_deg;
  std::optional<double> gamma;
};

struct ArmChainConfig {
  /// Keyed by joint name (see arm::kJointNames).
  std::map<std::string, JointOverride, std::less<>> overrides;
  double grip_offset_m = arm::kDefaultGripOffset;
};

/// Five-joint right arm. World frame: origin at the shoulder, x anterior,
/// y left, z up; the arm moves in the x-z (sagittal) plane when joints 2, 3
/// and 5 stay at zero.
///
/// Reference pose (all joints zero): the arm hangs straight down, the grip
/// point sits at (0, 0, -(h_u + h_f + grip_offset)) with the forearm axis
/// along -z. Joint 1 angle equals the shoulder flexion alpha_s measured from
/// the downward vertical; joint 4 equals the interior elbow flexion alpha_e
/// (0 = straight arm). Positive joint-2 rotation abducts the arm to the right.
KinematicChain build_arm_chain(const BodyParams& body, const ArmChainConfig& config = {});

}  // namespace ergopose
