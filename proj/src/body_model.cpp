#include "ergopose/body_model.hpp"

#include <cmath>
#include <numbers>

#include "ergopose/error.hpp"
#include "ergopose/units.hpp"

namespace ergopose {

void JointSpec::validate() const {
  using detail::require;
  require(std::isfinite(lower) && std::isfinite(upper) && std::isfinite(neutral),
          "joint '" + name + "': non-finite limit or neutral");
  require(lower < upper, "joint '" + name + "': lower limit must be below upper limit");
  require(lower <= neutral && neutral <= upper,
          "joint '" + name + "': neutral angle outside the joint limits");
  require(gamma >= 0.0, "joint '" + name + "': discomfort weight must be >= 0");
}

KinematicChain::KinematicChain(std::vector<JointSpec> joints,
                               const Eigen::Isometry3d& base_frame,
                               const Eigen::Isometry3d& end_effector_offset)
    : joints_(std::move(joints)),
      base_frame_(base_frame),
      end_effector_offset_(end_effector_offset) {
  detail::require(!joints_.empty(), "kinematic chain needs at least one joint");
  for (const auto& j : joints_) j.validate();
}

std::optional<std::size_t> KinematicChain::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < joints_.size(); ++i) {
    if (joints_[i].name == name) return i;
  }
  return std::nullopt;
}

Eigen::Matrix3d cylinder_inertia(double mass, double radius, double length) {
  const double transverse = mass * radius * radius / 4.0 + mass * length * length / 12.0;
  const double axial = mass * radius * radius / 2.0;
  return Eigen::Vector3d(transverse, transverse, axial).asDiagonal();
}

namespace {

Segment make_segment(double length, double mass) {
  Segment s;
  s.length = length;
  s.radius = 0.125 * length;
  s.mass = mass;
  s.com_offset = 0.5 * length;
  s.inertia = cylinder_inertia(s.mass, s.radius, s.length);
  return s;
}

}  // namespace

SegmentSet derive_segments(const BodyParams& body) {
  detail::require(body.stature_m > 0.0 && std::isfinite(body.stature_m),
                  "stature must be positive");
  detail::require(body.mass_kg > 0.0 && std::isfinite(body.mass_kg),
                  "body mass must be positive");

  const double arm_mass = 0.051 * body.mass_kg;
  SegmentSet set;
  set.forearm = make_segment(0.146 * body.stature_m, 0.451 * arm_mass);
  set.upper_arm = make_segment(0.186 * body.stature_m, 0.549 * arm_mass);
  return set;
}

KinematicChain build_arm_chain(const BodyParams& body, const ArmChainConfig& config) {
  const SegmentSet seg = derive_segments(body);
  detail::require(std::isfinite(config.grip_offset_m), "grip offset must be finite");
  for (const auto& [name, _] : config.overrides) {
    bool known = false;
    for (auto n : arm::kJointNames) known = known || n == name;
    if (!known) throw InvalidParameter("unknown arm joint '" + name + "'");
  }

  constexpr double half_pi = std::numbers::pi / 2.0;
  // {d, a, alpha, theta_offset}; upper arm along z3, forearm along z5.
  const std::array<DhParams, arm::kJointCount> dh = {{
      {0.0, 0.0, 0.0, 0.0},
      {0.0, 0.0, half_pi, half_pi},
      {seg.upper_arm.length, 0.0, half_pi, half_pi},
      {0.0, 0.0, half_pi, 0.0},
      {seg.forearm.length, 0.0, -half_pi, 0.0},
  }};

  std::vector<JointSpec> joints;
  joints.reserve(arm::kJointCount);
  for (std::size_t i = 0; i < arm::kJointCount; ++i) {
    JointSpec j;
    j.name = std::string(arm::kJointNames[i]);
    j.dh = dh[i];
    double lower_deg = arm::kDefaultLimitsDeg[i][0];
    double upper_deg = arm::kDefaultLimitsDeg[i][1];
    std::optional<double> neutral_deg;
    if (auto it = config.overrides.find(j.name); it != config.overrides.end()) {
      const JointOverride& o = it->second;
      lower_deg = o.lower_deg.value_or(lower_deg);
      upper_deg = o.upper_deg.value_or(upper_deg);
      neutral_deg = o.neutral_deg;
      j.gamma = o.gamma.value_or(j.gamma);
    }
    j.lower = deg_to_rad(lower_deg);
    j.upper = deg_to_rad(upper_deg);
    j.neutral = neutral_deg ? deg_to_rad(*neutral_deg) : 0.5 * (j.lower + j.upper);
    j.validate();
    joints.push_back(std::move(j));
  }

  // Frame 0: x0 down, y0 anterior, z0 pointing right (so +q1 flexes forward).
  Eigen::Matrix3d base_rotation;
  base_rotation.col(0) = Eigen::Vector3d(0.0, 0.0, -1.0);
  base_rotation.col(1) = Eigen::Vector3d(1.0, 0.0, 0.0);
  base_rotation.col(2) = Eigen::Vector3d(0.0, -1.0, 0.0);
  Eigen::Isometry3d base = Eigen::Isometry3d::Identity();
  base.linear() = base_rotation;

  Eigen::Isometry3d grip = Eigen::Isometry3d::Identity();
  grip.translation() = Eigen::Vector3d(0.0, 0.0, config.grip_offset_m);

  return KinematicChain(std::move(joints), base, grip);
}

}  // namespace ergopose
