#include "ergopose/statics.hpp"

#include <cmath>

#include "ergopose/error.hpp"

namespace ergopose {

std::vector<PointMass> arm_mass_distribution(const SegmentSet& segments) {
  // Both distal frames sit at the segment's far end with z along the segment.
  auto attach = [](std::size_t frame, const Segment& s) {
    return PointMass{frame, Eigen::Vector3d(0.0, 0.0, s.com_offset - s.length), s.mass};
  };
  return {attach(arm::kHumeralRotation, segments.upper_arm),
          attach(arm::kForearmRotation, segments.forearm)};
}

namespace {

void check_masses(const KinematicChain& chain, std::span<const PointMass> masses) {
  for (const auto& m : masses) {
    detail::require(m.frame < chain.size(), "point mass attached to a missing frame");
    detail::require(m.mass >= 0.0 && std::isfinite(m.mass), "point mass must be >= 0");
  }
}

}  // namespace

double potential_energy(const KinematicChain& chain, std::span<const PointMass> masses,
                        const Posture& posture, double g) {
  check_masses(chain, masses);
  const auto frames = joint_frames(chain, posture);
  double u = 0.0;
  for (const auto& m : masses) u += m.mass * g * (frames[m.frame] * m.local_com).z();
  return u;
}

JointTorques gravity_torques(const KinematicChain& chain, std::span<const PointMass> masses,
                             const Posture& posture, double g) {
  check_masses(chain, masses);
  const auto frames = joint_frames(chain, posture);
  const Eigen::Vector3d gravity(0.0, 0.0, -g);

  // Distal accumulation of total mass and first mass moment.
  std::vector<double> mass_at(chain.size(), 0.0);
  std::vector<Eigen::Vector3d> moment_at(chain.size(), Eigen::Vector3d::Zero());
  for (const auto& m : masses) {
    mass_at[m.frame] += m.mass;
    moment_at[m.frame] += m.mass * (frames[m.frame] * m.local_com);
  }

  JointTorques tau = JointTorques::Zero(static_cast<Eigen::Index>(chain.size()));
  double total_mass = 0.0;
  Eigen::Vector3d total_moment = Eigen::Vector3d::Zero();
  for (std::size_t i = chain.size(); i-- > 0;) {
    total_mass += mass_at[i];
    total_moment += moment_at[i];
    const Eigen::Vector3d lever = total_moment - total_mass * frames[i].translation();
    tau(static_cast<Eigen::Index>(i)) = -frames[i].linear().col(2).dot(lever.cross(gravity));
  }
  return tau;
}

JointTorques gravity_torques(const KinematicChain& chain, const SegmentSet& segments,
                             const Posture& posture, double g) {
  detail::require(chain.size() == arm::kJointCount, "segment set expects the five-joint arm");
  const auto masses = arm_mass_distribution(segments);
  return gravity_torques(chain, masses, posture, g);
}

JointTorques load_torques(const KinematicChain& chain, const Posture& posture,
                          const ExternalWrench& wrench) {
  detail::require(wrench.force.allFinite() && wrench.moment.allFinite(),
                  "wrench has non-finite components");
  return -(jacobian(chain, posture).transpose() * wrench.stacked());
}

JointTorques static_joint_torques(const KinematicChain& chain, const SegmentSet& segments,
                                  const Posture& posture, const ExternalWrench& wrench,
                                  double g) {
  return gravity_torques(chain, segments, posture, g) + load_torques(chain, posture, wrench);
}

}  // namespace ergopose
