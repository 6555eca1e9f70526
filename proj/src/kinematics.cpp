#include "ergopose/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/SVD>

#include "ergopose/error.hpp"

namespace ergopose {

namespace {

Eigen::Isometry3d dh_transform(const DhParams& dh, double q) {
  Eigen::Isometry3d t = Eigen::Isometry3d::Identity();
  t.rotate(Eigen::AngleAxisd(dh.twist, Eigen::Vector3d::UnitX()));
  t.translate(Eigen::Vector3d(dh.link_length, 0.0, 0.0));
  t.rotate(Eigen::AngleAxisd(dh.angle_offset + q, Eigen::Vector3d::UnitZ()));
  t.translate(Eigen::Vector3d(0.0, 0.0, dh.link_offset));
  return t;
}

double wrap_angle(double a) {
  a = std::remainder(a, 2.0 * std::numbers::pi);
  return a;
}

}  // namespace

void check_posture(const KinematicChain& chain, const Posture& posture) {
  if (posture.size() != chain.size()) {
    throw InvalidParameter("posture has " + std::to_string(posture.size()) +
                           " angles, chain has " + std::to_string(chain.size()) + " joints");
  }
  if (!posture.q.allFinite()) throw InvalidParameter("posture contains non-finite angles");
}

std::vector<Eigen::Isometry3d> joint_frames(const KinematicChain& chain, const Posture& posture) {
  check_posture(chain, posture);
  std::vector<Eigen::Isometry3d> frames;
  frames.reserve(chain.size());
  Eigen::Isometry3d t = chain.base_frame();
  for (std::size_t i = 0; i < chain.size(); ++i) {
    t = t * dh_transform(chain.joint(i).dh, posture[i]);
    frames.push_back(t);
  }
  return frames;
}

Pose forward_kinematics(const KinematicChain& chain, const Posture& posture) {
  const auto frames = joint_frames(chain, posture);
  const Eigen::Isometry3d grip = frames.back() * chain.end_effector_offset();
  return {grip.translation(), grip.linear()};
}

Jacobian jacobian(const KinematicChain& chain, const Posture& posture) {
  const auto frames = joint_frames(chain, posture);
  const Eigen::Vector3d p = (frames.back() * chain.end_effector_offset()).translation();
  Jacobian j(6, static_cast<Eigen::Index>(chain.size()));
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const Eigen::Vector3d z = frames[i].linear().col(2);
    const Eigen::Vector3d o = frames[i].translation();
    const auto c = static_cast<Eigen::Index>(i);
    j.block<3, 1>(0, c) = z.cross(p - o);
    j.block<3, 1>(3, c) = z;
  }
  return j;
}

std::size_t numerical_rank(const Jacobian& j, double tol) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(j);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > tol * s(0)) ++rank;
  }
  return rank;
}

bool within_limits(const KinematicChain& chain, const Posture& posture, double tol) {
  check_posture(chain, posture);
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const auto& j = chain.joint(i);
    if (posture[i] < j.lower - tol || posture[i] > j.upper + tol) return false;
  }
  return true;
}

Eigen::VectorXd limit_violations(const KinematicChain& chain, const Posture& posture) {
  check_posture(chain, posture);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(posture.q.size());
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const auto& j = chain.joint(i);
    const auto k = static_cast<Eigen::Index>(i);
    if (posture[i] > j.upper) v(k) = posture[i] - j.upper;
    else if (posture[i] < j.lower) v(k) = j.lower - posture[i];
  }
  return v;
}

Eigen::Vector3d sagittal_target(const KinematicChain& chain, double distance, double drop) {
  return chain.base_frame().translation() + Eigen::Vector3d(distance, 0.0, -drop);
}

std::vector<Posture> planar_ik(const KinematicChain& chain, double distance, double drop,
                               const Posture& pinned) {
  using namespace arm;
  detail::require(chain.size() == kJointCount, "planar_ik expects the five-joint arm chain");
  detail::require(std::isfinite(distance) && std::isfinite(drop), "non-finite reach target");

  Posture seed = pinned.size() == 0 ? Posture::zeros(kJointCount) : pinned;
  check_posture(chain, seed);
  seed[kShoulderFlexion] = 0.0;
  seed[kElbowFlexion] = 0.0;

  // Effective link lengths from the straight-arm reference pose.
  const auto ref = joint_frames(chain, seed);
  const Eigen::Vector3d shoulder = ref[kShoulderFlexion].translation();
  const Eigen::Vector3d elbow = ref[kElbowFlexion].translation();
  const Eigen::Vector3d grip = (ref.back() * chain.end_effector_offset()).translation();
  const double l1 = (elbow - shoulder).norm();
  const double l2 = (grip - elbow).norm();

  const Eigen::Vector3d target = sagittal_target(chain, distance, drop);
  const Eigen::Vector3d rel = target - shoulder;
  const double r2 = rel.x() * rel.x() + rel.z() * rel.z();
  double c = (r2 - l1 * l1 - l2 * l2) / (2.0 * l1 * l2);
  constexpr double kBoundaryTol = 1e-12;
  if (std::abs(c) > 1.0 + kBoundaryTol) return {};
  c = std::clamp(c, -1.0, 1.0);

  const double elbow_angle = std::acos(c);
  // Hand direction measured from the downward vertical.
  const double hand_angle = std::atan2(rel.x(), -rel.z());

  std::vector<double> elbow_branches{elbow_angle};
  if (elbow_angle > kBoundaryTol && elbow_angle < std::numbers::pi - kBoundaryTol) {
    elbow_branches.push_back(-elbow_angle);
  }

  std::vector<Posture> out;
  for (double ae : elbow_branches) {
    Posture q = seed;
    q[kElbowFlexion] = ae;
    q[kShoulderFlexion] =
        wrap_angle(hand_angle - std::atan2(l2 * std::sin(ae), l1 + l2 * std::cos(ae)));

    // Newton polish in the sagittal plane; a no-op for the default pins.
    for (int iter = 0; iter < 8; ++iter) {
      const Eigen::Vector3d err = target - forward_kinematics(chain, q).position;
      if (err.norm() < 1e-13) break;
      const Jacobian jac = jacobian(chain, q);
      Eigen::Matrix2d a;
      a << jac(0, kShoulderFlexion), jac(0, kElbowFlexion), jac(2, kShoulderFlexion),
          jac(2, kElbowFlexion);
      if (std::abs(a.determinant()) < 1e-12) break;
      const Eigen::Vector2d step = a.inverse() * Eigen::Vector2d(err.x(), err.z());
      q[kShoulderFlexion] += step(0);
      q[kElbowFlexion] += step(1);
    }

    const double residual = (forward_kinematics(chain, q).position - target).norm();
    if (residual < 1e-9 && within_limits(chain, q)) out.push_back(std::move(q));
  }
  return out;
}

}  // namespace ergopose
