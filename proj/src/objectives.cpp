#include "ergopose/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ergopose/error.hpp"

namespace ergopose {

double fatigue_measure(const JointTorques& torques, const Eigen::VectorXd& capacity,
                       const FatigueMeasureParams& params) {
  detail::require(torques.size() == capacity.size(), "torque and capacity length mismatch");
  detail::require(params.exponent > 0.0, "fatigue exponent must be positive");
  double sum = 0.0;
  for (Eigen::Index i = 0; i < torques.size(); ++i) {
    if (!(capacity(i) > 0.0)) {
      throw InvalidState("joint " + std::to_string(i) + " has non-positive capacity");
    }
    sum += std::pow(std::abs(torques(i)) / capacity(i), params.exponent);
  }
  return sum;
}

DiscomfortParams discomfort_params(const KinematicChain& chain, double penalty_constant) {
  detail::require(penalty_constant > 0.0, "discomfort constant must be positive");
  DiscomfortParams p;
  p.penalty_constant = penalty_constant;
  for (const auto& j : chain.joints()) p.joints.push_back({j.lower, j.upper, j.neutral, j.gamma});
  return p;
}

namespace {

double penalty(double ratio) {
  const double r = std::clamp(ratio, 0.0, kPenaltyRatioCap);
  return std::pow(0.5 * std::sin(5.0 * r + std::numbers::pi / 2.0) + 1.0, 100.0);
}

}  // namespace

LimitPenalties limit_penalties(double q, double upper, double lower) {
  detail::require(std::isfinite(lower) && std::isfinite(upper) && lower < upper,
                  "joint limits must satisfy lower < upper");
  const double range = upper - lower;
  return {penalty((upper - q) / range), penalty((q - lower) / range)};
}

double discomfort_measure(const Posture& posture, const DiscomfortParams& params) {
  detail::require(posture.size() == params.joints.size(), "posture length mismatch");
  const double g = params.penalty_constant;
  double sum = 0.0;
  for (std::size_t i = 0; i < posture.size(); ++i) {
    const auto& j = params.joints[i];
    const auto [qu, ql] = limit_penalties(posture[i], j.upper, j.lower);
    const double dq = (posture[i] - j.neutral) / (j.upper - j.lower);
    sum += j.gamma * dq * dq + g * qu + g * ql;
  }
  return sum / g;
}

double max_limit_penalty(const Posture& posture, const DiscomfortParams& params) {
  detail::require(posture.size() == params.joints.size(), "posture length mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < posture.size(); ++i) {
    const auto& j = params.joints[i];
    const auto [qu, ql] = limit_penalties(posture[i], j.upper, j.lower);
    worst = std::max({worst, qu, ql});
  }
  return worst;
}

}  // namespace ergopose
