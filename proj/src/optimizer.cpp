#include "ergopose/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "ergopose/error.hpp"

namespace ergopose {

FeasibilityReport check_feasibility(const KinematicChain& chain, const SegmentSet& segments,
                                    const Posture& posture, const Eigen::Vector3d& target,
                                    const ExternalWrench& wrench,
                                    const Eigen::VectorXd& capacity, double g) {
  detail::require(capacity.size() == static_cast<Eigen::Index>(chain.size()),
                  "capacity length mismatch");
  FeasibilityReport r;
  r.reach_residual = (forward_kinematics(chain, posture).position - target).norm();
  r.limit_violations = limit_violations(chain, posture);
  const JointTorques tau = static_joint_torques(chain, segments, posture, wrench, g);
  r.strength_violations = tau.cwiseAbs() - capacity;
  r.feasible = r.reach_residual < kReachTolerance && (r.limit_violations.array() <= 0.0).all() &&
               (r.strength_violations.array() <= 0.0).all();
  return r;
}

Weights::Weights(double discomfort, double fatigue) : discomfort_(discomfort), fatigue_(fatigue) {
  detail::require(discomfort >= 0.0 && fatigue >= 0.0, "weights must be non-negative");
  detail::require(std::abs(discomfort + fatigue - 1.0) <= 1e-12, "weights must sum to one");
}

Weights Weights::from_ratio(double discomfort, double fatigue) {
  detail::require(discomfort >= 0.0 && fatigue >= 0.0 && discomfort + fatigue > 0.0,
                  "weights must be non-negative and not both zero");
  const double sum = discomfort + fatigue;
  return Weights(discomfort / sum, 1.0 - discomfort / sum);
}

Weights Weights::from_slope(double slope) {
  detail::require(slope <= 0.0 && std::isfinite(slope), "weight-line slope must be <= 0");
  return Weights(-slope / (1.0 - slope), 1.0 / (1.0 - slope));
}

double scalarize(const ObjectivePoint& point, const Weights& weights, const Normalizers& norm) {
  detail::require(norm.max_discomfort > 0.0 && norm.max_fatigue > 0.0,
                  "scalarization normalizers must be positive");
  return weights.discomfort() * point.f_discomfort / norm.max_discomfort +
         weights.fatigue() * point.f_fatigue / norm.max_fatigue;
}

std::size_t select_weighted(std::span<const ObjectivePoint> points, const Weights& weights,
                            const Normalizers& norm) {
  if (points.empty()) throw NoSolution("no candidate points to select from");
  std::size_t best = 0;
  double best_z = scalarize(points[0], weights, norm);
  for (std::size_t i = 1; i < points.size(); ++i) {
    const double z = scalarize(points[i], weights, norm);
    if (z < best_z || (z == best_z && points[i].distance < points[best].distance)) {
      best = i;
      best_z = z;
    }
  }
  return best;
}

bool dominates(const ObjectivePoint& a, const ObjectivePoint& b) {
  return a.f_discomfort <= b.f_discomfort && a.f_fatigue <= b.f_fatigue &&
         (a.f_discomfort < b.f_discomfort || a.f_fatigue < b.f_fatigue);
}

ParetoSet pareto_filter(std::span<const ObjectivePoint> points) {
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (points[a].f_discomfort != points[b].f_discomfort) {
      return points[a].f_discomfort < points[b].f_discomfort;
    }
    return points[a].f_fatigue < points[b].f_fatigue;
  });

  ParetoSet front;
  double best_fatigue = std::numeric_limits<double>::infinity();
  for (std::size_t i : order) {
    if (points[i].f_fatigue < best_fatigue) {
      best_fatigue = points[i].f_fatigue;
      front.points.push_back(points[i]);
    }
  }
  return front;
}

double SweepGrid::at(int i) const {
  if (steps == 1) return d_min;
  return d_min + (d_max - d_min) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

Eigen::VectorXd capacity_at(const ReachTask& task, const Posture& posture,
                            const CapacityState& capacity) {
  detail::require(capacity.size() == task.chain.size(), "capacity length mismatch");
  return strength_at(task.strength, posture).cwiseProduct(capacity.fullness());
}

namespace {

std::string format_distance(double d) {
  std::ostringstream os;
  os.precision(6);
  os << d;
  return os.str();
}

double safe_ratio(double value, double norm) { return norm > 0.0 ? value / norm : 0.0; }

}  // namespace

SweepResult sweep_distance(const ReachTask& task, const SweepGrid& grid,
                           const CapacityState& capacity) {
  detail::require(grid.steps >= 2, "sweep needs at least two steps");
  detail::require(std::isfinite(grid.d_min) && std::isfinite(grid.d_max) &&
                      grid.d_min < grid.d_max,
                  "sweep range must be ordered");
  capacity.validate();

  const DiscomfortParams discomfort = discomfort_params(task.chain, task.discomfort_constant);
  SweepResult result;
  std::vector<std::vector<ObjectivePoint>> candidates(static_cast<std::size_t>(grid.steps));

  for (int i = 0; i < grid.steps; ++i) {
    const double d = grid.at(i);
    const Eigen::Vector3d target = sagittal_target(task.chain, d, task.drop);
    const auto branches = planar_ik(task.chain, d, task.drop, task.pinned);
    if (branches.empty()) {
      result.diagnostics.push_back("d=" + format_distance(d) +
                                   " m: no in-limit reach solution, skipped");
      continue;
    }
    int rejected_strength = 0;
    int rejected_discomfort = 0;
    for (const auto& q : branches) {
      const Eigen::VectorXd cap = capacity_at(task, q, capacity);
      const auto report =
          check_feasibility(task.chain, task.segments, q, target, task.wrench, cap, task.gravity);
      if (!report.feasible) {
        ++rejected_strength;
        continue;
      }
      if (max_limit_penalty(q, discomfort) > task.penalty_cutoff) {
        ++rejected_discomfort;
        continue;
      }
      const JointTorques tau =
          static_joint_torques(task.chain, task.segments, q, task.wrench, task.gravity);
      ObjectivePoint p;
      p.f_fatigue = fatigue_measure(tau, cap, task.fatigue);
      p.f_discomfort = discomfort_measure(q, discomfort);
      p.posture = q;
      p.distance = d;
      candidates[static_cast<std::size_t>(i)].push_back(std::move(p));
    }
    if (candidates[static_cast<std::size_t>(i)].empty()) {
      result.diagnostics.push_back(
          "d=" + format_distance(d) + " m: all branches rejected (" +
          std::to_string(rejected_strength) + " infeasible, " +
          std::to_string(rejected_discomfort) + " above the discomfort cutoff)");
    }
  }

  for (const auto& per_d : candidates) {
    for (const auto& p : per_d) {
      result.normalizers.max_discomfort = std::max(result.normalizers.max_discomfort, p.f_discomfort);
      result.normalizers.max_fatigue = std::max(result.normalizers.max_fatigue, p.f_fatigue);
    }
  }

  const auto& norm = result.normalizers;
  for (auto& per_d : candidates) {
    if (per_d.empty()) continue;
    auto z = [&](const ObjectivePoint& p) {
      return 0.5 * safe_ratio(p.f_discomfort, norm.max_discomfort) +
             0.5 * safe_ratio(p.f_fatigue, norm.max_fatigue);
    };
    auto best = std::min_element(per_d.begin(), per_d.end(),
                                 [&](const auto& a, const auto& b) { return z(a) < z(b); });
    result.points.push_back(std::move(*best));
  }
  if (result.points.empty()) {
    result.diagnostics.push_back("warning: no feasible posture anywhere in the sweep");
  }
  return result;
}

Prediction predict_posture(const ReachTask& task, const SweepGrid& grid, const Weights& weights,
                           const CapacityState& capacity) {
  const SweepResult sweep = sweep_distance(task, grid, capacity);
  if (sweep.points.empty()) throw NoSolution("no feasible posture in the distance sweep");
  const std::size_t i = select_weighted(sweep.points, weights, sweep.normalizers);
  return {sweep.points[i], scalarize(sweep.points[i], weights, sweep.normalizers),
          sweep.normalizers};
}

}  // namespace ergopose
