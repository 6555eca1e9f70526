#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "ergopose/body_model.hpp"
#include "ergopose/capacity.hpp"
#include "ergopose/kinematics.hpp"
#include "ergopose/objectives.hpp"
#include "ergopose/statics.hpp"

namespace ergopose {

struct FeasibilityReport {
  double reach_residual = 0.0;         // |X(q) - target| [m]
  Eigen::VectorXd limit_violations;     // [rad], > 0 when outside the range
  Eigen::VectorXd strength_violations;  // |torque| - capacity [N m]
  bool feasible = false;
};

inline constexpr double kReachTolerance = 1e-6;  // [m]

/// Reach, joint-limit and current-capacity constraints. `capacity` is the
/// current per-joint torque capacity at this posture.
FeasibilityReport check_feasibility(const KinematicChain& chain, const SegmentSet& segments,
                                    const Posture& posture, const Eigen::Vector3d& target,
                                    const ExternalWrench& wrench,
                                    const Eigen::VectorXd& capacity,
                                    double g = kStandardGravity);

/// Objective weights (discomfort, fatigue): non-negative, summing to one.
class Weights {
public:
  Weights(double discomfort, double fatigue);
  /// Scales two non-negative numbers so they sum to one.
  static Weights from_ratio(double discomfort, double fatigue);
  /// Weights whose iso-Z line has the given slope in the
  /// (discomfort, fatigue) plane, slope = -w_discomfort / w_fatigue.
  static Weights from_slope(double slope);

  double discomfort() const { return discomfort_; }
  double fatigue() const { return fatigue_; }

private:
  double discomfort_;
  double fatigue_;
};

struct Normalizers {
  double max_discomfort = 0.0;
  double max_fatigue = 0.0;
};

/// Z = w1 * f_discomfort / max_discomfort + w2 * f_fatigue / max_fatigue.
double scalarize(const ObjectivePoint& point, const Weights& weights, const Normalizers& norm);

/// Index of the Z-minimizing point; ties go to the smaller distance.
/// Throws NoSolution on an empty input.
std::size_t select_weighted(std::span<const ObjectivePoint> points, const Weights& weights,
                            const Normalizers& norm);

/// a dominates b: no worse in both objectives, strictly better in one.
bool dominates(const ObjectivePoint& a, const ObjectivePoint& b);

struct ParetoSet {
  std::vector<ObjectivePoint> points;  // f_discomfort ascending
};

/// Non-dominated subset under minimization of both objectives. Duplicates
/// collapse onto their first occurrence.
ParetoSet pareto_filter(std::span<const ObjectivePoint> points);

/// Everything needed to evaluate sagittal reach postures for one task.
struct ReachTask {
  KinematicChain chain;
  SegmentSet segments;
  StrengthModel strength;
  ExternalWrench wrench;
  double drop = 0.0;  // hole below shoulder [m]
  Posture pinned;     // values for the non-planar joints; empty = zeros
  double gravity = kStandardGravity;
  FatigueMeasureParams fatigue;
  double discomfort_constant = 1e6;
  /// Candidates with any limit-penalty term above this are discarded.
  double penalty_cutoff = 1e15;
};

struct SweepGrid {
  double d_min = 0.4;
  double d_max = 0.7;
  int steps = 61;

  double at(int i) const;
};

struct SweepResult {
  std::vector<ObjectivePoint> points;  // grid order
  Normalizers normalizers;             // maxima over all feasible candidates
  std::vector<std::string> diagnostics;
};

/// Capacity of each candidate = posture strength * capacity.fullness().
Eigen::VectorXd capacity_at(const ReachTask& task, const Posture& posture,
                            const CapacityState& capacity);

/// For each grid distance: IK branches, feasibility, torques and both
/// measures; keeps the branch with the lowest equal-weight Z.
SweepResult sweep_distance(const ReachTask& task, const SweepGrid& grid,
                           const CapacityState& capacity);

struct Prediction {
  ObjectivePoint point;
  double z = 0.0;
  Normalizers normalizers;
};

/// Z-optimal point of the sweep. Throws NoSolution when nothing is feasible.
Prediction predict_posture(const ReachTask& task, const SweepGrid& grid, const Weights& weights,
                           const CapacityState& capacity);

}  // namespace ergopose
