#pragma once

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "ergopose/kinematics.hpp"

namespace ergopose {

/// Maximum joint strength [N m] tabulated over the angles [deg] of two chain
/// joints; evaluated bilinearly, queries clamped to the grid bounds.
struct StrengthSurface {
  std::array<std::size_t, 2> axis_joints{};
  std::vector<double> grid0_deg;  // ascending, rows of `values`
  std::vector<double> grid1_deg;  // ascending, columns of `values`
  Eigen::MatrixXd values;

  static StrengthSurface constant(std::array<std::size_t, 2> axes, double value);

  /// Throws ConfigError on empty or malformed tables or non-positive entries.
  void validate() const;
  double evaluate(double angle0_deg, double angle1_deg) const;
};

/// One surface per chain joint, in chain order.
class StrengthModel {
public:
  explicit StrengthModel(std::vector<StrengthSurface> surfaces, double population_scale = 1.0);

  std::size_t size() const { return surfaces_.size(); }
  const std::vector<StrengthSurface>& surfaces() const { return surfaces_; }
  double population_scale() const { return population_scale_; }
  StrengthModel with_population_scale(double scale) const;

private:
  std::vector<StrengthSurface> surfaces_;
  double population_scale_;
};

/// Posture-evaluated maxima, times the population scale.
Eigen::VectorXd strength_at(const StrengthModel& model, const Posture& posture);

/// Synthetic median-male surfaces for the five-joint arm. Placeholder values
/// shaped like published strength trends: shoulder flexion 70 N m at
/// alpha_s = 30 deg, elbow flexion between 42 and 70 N m.
StrengthModel default_arm_strength();

inline constexpr double kDefaultFatigueRate = 1.0;   // [1/min]
inline constexpr double kDefaultRecoveryRate = 2.4;  // [1/min]

struct CapacityState {
  Eigen::VectorXd current;  // Gamma_cem [N m]
  Eigen::VectorXd maximum;  // Gamma_max [N m]
  double fatigue_rate = kDefaultFatigueRate;
  double recovery_rate = kDefaultRecoveryRate;
  double elapsed_min = 0.0;

  static CapacityState fresh(const Eigen::VectorXd& maximum,
                             double fatigue_rate = kDefaultFatigueRate,
                             double recovery_rate = kDefaultRecoveryRate);

  /// Throws InvalidState unless 0 < current <= maximum and both rates > 0.
  void validate() const;
  std::size_t size() const { return static_cast<std::size_t>(current.size()); }
  /// current / maximum, per joint.
  Eigen::VectorXd fullness() const { return current.cwiseQuotient(maximum); }
};

/// Constant-load fatigue over dt [min]: C <- C * exp(-k * load * dt / C_max).
/// `load` holds torque magnitudes.
CapacityState fatigue_step(const CapacityState& state, const Eigen::VectorXd& load, double dt_min);

/// Rest over dt [min]: C <- C_max - (C_max - C) * exp(-R * dt).
CapacityState recovery_step(const CapacityState& state, double dt_min);

/// Maximum endurance time [min] under a constant load. 0 when the load
/// reaches the maximum, +infinity when the load is not positive.
double met(double max_strength, double load, double fatigue_rate = kDefaultFatigueRate);

enum class Phase { Work, Rest };
std::string_view to_string(Phase p);

struct CapacitySample {
  double t_min = 0.0;
  Phase phase = Phase::Work;
  Eigen::VectorXd capacity;
};

struct WorkRestSeries {
  std::vector<CapacitySample> samples;
  std::vector<CapacityState> end_of_work;   // one per cycle
  std::vector<CapacityState> end_of_cycle;  // one per cycle
};

/// Alternating work (constant load) and rest phases. Samples every
/// sample_dt_min inside each phase plus every phase boundary; each sample is
/// the exact solution from the phase start.
WorkRestSeries simulate_work_rest(const CapacityState& initial, const Eigen::VectorXd& work_load,
                                  double t_work_min, double t_rest_min, int cycles,
                                  double sample_dt_min = 1.0 / 60.0);

}  // namespace ergopose
