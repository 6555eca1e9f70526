#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "ergopose/body_model.hpp"
#include "ergopose/capacity.hpp"
#include "ergopose/optimizer.hpp"
#include "ergopose/statics.hpp"

namespace ergopose {

inline constexpr int kConfigSchemaVersion = 1;

/// One-arm overhead drilling task. Defaults: 5 kg drill, 49 N feed force,
/// load shared between both hands, 30 s per hole followed by 60 s of rest.
struct DrillingScenario {
  BodyParams body;
  ArmChainConfig chain;
  /// Values for the joints held fixed during sagittal reach [deg].
  std::map<std::string, double, std::less<>> pinned_deg;

  StrengthModel strength = default_arm_strength();
  std::string strength_source = "builtin";
  std::vector<double> population_strengths_nm{40.0, 70.0, 110.0};

  double tool_mass_kg = 5.0;
  double drilling_force_n = 49.0;
  bool two_handed = true;
  /// Direction the worker pushes the drill (world frame); the hand receives
  /// the opposite reaction.
  Eigen::Vector3d drill_axis = Eigen::Vector3d::UnitX();
  double hole_drop_m = 0.0;

  double work_s = 30.0;
  double rest_s = 60.0;
  int cycles = 10;
  double sample_s = 1.0;
  double fatigue_duration_min = 10.0;

  /// Posture held while drilling: shoulder and elbow flexion [deg].
  double reference_shoulder_deg = 30.0;
  double reference_elbow_deg = 90.0;

  SweepGrid grid;
  Weights weights{0.5, 0.5};
  double fatigue_exponent = 2.0;
  double fatigue_rate = kDefaultFatigueRate;
  double recovery_rate = kDefaultRecoveryRate;
  double gravity = kStandardGravity;

  /// Canonical JSON of the configuration content (empty for defaults).
  std::string canonical_config;

  /// Throws ConfigError on out-of-domain values.
  void validate() const;
};

/// Parses a JSON configuration. Unknown keys are rejected; relative
/// strength-file paths resolve against base_dir.
DrillingScenario scenario_from_json_text(std::string_view text,
                                         const std::filesystem::path& base_dir = {});
DrillingScenario load_scenario(const std::filesystem::path& path);

/// Per-joint strength surfaces from JSON text (see README for the schema).
StrengthModel strength_model_from_json_text(std::string_view text, const KinematicChain& chain);

KinematicChain make_chain(const DrillingScenario& s);
SegmentSet make_segments(const DrillingScenario& s);
/// Posture template holding the pinned joint values.
Posture pinned_posture(const DrillingScenario& s);
Posture reference_posture(const DrillingScenario& s);

/// Per-arm wrench: tool weight plus drilling reaction, halved when two-handed.
ExternalWrench build_wrench(const DrillingScenario& s);

ReachTask make_task(const DrillingScenario& s);

/// Torque magnitudes at the reference drilling posture.
Eigen::VectorXd reference_load(const DrillingScenario& s);

/// Full capacity with maxima from the strength model at the reference posture.
CapacityState fresh_capacity(const DrillingScenario& s);

/// Capacity after one work phase at the reference posture.
CapacityState fatigued_capacity(const DrillingScenario& s);

/// FNV-1a 64-bit hash of the canonical configuration, as 16 hex digits.
std::string scenario_hash(const DrillingScenario& s);

struct RunRecord {
  std::string command;
  std::string scenario_hash;
  std::string tool_version;
  std::string timestamp_utc;
  std::vector<std::string> outputs;
  std::uint64_t seed = 0;
};

std::string tool_version();
std::string manifest_json(const RunRecord& record);

}  // namespace ergopose
