#include "ergopose/scenario.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include "ergopose/error.hpp"
#include "ergopose/units.hpp"
#include "json.hpp"

#ifndef ERGOPOSE_VERSION
#define ERGOPOSE_VERSION "0.0.0"
#endif

namespace ergopose {

using nlohmann::json;

namespace {

// Reads keys from a JSON object and rejects whatever was not consumed.
class StrictObject {
public:
  StrictObject(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_ + ": expected an object");
  }

  const json* find(const std::string& key) {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  std::string where(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  void read(const std::string& key, double& out) {
    if (const json* v = find(key)) {
      if (!v->is_number()) throw ConfigError(where(key) + ": expected a number");
      out = v->get<double>();
    }
  }
  void read(const std::string& key, int& out) {
    if (const json* v = find(key)) {
      if (!v->is_number_integer()) throw ConfigError(where(key) + ": expected an integer");
      out = v->get<int>();
    }
  }
  void read(const std::string& key, bool& out) {
    if (const json* v = find(key)) {
      if (!v->is_boolean()) throw ConfigError(where(key) + ": expected true or false");
      out = v->get<bool>();
    }
  }
  void read(const std::string& key, std::string& out) {
    if (const json* v = find(key)) {
      if (!v->is_string()) throw ConfigError(where(key) + ": expected a string");
      out = v->get<std::string>();
    }
  }
  void read(const std::string& key, std::vector<double>& out, std::size_t expected = 0) {
    if (const json* v = find(key)) out = numbers(*v, where(key), expected);
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.contains(it.key())) throw ConfigError("unknown key '" + where(it.key()) + "'");
    }
  }

  static std::vector<double> numbers(const json& v, const std::string& where,
                                     std::size_t expected = 0) {
    if (!v.is_array()) throw ConfigError(where + ": expected an array of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
      if (!e.is_number()) throw ConfigError(where + ": expected an array of numbers");
      out.push_back(e.get<double>());
    }
    if (expected && out.size() != expected) {
      throw ConfigError(where + ": expected " + std::to_string(expected) + " numbers");
    }
    return out;
  }

private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

json parse_json(std::string_view text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(what + ": " + e.what());
  }
}

void check_schema_version(StrictObject& obj) {
  int version = kConfigSchemaVersion;
  obj.read("schema_version", version);
  if (version != kConfigSchemaVersion) {
    throw ConfigError("unsupported schema_version " + std::to_string(version));
  }
}

bool is_arm_joint(std::string_view name) {
  for (auto n : arm::kJointNames) {
    if (n == name) return true;
  }
  return false;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

void DrillingScenario::validate() const {
  auto check = [](bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
  };
  check(body.stature_m > 0.0 && body.mass_kg > 0.0, "stature_m and mass_kg must be positive");
  check(tool_mass_kg >= 0.0 && drilling_force_n >= 0.0,
        "tool mass and drilling force must be >= 0");
  check(drill_axis.allFinite() && drill_axis.norm() > 0.0, "drill_axis must be a nonzero vector");
  check(std::isfinite(hole_drop_m), "hole_drop_m must be finite");
  check(work_s >= 0.0 && rest_s >= 0.0, "work and rest durations must be >= 0");
  check(sample_s > 0.0, "sample_s must be positive");
  check(cycles >= 1, "cycles must be >= 1");
  check(fatigue_duration_min > 0.0, "fatigue_duration_min must be positive");
  check(grid.d_min < grid.d_max, "distance_range_m must be ordered");
  check(grid.steps >= 2, "steps must be >= 2");
  check(fatigue_exponent > 0.0, "fatigue_exponent must be positive");
  check(fatigue_rate > 0.0 && recovery_rate > 0.0, "fatigue and recovery rates must be positive");
  check(gravity >= 0.0, "gravity_mps2 must be >= 0");
  check(!population_strengths_nm.empty(), "population_strengths_nm must not be empty");
  for (double g : population_strengths_nm) check(g > 0.0, "population strengths must be positive");
  for (const auto& [name, _] : pinned_deg) {
    check(name != arm::kJointNames[arm::kShoulderFlexion] &&
              name != arm::kJointNames[arm::kElbowFlexion] && is_arm_joint(name),
          "pinned_deg: '" + name + "' is not a pinnable arm joint");
  }
  check(strength.size() == arm::kJointCount, "strength model must cover the five arm joints");
}

StrengthModel strength_model_from_json_text(std::string_view text, const KinematicChain& chain) {
  const json root = parse_json(text, "strength file");
  StrictObject top(root, "");
  check_schema_version(top);
  double scale = 1.0;
  top.read("population_scale", scale);

  std::vector<std::optional<StrengthSurface>> by_joint(chain.size());
  if (const json* joints = top.find("joints")) {
    if (!joints->is_array()) throw ConfigError("joints: expected an array");
    for (std::size_t k = 0; k < joints->size(); ++k) {
      StrictObject obj((*joints)[k], "joints[" + std::to_string(k) + "]");
      std::string name;
      obj.read("name", name);
      const auto idx = chain.index_of(name);
      if (!idx) throw ConfigError(obj.where("name") + ": unknown joint '" + name + "'");
      if (by_joint[*idx]) throw ConfigError("duplicate strength surface for '" + name + "'");

      StrengthSurface s;
      const json* axes = obj.find("axes");
      if (!axes || !axes->is_array() || axes->size() != 2) {
        throw ConfigError(obj.where("axes") + ": expected two joint names");
      }
      for (std::size_t a = 0; a < 2; ++a) {
        const auto ax = (*axes)[a].is_string() ? chain.index_of((*axes)[a].get<std::string>())
                                               : std::nullopt;
        if (!ax) throw ConfigError(obj.where("axes") + ": unknown joint");
        s.axis_joints[a] = *ax;
      }
      const json* grid = obj.find("grid_deg");
      if (!grid || !grid->is_array() || grid->size() != 2) {
        throw ConfigError(obj.where("grid_deg") + ": expected two angle arrays");
      }
      s.grid0_deg = StrictObject::numbers((*grid)[0], obj.where("grid_deg[0]"));
      s.grid1_deg = StrictObject::numbers((*grid)[1], obj.where("grid_deg[1]"));
      const json* table = obj.find("strength_nm");
      if (!table || !table->is_array()) {
        throw ConfigError(obj.where("strength_nm") + ": expected a matrix");
      }
      s.values.resize(static_cast<Eigen::Index>(table->size()),
                      static_cast<Eigen::Index>(s.grid1_deg.size()));
      for (std::size_t r = 0; r < table->size(); ++r) {
        const auto row = StrictObject::numbers((*table)[r], obj.where("strength_nm"),
                                               s.grid1_deg.size());
        for (std::size_t c = 0; c < row.size(); ++c) {
          s.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = row[c];
        }
      }
      obj.finish();
      s.validate();
      by_joint[*idx] = std::move(s);
    }
  }
  top.finish();

  std::vector<StrengthSurface> surfaces;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (!by_joint[i]) throw ConfigError("no strength surface for joint '" + chain.joint(i).name + "'");
    surfaces.push_back(std::move(*by_joint[i]));
  }
  return StrengthModel(std::move(surfaces), scale);
}

DrillingScenario scenario_from_json_text(std::string_view text,
                                         const std::filesystem::path& base_dir) {
  const json root = parse_json(text, "configuration");
  DrillingScenario s;
  StrictObject top(root, "");
  check_schema_version(top);

  top.read("stature_m", s.body.stature_m);
  top.read("mass_kg", s.body.mass_kg);
  top.read("grip_offset_m", s.chain.grip_offset_m);

  if (const json* joints = top.find("joints")) {
    if (!joints->is_array()) throw ConfigError("joints: expected an array");
    for (std::size_t k = 0; k < joints->size(); ++k) {
      StrictObject obj((*joints)[k], "joints[" + std::to_string(k) + "]");
      std::string name;
      obj.read("name", name);
      if (!is_arm_joint(name)) throw ConfigError(obj.where("name") + ": unknown joint '" + name + "'");
      JointOverride o;
      std::vector<double> limits;
      obj.read("limits_deg", limits, 2);
      if (!limits.empty()) {
        o.lower_deg = limits[0];
        o.upper_deg = limits[1];
      }
      double value = 0.0;
      if (obj.find("neutral_deg")) {
        obj.read("neutral_deg", value);
        o.neutral_deg = value;
      }
      if (obj.find("gamma")) {
        obj.read("gamma", value);
        o.gamma = value;
      }
      obj.finish();
      s.chain.overrides[name] = o;
    }
  }

  if (const json* pinned = top.find("pinned_deg")) {
    StrictObject obj(*pinned, "pinned_deg");
    for (auto it = pinned->begin(); it != pinned->end(); ++it) {
      double v = 0.0;
      obj.read(it.key(), v);
      s.pinned_deg[it.key()] = v;
    }
    obj.finish();
  }

  double population_scale = 1.0;
  top.read("population_scale", population_scale);
  top.read("population_strengths_nm", s.population_strengths_nm);
  top.read("tool_mass_kg", s.tool_mass_kg);
  top.read("drilling_force_n", s.drilling_force_n);
  top.read("two_handed", s.two_handed);
  std::vector<double> axis;
  top.read("drill_axis", axis, 3);
  if (!axis.empty()) s.drill_axis = Eigen::Vector3d(axis[0], axis[1], axis[2]);
  top.read("hole_drop_m", s.hole_drop_m);
  top.read("work_s", s.work_s);
  top.read("rest_s", s.rest_s);
  top.read("cycles", s.cycles);
  top.read("sample_s", s.sample_s);
  top.read("fatigue_duration_min", s.fatigue_duration_min);

  if (const json* ref = top.find("reference_posture_deg")) {
    StrictObject obj(*ref, "reference_posture_deg");
    obj.read("shoulder_flexion", s.reference_shoulder_deg);
    obj.read("elbow_flexion", s.reference_elbow_deg);
    obj.finish();
  }

  std::vector<double> range;
  top.read("distance_range_m", range, 2);
  if (!range.empty()) {
    s.grid.d_min = range[0];
    s.grid.d_max = range[1];
  }
  top.read("steps", s.grid.steps);
  std::vector<double> w;
  top.read("weights", w, 2);
  if (!w.empty()) {
    try {
      s.weights = Weights(w[0], w[1]);
    } catch (const InvalidParameter& e) {
      throw ConfigError(std::string("weights: ") + e.what());
    }
  }
  top.read("fatigue_exponent", s.fatigue_exponent);
  top.read("fatigue_rate_per_min", s.fatigue_rate);
  top.read("recovery_rate_per_min", s.recovery_rate);
  top.read("gravity_mps2", s.gravity);

  std::string strength_file;
  top.read("strength_file", strength_file);
  top.finish();

  json canonical = {{"config", root}};
  KinematicChain chain = [&] {
    try {
      return make_chain(s);
    } catch (const InvalidParameter& e) {
      throw ConfigError(e.what());
    }
  }();
  if (!strength_file.empty()) {
    std::filesystem::path p(strength_file);
    if (p.is_relative()) p = base_dir / p;
    const std::string strength_text = read_file(p);
    s.strength = strength_model_from_json_text(strength_text, chain);
    s.strength_source = p.string();
    canonical["strength"] = parse_json(strength_text, "strength file");
  }
  try {
    s.strength = s.strength.with_population_scale(s.strength.population_scale() * population_scale);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  s.canonical_config = canonical.dump();
  s.validate();
  return s;
}

DrillingScenario load_scenario(const std::filesystem::path& path) {
  return scenario_from_json_text(read_file(path), path.parent_path());
}

KinematicChain make_chain(const DrillingScenario& s) { return build_arm_chain(s.body, s.chain); }

SegmentSet make_segments(const DrillingScenario& s) { return derive_segments(s.body); }

Posture pinned_posture(const DrillingScenario& s) {
  Posture q = Posture::zeros(arm::kJointCount);
  for (std::size_t i = 0; i < arm::kJointCount; ++i) {
    if (auto it = s.pinned_deg.find(arm::kJointNames[i]); it != s.pinned_deg.end()) {
      q[i] = deg_to_rad(it->second);
    }
  }
  return q;
}

Posture reference_posture(const DrillingScenario& s) {
  Posture q = pinned_posture(s);
  q[arm::kShoulderFlexion] = deg_to_rad(s.reference_shoulder_deg);
  q[arm::kElbowFlexion] = deg_to_rad(s.reference_elbow_deg);
  return q;
}

ExternalWrench build_wrench(const DrillingScenario& s) {
  const double share = s.two_handed ? 0.5 : 1.0;
  ExternalWrench w;
  w.force = share * (Eigen::Vector3d(0.0, 0.0, -s.tool_mass_kg * s.gravity) -
                     s.drilling_force_n * s.drill_axis.normalized());
  return w;
}

ReachTask make_task(const DrillingScenario& s) {
  return ReachTask{make_chain(s),
                   make_segments(s),
                   s.strength,
                   build_wrench(s),
                   s.hole_drop_m,
                   pinned_posture(s),
                   s.gravity,
                   FatigueMeasureParams{s.fatigue_exponent},
                   1e6,
                   1e15};
}

Eigen::VectorXd reference_load(const DrillingScenario& s) {
  const KinematicChain chain = make_chain(s);
  return static_joint_torques(chain, make_segments(s), reference_posture(s), build_wrench(s),
                              s.gravity)
      .cwiseAbs();
}

CapacityState fresh_capacity(const DrillingScenario& s) {
  return CapacityState::fresh(strength_at(s.strength, reference_posture(s)), s.fatigue_rate,
                              s.recovery_rate);
}

CapacityState fatigued_capacity(const DrillingScenario& s) {
  const CapacityState fresh = fresh_capacity(s);
  if (s.work_s <= 0.0) return fresh;
  return fatigue_step(fresh, reference_load(s), seconds_to_minutes(s.work_s));
}

std::string scenario_hash(const DrillingScenario& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s.canonical_config) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string tool_version() { return ERGOPOSE_VERSION; }

std::string manifest_json(const RunRecord& r) {
  json j = {{"command", r.command},         {"scenario_hash", r.scenario_hash},
            {"tool", "ergopose"},           {"tool_version", r.tool_version},
            {"timestamp_utc", r.timestamp_utc}, {"outputs", r.outputs},
            {"seed", r.seed}};
  return j.dump(2) + "\n";
}

}  // namespace ergopose
