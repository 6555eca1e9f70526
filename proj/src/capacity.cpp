#include "ergopose/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ergopose/error.hpp"
#include "ergopose/units.hpp"

namespace ergopose {

StrengthSurface StrengthSurface::constant(std::array<std::size_t, 2> axes, double value) {
  StrengthSurface s;
  s.axis_joints = axes;
  s.grid0_deg = {0.0};
  s.grid1_deg = {0.0};
  s.values = Eigen::MatrixXd::Constant(1, 1, value);
  return s;
}

void StrengthSurface::validate() const {
  if (grid0_deg.empty() || grid1_deg.empty() || values.size() == 0) {
    throw ConfigError("strength surface has an empty table");
  }
  if (values.rows() != static_cast<Eigen::Index>(grid0_deg.size()) ||
      values.cols() != static_cast<Eigen::Index>(grid1_deg.size())) {
    throw ConfigError("strength table shape does not match its angle grids");
  }
  auto ascending = [](const std::vector<double>& g) {
    return std::adjacent_find(g.begin(), g.end(), std::greater_equal<>()) == g.end();
  };
  if (!ascending(grid0_deg) || !ascending(grid1_deg)) {
    throw ConfigError("strength angle grids must be strictly ascending");
  }
  if (!values.allFinite() || values.minCoeff() <= 0.0) {
    throw ConfigError("strength table values must be positive");
  }
}

namespace {

// Bracketing index and weight of x on a grid, clamped to its ends.
std::pair<std::size_t, double> locate(const std::vector<double>& grid, double x) {
  if (grid.size() == 1 || x <= grid.front()) return {0, 0.0};
  if (x >= grid.back()) return {grid.size() - 2, 1.0};
  const auto hi = std::upper_bound(grid.begin(), grid.end(), x);
  const auto i = static_cast<std::size_t>(hi - grid.begin()) - 1;
  return {i, (x - grid[i]) / (grid[i + 1] - grid[i])};
}

}  // namespace

double StrengthSurface::evaluate(double angle0_deg, double angle1_deg) const {
  const auto [i, u] = locate(grid0_deg, angle0_deg);
  const auto [j, v] = locate(grid1_deg, angle1_deg);
  const auto r0 = static_cast<Eigen::Index>(i);
  const auto c0 = static_cast<Eigen::Index>(j);
  const Eigen::Index r1 = grid0_deg.size() > 1 ? r0 + 1 : r0;
  const Eigen::Index c1 = grid1_deg.size() > 1 ? c0 + 1 : c0;
  return (1 - u) * (1 - v) * values(r0, c0) + (1 - u) * v * values(r0, c1) +
         u * (1 - v) * values(r1, c0) + u * v * values(r1, c1);
}

StrengthModel::StrengthModel(std::vector<StrengthSurface> surfaces, double population_scale)
    : surfaces_(std::move(surfaces)), population_scale_(population_scale) {
  if (surfaces_.empty()) throw ConfigError("strength model has no surfaces");
  if (!(population_scale_ > 0.0) || !std::isfinite(population_scale_)) {
    throw ConfigError("population scale must be positive");
  }
  for (const auto& s : surfaces_) s.validate();
}

StrengthModel StrengthModel::with_population_scale(double scale) const {
  return StrengthModel(surfaces_, scale);
}

Eigen::VectorXd strength_at(const StrengthModel& model, const Posture& posture) {
  detail::require(posture.size() == model.size(),
                  "strength model and posture disagree on joint count");
  Eigen::VectorXd out(static_cast<Eigen::Index>(model.size()));
  for (std::size_t i = 0; i < model.size(); ++i) {
    const auto& s = model.surfaces()[i];
    detail::require(s.axis_joints[0] < posture.size() && s.axis_joints[1] < posture.size(),
                    "strength surface axis refers to a missing joint");
    out(static_cast<Eigen::Index>(i)) =
        model.population_scale() * s.evaluate(rad_to_deg(posture[s.axis_joints[0]]),
                                              rad_to_deg(posture[s.axis_joints[1]]));
  }
  return out;
}

StrengthModel default_arm_strength() {
  using namespace arm;
  const std::array<std::size_t, 2> axes{kShoulderFlexion, kElbowFlexion};

  StrengthSurface shoulder;
  shoulder.axis_joints = axes;
  shoulder.grid0_deg = {-60.0, 0.0, 30.0, 90.0, 135.0, 180.0};
  shoulder.grid1_deg = {0.0};
  shoulder.values.resize(6, 1);
  shoulder.values << 74.0, 72.0, 70.0, 64.0, 58.0, 52.0;

  StrengthSurface elbow;
  elbow.axis_joints = axes;
  elbow.grid0_deg = {0.0, 90.0, 180.0};
  elbow.grid1_deg = {0.0, 30.0, 60.0, 90.0, 120.0, 145.0};
  elbow.values.resize(3, 6);
  elbow.values << 45.0, 58.0, 68.0, 70.0, 60.0, 45.0,  //
      44.0, 56.0, 66.0, 68.0, 58.0, 44.0,              //
      42.0, 54.0, 63.0, 65.0, 55.0, 42.0;

  return StrengthModel({shoulder, StrengthSurface::constant(axes, 60.0),
                        StrengthSurface::constant(axes, 35.0), elbow,
                        StrengthSurface::constant(axes, 12.0)});
}

CapacityState CapacityState::fresh(const Eigen::VectorXd& maximum, double fatigue_rate,
                                   double recovery_rate) {
  CapacityState s;
  s.current = maximum;
  s.maximum = maximum;
  s.fatigue_rate = fatigue_rate;
  s.recovery_rate = recovery_rate;
  s.validate();
  return s;
}

void CapacityState::validate() const {
  if (current.size() != maximum.size() || current.size() == 0) {
    throw InvalidState("capacity vectors must be non-empty and of equal length");
  }
  for (Eigen::Index i = 0; i < current.size(); ++i) {
    if (!(current(i) > 0.0) || !(current(i) <= maximum(i)) || !std::isfinite(maximum(i))) {
      throw InvalidState("capacity of joint " + std::to_string(i) +
                         " must satisfy 0 < current <= maximum");
    }
  }
  if (!(fatigue_rate > 0.0) || !(recovery_rate > 0.0)) {
    throw InvalidState("fatigue and recovery rates must be positive");
  }
}

CapacityState fatigue_step(const CapacityState& state, const Eigen::VectorXd& load,
                           double dt_min) {
  detail::require(dt_min > 0.0 && std::isfinite(dt_min), "time step must be positive");
  detail::require(load.size() == state.current.size(), "load vector length mismatch");
  detail::require(load.allFinite() && (load.array() >= 0.0).all(),
                  "load must hold finite torque magnitudes");
  CapacityState next = state;
  const Eigen::ArrayXd decay =
      (-state.fatigue_rate * dt_min * load.array() / state.maximum.array()).exp();
  next.current = (state.current.array() * decay).matrix();
  next.elapsed_min += dt_min;
  return next;
}

CapacityState recovery_step(const CapacityState& state, double dt_min) {
  detail::require(dt_min > 0.0 && std::isfinite(dt_min), "time step must be positive");
  CapacityState next = state;
  const double keep = std::exp(-state.recovery_rate * dt_min);
  next.current = state.maximum - (state.maximum - state.current) * keep;
  next.elapsed_min += dt_min;
  return next;
}

double met(double max_strength, double load, double fatigue_rate) {
  detail::require(max_strength > 0.0 && fatigue_rate > 0.0,
                  "MET needs positive strength and fatigue rate");
  if (load <= 0.0) return std::numeric_limits<double>::infinity();
  if (load >= max_strength) return 0.0;
  return max_strength / (fatigue_rate * load) * std::log(max_strength / load);
}

std::string_view to_string(Phase p) { return p == Phase::Work ? "work" : "rest"; }

WorkRestSeries simulate_work_rest(const CapacityState& initial, const Eigen::VectorXd& work_load,
                                  double t_work_min, double t_rest_min, int cycles,
                                  double sample_dt_min) {
  detail::require(t_work_min >= 0.0 && std::isfinite(t_work_min), "work duration must be >= 0");
  detail::require(t_rest_min >= 0.0 && std::isfinite(t_rest_min), "rest duration must be >= 0");
  detail::require(cycles >= 1, "at least one work-rest cycle is required");
  detail::require(sample_dt_min > 0.0, "sample interval must be positive");
  initial.validate();

  WorkRestSeries series;
  series.samples.push_back({initial.elapsed_min, Phase::Work, initial.current});

  // Samples strictly inside (0, duration) followed by the phase end.
  auto run_phase = [&](const CapacityState& start, double duration, Phase phase, auto&& step) {
    if (duration <= 0.0) return start;
    const auto n = static_cast<long>(std::ceil(duration / sample_dt_min - 1e-9));
    for (long i = 1; i < n; ++i) {
      const double t = static_cast<double>(i) * sample_dt_min;
      series.samples.push_back({start.elapsed_min + t, phase, step(start, t).current});
    }
    CapacityState end = step(start, duration);
    series.samples.push_back({end.elapsed_min, phase, end.current});
    return end;
  };
  auto work = [&](const CapacityState& s, double dt) { return fatigue_step(s, work_load, dt); };
  auto rest = [](const CapacityState& s, double dt) { return recovery_step(s, dt); };

  CapacityState state = initial;
  for (int c = 0; c < cycles; ++c) {
    state = run_phase(state, t_work_min, Phase::Work, work);
    series.end_of_work.push_back(state);
    state = run_phase(state, t_rest_min, Phase::Rest, rest);
    series.end_of_cycle.push_back(state);
  }
  return series;
}

}  // namespace ergopose
