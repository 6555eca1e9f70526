#include "ergopose/commands.hpp"

#include <cmath>
#include <string>

#include "ergopose/error.hpp"
#include "ergopose/units.hpp"

namespace ergopose {

namespace {

std::string joint_column(std::string_view prefix, std::string_view joint, std::string_view unit) {
  return std::string(prefix) + "_" + std::string(joint) + "_" + std::string(unit);
}

std::vector<std::string> posture_header() {
  std::vector<std::string> h{"d_m", "alpha_s_deg", "alpha_e_deg"};
  for (auto j : arm::kJointNames) h.push_back(joint_column("q", j, "deg"));
  return h;
}

void append_posture(std::vector<std::string>& row, const ObjectivePoint& p) {
  row.push_back(format_number(p.distance));
  row.push_back(format_number(rad_to_deg(p.posture[arm::kShoulderFlexion])));
  row.push_back(format_number(rad_to_deg(p.posture[arm::kElbowFlexion])));
  for (std::size_t i = 0; i < p.posture.size(); ++i) {
    row.push_back(format_number(rad_to_deg(p.posture[i])));
  }
}

struct StateSweep {
  std::string label;
  SweepResult result;
};

std::vector<StateSweep> run_sweeps(const DrillingScenario& s, bool fatigued,
                                   std::vector<std::string>& diagnostics) {
  const ReachTask task = make_task(s);
  std::vector<StateSweep> out;
  out.push_back({"fresh", sweep_distance(task, s.grid, fresh_capacity(s))});
  if (fatigued) out.push_back({"fatigued", sweep_distance(task, s.grid, fatigued_capacity(s))});
  for (const auto& st : out) {
    for (const auto& d : st.result.diagnostics) diagnostics.push_back(st.label + ": " + d);
    if (st.result.points.empty()) {
      throw NoSolution(st.label + " sweep has no feasible posture");
    }
  }
  return out;
}

}  // namespace

CommandOutput cmd_fatigue_curve(const DrillingScenario& s) {
  const double load = reference_load(s)(arm::kShoulderFlexion);
  const double dt = seconds_to_minutes(s.sample_s);
  const auto samples = static_cast<long>(std::floor(s.fatigue_duration_min / dt + 1e-9));

  CommandOutput out;
  out.table.header = {"population_strength_nm", "t_min",   "capacity_nm", "load_nm",
                      "normalized_load",        "met_min", "overloaded"};
  for (double gmax : s.population_strengths_nm) {
    const double endurance = met(gmax, load, s.fatigue_rate);
    const bool overloaded = load >= gmax;
    if (overloaded) {
      out.diagnostics.push_back("load " + format_number(load) + " N m exceeds strength " +
                                format_number(gmax) + " N m: zero endurance");
    }
    for (long i = 0; i <= samples; ++i) {
      const double t = static_cast<double>(i) * dt;
      const double capacity = gmax * std::exp(-s.fatigue_rate * load * t / gmax);
      out.table.rows.push_back({format_number(gmax), format_number(t), format_number(capacity),
                                format_number(load), format_number(load / capacity),
                                format_number(endurance), overloaded ? "1" : "0"});
    }
  }
  return out;
}

CommandOutput cmd_work_rest(const DrillingScenario& s) {
  const WorkRestSeries series = simulate_work_rest(
      fresh_capacity(s), reference_load(s), seconds_to_minutes(s.work_s),
      seconds_to_minutes(s.rest_s), s.cycles, seconds_to_minutes(s.sample_s));

  CommandOutput out;
  out.table.header = {"t_min", "phase"};
  for (auto j : arm::kJointNames) out.table.header.push_back(joint_column("capacity", j, "nm"));
  for (const auto& sample : series.samples) {
    std::vector<std::string> row{format_number(sample.t_min), std::string(to_string(sample.phase))};
    for (Eigen::Index i = 0; i < sample.capacity.size(); ++i) {
      row.push_back(format_number(sample.capacity(i)));
    }
    out.table.rows.push_back(std::move(row));
  }
  return out;
}

CommandOutput cmd_sweep(const DrillingScenario& s, bool fatigued) {
  CommandOutput out;
  const auto sweeps = run_sweeps(s, fatigued, out.diagnostics);
  const KinematicChain chain = make_chain(s);
  const SegmentSet segments = make_segments(s);
  const ExternalWrench wrench = build_wrench(s);

  out.table.header = {"state"};
  for (auto& h : posture_header()) out.table.header.push_back(h);
  for (auto j : arm::kJointNames) out.table.header.push_back(joint_column("torque", j, "nm"));
  out.table.header.insert(out.table.header.end(), {"f_fatigue", "f_discomfort", "z"});

  for (const auto& st : sweeps) {
    for (const auto& p : st.result.points) {
      std::vector<std::string> row{st.label};
      append_posture(row, p);
      const JointTorques tau = static_joint_torques(chain, segments, p.posture, wrench, s.gravity);
      for (Eigen::Index i = 0; i < tau.size(); ++i) row.push_back(format_number(tau(i)));
      row.push_back(format_number(p.f_fatigue));
      row.push_back(format_number(p.f_discomfort));
      row.push_back(format_number(scalarize(p, s.weights, st.result.normalizers)));
      out.table.rows.push_back(std::move(row));
    }
  }
  return out;
}

CommandOutput cmd_pareto(const DrillingScenario& s) {
  CommandOutput out;
  const auto sweeps = run_sweeps(s, false, out.diagnostics);
  const SweepResult& sweep = sweeps.front().result;
  const ParetoSet front = pareto_filter(sweep.points);

  out.table.header = {"kind", "slope", "w_discomfort", "w_fatigue"};
  for (auto& h : posture_header()) out.table.header.push_back(h);
  out.table.header.insert(out.table.header.end(), {"f_fatigue", "f_discomfort", "z"});

  auto emit = [&](std::string kind, double slope, const Weights& w, const ObjectivePoint& p) {
    std::vector<std::string> row{std::move(kind), format_number(slope),
                                 format_number(w.discomfort()), format_number(w.fatigue())};
    append_posture(row, p);
    row.push_back(format_number(p.f_fatigue));
    row.push_back(format_number(p.f_discomfort));
    row.push_back(format_number(scalarize(p, w, sweep.normalizers)));
    out.table.rows.push_back(std::move(row));
  };

  const Weights equal = Weights::from_slope(-1.0);
  for (const auto& p : front.points) emit("front", -1.0, equal, p);
  for (double slope : {-1.0, -2.0, -0.5}) {
    const Weights w = Weights::from_slope(slope);
    const std::size_t i = select_weighted(front.points, w, sweep.normalizers);
    emit("selection", slope, w, front.points[i]);
  }
  return out;
}

CommandOutput cmd_predict(const DrillingScenario& s, bool fatigued) {
  CommandOutput out;
  const auto sweeps = run_sweeps(s, fatigued, out.diagnostics);

  out.table.header = {"state", "w_discomfort", "w_fatigue"};
  for (auto& h : posture_header()) out.table.header.push_back(h);
  out.table.header.insert(out.table.header.end(), {"f_fatigue", "f_discomfort", "z"});
  for (const auto& st : sweeps) {
    const auto& points = st.result.points;
    const ObjectivePoint& p = points[select_weighted(points, s.weights, st.result.normalizers)];
    std::vector<std::string> row{st.label, format_number(s.weights.discomfort()),
                                 format_number(s.weights.fatigue())};
    append_posture(row, p);
    row.push_back(format_number(p.f_fatigue));
    row.push_back(format_number(p.f_discomfort));
    row.push_back(format_number(scalarize(p, s.weights, st.result.normalizers)));
    out.table.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace ergopose
