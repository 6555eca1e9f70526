#pragma once

#include <string>
#include <vector>

#include "ergopose/csv.hpp"
#include "ergopose/scenario.hpp"

namespace ergopose {

/// One output table plus any non-fatal sweep diagnostics.
struct CommandOutput {
  CsvTable table;
  std::vector<std::string> diagnostics;
};

/// Shoulder capacity decay at the reference posture for every population
/// strength: population_strength_nm, t_min, capacity_nm, load_nm,
/// normalized_load, met_min, overloaded.
CommandOutput cmd_fatigue_curve(const DrillingScenario& s);

/// Work-rest capacity series: t_min, phase, capacity_<joint>_nm...
CommandOutput cmd_work_rest(const DrillingScenario& s);

/// Distance sweep for the fresh state and, when requested, the state after
/// one work phase. Throws NoSolution when a sweep is empty.
CommandOutput cmd_sweep(const DrillingScenario& s, bool fatigued);

/// Pareto front of the fresh sweep plus the points chosen by the weight
/// lines of slope -1, -2 and -0.5.
CommandOutput cmd_pareto(const DrillingScenario& s);

/// Z-optimal posture for the configured weights (fresh, and fatigued when
/// requested).
CommandOutput cmd_predict(const DrillingScenario& s, bool fatigued);

}  // namespace ergopose
