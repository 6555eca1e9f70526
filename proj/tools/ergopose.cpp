// Command-line front end: runs one scenario command and writes its CSV plus a
// run manifest into the output directory.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ergopose/commands.hpp"
#include "ergopose/csv.hpp"
#include "ergopose/error.hpp"
#include "ergopose/scenario.hpp"

namespace fs = std::filesystem;
using namespace ergopose;

namespace {

enum ExitCode : int { kOk = 0, kConfigError = 2, kInfeasible = 3, kIoError = 4 };

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << content;
  if (!out.flush()) throw IoError("failed writing " + path.string());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Posture prediction for overhead drilling under muscle fatigue"};
  app.set_version_flag("--version", tool_version());
  app.require_subcommand(1);

  fs::path config;
  fs::path out_dir = ".";
  bool fatigued = false;
  std::optional<int> steps;
  std::vector<double> weights;
  std::uint64_t seed = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config, "Scenario configuration (JSON)")->required();
    sub->add_option("--out", out_dir, "Output directory");
    sub->add_option("--steps", steps, "Number of distance samples (overrides config)");
    sub->add_option("--weights", weights, "Discomfort and fatigue weights, e.g. 0.5,0.5")
        ->expected(2)
        ->delimiter(',');
    sub->add_option("--seed", seed, "Recorded in the manifest; the computation is deterministic");
  };

  struct Sub {
    std::string name;
    std::string help;
    bool takes_fatigued;
  };
  const std::vector<Sub> subs{
      {"fatigue-curve", "Shoulder capacity decay and endurance time per strength level", false},
      {"work-rest", "Capacity over repeated work and rest phases", false},
      {"sweep", "Objectives along the reach distance", true},
      {"pareto", "Pareto front and weight-line selections", false},
      {"predict", "Weighted optimal reach posture", true},
  };
  for (const auto& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    add_common(sub);
    if (s.takes_fatigued) {
      sub->add_flag("--fatigued", fatigued, "Also evaluate capacity after one work phase");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    std::error_code exists_ec;
    if (!fs::is_regular_file(config, exists_ec)) throw IoError("cannot read " + config.string());
    DrillingScenario scenario = load_scenario(config);
    // Command-line overrides are part of the run's identity.
    if (steps) {
      scenario.grid.steps = *steps;
      scenario.canonical_config += "\nsteps=" + std::to_string(*steps);
    }
    if (!weights.empty()) {
      try {
        scenario.weights = Weights(weights[0], weights[1]);
        scenario.canonical_config +=
            "\nweights=" + format_number(weights[0]) + "," + format_number(weights[1]);
      } catch (const InvalidParameter& e) {
        throw ConfigError(std::string("--weights: ") + e.what());
      }
    }
    scenario.validate();

    CommandOutput result;
    if (command == "fatigue-curve") {
      result = cmd_fatigue_curve(scenario);
    } else if (command == "work-rest") {
      result = cmd_work_rest(scenario);
    } else if (command == "sweep") {
      result = cmd_sweep(scenario, fatigued);
    } else if (command == "pareto") {
      result = cmd_pareto(scenario);
    } else {
      result = cmd_predict(scenario, fatigued);
    }
    for (const auto& d : result.diagnostics) std::cerr << "ergopose: " << d << "\n";

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());
    const fs::path csv_path = out_dir / (command + ".csv");
    write_file(csv_path, to_csv(result.table));

    RunRecord record;
    record.command = command;
    record.scenario_hash = scenario_hash(scenario);
    record.tool_version = tool_version();
    record.timestamp_utc = utc_timestamp();
    record.outputs = {csv_path.string()};
    record.seed = seed;
    write_file(out_dir / "manifest.json", manifest_json(record));
    std::cout << csv_path.string() << "\n";
    return kOk;
  } catch (const NoSolution& e) {
    std::cerr << "ergopose: infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const IoError& e) {
    std::cerr << "ergopose: i/o error: " << e.what() << "\n";
    return kIoError;
  } catch (const ConfigError& e) {
    std::cerr << "ergopose: config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const Error& e) {
    std::cerr << "ergopose: config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "ergopose: error: " << e.what() << "\n";
    return kIoError;
  }
}
