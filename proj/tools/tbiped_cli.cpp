// Command-line front end: run scenarios, plot telemetry, rigidity calculator.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "tbiped/config.hpp"
#include "tbiped/errors.hpp"
#include "tbiped/plot.hpp"
#include "tbiped/scenario.hpp"
#include "tbiped/structcalc.hpp"
#include "tbiped/telemetry.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitDivergence = 3;

struct Job {
  std::filesystem::path config_path;
  tbiped::ScenarioConfig config;
  std::filesystem::path csv_path;
  int status = kExitOk;
  std::string report;
};

std::string summary_line(const tbiped::ScenarioConfig& cfg, const tbiped::ScenarioResult& r) {
  const auto& s = r.summary;
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "summary: scenario=%s rows=%zu mean_thrust=%.4f N max_abs_roll=%.4f rad "
                "final_body_z=%.4f m max_penetration=%.5f m first_contact=%s",
                std::string(tbiped::to_string(cfg.kind)).c_str(), r.rows.size(), s.mean_thrust,
                s.max_abs_roll, s.final_body_z, s.max_penetration,
                s.first_contact_time ? (std::to_string(*s.first_contact_time) + " s").c_str() : "none");
  return buf;
}

void run_job(Job& job) {
  try {
    const tbiped::ScenarioResult result = tbiped::run_scenario(job.config);
    std::ostringstream csv;
    tbiped::write_csv(csv, result.rows);
    std::ofstream out(job.csv_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + job.csv_path.string());
    out << csv.str();
    if (!out) throw std::runtime_error("write failed for " + job.csv_path.string());
    job.report = summary_line(job.config, result) + "\ncsv: " + job.csv_path.string();
  } catch (const tbiped::NumericalDivergence& e) {
    job.status = kExitDivergence;
    job.report = "divergence: " + std::string(e.what());
  } catch (const std::exception& e) {
    job.status = kExitFailure;
    job.report = "error: " + std::string(e.what());
  }
}

int cmd_run(const std::vector<std::string>& configs, const std::string& out_dir,
            std::optional<std::uint64_t> seed) {
  std::vector<Job> jobs;
  for (const std::string& path : configs) {
    Job job;
    job.config_path = path;
    try {
      job.config = path.empty() ? tbiped::default_config() : tbiped::load_config(path);
    } catch (const tbiped::ParseError& e) {
      std::cerr << path << ": parse error: " << e.what() << "\n";
      return kExitConfig;
    } catch (const tbiped::ValidationError& e) {
      std::cerr << path << ": invalid config: " << e.what() << "\n";
      return kExitConfig;
    } catch (const std::exception& e) {
      std::cerr << path << ": " << e.what() << "\n";
      return kExitConfig;
    }
    if (seed) job.config.seed = *seed;
    job.csv_path = std::filesystem::path(out_dir) / job.config.output;
    jobs.push_back(std::move(job));
  }

  try {
    std::filesystem::create_directories(out_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }

  // One worker per scenario; each owns its world and random stream.
  {
    std::vector<std::jthread> workers;
    for (Job& job : jobs) workers.emplace_back([&job] { run_job(job); });
  }

  int status = kExitOk;
  for (const Job& job : jobs) {
    (job.status == kExitOk ? std::cout : std::cerr) << job.report << "\n";
    status = std::max(status, job.status);
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thruster-assisted biped simulator and tools"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run scenario(s) and write telemetry CSV");
  std::vector<std::string> configs;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  run->add_option("--config", configs, "Scenario config file (repeat to run several in parallel)");
  run->add_option("--out", out_dir, "Output directory");
  run->add_option("--seed", seed, "Override the config seed");

  auto* plot = app.add_subcommand("plot", "Render SVG figures from a telemetry CSV");
  std::string csv_path;
  std::string figure = "all";
  std::string plot_out = ".";
  plot->add_option("csv", csv_path, "Telemetry CSV")->required();
  plot->add_option("--figure", figure,
                   "joints-left | joints-right | body | grf | imu | capture | all");
  plot->add_option("--out", plot_out, "Output directory");

  auto* calc = app.add_subcommand("calc-rigidity", "Sandwich-panel equivalent flexural rigidity");
  tbiped::structcalc::SandwichPanel panel{};
  calc->add_option("--ef", panel.skin_modulus, "Skin Young's modulus [Pa]")->required();
  calc->add_option("--ec", panel.core_modulus, "Core Young's modulus [Pa]")->required();
  calc->add_option("--t", panel.skin_thickness, "Skin thickness [m]")->required();
  calc->add_option("--c", panel.core_thickness, "Core thickness [m]")->required();
  calc->add_option("--b", panel.width, "Width [m]")->required();

  auto* print_defaults = app.add_subcommand("print-default-config", "Print the default scenario config");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  if (*run) {
    if (configs.empty()) configs.emplace_back();
    return cmd_run(configs, out_dir, seed);
  }

  if (*plot) {
    std::vector<tbiped::plot::FigureKind> kinds;
    if (figure == "all") {
      kinds.assign(tbiped::plot::kAllFigures.begin(), tbiped::plot::kAllFigures.end());
    } else if (auto kind = tbiped::plot::parse_figure_kind(figure)) {
      kinds.push_back(*kind);
    } else {
      std::cerr << "unknown figure kind '" << figure << "'\n";
      return kExitConfig;
    }
    try {
      for (const auto& path : tbiped::plot::plot_csv(csv_path, kinds, plot_out)) {
        std::cout << path.string() << "\n";
      }
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitFailure;
    }
    return kExitOk;
  }

  if (*calc) {
    try {
      panel.validate();
    } catch (const tbiped::ValidationError& e) {
      std::cerr << "invalid panel: " << e.what() << "\n";
      return kExitConfig;
    }
    const auto r = tbiped::structcalc::equivalent_rigidity(panel);
    std::printf("core_bending  = %.9g N m^2\n", r.core_bending);
    std::printf("skin_bending  = %.9g N m^2\n", r.skin_bending);
    std::printf("skin_parallel = %.9g N m^2\n", r.skin_parallel);
    std::printf("total         = %.9g N m^2\n", r.total);
    return kExitOk;
  }

  if (*print_defaults) {
    std::cout << tbiped::to_config_text(tbiped::default_config());
    return kExitOk;
  }
  return kExitFailure;
}
