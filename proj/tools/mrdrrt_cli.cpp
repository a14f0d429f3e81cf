// Command-line front end. Talks to the planner only through the C API.
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mrdrrt/mrdrrt.h"

namespace {

enum ExitCode : int { kOk = 0, kFailed = 1, kError = 2 };

struct ScenarioDeleter {
  void operator()(mrdrrt_scenario* p) const { mrdrrt_scenario_free(p); }
};
struct RoadmapsDeleter {
  void operator()(mrdrrt_roadmaps* p) const { mrdrrt_roadmaps_free(p); }
};
struct PlanDeleter {
  void operator()(mrdrrt_plan* p) const { mrdrrt_plan_free(p); }
};
struct StringDeleter {
  void operator()(char* p) const { mrdrrt_string_free(p); }
};

using ScenarioPtr = std::unique_ptr<mrdrrt_scenario, ScenarioDeleter>;
using RoadmapsPtr = std::unique_ptr<mrdrrt_roadmaps, RoadmapsDeleter>;
using PlanPtr = std::unique_ptr<mrdrrt_plan, PlanDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

struct RoadmapFlags {
  std::uint64_t seed = 0;
  std::uint32_t prm_n = 200;
  std::uint32_t prm_k = 8;
};

struct PlanFlags {
  std::uint32_t max_iters = 30;
  std::string mode = "tensor";
  std::string fallback = "off";
  std::int64_t time_budget_ms = 0;
};

int report_error(mrdrrt_status status) {
  const std::string kind = mrdrrt_status_string(status);
  const std::string detail = mrdrrt_last_error();
  if (detail.empty()) {
    std::cerr << "error: " << kind << "\n";
  } else if (detail.rfind(kind, 0) == 0) {
    std::cerr << "error: " << detail << "\n";
  } else {
    std::cerr << "error: " << kind << ": " << detail << "\n";
  }
  return status == MRDRRT_ERR_PLAN_FAILED ||
                 status == MRDRRT_ERR_VALIDATION_FAILED
             ? kFailed
             : kError;
}

bool write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    return false;
  }
  return true;
}

std::optional<ScenarioPtr> load_scenario(const std::string& path,
                                         int& exit_code) {
  mrdrrt_scenario* raw = nullptr;
  const auto status = mrdrrt_scenario_load(path.c_str(), &raw);
  if (status != MRDRRT_OK) {
    exit_code = report_error(status);
    return std::nullopt;
  }
  return ScenarioPtr(raw);
}

void add_roadmap_flags(CLI::App* cmd, RoadmapFlags& flags) {
  cmd->add_option("--seed", flags.seed, "Random seed")->capture_default_str();
  cmd->add_option("--prm-n", flags.prm_n, "Roadmap samples per robot")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--prm-k", flags.prm_k, "Nearest neighbours per sample")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
}

void add_plan_flags(CLI::App* cmd, PlanFlags& flags) {
  cmd->add_option("--max-iters", flags.max_iters, "Main-loop iterations")
      ->capture_default_str();
  cmd->add_option("--mode", flags.mode, "Composite edge model")
      ->capture_default_str()
      ->check(CLI::IsMember({"tensor", "cartesian"}));
  cmd->add_option("--fallback", flags.fallback,
                  "Expose one roadmap edge per iteration")
      ->capture_default_str()
      ->check(CLI::IsMember({"on", "off"}));
  cmd->add_option("--time-budget-ms", flags.time_budget_ms,
                  "Wall-clock budget per run, 0 for none")
      ->capture_default_str();
}

mrdrrt_plan_options plan_options(const PlanFlags& flags, std::uint64_t seed) {
  mrdrrt_plan_options options;
  mrdrrt_plan_options_init(&options);
  options.seed = seed;
  options.max_iterations = flags.max_iters;
  options.mode =
      flags.mode == "cartesian" ? MRDRRT_MODE_CARTESIAN : MRDRRT_MODE_TENSOR;
  options.fallback = flags.fallback == "on" ? 1 : 0;
  options.time_budget_ms = flags.time_budget_ms;
  return options;
}

int cmd_build_roadmaps(const std::string& scenario_path,
                       const std::string& out_dir, const RoadmapFlags& flags) {
  int code = kOk;
  auto scenario = load_scenario(scenario_path, code);
  if (!scenario) {
    return code;
  }
  mrdrrt_roadmaps* raw = nullptr;
  auto status = mrdrrt_roadmaps_build(scenario->get(), flags.prm_n,
                                      flags.prm_k, flags.seed, &raw);
  if (status != MRDRRT_OK) {
    return report_error(status);
  }
  RoadmapsPtr roadmaps(raw);
  status = mrdrrt_roadmaps_save(roadmaps.get(), out_dir.c_str());
  if (status != MRDRRT_OK) {
    return report_error(status);
  }
  const auto m = mrdrrt_scenario_robot_count(scenario->get());
  for (std::size_t i = 0; i < m; ++i) {
    std::cout << "roadmap " << i << ": "
              << mrdrrt_roadmaps_vertex_count(roadmaps.get(), i)
              << " vertices\n";
  }
  return kOk;
}

int cmd_plan(const std::string& scenario_path, const std::string& roadmap_dir,
             const std::string& out_path, const std::string& report_path,
             const RoadmapFlags& rflags, const PlanFlags& pflags) {
  int code = kOk;
  auto scenario = load_scenario(scenario_path, code);
  if (!scenario) {
    return code;
  }
  mrdrrt_roadmaps* raw_roadmaps = nullptr;
  auto status =
      roadmap_dir.empty()
          ? mrdrrt_roadmaps_build(scenario->get(), rflags.prm_n, rflags.prm_k,
                                  rflags.seed, &raw_roadmaps)
          : mrdrrt_roadmaps_load(scenario->get(), roadmap_dir.c_str(),
                                 &raw_roadmaps);
  if (status != MRDRRT_OK) {
    return report_error(status);
  }
  RoadmapsPtr roadmaps(raw_roadmaps);

  const auto options = plan_options(pflags, rflags.seed);
  mrdrrt_plan* raw_plan = nullptr;
  const auto plan_status =
      mrdrrt_plan_run(scenario->get(), roadmaps.get(), &options, &raw_plan);
  if (raw_plan == nullptr) {
    return report_error(plan_status);
  }
  PlanPtr plan(raw_plan);

  char* report = nullptr;
  status = mrdrrt_plan_report_json(plan.get(), &report);
  if (status != MRDRRT_OK) {
    return report_error(status);
  }
  const StringPtr report_text(report);
  if (report_path.empty()) {
    std::cout << report_text.get();
  } else if (!write_text(report_path, report_text.get())) {
    return kError;
  }
  if (plan_status != MRDRRT_OK) {
    return report_error(plan_status);
  }

  char* json = nullptr;
  status = mrdrrt_plan_to_json(plan.get(), &json);
  if (status != MRDRRT_OK) {
    return report_error(status);
  }
  const StringPtr plan_text(json);
  return write_text(out_path, plan_text.get()) ? kOk : kError;
}

int cmd_validate(const std::string& scenario_path,
                 const std::string& roadmap_dir, const std::string& plan_path) {
  int code = kOk;
  auto scenario = load_scenario(scenario_path, code);
  if (!scenario) {
    return code;
  }
  mrdrrt_roadmaps* raw = nullptr;
  auto status =
      mrdrrt_roadmaps_load(scenario->get(), roadmap_dir.c_str(), &raw);
  if (status != MRDRRT_OK) {
    return report_error(status);
  }
  RoadmapsPtr roadmaps(raw);
  char* report = nullptr;
  status = mrdrrt_validate_plan_file(scenario->get(), roadmaps.get(),
                                     plan_path.c_str(), &report);
  if (report != nullptr) {
    const StringPtr text(report);
    std::cout << text.get();
  }
  return status == MRDRRT_OK ? kOk : report_error(status);
}

int cmd_render(const std::string& scenario_path, const std::string& plan_path,
               const std::string& out_path) {
  int code = kOk;
  auto scenario = load_scenario(scenario_path, code);
  if (!scenario) {
    return code;
  }
  char* svg = nullptr;
  const auto status = mrdrrt_render_svg(
      scenario->get(), plan_path.empty() ? nullptr : plan_path.c_str(), &svg);
  if (status != MRDRRT_OK) {
    return report_error(status);
  }
  const StringPtr text(svg);
  return write_text(out_path, text.get()) ? kOk : kError;
}

int cmd_bench(const std::string& dir, std::size_t seeds,
              const RoadmapFlags& rflags, const PlanFlags& pflags,
              const std::string& timing, const std::string& out_path,
              const std::string& runs_path) {
  mrdrrt_bench_options options;
  mrdrrt_bench_options_init(&options);
  options.base_seed = rflags.seed;
  options.prm_n = rflags.prm_n;
  options.prm_k = rflags.prm_k;
  options.plan = plan_options(pflags, rflags.seed);
  options.timing = timing == "on" ? 1 : 0;
  char* csv = nullptr;
  char* runs = nullptr;
  const auto status = mrdrrt_bench(dir.c_str(), seeds, &options, &csv,
                                   runs_path.empty() ? nullptr : &runs);
  if (status != MRDRRT_OK) {
    return report_error(status);
  }
  const StringPtr csv_text(csv);
  const StringPtr runs_text(runs);
  if (out_path.empty()) {
    std::cout << csv_text.get();
  } else if (!write_text(out_path, csv_text.get())) {
    return kError;
  }
  if (!runs_path.empty() && !write_text(runs_path, runs_text.get())) {
    return kError;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-robot discrete-RRT planner for disc robots"};
  app.set_version_flag("--version", std::string(mrdrrt_version()));
  app.require_subcommand(1);

  RoadmapFlags rflags;
  PlanFlags pflags;
  std::string scenario_path;
  std::string roadmap_dir;
  std::string plan_path;
  std::string out_path;
  std::string report_path;
  std::string runs_path;
  std::string timing = "on";
  std::size_t seeds = 10;
  int result = kOk;

  auto* build = app.add_subcommand("build-roadmaps",
                                   "Build and save one roadmap per robot");
  build->add_option("scenario", scenario_path, "Scenario JSON")
      ->required()
      ->check(CLI::ExistingFile);
  build->add_option("out-dir", out_path, "Output directory")->required();
  add_roadmap_flags(build, rflags);
  build->callback(
      [&] { result = cmd_build_roadmaps(scenario_path, out_path, rflags); });

  auto* plan = app.add_subcommand("plan", "Plan a joint motion");
  plan->add_option("scenario", scenario_path, "Scenario JSON")
      ->required()
      ->check(CLI::ExistingFile);
  plan->add_option("--roadmaps", roadmap_dir,
                   "Roadmap directory; built in-process when omitted")
      ->check(CLI::ExistingDirectory);
  plan->add_option("-o,--out", out_path, "Plan JSON output")->required();
  plan->add_option("--report", report_path,
                   "Run report output; stdout when omitted");
  add_roadmap_flags(plan, rflags);
  add_plan_flags(plan, pflags);
  plan->callback([&] {
    result = cmd_plan(scenario_path, roadmap_dir, out_path, report_path,
                      rflags, pflags);
  });

  auto* validate = app.add_subcommand("validate", "Check a plan file");
  validate->add_option("scenario", scenario_path, "Scenario JSON")
      ->required()
      ->check(CLI::ExistingFile);
  validate->add_option("roadmaps", roadmap_dir, "Roadmap directory")
      ->required()
      ->check(CLI::ExistingDirectory);
  validate->add_option("plan", plan_path, "Plan JSON")
      ->required()
      ->check(CLI::ExistingFile);
  validate->callback(
      [&] { result = cmd_validate(scenario_path, roadmap_dir, plan_path); });

  auto* render = app.add_subcommand("render", "Draw a scenario as SVG");
  render->add_option("scenario", scenario_path, "Scenario JSON")
      ->required()
      ->check(CLI::ExistingFile);
  render->add_option("--plan", plan_path, "Plan JSON to overlay")
      ->check(CLI::ExistingFile);
  render->add_option("-o,--out", out_path, "SVG output")->required();
  render->callback(
      [&] { result = cmd_render(scenario_path, plan_path, out_path); });

  auto* bench = app.add_subcommand("bench", "Run every scenario in a directory");
  bench->add_option("dir", scenario_path, "Scenario directory")
      ->required()
      ->check(CLI::ExistingDirectory);
  bench->add_option("--seeds", seeds, "Seeds per scenario")
      ->capture_default_str();
  bench->add_option("--timing", timing, "Report wall times; off prints na")
      ->capture_default_str()
      ->check(CLI::IsMember({"on", "off"}));
  bench->add_option("-o,--out", out_path, "CSV output; stdout when omitted");
  bench->add_option("--runs", runs_path, "Per-run reports as JSON");
  add_roadmap_flags(bench, rflags);
  PlanFlags bench_flags;
  bench_flags.time_budget_ms = 60000;
  add_plan_flags(bench, bench_flags);
  bench->callback([&] {
    result = cmd_bench(scenario_path, seeds, rflags, bench_flags, timing, out_path,
                       runs_path);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kError;
  }
  return result;
}
