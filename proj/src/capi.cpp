#include "mrdrrt/mrdrrt.h"

#include <chrono>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mrdrrt/planner.hpp"
#include "mrdrrt/plan_io.hpp"
#include "mrdrrt/roadmap.hpp"
#include "mrdrrt/scenario.hpp"
#include "mrdrrt/svg.hpp"

struct mrdrrt_scenario {
  mrdrrt::Scenario value;
};

struct mrdrrt_roadmaps {
  std::vector<mrdrrt::Roadmap> value;
  double build_ms = 0.0;
};

struct mrdrrt_plan {
  mrdrrt::PlanRun run;
  std::optional<mrdrrt::PlanDocument> document;
};

namespace {

thread_local std::string g_last_error;

mrdrrt_status fail(mrdrrt_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

char* to_c_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) {
    throw std::bad_alloc();
  }
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Maps exceptions escaping the core onto status codes.
template <class F>
mrdrrt_status guarded(F&& body) {
  g_last_error.clear();
  try {
    return body();
  } catch (const mrdrrt::RoadmapError& e) {
    return fail(e.kind() == mrdrrt::RoadmapError::Kind::invalid_endpoint
                    ? MRDRRT_ERR_INVALID_SCENARIO
                    : MRDRRT_ERR_ROADMAP_DISCONNECTED,
                e.what());
  } catch (const mrdrrt::ScenarioError& e) {
    return fail(MRDRRT_ERR_INVALID_SCENARIO, e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(MRDRRT_ERR_PARSE, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(MRDRRT_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(MRDRRT_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(MRDRRT_ERR_INTERNAL, "unknown error");
  }
}

std::optional<std::string> read_text(const char* path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return std::nullopt;
  }
  return std::string(std::istreambuf_iterator<char>(in), {});
}

mrdrrt::PlannerOptions planner_options(const mrdrrt_plan_options& o) {
  mrdrrt::PlannerOptions p;
  p.drrt.seed = o.seed;
  p.drrt.max_iterations = o.max_iterations;
  p.drrt.fallback = o.fallback != 0;
  p.drrt.time_budget = std::chrono::milliseconds(
      o.time_budget_ms > 0 ? o.time_budget_ms : 0);
  p.mode = o.mode == MRDRRT_MODE_CARTESIAN ? mrdrrt::ProductMode::cartesian
                                           : mrdrrt::ProductMode::tensor;
  return p;
}

std::filesystem::path roadmap_file(const std::filesystem::path& dir,
                                   std::size_t robot) {
  return dir / ("roadmap_" + std::to_string(robot) + ".json");
}

}  // namespace

extern "C" {

const char* mrdrrt_version(void) { return "1.0.0"; }

const char* mrdrrt_last_error(void) { return g_last_error.c_str(); }

const char* mrdrrt_status_string(mrdrrt_status status) {
  switch (status) {
    case MRDRRT_OK:
      return "ok";
    case MRDRRT_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case MRDRRT_ERR_IO:
      return "i/o error";
    case MRDRRT_ERR_PARSE:
      return "parse error";
    case MRDRRT_ERR_INVALID_SCENARIO:
      return "invalid scenario";
    case MRDRRT_ERR_ROADMAP_DISCONNECTED:
      return "roadmap disconnected";
    case MRDRRT_ERR_PLAN_FAILED:
      return "planning failed";
    case MRDRRT_ERR_VALIDATION_FAILED:
      return "validation failed";
    case MRDRRT_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

void mrdrrt_string_free(char* s) { std::free(s); }

mrdrrt_status mrdrrt_scenario_parse(const char* json, mrdrrt_scenario** out) {
  if (json == nullptr || out == nullptr) {
    return fail(MRDRRT_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] {
    auto s = mrdrrt::scenario_from_json(nlohmann::json::parse(json));
    mrdrrt::validate_scenario(s);
    *out = new mrdrrt_scenario{std::move(s)};
    return MRDRRT_OK;
  });
}

mrdrrt_status mrdrrt_scenario_load(const char* path, mrdrrt_scenario** out) {
  if (path == nullptr || out == nullptr) {
    return fail(MRDRRT_ERR_INVALID_ARGUMENT, "null argument");
  }
  const auto text = read_text(path);
  if (!text) {
    return fail(MRDRRT_ERR_IO, std::string("cannot read ") + path);
  }
  return mrdrrt_scenario_parse(text->c_str(), out);
}

void mrdrrt_scenario_free(mrdrrt_scenario* scenario) { delete scenario; }

size_t mrdrrt_scenario_robot_count(const mrdrrt_scenario* scenario) {
  return scenario == nullptr ? 0 : scenario->value.robot_count();
}

const char* mrdrrt_scenario_name(const mrdrrt_scenario* scenario) {
  return scenario == nullptr ? "" : scenario->value.name.c_str();
}

mrdrrt_status mrdrrt_roadmaps_build(const mrdrrt_scenario* scenario, size_t n,
                                    size_t k, uint64_t seed,
                                    mrdrrt_roadmaps** out) {
  if (scenario == nullptr || out == nullptr) {
    return fail(MRDRRT_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] {
    const auto t0 = std::chrono::steady_clock::now();
    auto roadmaps = mrdrrt::build_roadmaps(scenario->value, n, k, seed);
    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
    *out = new mrdrrt_roadmaps{std::move(roadmaps), ms};
    return MRDRRT_OK;
  });
}

mrdrrt_status mrdrrt_roadmaps_save(const mrdrrt_roadmaps* roadmaps,
                                   const char* dir) {
  if (roadmaps == nullptr || dir == nullptr) {
    return fail(MRDRRT_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
      return fail(MRDRRT_ERR_IO, "cannot create " + std::string(dir));
    }
    for (std::size_t i = 0; i < roadmaps->value.size(); ++i) {
      try {
        mrdrrt::write_json_file(roadmap_file(dir, i),
                                mrdrrt::roadmap_to_json(roadmaps->value[i]));
      } catch (const std::runtime_error& e) {
        return fail(MRDRRT_ERR_IO, e.what());
      }
    }
    return MRDRRT_OK;
  });
}

mrdrrt_status mrdrrt_roadmaps_load(const mrdrrt_scenario* scenario,
                                   const char* dir, mrdrrt_roadmaps** out) {
  if (scenario == nullptr || dir == nullptr || out == nullptr) {
    return fail(MRDRRT_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<mrdrrt::Roadmap> roadmaps;
    for (std::size_t i = 0; i < scenario->value.robot_count(); ++i) {
      const auto file = roadmap_file(dir, i);
      const auto text = read_text(file.string().c_str());
      if (!text) {
        return fail(MRDRRT_ERR_IO, "cannot read " + file.string());
      }
      roadmaps.push_back(
          mrdrrt::roadmap_from_json(nlohmann::json::parse(*text)));
    }
    mrdrrt::check_roadmaps_match(scenario->value, roadmaps);
    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
    *out = new mrdrrt_roadmaps{std::move(roadmaps), ms};
    return MRDRRT_OK;
  });
}

void mrdrrt_roadmaps_free(mrdrrt_roadmaps* roadmaps) { delete roadmaps; }

size_t mrdrrt_roadmaps_vertex_count(const mrdrrt_roadmaps* roadmaps,
                                    size_t robot) {
  if (roadmaps == nullptr || robot >= roadmaps->value.size()) {
    return 0;
  }
  return roadmaps->value[robot].size();
}

double mrdrrt_roadmaps_build_ms(const mrdrrt_roadmaps* roadmaps) {
  return roadmaps == nullptr ? 0.0 : roadmaps->build_ms;
}

void mrdrrt_plan_options_init(mrdrrt_plan_options* options) {
  if (options == nullptr) {
    return;
  }
  options->seed = 0;
  options->max_iterations = 30;
  options->mode = MRDRRT_MODE_TENSOR;
  options->fallback = 0;
  options->time_budget_ms = 0;
}

mrdrrt_status mrdrrt_plan_run(const mrdrrt_scenario* scenario,
                          const mrdrrt_roadmaps* roadmaps,
                          const mrdrrt_plan_options* options,
                          mrdrrt_plan** out) {
  if (scenario == nullptr || roadmaps == nullptr || out == nullptr) {
    return fail(MRDRRT_ERR_INVALID_ARGUMENT, "null argument");
  }
  mrdrrt_plan_options defaults;
  mrdrrt_plan_options_init(&defaults);
  const mrdrrt_plan_options& o = options != nullptr ? *options : defaults;
  return guarded([&] {
    auto result = std::make_unique<mrdrrt_plan>();
    result->run =
        mrdrrt::run_planner(scenario->value, roadmaps->value, planner_options(o));
    result->run.report.roadmap_ms = roadmaps->build_ms;
    if (result->run.path) {
      result->document = mrdrrt::make_plan_document(
          scenario->value, roadmaps->value, *result->run.path, o.seed);
    }
    const bool ok = result->run.report.success;
    const std::string status = result->run.report.status;
    *out = result.release();
    if (!ok) {
      return fail(MRDRRT_ERR_PLAN_FAILED, "no path found (" + status + ")");
    }
    return MRDRRT_OK;
  });
}

void mrdrrt_plan_free(mrdrrt_plan* plan) { delete plan; }

int mrdrrt_plan_succeeded(const mrdrrt_plan* plan) {
  return plan != nullptr && plan->run.report.success ? 1 : 0;
}

size_t mrdrrt_plan_step_count(const mrdrrt_plan* plan) {
  return plan == nullptr ? 0 : plan->run.report.path_steps;
}

mrdrrt_status mrdrrt_plan_to_json(const mrdrrt_plan* plan, char** json) {
  if (plan == nullptr || json == nullptr) {
    return fail(MRDRRT_ERR_INVALID_ARGUMENT, "null argument");
  }
  if (!plan->document) {
    return fail(MRDRRT_ERR_PLAN_FAILED, "plan has no path");
  }
  return guarded([&] {
    *json = to_c_string(mrdrrt::plan_to_json(*plan->document).dump(2) + "\n");
    return MRDRRT_OK;
  });
}

mrdrrt_status mrdrrt_plan_report_json(const mrdrrt_plan* plan, char** json) {
  if (plan == nullptr || json == nullptr) {
    return fail(MRDRRT_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] {
    *json = to_c_string(plan->run.report.to_json().dump(2) + "\n");
    return MRDRRT_OK;
  });
}

mrdrrt_status mrdrrt_validate_plan_file(const mrdrrt_scenario* scenario,
                                        const mrdrrt_roadmaps* roadmaps,
                                        const char* plan_path,
                                        char** report_json) {
  if (scenario == nullptr || roadmaps == nullptr || plan_path == nullptr ||
      report_json == nullptr) {
    return fail(MRDRRT_ERR_INVALID_ARGUMENT, "null argument");
  }
  const auto text = read_text(plan_path);
  if (!text) {
    return fail(MRDRRT_ERR_IO, std::string("cannot read ") + plan_path);
  }
  return guarded([&] {
    mrdrrt::PlanDocument plan;
    try {
      plan = mrdrrt::plan_from_json(nlohmann::json::parse(*text));
    } catch (const std::invalid_argument& e) {
      return fail(MRDRRT_ERR_PARSE, e.what());
    }
    const auto report =
        mrdrrt::validate_plan(plan, scenario->value, roadmaps->value);
    *report_json = to_c_string(report.to_json().dump(2) + "\n");
    if (!report.ok()) {
      return fail(MRDRRT_ERR_VALIDATION_FAILED,
                  "step " + std::to_string(report.violations.front().step) +
                      ": " + report.violations.front().message);
    }
    return MRDRRT_OK;
  });
}

mrdrrt_status mrdrrt_render_svg(const mrdrrt_scenario* scenario,
                                const char* plan_path, char** svg) {
  if (scenario == nullptr || svg == nullptr) {
    return fail(MRDRRT_ERR_INVALID_ARGUMENT, "null argument");
  }
  std::optional<std::string> text;
  if (plan_path != nullptr) {
    text = read_text(plan_path);
    if (!text) {
      return fail(MRDRRT_ERR_IO, std::string("cannot read ") + plan_path);
    }
  }
  return guarded([&] {
    std::optional<mrdrrt::PlanDocument> plan;
    if (text) {
      try {
        plan = mrdrrt::plan_from_json(nlohmann::json::parse(*text));
      } catch (const std::invalid_argument& e) {
        return fail(MRDRRT_ERR_PARSE, e.what());
      }
    }
    *svg = to_c_string(
        mrdrrt::render_svg(scenario->value, plan ? &*plan : nullptr));
    return MRDRRT_OK;
  });
}

void mrdrrt_bench_options_init(mrdrrt_bench_options* options) {
  if (options == nullptr) {
    return;
  }
  options->base_seed = 0;
  options->prm_n = 200;
  options->prm_k = 8;
  mrdrrt_plan_options_init(&options->plan);
  options->timing = 1;
}

mrdrrt_status mrdrrt_bench(const char* scenario_dir, size_t seeds,
                           const mrdrrt_bench_options* options, char** csv,
                           char** runs_json) {
  if (scenario_dir == nullptr || csv == nullptr) {
    return fail(MRDRRT_ERR_INVALID_ARGUMENT, "null argument");
  }
  mrdrrt_bench_options defaults;
  mrdrrt_bench_options_init(&defaults);
  const mrdrrt_bench_options& o = options != nullptr ? *options : defaults;
  if (!std::filesystem::is_directory(scenario_dir)) {
    return fail(MRDRRT_ERR_IO,
                std::string("not a directory: ") + scenario_dir);
  }
  return guarded([&] {
    mrdrrt::BenchOptions bench;
    bench.prm_n = o.prm_n;
    bench.prm_k = o.prm_k;
    bench.base_seed = o.base_seed;
    bench.planner = planner_options(o.plan);
    const auto rows = mrdrrt::run_bench(scenario_dir, seeds, bench);
    *csv = to_c_string(mrdrrt::bench_csv(rows, o.timing != 0));
    if (runs_json != nullptr) {
      nlohmann::json runs = nlohmann::json::array();
      for (const auto& row : rows) {
        for (const auto& run : row.runs) {
          auto entry = run.to_json();
          if (o.timing == 0) {
            for (const char* key :
                 {"roadmap_ms", "expand_ms", "connect_ms", "total_ms"}) {
              entry.erase(key);
            }
          }
          runs.push_back(std::move(entry));
        }
      }
      *runs_json = to_c_string(runs.dump(2) + "\n");
    }
    return MRDRRT_OK;
  });
}

}  // extern "C"
