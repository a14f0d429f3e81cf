#pragma once

#include <string>

#include "mrdrrt/plan_io.hpp"
#include "mrdrrt/scenario.hpp"

namespace mrdrrt {

/// SVG 1.1 document: workspace, obstacles, each robot's start (solid) and
/// target (dashed) disc and, with a plan, one coloured polyline per robot plus
/// faint discs at every keyframe. Output is a pure function of the inputs.
std::string render_svg(const Scenario& scenario,
                       const PlanDocument* plan = nullptr);

}  // namespace mrdrrt
