#include "mrdrrt/svg.hpp"

#include <algorithm>
#include <array>

#include <fmt/format.h>

namespace mrdrrt {

namespace {

constexpr std::array<const char*, 8> kPalette = {
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
    "#9467bd", "#8c564b", "#e377c2", "#17becf"};

const char* colour(std::size_t robot) {
  return kPalette[robot % kPalette.size()];
}

std::string points_attr(const std::vector<Point2>& pts) {
  std::string out;
  for (const auto& p : pts) {
    if (!out.empty()) {
      out += ' ';
    }
    out += fmt::format("{:.4f},{:.4f}", p.x, p.y);
  }
  return out;
}

std::string xml_escape(const std::string& text) {
  std::string out;
  for (const char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_svg(const Scenario& scenario, const PlanDocument* plan) {
  const Box2 box = bounding_box(scenario.workspace);
  const double width = box.hi.x - box.lo.x;
  const double height = box.hi.y - box.lo.y;
  const double margin = 0.02 * std::max(width, height);
  const double scale = 600.0 / std::max(width, height);
  const double stroke = 1.5 / scale;

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
  svg += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
      "width=\"{:.0f}\" height=\"{:.0f}\" viewBox=\"{:.4f} {:.4f} {:.4f} "
      "{:.4f}\">\n",
      (width + 2 * margin) * scale, (height + 2 * margin) * scale,
      box.lo.x - margin, -(box.hi.y + margin), width + 2 * margin,
      height + 2 * margin);
  svg += fmt::format("<title>{}</title>\n", xml_escape(scenario.name));
  // Flip y so the workspace reads with y pointing up.
  svg += "<g transform=\"scale(1,-1)\">\n";
  svg += fmt::format(
      "<polygon points=\"{}\" fill=\"#f7f7f7\" stroke=\"#333333\" "
      "stroke-width=\"{:.4f}\"/>\n",
      points_attr(scenario.workspace.vertices), stroke);
  for (const auto& obstacle : scenario.obstacles) {
    svg += fmt::format(
        "<polygon points=\"{}\" fill=\"#808080\" stroke=\"#404040\" "
        "stroke-width=\"{:.4f}\"/>\n",
        points_attr(obstacle.vertices), stroke);
  }

  if (plan != nullptr) {
    for (std::size_t i = 0; i < scenario.robot_count(); ++i) {
      std::vector<Point2> trace{scenario.robots[i].start};
      for (const auto& step : plan->steps) {
        if (i < step.targets.size() && step.targets[i] != trace.back()) {
          trace.push_back(step.targets[i]);
        }
      }
      for (const auto& p : trace) {
        svg += fmt::format(
            "<circle cx=\"{:.4f}\" cy=\"{:.4f}\" r=\"{:.4f}\" fill=\"{}\" "
            "fill-opacity=\"0.08\" stroke=\"none\"/>\n",
            p.x, p.y, scenario.robots[i].disc.radius, colour(i));
      }
      svg += fmt::format(
          "<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" "
          "stroke-width=\"{:.4f}\"/>\n",
          points_attr(trace), colour(i), 1.5 * stroke);
    }
  }

  for (std::size_t i = 0; i < scenario.robot_count(); ++i) {
    const auto& r = scenario.robots[i];
    svg += fmt::format(
        "<circle cx=\"{:.4f}\" cy=\"{:.4f}\" r=\"{:.4f}\" fill=\"{}\" "
        "fill-opacity=\"0.6\" stroke=\"{}\" stroke-width=\"{:.4f}\"/>\n",
        r.start.x, r.start.y, r.disc.radius, colour(i), colour(i), stroke);
    svg += fmt::format(
        "<circle cx=\"{:.4f}\" cy=\"{:.4f}\" r=\"{:.4f}\" fill=\"none\" "
        "stroke=\"{}\" stroke-width=\"{:.4f}\" stroke-dasharray=\"{:.4f}\"/>\n",
        r.target.x, r.target.y, r.disc.radius, colour(i), stroke, 4 * stroke);
  }
  svg += "</g>\n</svg>\n";
  return svg;
}

}  // namespace mrdrrt
