#pragma once

// SVG timeline of a schedule: one band per machine (strategy, mask
// fabrication, deposition), one lane per array inside a band whenever the
// band runs arrays concurrently.

#include <algorithm>
#include <cstddef>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "oligoplan/pipeline.hpp"

namespace oligoplan {

namespace detail {

inline std::string svg_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline bool has_overlap(std::vector<Segment> segs) {
  std::sort(segs.begin(), segs.end(),
            [](const Segment& a, const Segment& b) { return a.start < b.start; });
  for (std::size_t i = 1; i < segs.size(); ++i)
    if (segs[i].start < segs[i - 1].end - 1e-9) return true;
  return false;
}

inline std::string array_color(long array) {
  static const char* palette[] = {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
                                  "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac"};
  if (array < 0) return "#7f7f7f";
  return palette[static_cast<std::size_t>(array) % std::size(palette)];
}

}  // namespace detail

inline std::string gantt_svg(const ScheduleReport& report) {
  constexpr double label_w = 110, plot_w = 900, lane_h = 18, band_gap = 12, top = 40;
  const Stage stages[] = {Stage::strategy, Stage::masks, Stage::deposition};

  std::vector<long> arrays;
  for (const auto& s : report.segments)
    if (s.array >= 0) arrays.push_back(s.array);
  std::sort(arrays.begin(), arrays.end());
  arrays.erase(std::unique(arrays.begin(), arrays.end()), arrays.end());

  const double span = std::max(report.total_minutes, 1e-9);
  auto x_of = [&](double t) { return label_w + plot_w * t / span; };

  std::ostringstream body;
  double y = top;
  for (const auto stage : stages) {
    std::vector<Segment> segs;
    for (const auto& s : report.segments)
      if (s.stage == stage) segs.push_back(s);
    const bool lanes = detail::has_overlap(segs);
    const std::size_t n_lanes = lanes ? std::max<std::size_t>(arrays.size(), 1) : 1;
    const double band_h = lane_h * static_cast<double>(n_lanes);

    body << "  <text x=\"4\" y=\"" << detail::svg_num(y + band_h / 2 + 4) << "\">"
         << to_string(stage) << "</text>\n";
    body << "  <rect x=\"" << detail::svg_num(label_w) << "\" y=\"" << detail::svg_num(y)
         << "\" width=\"" << detail::svg_num(plot_w) << "\" height=\"" << detail::svg_num(band_h)
         << "\" fill=\"#f4f4f4\"/>\n";
    for (const auto& s : segs) {
      std::size_t lane = 0;
      if (lanes && s.array >= 0)
        lane = static_cast<std::size_t>(
            std::lower_bound(arrays.begin(), arrays.end(), s.array) - arrays.begin());
      const double x0 = x_of(s.start), x1 = x_of(s.end);
      body << "  <rect x=\"" << detail::svg_num(x0) << "\" y=\""
           << detail::svg_num(y + lane_h * static_cast<double>(lane) + 1) << "\" width=\""
           << detail::svg_num(std::max(x1 - x0, 0.0)) << "\" height=\""
           << detail::svg_num(lane_h - 2) << "\" fill=\"" << detail::array_color(s.array)
           << "\" stroke=\"#333\" stroke-width=\"0.3\"><title>"
           << (s.array >= 0 ? "array " + std::to_string(s.array) : std::string("merged run"))
           << ' ' << to_string(s.stage) << ' ' << detail::svg_num(s.start) << '-'
           << detail::svg_num(s.end) << "</title></rect>\n";
    }
    y += band_h + band_gap;
  }

  // Time axis with ten ticks.
  body << "  <line x1=\"" << detail::svg_num(label_w) << "\" y1=\"" << detail::svg_num(y)
       << "\" x2=\"" << detail::svg_num(label_w + plot_w) << "\" y2=\"" << detail::svg_num(y)
       << "\" stroke=\"#000\"/>\n";
  for (int i = 0; i <= 10; ++i) {
    const double t = report.total_minutes * i / 10.0;
    body << "  <text x=\"" << detail::svg_num(x_of(t)) << "\" y=\"" << detail::svg_num(y + 14)
         << "\" text-anchor=\"middle\" font-size=\"10\">" << detail::svg_num(t) << "</text>\n";
  }
  y += 30;

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << detail::svg_num(label_w + plot_w + 20)
      << "\" height=\"" << detail::svg_num(y) << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "  <text x=\"4\" y=\"20\">" << to_string(report.mode) << " schedule, "
      << detail::svg_num(report.total_minutes) << " min, R_r " << detail::svg_num(report.r_r)
      << "</text>\n"
      << body.str() << "</svg>\n";
  return svg.str();
}

}  // namespace oligoplan
