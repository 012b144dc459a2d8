#pragma once

// Static SVG figures from telemetry CSV.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tbiped/telemetry.hpp"

namespace tbiped::plot {

enum class FigureKind { kJointsLeft, kJointsRight, kBody, kGrf, kImu, kCapture };

inline constexpr std::array<FigureKind, 6> kAllFigures{
    FigureKind::kJointsLeft, FigureKind::kJointsRight, FigureKind::kBody,
    FigureKind::kGrf,        FigureKind::kImu,         FigureKind::kCapture};

std::string_view to_string(FigureKind kind);
std::optional<FigureKind> parse_figure_kind(std::string_view name);

struct Series {
  std::string label;
  std::vector<double> values;
};

struct Panel {
  std::string y_label;
  std::vector<Series> series;
};

struct Figure {
  std::string title;
  std::string x_label = "time [s]";
  std::vector<double> time;
  std::vector<Panel> panels;  // stacked vertically, shared time axis
};

Figure make_figure(const std::vector<TelemetryRow>& rows, FigureKind kind);

std::string render_svg(const Figure& figure);

/// Reads `csv`, writes <out_dir>/<kind>.svg for each requested kind and
/// returns the written paths. Throws std::runtime_error on malformed CSV.
std::vector<std::filesystem::path> plot_csv(const std::filesystem::path& csv,
                                            const std::vector<FigureKind>& kinds,
                                            const std::filesystem::path& out_dir);

}  // namespace tbiped::plot
