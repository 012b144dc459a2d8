#include "tbiped/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace tbiped::plot {
namespace {

constexpr double kWidth = 900.0;
constexpr double kPanelHeight = 260.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 160.0;
constexpr double kTop = 40.0;
constexpr double kGap = 50.0;

constexpr std::array<const char*, 4> kColors{"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string fmt_px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

template <typename F>
Series column(const std::vector<TelemetryRow>& rows, std::string label, F get) {
  Series s{std::move(label), {}};
  s.values.reserve(rows.size());
  for (const TelemetryRow& r : rows) s.values.push_back(get(r));
  return s;
}

}  // namespace

std::string_view to_string(FigureKind kind) {
  switch (kind) {
    case FigureKind::kJointsLeft: return "joints-left";
    case FigureKind::kJointsRight: return "joints-right";
    case FigureKind::kBody: return "body";
    case FigureKind::kGrf: return "grf";
    case FigureKind::kImu: return "imu";
    case FigureKind::kCapture: return "capture";
  }
  return "unknown";
}

std::optional<FigureKind> parse_figure_kind(std::string_view name) {
  for (FigureKind k : kAllFigures) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

Figure make_figure(const std::vector<TelemetryRow>& rows, FigureKind kind) {
  Figure f;
  for (const TelemetryRow& r : rows) f.time.push_back(r.time);

  switch (kind) {
    case FigureKind::kJointsLeft:
    case FigureKind::kJointsRight: {
      const bool left = kind == FigureKind::kJointsLeft;
      f.title = left ? "Joint angles, left leg" : "Joint angles, right leg";
      const auto pick = [left](const TelemetryRow& r, int j) {
        return left ? r.left_joints[j] : r.right_joints[j];
      };
      f.panels.push_back({"angle [rad]",
                          {column(rows, "hip frontal", [&](const TelemetryRow& r) { return pick(r, 0); }),
                           column(rows, "hip sagittal", [&](const TelemetryRow& r) { return pick(r, 1); }),
                           column(rows, "knee", [&](const TelemetryRow& r) { return pick(r, 2); })}});
      break;
    }
    case FigureKind::kBody:
      f.title = "Body position and thruster force";
      f.panels.push_back({"body z [m]", {column(rows, "z", [](const TelemetryRow& r) { return r.body[2]; })}});
      f.panels.push_back({"thrust [N]",
                          {column(rows, "f1", [](const TelemetryRow& r) { return r.thrust_f1; }),
                           column(rows, "f2", [](const TelemetryRow& r) { return r.thrust_f2; })}});
      break;
    case FigureKind::kGrf:
      f.title = "Ground reaction force";
      f.panels.push_back({"normal force [N]",
                          {column(rows, "left", [](const TelemetryRow& r) { return r.grf_left; }),
                           column(rows, "right", [](const TelemetryRow& r) { return r.grf_right; })}});
      break;
    case FigureKind::kImu:
      f.title = "Filtered pitch and roll";
      f.panels.push_back({"angle [rad]",
                          {column(rows, "roll raw", [](const TelemetryRow& r) { return r.roll_raw; }),
                           column(rows, "roll filtered", [](const TelemetryRow& r) { return r.roll_filtered; }),
                           column(rows, "pitch filtered", [](const TelemetryRow& r) { return r.pitch_filtered; })}});
      break;
    case FigureKind::kCapture:
      f.title = "Capture point offsets";
      f.panels.push_back({"offset [m]",
                          {column(rows, "dx", [](const TelemetryRow& r) { return r.capture_dx; }),
                           column(rows, "dy", [](const TelemetryRow& r) { return r.capture_dy; })}});
      break;
  }
  return f;
}

std::string render_svg(const Figure& fig) {
  const double plot_w = kWidth - kLeft - kRight;
  const double height = kTop + static_cast<double>(fig.panels.size()) * (kPanelHeight + kGap) + 20.0;

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt_px(kWidth) + "\" height=\"" +
         fmt_px(height) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<text x=\"" + fmt_px(kWidth / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" +
         fig.title + "</text>\n";

  double t0 = 0.0, t1 = 1.0;
  if (!fig.time.empty()) {
    t0 = fig.time.front();
    t1 = std::max(fig.time.back(), t0 + 1e-9);
  }

  for (std::size_t p = 0; p < fig.panels.size(); ++p) {
    const Panel& panel = fig.panels[p];
    const double top = kTop + static_cast<double>(p) * (kPanelHeight + kGap);
    const double bottom = top + kPanelHeight;

    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const Series& s : panel.series) {
      for (double v : s.values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
    if (!std::isfinite(lo)) lo = 0.0, hi = 1.0;
    if (hi - lo < 1e-12) lo -= 0.5, hi += 0.5;
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;

    const auto x_px = [&](double t) { return kLeft + (t - t0) / (t1 - t0) * plot_w; };
    const auto y_px = [&](double v) { return bottom - (v - lo) / (hi - lo) * kPanelHeight; };

    out += "<rect x=\"" + fmt_px(kLeft) + "\" y=\"" + fmt_px(top) + "\" width=\"" + fmt_px(plot_w) +
           "\" height=\"" + fmt_px(kPanelHeight) + "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
      const double v = lo + (hi - lo) * i / 4.0;
      out += "<text x=\"" + fmt_px(kLeft - 6) + "\" y=\"" + fmt_px(y_px(v) + 4) +
             "\" text-anchor=\"end\">" + fmt(v) + "</text>\n";
      const double t = t0 + (t1 - t0) * i / 4.0;
      out += "<text x=\"" + fmt_px(x_px(t)) + "\" y=\"" + fmt_px(bottom + 16) +
             "\" text-anchor=\"middle\">" + fmt(t) + "</text>\n";
    }
    out += "<text transform=\"translate(18," + fmt_px(top + kPanelHeight / 2) +
           ") rotate(-90)\" text-anchor=\"middle\">" + panel.y_label + "</text>\n";
    out += "<text x=\"" + fmt_px(kLeft + plot_w / 2) + "\" y=\"" + fmt_px(bottom + 34) +
           "\" text-anchor=\"middle\">" + fig.x_label + "</text>\n";

    for (std::size_t s = 0; s < panel.series.size(); ++s) {
      const Series& series = panel.series[s];
      const char* color = kColors[s % kColors.size()];
      out += "<polyline class=\"series\" fill=\"none\" stroke=\"" + std::string(color) +
             "\" stroke-width=\"1.2\" points=\"";
      const std::size_t n = std::min(series.values.size(), fig.time.size());
      // Keep files small: at most ~2000 vertices per trace.
      const std::size_t stride = std::max<std::size_t>(1, n / 2000);
      for (std::size_t i = 0; i < n; i += stride) {
        out += fmt_px(x_px(fig.time[i])) + "," + fmt_px(y_px(series.values[i])) + " ";
      }
      out += "\"/>\n";
      const double ly = top + 16.0 + 18.0 * static_cast<double>(s);
      out += "<line x1=\"" + fmt_px(kLeft + plot_w + 12) + "\" y1=\"" + fmt_px(ly - 4) + "\" x2=\"" +
             fmt_px(kLeft + plot_w + 32) + "\" y2=\"" + fmt_px(ly - 4) + "\" stroke=\"" + color + "\"/>\n";
      out += "<text x=\"" + fmt_px(kLeft + plot_w + 38) + "\" y=\"" + fmt_px(ly) + "\">" +
             series.label + "</text>\n";
    }
  }
  out += "</svg>\n";
  return out;
}

std::vector<std::filesystem::path> plot_csv(const std::filesystem::path& csv,
                                            const std::vector<FigureKind>& kinds,
                                            const std::filesystem::path& out_dir) {
  std::ifstream in(csv);
  if (!in) throw std::runtime_error("cannot open " + csv.string());
  const std::vector<TelemetryRow> rows = read_csv(in);

  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> written;
  for (FigureKind kind : kinds) {
    const std::filesystem::path path = out_dir / (std::string(to_string(kind)) + ".svg");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << render_svg(make_figure(rows, kind));
    written.push_back(path);
  }
  return written;
}

}  // namespace tbiped::plot
