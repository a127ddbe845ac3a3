#include "tractvar/plots.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "tractvar/error.hpp"

namespace tractvar::plots {

using geometry::Point2D;

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
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

struct Bounds {
  double xmin = std::numeric_limits<double>::infinity();
  double xmax = -std::numeric_limits<double>::infinity();
  double ymin = std::numeric_limits<double>::infinity();
  double ymax = -std::numeric_limits<double>::infinity();

  void add(double x, double y) {
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  }
  bool empty() const { return !(xmin <= xmax); }
};

std::string header(int width, int height) {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(width) + "\" height=\"" + std::to_string(height) + "\" viewBox=\"0 0 " +
         std::to_string(width) + " " + std::to_string(height) +
         "\" font-family=\"sans-serif\" font-size=\"12\">\n"
         "<rect x=\"0\" y=\"0\" width=\"" +
         std::to_string(width) + "\" height=\"" + std::to_string(height) + "\" fill=\"white\"/>\n";
}

std::string text(double x, double y, std::string_view s, std::string_view anchor = "start") {
  return "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" text-anchor=\"" + std::string(anchor) + "\">" +
         escape(s) + "</text>\n";
}

}  // namespace

std::string anatomy_svg(const anatomy::SpeakerAnatomy& anatomy) {
  constexpr int kWidth = 800, kHeight = 600, kMargin = 50;

  const auto epal = anatomy.extended_palate().points();
  const std::size_t palate_n = anatomy.palate().size();
  const std::vector<Point2D> palate(epal.begin(), epal.begin() + static_cast<std::ptrdiff_t>(palate_n));
  const std::vector<Point2D> velar(epal.begin() + static_cast<std::ptrdiff_t>(palate_n - 1),
                                   epal.begin() + static_cast<std::ptrdiff_t>(anatomy.junction_index() + 1));
  const auto anterior = anatomy.anterior_wall().points();
  const auto posterior = anatomy.posterior_wall().points();
  const Point2D pc = anatomy.reference_center();

  Bounds b;
  for (auto span : {std::span<const Point2D>(epal), anterior, posterior}) {
    for (Point2D p : span) b.add(p.x, p.y);
  }
  b.add(pc.x, pc.y);
  const double pad = 0.05 * std::max({b.xmax - b.xmin, b.ymax - b.ymin, 1.0});
  b.xmin -= pad;
  b.xmax += pad;
  b.ymin -= pad;
  b.ymax += pad;
  const double scale = std::min((kWidth - 2.0 * kMargin) / (b.xmax - b.xmin),
                                (kHeight - 2.0 * kMargin) / (b.ymax - b.ymin));
  auto sx = [&](double x) { return kMargin + (x - b.xmin) * scale; };
  auto sy = [&](double y) { return kHeight - kMargin - (y - b.ymin) * scale; };

  auto polyline = [&](std::span<const Point2D> pts, std::string_view cls, std::string_view style) {
    std::string s = "<polyline class=\"" + std::string(cls) + "\" fill=\"none\" " + std::string(style) + " points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i) s += ' ';
      s += num(sx(pts[i].x)) + "," + num(sy(pts[i].y));
    }
    return s + "\"/>\n";
  };

  struct Style {
    std::string_view cls, label, stroke;
  };
  const std::array<Style, 4> styles = {{
      {"palate", "palate trace", "stroke=\"black\" stroke-width=\"2\""},
      {"velar", "soft-palate extension", "stroke=\"#d62728\" stroke-width=\"2\" stroke-dasharray=\"6,3\""},
      {"anterior-wall", "anterior pharyngeal wall (inferred)", "stroke=\"#1f77b4\" stroke-width=\"2\""},
      {"posterior-wall", "posterior pharyngeal wall", "stroke=\"#7f7f7f\" stroke-width=\"1.5\" stroke-dasharray=\"2,2\""},
  }};

  std::string svg = header(kWidth, kHeight);
  svg += text(kWidth / 2.0, 24, "Extended palate trace: speaker " + anatomy.speaker_id(), "middle");
  // axes through the origin when visible, else along the frame
  const double ax_y = (b.ymin <= 0.0 && 0.0 <= b.ymax) ? sy(0.0) : kHeight - kMargin;
  const double ax_x = (b.xmin <= 0.0 && 0.0 <= b.xmax) ? sx(0.0) : kMargin;
  svg += "<line class=\"axis\" x1=\"" + num(kMargin) + "\" y1=\"" + num(ax_y) + "\" x2=\"" + num(kWidth - kMargin) +
         "\" y2=\"" + num(ax_y) + "\" stroke=\"#cccccc\"/>\n";
  svg += "<line class=\"axis\" x1=\"" + num(ax_x) + "\" y1=\"" + num(kMargin) + "\" x2=\"" + num(ax_x) + "\" y2=\"" +
         num(kHeight - kMargin) + "\" stroke=\"#cccccc\"/>\n";
  svg += text(kWidth - kMargin, kHeight - 12, "x (mm, anterior +)", "end");
  svg += text(12, kMargin - 10, "y (mm, superior +)");

  svg += polyline(palate, styles[0].cls, styles[0].stroke);
  svg += polyline(velar, styles[1].cls, styles[1].stroke);
  svg += polyline(anterior, styles[2].cls, styles[2].stroke);
  svg += polyline(posterior, styles[3].cls, styles[3].stroke);
  svg += "<circle class=\"reference-center\" cx=\"" + num(sx(pc.x)) + "\" cy=\"" + num(sy(pc.y)) +
         "\" r=\"4\" fill=\"#2ca02c\"/>\n";

  double ly = kMargin + 10;
  for (const Style& s : styles) {
    svg += "<line class=\"legend\" x1=\"" + num(kWidth - 260) + "\" y1=\"" + num(ly) + "\" x2=\"" +
           num(kWidth - 230) + "\" y2=\"" + num(ly) + "\" " + std::string(s.stroke) + "/>\n";
    svg += text(kWidth - 222, ly + 4, s.label);
    ly += 18;
  }
  svg += text(kWidth - 222, ly + 4, "palatal reference center");
  svg += "</svg>\n";
  return svg;
}

std::string tv_svg(const TvTrajectory& trajectory, AngleUnit unit) {
  constexpr int kWidth = 800, kPanelHeight = 120, kLeft = 80, kRight = 20, kTop = 30, kGap = 20;
  constexpr int kHeight = kTop + 6 * (kPanelHeight + kGap) + 20;
  const double angle = unit == AngleUnit::Degrees ? 180.0 / std::numbers::pi : 1.0;
  const std::string angle_label = unit == AngleUnit::Degrees ? "deg" : "rad";

  struct Panel {
    std::string_view name;
    std::optional<double> TractVariableFrame::*field;
    double scale;
    std::string unit;
  };
  const std::array<Panel, 6> panels = {{
      {"LA", &TractVariableFrame::la, 1.0, "mm"},
      {"LP", &TractVariableFrame::lp, 1.0, "mm"},
      {"TBCL", &TractVariableFrame::tbcl, angle, angle_label},
      {"TBCD", &TractVariableFrame::tbcd, 1.0, "mm"},
      {"TTCL", &TractVariableFrame::ttcl, angle, angle_label},
      {"TTCD", &TractVariableFrame::ttcd, 1.0, "mm"},
  }};

  const auto& frames = trajectory.frames;
  double t0 = 0.0, t1 = 1.0;
  if (!frames.empty()) {
    t0 = frames.front().t;
    t1 = std::max(frames.back().t, t0 + 1e-9);
  }
  const double plot_w = kWidth - kLeft - kRight;

  std::string svg = header(kWidth, kHeight);
  svg += text(kWidth / 2.0, 18, "Tract variables: speaker " + trajectory.speaker_id, "middle");
  for (std::size_t k = 0; k < panels.size(); ++k) {
    const Panel& panel = panels[k];
    const double top = kTop + static_cast<double>(k) * (kPanelHeight + kGap);
    svg += "<g class=\"panel\" id=\"panel-" + std::string(panel.name) + "\">\n";
    svg += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(top) + "\" width=\"" + num(plot_w) + "\" height=\"" +
           num(kPanelHeight) + "\" fill=\"none\" stroke=\"#999999\"/>\n";
    svg += text(8, top + kPanelHeight / 2.0, std::string(panel.name) + " (" + panel.unit + ")");

    double vmin = std::numeric_limits<double>::infinity(), vmax = -vmin;
    for (const auto& f : frames) {
      if (const auto& v = f.*panel.field) {
        vmin = std::min(vmin, *v * panel.scale);
        vmax = std::max(vmax, *v * panel.scale);
      }
    }
    if (vmin <= vmax) {
      if (vmax - vmin < 1e-12) {
        vmin -= 0.5;
        vmax += 0.5;
      }
      auto px = [&](double t) { return kLeft + (t - t0) / (t1 - t0) * plot_w; };
      auto py = [&](double v) { return top + kPanelHeight - (v - vmin) / (vmax - vmin) * kPanelHeight; };
      std::string d;
      bool pen_down = false;
      for (const auto& f : frames) {
        const auto& v = f.*panel.field;
        if (!v) {
          pen_down = false;
          continue;
        }
        if (!d.empty()) d += ' ';
        d += (pen_down ? "L" : "M") + num(px(f.t)) + "," + num(py(*v * panel.scale));
        pen_down = true;
      }
      svg += "<path class=\"series\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.2\" d=\"" + d + "\"/>\n";
      svg += text(kLeft - 4, top + 10, num(vmax), "end");
      svg += text(kLeft - 4, top + kPanelHeight, num(vmin), "end");
    }
    svg += "</g>\n";
  }
  svg += text(kLeft, kHeight - 6, num(t0) + " s");
  svg += text(kWidth - kRight, kHeight - 6, num(t1) + " s", "end");
  svg += "</svg>\n";
  return svg;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
  out << contents;
  if (!out) throw Error(ErrorKind::IoError, "write failed for " + path.string());
}

void emit_plots(const anatomy::SpeakerAnatomy& anatomy, const TvTrajectory& trajectory,
                const std::filesystem::path& output_dir, AngleUnit unit) {
  std::error_code ec;
  std::filesystem::create_directories(output_dir, ec);
  if (ec) throw Error(ErrorKind::IoError, "cannot create " + output_dir.string() + ": " + ec.message());
  write_file(output_dir / "anatomy.svg", anatomy_svg(anatomy));
  write_file(output_dir / "tvs.svg", tv_svg(trajectory, unit));
}

}  // namespace tractvar::plots
