#pragma once

// Synthetic anatomy and pellet frames with analytically known tract variables.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <string>
#include <cstdio>
#include <cstdlib>
#include <span>
#include <vector>

#include <sys/wait.h>

#include "tractvar/anatomy.hpp"
#include "tractvar/geometry.hpp"
#include "tractvar/tract_variables.hpp"

namespace fixtures {

using tractvar::Pellet;
using tractvar::PelletFrame;
using tractvar::geometry::Point2D;
using tractvar::geometry::Polyline;

inline constexpr double kPi = std::numbers::pi;
inline double deg(double d) { return d * kPi / 180.0; }

// Unit vector at `angle` measured from +y toward +x.
inline Point2D unit(double angle) { return {std::sin(angle), std::cos(angle)}; }

// Arc of a circle from angle `from` to `to` (measured from +y toward +x),
// n points. from > to gives anterior -> posterior ordering.
inline std::vector<Point2D> arc(Point2D center, double radius, double from, double to, std::size_t n) {
  std::vector<Point2D> pts;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = from + (to - from) * static_cast<double>(i) / static_cast<double>(n - 1);
    pts.push_back(center + radius * unit(a));
  }
  return pts;
}

inline constexpr Point2D kPalateCenter{-30.0, -5.0};
inline constexpr double kPalateRadius = 35.0;

// Arc palate about (-30,-5), r = 35, from +60 deg (anterior) to -60 deg.
inline Polyline arc_palate(std::size_t n = 2401) {
  return Polyline(arc(kPalateCenter, kPalateRadius, deg(60.0), deg(-60.0), n));
}

// Vertical posterior wall at x = -80 from y = 40 down to y = -60.
inline Polyline vertical_wall(double x = -80.0, double top = 40.0, double bottom = -60.0) {
  return Polyline({{x, top}, {x, bottom}});
}

inline tractvar::anatomy::SpeakerAnatomy arc_speaker(std::size_t palate_points = 2401,
                                                     const std::string& id = "SYN01") {
  return tractvar::anatomy::build_speaker_anatomy(id, arc_palate(palate_points), vertical_wall(),
                                                  tractvar::anatomy::Sex::Female);
}

// Parameters of a frame whose TVs follow in closed form on the arc speaker.
struct FrameSpec {
  double t = 0.0;
  double tb_angle = 0.0;   // direction of the tongue-body center from pc
  double tb_offset = 8.0;  // |center - pc|
  double tb_radius = 20.0;
  double tip_angle = 0.3;  // direction of T1 from pc
  double tip_offset = 30.0;
  Point2D ul{12.0, 3.0};
  Point2D ll{11.0, -9.0};
};

struct ExpectedTvs {
  double la, lp, tbcl, tbcd, ttcl, ttcd;
};

inline PelletFrame make_frame(const FrameSpec& s) {
  PelletFrame f;
  f.t = s.t;
  const Point2D c = kPalateCenter + s.tb_offset * unit(s.tb_angle);
  f.set(Pellet::UL, s.ul);
  f.set(Pellet::LL, s.ll);
  f.set(Pellet::T1, kPalateCenter + s.tip_offset * unit(s.tip_angle));
  f.set(Pellet::T2, c + s.tb_radius * unit(s.tb_angle + 0.7));
  f.set(Pellet::T3, c + s.tb_radius * unit(s.tb_angle));
  f.set(Pellet::T4, c + s.tb_radius * unit(s.tb_angle - 0.7));
  f.set(Pellet::MNI, {2.0, -15.0});
  f.set(Pellet::MNM, {-25.0, -20.0});
  return f;
}

inline ExpectedTvs expected(const FrameSpec& s) {
  return {std::hypot(s.ul.x - s.ll.x, s.ul.y - s.ll.y),
          s.ul.x,
          s.tb_angle,
          kPalateRadius - s.tb_offset - s.tb_radius,
          s.tip_angle,
          kPalateRadius - s.tip_offset};
}

// Smooth articulatory sweep sampled at k / rate.
inline FrameSpec sweep_spec(std::size_t k, double rate) {
  const double t = static_cast<double>(k) / rate;
  FrameSpec s;
  s.t = t;
  s.tb_angle = deg(5.0 + 35.0 * std::sin(2.0 * kPi * 1.3 * t));
  s.tb_offset = 6.0 + 3.0 * std::sin(2.0 * kPi * 0.7 * t);
  s.tb_radius = 18.0 + 4.0 * std::cos(2.0 * kPi * 0.9 * t);
  s.tip_angle = deg(20.0 + 25.0 * std::cos(2.0 * kPi * 1.1 * t));
  s.tip_offset = 26.0 + 6.0 * std::sin(2.0 * kPi * 2.1 * t);
  s.ul = {10.0 + 2.0 * std::sin(2.0 * kPi * 0.5 * t), 3.0};
  s.ll = {9.0, -6.0 - 5.0 * std::sin(2.0 * kPi * 3.0 * t)};
  return s;
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
}

inline std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline std::string trace_csv(std::span<const Point2D> pts) {
  std::string s = "x,y\n";
  char buf[96];
  for (Point2D p : pts) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", p.x, p.y);
    s += buf;
  }
  return s;
}

// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& tag) {
  static std::mt19937_64 rng(std::random_device{}());
  auto dir = std::filesystem::temp_directory_path() /
             ("tractvar_" + tag + "_" + std::to_string(rng() % 100000000));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

// Pellet CSV of n frames at exactly 145 Hz; frame k follows sweep_spec(first + k).
inline std::vector<FrameSpec> write_utterance(const std::filesystem::path& path, std::size_t first, std::size_t n) {
  std::vector<FrameSpec> specs;
  std::string s = "t,ULx,ULy,LLx,LLy,T1x,T1y,T2x,T2y,T3x,T3y,T4x,T4y,MNIx,MNIy,MNMx,MNMy\n";
  char buf[64];
  for (std::size_t k = 0; k < n; ++k) {
    FrameSpec spec = sweep_spec(first + k, 145.0);
    spec.t = static_cast<double>(k) / 145.0;
    const PelletFrame f = make_frame(spec);
    std::snprintf(buf, sizeof(buf), "%.17g", f.t);
    s += buf;
    for (const Point2D& p : f.positions) {
      std::snprintf(buf, sizeof(buf), ",%.17g,%.17g", p.x, p.y);
      s += buf;
    }
    s += '\n';
    specs.push_back(spec);
  }
  write_text(path, s);
  return specs;
}

struct CorpusSpeaker {
  std::string id;
  std::vector<std::string> utterances;  // file stems
  std::size_t frames = 290;
};

// Writes arc-speaker traces, pellet files and manifest.json under dir.
// Paths in the manifest are relative to dir.
inline std::filesystem::path write_corpus(const std::filesystem::path& dir, const std::vector<CorpusSpeaker>& speakers,
                                          std::size_t palate_points = 2401) {
  std::string manifest = "{\"speakers\": [\n";
  std::size_t offset = 0;
  for (std::size_t i = 0; i < speakers.size(); ++i) {
    const auto& sp = speakers[i];
    const Polyline palate = arc_palate(palate_points);
    const Polyline wall = vertical_wall();
    write_text(dir / sp.id / "palate.csv", trace_csv(palate.points()));
    write_text(dir / sp.id / "wall.csv", trace_csv(wall.points()));
    manifest += std::string(i ? ",\n" : "") + "{\"speaker_id\": \"" + sp.id + "\", \"sex\": \"F\", \"palate\": \"" +
                sp.id + "/palate.csv\", \"posterior_wall\": \"" + sp.id + "/wall.csv\", \"utterances\": [";
    for (std::size_t u = 0; u < sp.utterances.size(); ++u) {
      write_utterance(dir / sp.id / (sp.utterances[u] + ".csv"), offset, sp.frames);
      offset += 37;
      manifest += std::string(u ? ", " : "") + "\"" + sp.id + "/" + sp.utterances[u] + ".csv\"";
    }
    manifest += "]}";
  }
  manifest += "\n]}\n";
  write_text(dir / "manifest.json", manifest);
  return dir / "manifest.json";
}

#ifdef TRACTVAR_CLI_PATH
// Runs the CLI with the given arguments; stdout/stderr go to files in `log_dir`.
inline int run_cli(const std::string& args, const std::filesystem::path& log_dir, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + "\"" + std::string(TRACTVAR_CLI_PATH) + "\" " + args +
                          " >\"" + (log_dir / "stdout.txt").string() + "\" 2>\"" + (log_dir / "stderr.txt").string() +
                          "\"";
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}
#endif

}  // namespace fixtures
