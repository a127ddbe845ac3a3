#include "tractvar/ingest.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "csv_util.hpp"
#include "tractvar/error.hpp"

namespace tractvar::ingest {

namespace fs = std::filesystem;
using geometry::Point2D;
using geometry::Polyline;

namespace {

constexpr double kSnapSeconds = 1e-9;

std::string at_line(std::string_view source, std::size_t line) {
  return std::string(source) + ":" + std::to_string(line);
}

std::ifstream open_input(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
  return in;
}

bool is_valid_coordinate(std::optional<double> v) {
  return v && std::isfinite(*v) && std::abs(*v) < kMistrackedThreshold;
}

}  // namespace

PelletFile parse_pellet_csv(std::istream& in, const PelletFormatOptions& options) {
  const std::string source = options.utterance_id.empty() ? "<stream>" : options.utterance_id;
  PelletFile out;
  out.trajectory.speaker_id = options.speaker_id;
  out.trajectory.utterance_id = options.utterance_id;

  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw Error(ErrorKind::SchemaError, source + ": empty pellet file");
  ++line_no;

  const auto header = csv::split(csv::strip_cr(line));
  const auto expected = csv::split(kPelletHeader);
  // column_of[k] = position of canonical column k in this file
  std::array<std::size_t, 17> column_of{};
  for (std::size_t k = 0; k < expected.size(); ++k) {
    auto it = std::find_if(header.begin(), header.end(),
                           [&](std::string_view h) { return csv::trim(h) == expected[k]; });
    if (it == header.end()) {
      throw Error(ErrorKind::SchemaError, source + ": missing column '" + std::string(expected[k]) + "'");
    }
    column_of[k] = static_cast<std::size_t>(it - header.begin());
  }
  if (header.size() != expected.size()) {
    out.report.warnings.push_back(source + ": ignoring " + std::to_string(header.size() - expected.size()) +
                                  " extra column(s)");
  }

  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view row = csv::strip_cr(line);
    if (csv::trim(row).empty()) continue;
    const auto fields = csv::split(row);
    if (fields.size() != header.size()) {
      throw Error(ErrorKind::ParseError, at_line(source, line_no) + ": expected " +
                                             std::to_string(header.size()) + " fields, got " +
                                             std::to_string(fields.size()));
    }

    PelletFrame frame;
    const auto t = csv::parse_double(fields[column_of[0]]);
    if (!t || !std::isfinite(*t) || *t < 0.0) {
      throw Error(ErrorKind::ParseError, at_line(source, line_no) + ", column " +
                                             std::to_string(column_of[0] + 1) + " (t): invalid time '" +
                                             std::string(fields[column_of[0]]) + "'");
    }
    if (!out.trajectory.frames.empty() && !(*t > out.trajectory.frames.back().t)) {
      throw Error(ErrorKind::ParseError,
                  at_line(source, line_no) + ": time " + std::string(csv::trim(fields[column_of[0]])) +
                      " is not strictly increasing");
    }
    frame.t = *t;

    bool mistracked = false;
    for (std::size_t p = 0; p < kPelletCount; ++p) {
      std::array<std::optional<double>, 2> xy;
      for (std::size_t c = 0; c < 2; ++c) {
        const std::size_t k = 1 + 2 * p + c;
        const std::string_view field = fields[column_of[k]];
        xy[c] = csv::parse_double(field);
        if (!xy[c] && !csv::trim(field).empty() && !csv::is_nan_token(field)) {
          throw Error(ErrorKind::ParseError, at_line(source, line_no) + ", column " +
                                                 std::to_string(column_of[k] + 1) + " (" +
                                                 std::string(expected[k]) + "): cannot parse '" +
                                                 std::string(field) + "'");
        }
      }
      const bool ok = is_valid_coordinate(xy[0]) && is_valid_coordinate(xy[1]);
      frame.positions[p] = ok ? Point2D{*xy[0], *xy[1]} : Point2D{kMistrackedSentinel, kMistrackedSentinel};
      frame.valid[p] = ok;
      mistracked |= !ok;
    }
    out.report.frames_read += 1;
    out.report.frames_mistracked += mistracked ? 1 : 0;
    out.trajectory.frames.push_back(frame);
  }

  const auto& frames = out.trajectory.frames;
  if (options.native_rate) {
    out.trajectory.native_rate = *options.native_rate;
  } else if (frames.size() >= 2) {
    out.trajectory.native_rate =
        static_cast<double>(frames.size() - 1) / (frames.back().t - frames.front().t);
  }
  return out;
}

PelletFile parse_pellet_file(const fs::path& path, PelletFormatOptions options) {
  if (options.utterance_id.empty()) options.utterance_id = path.stem().string();
  std::ifstream in = open_input(path);
  return parse_pellet_csv(in, options);
}

void write_pellet_csv(std::ostream& out, const PelletTrajectory& trajectory) {
  out << kPelletHeader << '\n';
  for (const PelletFrame& f : trajectory.frames) {
    out << csv::format_double(f.t);
    for (std::size_t p = 0; p < kPelletCount; ++p) {
      const Point2D q = f.valid[p] ? f.positions[p] : Point2D{kMistrackedSentinel, kMistrackedSentinel};
      out << ',' << csv::format_double(q.x) << ',' << csv::format_double(q.y);
    }
    out << '\n';
  }
}

TraceFile parse_trace_csv(std::istream& in, TraceKind kind, std::string_view source) {
  std::vector<std::string> warnings;
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw Error(ErrorKind::SchemaError, std::string(source) + ": empty trace file");
  ++line_no;
  const auto header = csv::split(csv::strip_cr(line));
  if (header.size() != 2 || csv::trim(header[0]) != "x" || csv::trim(header[1]) != "y") {
    throw Error(ErrorKind::SchemaError, std::string(source) + ": trace header must be 'x,y'");
  }

  std::vector<Point2D> points;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view row = csv::strip_cr(line);
    if (csv::trim(row).empty()) continue;
    const auto fields = csv::split(row);
    if (fields.size() != 2) {
      throw Error(ErrorKind::ParseError, at_line(source, line_no) + ": expected 2 fields, got " +
                                             std::to_string(fields.size()));
    }
    Point2D p;
    for (std::size_t c = 0; c < 2; ++c) {
      const auto v = csv::parse_double(fields[c]);
      if (!v || !std::isfinite(*v)) {
        throw Error(ErrorKind::ParseError, at_line(source, line_no) + ", column " + std::to_string(c + 1) +
                                               ": cannot parse '" + std::string(fields[c]) + "'");
      }
      (c == 0 ? p.x : p.y) = *v;
    }
    points.push_back(p);
  }

  auto key = [kind](Point2D p) { return kind == TraceKind::Palate ? p.x : p.y; };
  auto descending = [&](const std::vector<Point2D>& v) {
    return std::is_sorted(v.begin(), v.end(), [&](Point2D a, Point2D b) { return key(a) > key(b); });
  };
  const char* order = kind == TraceKind::Palate ? "anterior->posterior (x descending)"
                                                : "superior->inferior (y descending)";
  if (!descending(points)) {
    std::vector<Point2D> reversed(points.rbegin(), points.rend());
    if (descending(reversed)) {
      points = std::move(reversed);
      warnings.push_back(std::string(source) + ": reversed trace to " + order + " order");
    } else {
      std::stable_sort(points.begin(), points.end(), [&](Point2D a, Point2D b) { return key(a) > key(b); });
      warnings.push_back(std::string(source) + ": sorted non-monotone trace to " + order + " order");
    }
  }

  const std::size_t before = points.size();
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (points.size() != before) {
    warnings.push_back(std::string(source) + ": collapsed " + std::to_string(before - points.size()) +
                           " duplicate consecutive point(s)");
  }
  if (points.size() < 2) {
    throw Error(ErrorKind::DegenerateTrace,
                std::string(source) + ": trace has " + std::to_string(points.size()) + " distinct point(s)");
  }
  return {Polyline(std::move(points)), std::move(warnings)};
}

TraceFile parse_trace_file(const fs::path& path, TraceKind kind) {
  std::ifstream in = open_input(path);
  return parse_trace_csv(in, kind, path.string());
}

PelletTrajectory resample(const PelletTrajectory& trajectory, double target_rate, IngestReport* report) {
  if (!(target_rate > 0.0) || !std::isfinite(target_rate)) {
    throw Error(ErrorKind::InvalidArgument, "target rate must be positive");
  }
  const auto& in = trajectory.frames;
  const std::string who = trajectory.utterance_id.empty() ? "trajectory" : trajectory.utterance_id;
  if (in.size() < 2) {
    throw Error(ErrorKind::InsufficientData, who + ": need at least 2 frames, got " + std::to_string(in.size()));
  }
  for (std::size_t p = 0; p < kPelletCount; ++p) {
    const auto valid = std::count_if(in.begin(), in.end(), [p](const PelletFrame& f) { return f.valid[p]; });
    if (valid < 2) {
      throw Error(ErrorKind::InsufficientData, who + ": pellet " + std::string(kPelletNames[p]) + " has " +
                                                   std::to_string(valid) + " valid sample(s)");
    }
  }

  const double t0 = in.front().t;
  const double span = in.back().t - t0;
  const auto count = static_cast<std::size_t>(std::floor(span * target_rate + 1e-9)) + 1;

  PelletTrajectory out{trajectory.speaker_id, trajectory.utterance_id, {}, target_rate};
  out.frames.reserve(count);
  std::size_t interpolated = 0;
  std::size_t mistracked = 0;

  std::size_t j = 0;  // in[j].t <= t (+snap), advanced monotonically
  for (std::size_t k = 0; k < count; ++k) {
    PelletFrame f;
    f.t = t0 + static_cast<double>(k) / target_rate;
    while (j + 1 < in.size() && in[j + 1].t <= f.t + kSnapSeconds) ++j;

    const PelletFrame& lo = in[j];
    const bool exact = std::abs(lo.t - f.t) <= kSnapSeconds;
    const bool has_next = j + 1 < in.size();
    const double alpha = (exact || !has_next) ? 0.0 : (f.t - lo.t) / (in[j + 1].t - lo.t);

    bool any_invalid = false;
    for (std::size_t p = 0; p < kPelletCount; ++p) {
      bool ok = false;
      Point2D pos{kMistrackedSentinel, kMistrackedSentinel};
      if (exact || !has_next) {
        ok = lo.valid[p] && exact;
        if (ok) pos = lo.positions[p];
      } else if (lo.valid[p] && in[j + 1].valid[p]) {
        const Point2D a = lo.positions[p];
        const Point2D b = in[j + 1].positions[p];
        pos = {a.x + alpha * (b.x - a.x), a.y + alpha * (b.y - a.y)};
        ok = true;
        ++interpolated;
      }
      f.positions[p] = pos;
      f.valid[p] = ok;
      any_invalid |= !ok;
    }
    mistracked += any_invalid ? 1 : 0;
    out.frames.push_back(f);
  }

  if (report) {
    report->pellets_interpolated += interpolated;
    if (mistracked > 0) {
      report->warnings.push_back(who + ": " + std::to_string(mistracked) + " of " + std::to_string(count) +
                                 " resampled frames have mistracked pellets");
    }
  }
  return out;
}

std::vector<SpeakerManifest> load_manifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ConfigError, "cannot open manifest " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ConfigError, path.string() + ": invalid JSON: " + e.what());
  }

  nlohmann::json entries;
  if (doc.is_array()) {
    entries = doc;
  } else if (doc.is_object() && doc.contains("speakers")) {
    entries = doc.at("speakers");
  } else if (doc.is_object()) {
    entries = nlohmann::json::array({doc});
  }
  if (!entries.is_array() || entries.empty()) {
    throw Error(ErrorKind::ConfigError, path.string() + ": manifest lists no speakers");
  }

  const fs::path base = path.parent_path();
  auto resolve = [&](const std::string& p) {
    const fs::path candidate(p);
    return candidate.is_absolute() ? candidate : base / candidate;
  };

  std::vector<SpeakerManifest> out;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    const std::string where = path.string() + ": speaker entry " + std::to_string(i);
    if (!e.is_object()) throw Error(ErrorKind::ConfigError, where + " is not an object");
    try {
      SpeakerManifest m;
      m.speaker_id = e.at("speaker_id").get<std::string>();
      const auto sex = anatomy::parse_sex(e.at("sex").get<std::string>());
      if (!sex) throw Error(ErrorKind::ConfigError, where + ": sex must be \"F\" or \"M\"");
      m.sex = *sex;
      if (e.contains("thickness_mm") && !e.at("thickness_mm").is_null()) {
        m.thickness_mm = e.at("thickness_mm").get<double>();
      }
      m.palate = resolve(e.at("palate").get<std::string>());
      m.posterior_wall = resolve(e.at("posterior_wall").get<std::string>());
      for (const auto& u : e.at("utterances")) m.utterances.push_back(resolve(u.get<std::string>()));
      out.push_back(std::move(m));
    } catch (const nlohmann::json::exception& ex) {
      throw Error(ErrorKind::ConfigError, where + ": " + ex.what());
    }
  }
  return out;
}

}  // namespace tractvar::ingest
