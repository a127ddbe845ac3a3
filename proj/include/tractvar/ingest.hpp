#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tractvar/anatomy.hpp"
#include "tractvar/geometry.hpp"
#include "tractvar/tract_variables.hpp"

namespace tractvar::ingest {

// Coordinates with magnitude >= this are mistracked.
inline constexpr double kMistrackedThreshold = 9.9e5;
// Value written for an invalid coordinate.
inline constexpr double kMistrackedSentinel = 1e6;

inline constexpr double kCanonicalRateHz = 145.0;

// Column order of the canonical pellet CSV header.
inline constexpr std::string_view kPelletHeader =
    "t,ULx,ULy,LLx,LLy,T1x,T1y,T2x,T2y,T3x,T3y,T4x,T4y,MNIx,MNIy,MNMx,MNMy";

struct IngestReport {
  std::size_t frames_read = 0;
  std::size_t frames_mistracked = 0;     // frames with at least one invalid pellet
  std::size_t pellets_interpolated = 0;  // resampled pellet values between two distinct samples
  std::vector<std::string> warnings;
};

struct PelletFormatOptions {
  std::string speaker_id;
  std::string utterance_id;  // defaults to the file stem
  std::optional<double> native_rate;  // estimated from the time column when absent
};

struct PelletFile {
  PelletTrajectory trajectory;
  IngestReport report;
};

PelletFile parse_pellet_csv(std::istream& in, const PelletFormatOptions& options = {});
PelletFile parse_pellet_file(const std::filesystem::path& path, PelletFormatOptions options = {});

// Shortest round-trip decimal form; invalid pellets are written as the sentinel.
void write_pellet_csv(std::ostream& out, const PelletTrajectory& trajectory);

enum class TraceKind {
  Palate,  // anterior -> posterior, x descending
  Wall,    // superior -> inferior, y descending
};

struct TraceFile {
  geometry::Polyline trace;
  std::vector<std::string> warnings;
};

// Orders the points per `kind` and collapses consecutive duplicates,
// reporting either repair in `warnings`.
TraceFile parse_trace_csv(std::istream& in, TraceKind kind, std::string_view source = "<stream>");
TraceFile parse_trace_file(const std::filesystem::path& path, TraceKind kind);

// Uniform grid t_k = t_first + k / target_rate over [t_first, t_last] with
// per-pellet linear interpolation. A grid time coinciding with a sample
// (within 1e-9 s) copies it; otherwise both neighbours must be valid.
// Throws InsufficientData.
PelletTrajectory resample(const PelletTrajectory& trajectory, double target_rate = kCanonicalRateHz,
                          IngestReport* report = nullptr);

struct SpeakerManifest {
  std::string speaker_id;
  anatomy::Sex sex = anatomy::Sex::Female;
  std::optional<double> thickness_mm;
  std::filesystem::path palate;
  std::filesystem::path posterior_wall;
  std::vector<std::filesystem::path> utterances;
};

// Accepts one speaker object, an array of them, or {"speakers": [...]}.
// Relative paths resolve against the manifest's directory. Throws ConfigError.
std::vector<SpeakerManifest> load_manifest(const std::filesystem::path& path);

}  // namespace tractvar::ingest
