#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tractvar/anatomy.hpp"
#include "tractvar/geometry.hpp"

namespace tractvar {

using geometry::Point2D;

enum class Pellet : std::size_t { UL, LL, T1, T2, T3, T4, MNI, MNM };
inline constexpr std::size_t kPelletCount = 8;
inline constexpr std::array<std::string_view, kPelletCount> kPelletNames = {"UL", "LL", "T1", "T2",
                                                                           "T3", "T4", "MNI", "MNM"};

struct PelletFrame {
  double t = 0.0;  // seconds
  std::array<Point2D, kPelletCount> positions{};
  std::array<bool, kPelletCount> valid{};

  Point2D operator[](Pellet p) const { return positions[static_cast<std::size_t>(p)]; }
  Point2D& operator[](Pellet p) { return positions[static_cast<std::size_t>(p)]; }
  bool is_valid(Pellet p) const { return valid[static_cast<std::size_t>(p)]; }
  void set(Pellet p, Point2D pos, bool ok = true) {
    positions[static_cast<std::size_t>(p)] = pos;
    valid[static_cast<std::size_t>(p)] = ok;
  }
};

struct PelletTrajectory {
  std::string speaker_id;
  std::string utterance_id;
  std::vector<PelletFrame> frames;
  double native_rate = 0.0;  // Hz
};

enum class FrameQuality { Ok, DegenerateTongue, MissingPellet };
std::string_view to_string(FrameQuality q) noexcept;
std::optional<FrameQuality> parse_quality(std::string_view text) noexcept;

// Absent TVs are std::nullopt, never zero. Angles are radians.
struct TractVariableFrame {
  double t = 0.0;
  std::optional<double> la, lp, tbcl, tbcd, ttcl, ttcd;
  FrameQuality quality = FrameQuality::Ok;

  friend bool operator==(const TractVariableFrame&, const TractVariableFrame&) = default;
};

struct TvTrajectory {
  std::string speaker_id;
  std::vector<TractVariableFrame> frames;
  double sample_rate = 0.0;
};

struct TvOptions {
  bool clamp_tbcd = false;
  int threads = 1;  // OpenMP team size for compute_trajectory
};

double compute_la(const PelletFrame& frame);
double compute_lp(const PelletFrame& frame);

// Circumcircle of T2, T3, T4. Throws CollinearPoints.
geometry::Circle tongue_body_circle(const PelletFrame& frame);

struct ConstrictionResult {
  double degree = 0.0;    // mm
  double location = 0.0;  // rad
  bool degenerate = false;
};

// TBCD is the signed clearance between the tongue-body circle and epal
// (clamped at 0 when requested); TBCL is the angle about the palatal
// reference center of the circle point attaining that clearance. With
// collinear T2/T3/T4 falls back to the nearest of the three pellets and sets
// `degenerate`.
ConstrictionResult compute_tongue_body_tvs(const PelletFrame& frame, const anatomy::SpeakerAnatomy& anatomy,
                                           bool clamp_tbcd = false);

// TTCD = distance from T1 to epal, TTCL = angle of T1 about the reference center.
ConstrictionResult compute_tongue_tip_tvs(const PelletFrame& frame, const anatomy::SpeakerAnatomy& anatomy);

TractVariableFrame compute_frame(const PelletFrame& frame, const anatomy::SpeakerAnatomy& anatomy,
                                 const TvOptions& options = {});

// Frame-wise parallel map (OpenMP, options.threads). Output is bit-identical
// to reference::compute_trajectory.
TvTrajectory compute_trajectory(const PelletTrajectory& trajectory, const anatomy::SpeakerAnatomy& anatomy,
                                const TvOptions& options = {});

namespace reference {

// Sequential reference of compute_trajectory; kept for testing and benchmarks.
TvTrajectory compute_trajectory(const PelletTrajectory& trajectory, const anatomy::SpeakerAnatomy& anatomy,
                                const TvOptions& options = {});

}  // namespace reference

}  // namespace tractvar
