#include "tractvar/tract_variables.hpp"

#include <algorithm>
#include <exception>
#include <limits>

#include "tractvar/error.hpp"

namespace tractvar {

using anatomy::SpeakerAnatomy;
using geometry::angle_from_reference;

std::string_view to_string(FrameQuality q) noexcept {
  switch (q) {
    case FrameQuality::Ok: return "ok";
    case FrameQuality::DegenerateTongue: return "degenerate_tongue";
    case FrameQuality::MissingPellet: return "missing_pellet";
  }
  return "ok";
}

std::optional<FrameQuality> parse_quality(std::string_view text) noexcept {
  if (text == "ok") return FrameQuality::Ok;
  if (text == "degenerate_tongue") return FrameQuality::DegenerateTongue;
  if (text == "missing_pellet") return FrameQuality::MissingPellet;
  return std::nullopt;
}

double compute_la(const PelletFrame& frame) {
  return geometry::distance(frame[Pellet::UL], frame[Pellet::LL]);
}

double compute_lp(const PelletFrame& frame) { return frame[Pellet::UL].x; }

geometry::Circle tongue_body_circle(const PelletFrame& frame) {
  return geometry::circumcircle(frame[Pellet::T2], frame[Pellet::T3], frame[Pellet::T4]);
}

ConstrictionResult compute_tongue_body_tvs(const PelletFrame& frame, const SpeakerAnatomy& anatomy,
                                           bool clamp_tbcd) {
  const auto& epal = anatomy.extended_palate();
  const Point2D pc = anatomy.reference_center();
  ConstrictionResult out;
  try {
    const geometry::ClearanceResult c = geometry::circle_polyline_clearance(tongue_body_circle(frame), epal);
    out.degree = c.distance;
    out.location = angle_from_reference(pc, c.closest_object_point);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::CollinearPoints) throw;
    // Collinear T2/T3/T4: nearest tongue pellet stands in for the circle.
    out.degenerate = true;
    double best = std::numeric_limits<double>::infinity();
    Point2D attaining{};
    for (Pellet p : {Pellet::T2, Pellet::T3, Pellet::T4}) {
      const double d = geometry::point_polyline_clearance(frame[p], epal).distance;
      if (d < best) {
        best = d;
        attaining = frame[p];
      }
    }
    out.degree = best;
    out.location = angle_from_reference(pc, attaining);
  }
  if (clamp_tbcd) out.degree = std::max(0.0, out.degree);
  return out;
}

ConstrictionResult compute_tongue_tip_tvs(const PelletFrame& frame, const SpeakerAnatomy& anatomy) {
  const Point2D t1 = frame[Pellet::T1];
  return {geometry::point_polyline_clearance(t1, anatomy.extended_palate()).distance,
          angle_from_reference(anatomy.reference_center(), t1), false};
}

TractVariableFrame compute_frame(const PelletFrame& frame, const SpeakerAnatomy& anatomy,
                                 const TvOptions& options) {
  TractVariableFrame out;
  out.t = frame.t;
  bool missing = false;
  bool degenerate = false;

  if (frame.is_valid(Pellet::UL)) {
    out.lp = compute_lp(frame);
    if (frame.is_valid(Pellet::LL)) out.la = compute_la(frame);
  }
  missing |= !frame.is_valid(Pellet::UL) || !frame.is_valid(Pellet::LL);

  if (frame.is_valid(Pellet::T2) && frame.is_valid(Pellet::T3) && frame.is_valid(Pellet::T4)) {
    try {
      const ConstrictionResult tb = compute_tongue_body_tvs(frame, anatomy, options.clamp_tbcd);
      out.tbcd = tb.degree;
      out.tbcl = tb.location;
      degenerate |= tb.degenerate;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DegenerateAngle) throw;
      degenerate = true;
    }
  } else {
    missing = true;
  }

  if (frame.is_valid(Pellet::T1)) {
    const Point2D t1 = frame[Pellet::T1];
    out.ttcd = geometry::point_polyline_clearance(t1, anatomy.extended_palate()).distance;
    try {
      out.ttcl = angle_from_reference(anatomy.reference_center(), t1);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DegenerateAngle) throw;
      degenerate = true;
    }
  } else {
    missing = true;
  }

  out.quality = missing ? FrameQuality::MissingPellet
                        : (degenerate ? FrameQuality::DegenerateTongue : FrameQuality::Ok);
  return out;
}

TvTrajectory compute_trajectory(const PelletTrajectory& trajectory, const SpeakerAnatomy& anatomy,
                                const TvOptions& options) {
  TvTrajectory out{trajectory.speaker_id, {}, trajectory.native_rate};
  const auto n = static_cast<std::ptrdiff_t>(trajectory.frames.size());
  out.frames.resize(trajectory.frames.size());

  std::exception_ptr failure;
  std::ptrdiff_t failure_index = n;
  const int threads = std::max(1, options.threads);

#pragma omp parallel for schedule(static) num_threads(threads)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      out.frames[i] = compute_frame(trajectory.frames[i], anatomy, options);
    } catch (...) {
#pragma omp critical(tractvar_trajectory_failure)
      if (i < failure_index) {
        failure_index = i;
        failure = std::current_exception();
      }
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

namespace reference {

TvTrajectory compute_trajectory(const PelletTrajectory& trajectory, const SpeakerAnatomy& anatomy,
                                const TvOptions& options) {
  TvTrajectory out{trajectory.speaker_id, {}, trajectory.native_rate};
  out.frames.reserve(trajectory.frames.size());
  for (const PelletFrame& f : trajectory.frames) out.frames.push_back(compute_frame(f, anatomy, options));
  return out;
}

}  // namespace reference

}  // namespace tractvar
