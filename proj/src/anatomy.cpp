#include "tractvar/anatomy.hpp"

#include <cctype>
#include <cmath>
#include <string>
#include <vector>

#include "tractvar/error.hpp"

namespace tractvar::anatomy {

using geometry::distance;

double default_thickness(Sex sex) noexcept {
  return sex == Sex::Female ? kFemaleThicknessMm : kMaleThicknessMm;
}

std::string_view to_string(Sex sex) noexcept { return sex == Sex::Female ? "F" : "M"; }

std::optional<Sex> parse_sex(std::string_view text) noexcept {
  std::string lower;
  for (char c : text) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (lower == "f" || lower == "female") return Sex::Female;
  if (lower == "m" || lower == "male") return Sex::Male;
  return std::nullopt;
}

Polyline infer_anterior_wall(const Polyline& posterior_wall, double thickness_mm) {
  if (!(thickness_mm > 0.0) || !std::isfinite(thickness_mm)) {
    throw Error(ErrorKind::InvalidArgument,
                "oropharyngeal thickness must be positive, got " + std::to_string(thickness_mm));
  }
  std::vector<Point2D> shifted;
  shifted.reserve(posterior_wall.size());
  for (const Point2D p : posterior_wall.points()) shifted.push_back({p.x + thickness_mm, p.y});
  return Polyline(std::move(shifted));
}

ExtendedPalate extend_palate(const Polyline& palate, const Polyline& anterior_wall) {
  const std::size_t n = palate.size();
  const Point2D last = palate[n - 1];
  const geometry::WallHit hit = geometry::extend_line_to_polyline(palate[n - 2], last, anterior_wall);
  const Point2D junction = hit.point;

  if (junction.y > last.y + kMaxJunctionRiseMm) {
    throw Error(ErrorKind::AnatomyInconsistent,
                "soft-palate junction y=" + std::to_string(junction.y) + " lies more than " +
                    std::to_string(kMaxJunctionRiseMm) + " mm above the last palate point y=" +
                    std::to_string(last.y));
  }

  std::vector<Point2D> out(palate.points().begin(), palate.points().end());

  const double len = distance(last, junction);
  if (len > 0.0) {
    const auto steps = static_cast<std::size_t>(std::ceil(len / kVelarStepMm));
    const Point2D delta = junction - last;
    for (std::size_t k = 1; k < steps; ++k) {
      out.push_back(last + (static_cast<double>(k) / static_cast<double>(steps)) * delta);
    }
    out.push_back(junction);
  }
  const std::size_t junction_index = out.size() - 1;

  const auto wall = anterior_wall.points();
  for (std::size_t i = hit.segment_index + 1; i < wall.size(); ++i) {
    if (distance(wall[i], out.back()) <= 1e-9) continue;
    out.push_back(wall[i]);
  }

  return {Polyline(std::move(out)), junction, junction_index};
}

Point2D palatal_reference_center(const Polyline& palate) {
  return geometry::fit_circle(palate.points()).center;
}

SpeakerAnatomy::SpeakerAnatomy(std::string speaker_id, Polyline palate, Polyline posterior_wall, Sex sex,
                               double thickness, Polyline anterior_wall, ExtendedPalate extended,
                               Point2D reference_center)
    : speaker_id_(std::move(speaker_id)),
      palate_(std::move(palate)),
      posterior_wall_(std::move(posterior_wall)),
      sex_(sex),
      thickness_(thickness),
      anterior_wall_(std::move(anterior_wall)),
      extended_palate_(std::move(extended.trace)),
      junction_(extended.junction),
      junction_index_(extended.junction_index),
      reference_center_(reference_center) {}

SpeakerAnatomy build_speaker_anatomy(std::string speaker_id, Polyline palate,
                                     std::optional<Polyline> posterior_wall, Sex sex,
                                     std::optional<double> thickness_override) {
  try {
    if (!posterior_wall) {
      throw Error(ErrorKind::InvalidArgument, "posterior pharyngeal wall trace is required");
    }
    const double thickness = thickness_override.value_or(default_thickness(sex));
    Polyline anterior = infer_anterior_wall(*posterior_wall, thickness);
    ExtendedPalate extended = extend_palate(palate, anterior);
    const Point2D center = palatal_reference_center(palate);

    for (const Point2D p : palate.points()) {
      if (!(center.y < p.y)) {
        throw Error(ErrorKind::AnatomyInconsistent,
                    "palatal reference center y=" + std::to_string(center.y) +
                        " is not below every palate point (palate point y=" + std::to_string(p.y) + ")");
      }
    }
    return SpeakerAnatomy(std::move(speaker_id), std::move(palate), std::move(*posterior_wall), sex,
                          thickness, std::move(anterior), std::move(extended), center);
  } catch (const Error& e) {
    throw e.with_context("speaker " + speaker_id);
  }
}

}  // namespace tractvar::anatomy
