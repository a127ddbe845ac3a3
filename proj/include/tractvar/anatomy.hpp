#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "tractvar/geometry.hpp"

namespace tractvar::anatomy {

using geometry::Point2D;
using geometry::Polyline;

enum class Sex { Female, Male };

// Average low retropalatal oropharyngeal thickness, mm.
inline constexpr double kFemaleThicknessMm = 5.8;
inline constexpr double kMaleThicknessMm = 5.6;

// A junction more than this far above the palate's last point is rejected.
inline constexpr double kMaxJunctionRiseMm = 20.0;

// Maximum spacing of the sampled velar (soft-palate) line.
inline constexpr double kVelarStepMm = 1.0;

double default_thickness(Sex sex) noexcept;
std::string_view to_string(Sex sex) noexcept;
// Accepts "F"/"M" (case-insensitive) and "female"/"male".
std::optional<Sex> parse_sex(std::string_view text) noexcept;

// Posterior wall translated anteriorly (+x) by `thickness_mm`.
Polyline infer_anterior_wall(const Polyline& posterior_wall, double thickness_mm);

struct ExtendedPalate {
  Polyline trace;
  Point2D junction;
  std::size_t junction_index = 0;  // index of the junction in trace
};

// Original palate + velar line sampled at <= 1 mm to the anterior wall +
// the anterior wall below the junction.
ExtendedPalate extend_palate(const Polyline& palate, const Polyline& anterior_wall);

// Center of the least-squares circle through the original palate trace.
Point2D palatal_reference_center(const Polyline& palate);

// Immutable per-speaker anatomy with derived traces.
class SpeakerAnatomy {
 public:
  const std::string& speaker_id() const noexcept { return speaker_id_; }
  const Polyline& palate() const noexcept { return palate_; }
  const Polyline& posterior_wall() const noexcept { return posterior_wall_; }
  Sex sex() const noexcept { return sex_; }
  double thickness() const noexcept { return thickness_; }
  const Polyline& anterior_wall() const noexcept { return anterior_wall_; }
  // "epal": the trace all constriction degrees are measured against.
  const Polyline& extended_palate() const noexcept { return extended_palate_; }
  Point2D junction() const noexcept { return junction_; }
  std::size_t junction_index() const noexcept { return junction_index_; }
  Point2D reference_center() const noexcept { return reference_center_; }

 private:
  friend SpeakerAnatomy build_speaker_anatomy(std::string, Polyline, std::optional<Polyline>, Sex,
                                              std::optional<double>);
  SpeakerAnatomy(std::string speaker_id, Polyline palate, Polyline posterior_wall, Sex sex,
                 double thickness, Polyline anterior_wall, ExtendedPalate extended,
                 Point2D reference_center);

  std::string speaker_id_;
  Polyline palate_;
  Polyline posterior_wall_;
  Sex sex_;
  double thickness_;
  Polyline anterior_wall_;
  Polyline extended_palate_;
  Point2D junction_;
  std::size_t junction_index_;
  Point2D reference_center_;
};

// Errors from the constituent steps are rethrown annotated with speaker_id.
SpeakerAnatomy build_speaker_anatomy(std::string speaker_id, Polyline palate,
                                     std::optional<Polyline> posterior_wall, Sex sex,
                                     std::optional<double> thickness_override = std::nullopt);

}  // namespace tractvar::anatomy
