#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tractvar/tract_variables.hpp"

namespace tractvar {

// Pearson product-moment correlation. Requires equal lengths >= 2 and
// nonzero variance in both series; the result is clamped to [-1, 1].
// Throws LengthMismatch or ZeroVariance.
double ppmc(std::span<const double> a, std::span<const double> b);

inline constexpr std::array<std::string_view, 6> kTvNames = {"LA", "LP", "TBCL", "TBCD", "TTCL", "TTCD"};

struct ComparisonReport {
  std::array<double, 6> scores{};  // in kTvNames order
  double average = 0.0;
  std::size_t n_frames_compared = 0;
  std::size_t n_frames_excluded = 0;  // quality != ok in either series
};

// Frames are matched by index; timestamps must agree within 1e-6 s.
// Throws LengthMismatch, TimebaseMismatch, InsufficientData.
ComparisonReport compare_tvs(const std::vector<TractVariableFrame>& a, const std::vector<TractVariableFrame>& b);
ComparisonReport compare_tvs(const std::filesystem::path& path_a, const std::filesystem::path& path_b);

// Fixed-width table: TVs | LA | LP | TBCL | TBCD | TTCL | TTCD | Average.
std::string format_table(const ComparisonReport& report);
std::string to_json(const ComparisonReport& report);

}  // namespace tractvar
