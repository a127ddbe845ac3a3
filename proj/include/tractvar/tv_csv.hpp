#pragma once

#include <filesystem>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "tractvar/tract_variables.hpp"

namespace tractvar {

inline constexpr std::string_view kTvHeader = "t,LA,LP,TBCL,TBCD,TTCL,TTCD,quality";

enum class AngleUnit { Radians, Degrees };

// Absent TVs are written as empty cells. Angles are converted to `unit` here
// and nowhere else.
void write_tv_csv(std::ostream& out, const TvTrajectory& trajectory, AngleUnit unit = AngleUnit::Radians);

// Values are returned as stored (no unit conversion).
std::vector<TractVariableFrame> read_tv_csv(std::istream& in, std::string_view source = "<stream>");
std::vector<TractVariableFrame> read_tv_file(const std::filesystem::path& path);

}  // namespace tractvar
