#pragma once

#include <filesystem>
#include <string>

#include "tractvar/anatomy.hpp"
#include "tractvar/tract_variables.hpp"
#include "tractvar/tv_csv.hpp"

namespace tractvar::plots {

// Midsagittal view: original palate, velar extension, anterior and
// posterior pharyngeal walls (one <polyline> each) and the palatal
// reference center (one <circle>).
std::string anatomy_svg(const anatomy::SpeakerAnatomy& anatomy);

// Six stacked panels (LA, LP, TBCL, TBCD, TTCL, TTCD), one <path> per panel
// with data; absent values break the path.
std::string tv_svg(const TvTrajectory& trajectory, AngleUnit unit = AngleUnit::Radians);

// Writes a string to a file. Throws IoError.
void write_file(const std::filesystem::path& path, const std::string& contents);

// Writes anatomy.svg and tvs.svg into output_dir.
void emit_plots(const anatomy::SpeakerAnatomy& anatomy, const TvTrajectory& trajectory,
                const std::filesystem::path& output_dir, AngleUnit unit = AngleUnit::Radians);

}  // namespace tractvar::plots
