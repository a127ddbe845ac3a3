#include "tractvar/tv_csv.hpp"

#include <array>
#include <fstream>
#include <istream>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>

#include "csv_util.hpp"
#include "tractvar/error.hpp"

namespace tractvar {

namespace {

void put(std::ostream& out, const std::optional<double>& v, double scale = 1.0) {
  out << ',';
  if (v) out << csv::format_double(*v * scale);
}

}  // namespace

void write_tv_csv(std::ostream& out, const TvTrajectory& trajectory, AngleUnit unit) {
  const double angle = unit == AngleUnit::Degrees ? 180.0 / std::numbers::pi : 1.0;
  out << kTvHeader << '\n';
  for (const TractVariableFrame& f : trajectory.frames) {
    out << csv::format_double(f.t);
    put(out, f.la);
    put(out, f.lp);
    put(out, f.tbcl, angle);
    put(out, f.tbcd);
    put(out, f.ttcl, angle);
    put(out, f.ttcd);
    out << ',' << to_string(f.quality) << '\n';
  }
}

std::vector<TractVariableFrame> read_tv_csv(std::istream& in, std::string_view source) {
  const std::string src(source);
  std::string line;
  if (!std::getline(in, line) || csv::strip_cr(line) != kTvHeader) {
    throw Error(ErrorKind::SchemaError, src + ": TV header must be '" + std::string(kTvHeader) + "'");
  }
  std::vector<TractVariableFrame> frames;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view row = csv::strip_cr(line);
    if (csv::trim(row).empty()) continue;
    const auto fields = csv::split(row);
    const std::string where = src + ":" + std::to_string(line_no);
    if (fields.size() != 8) {
      throw Error(ErrorKind::ParseError, where + ": expected 8 fields, got " + std::to_string(fields.size()));
    }
    TractVariableFrame f;
    const auto t = csv::parse_double(fields[0]);
    if (!t) throw Error(ErrorKind::ParseError, where + ", column 1: invalid time");
    f.t = *t;
    std::array<std::optional<double>*, 6> slots = {&f.la, &f.lp, &f.tbcl, &f.tbcd, &f.ttcl, &f.ttcd};
    for (std::size_t i = 0; i < slots.size(); ++i) {
      const std::string_view field = csv::trim(fields[i + 1]);
      if (field.empty()) continue;
      *slots[i] = csv::parse_double(field);
      if (!*slots[i]) {
        throw Error(ErrorKind::ParseError,
                    where + ", column " + std::to_string(i + 2) + ": cannot parse '" + std::string(field) + "'");
      }
    }
    const auto q = parse_quality(csv::trim(fields[7]));
    if (!q) throw Error(ErrorKind::ParseError, where + ", column 8: unknown quality '" + std::string(fields[7]) + "'");
    f.quality = *q;
    frames.push_back(f);
  }
  return frames;
}

std::vector<TractVariableFrame> read_tv_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
  return read_tv_csv(in, path.string());
}

}  // namespace tractvar
