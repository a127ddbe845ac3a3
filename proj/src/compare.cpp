#include "tractvar/compare.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "tractvar/error.hpp"
#include "tractvar/tv_csv.hpp"

namespace tractvar {

double ppmc(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::LengthMismatch,
                "series lengths differ: " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  }
  if (a.size() < 2) {
    throw Error(ErrorKind::LengthMismatch, "need at least 2 samples, got " + std::to_string(a.size()));
  }
  const double n = static_cast<double>(a.size());
  double mean_a = 0.0, mean_b = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    mean_a += a[i];
    mean_b += b[i];
  }
  mean_a /= n;
  mean_b /= n;

  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - mean_a;
    const double db = b[i] - mean_b;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa == 0.0 || sbb == 0.0) throw Error(ErrorKind::ZeroVariance, "series has zero variance");
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

ComparisonReport compare_tvs(const std::vector<TractVariableFrame>& a, const std::vector<TractVariableFrame>& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::LengthMismatch,
                "frame counts differ: " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  }
  ComparisonReport report;
  std::array<std::vector<double>, 6> xs, ys;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i].t - b[i].t) > 1e-6) {
      throw Error(ErrorKind::TimebaseMismatch, "frame " + std::to_string(i) + ": t=" + std::to_string(a[i].t) +
                                                   " vs t=" + std::to_string(b[i].t));
    }
    if (a[i].quality != FrameQuality::Ok || b[i].quality != FrameQuality::Ok) {
      ++report.n_frames_excluded;
      continue;
    }
    const std::array<std::optional<double>, 6> va = {a[i].la, a[i].lp, a[i].tbcl, a[i].tbcd, a[i].ttcl, a[i].ttcd};
    const std::array<std::optional<double>, 6> vb = {b[i].la, b[i].lp, b[i].tbcl, b[i].tbcd, b[i].ttcl, b[i].ttcd};
    if (!std::all_of(va.begin(), va.end(), [](auto& v) { return v.has_value(); }) ||
        !std::all_of(vb.begin(), vb.end(), [](auto& v) { return v.has_value(); })) {
      ++report.n_frames_excluded;
      continue;
    }
    for (std::size_t k = 0; k < 6; ++k) {
      xs[k].push_back(*va[k]);
      ys[k].push_back(*vb[k]);
    }
    ++report.n_frames_compared;
  }
  if (report.n_frames_compared < 2) {
    throw Error(ErrorKind::InsufficientData,
                "only " + std::to_string(report.n_frames_compared) + " frame(s) with quality ok in both series");
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < 6; ++k) {
    try {
      report.scores[k] = ppmc(xs[k], ys[k]);
    } catch (const Error& e) {
      throw e.with_context(std::string(kTvNames[k]));
    }
    sum += report.scores[k];
  }
  report.average = sum / 6.0;
  return report;
}

ComparisonReport compare_tvs(const std::filesystem::path& path_a, const std::filesystem::path& path_b) {
  return compare_tvs(read_tv_file(path_a), read_tv_file(path_b));
}

std::string format_table(const ComparisonReport& report) {
  std::string out;
  char buf[64];
  out += "TVs    ";
  for (auto name : kTvNames) {
    std::snprintf(buf, sizeof(buf), " %8s", std::string(name).c_str());
    out += buf;
  }
  out += "  Average\n";
  out += "PPMC   ";
  for (double s : report.scores) {
    std::snprintf(buf, sizeof(buf), " %8.4f", s);
    out += buf;
  }
  std::snprintf(buf, sizeof(buf), " %8.4f\n", report.average);
  out += buf;
  out += "frames compared: " + std::to_string(report.n_frames_compared) +
         ", excluded: " + std::to_string(report.n_frames_excluded) + "\n";
  return out;
}

std::string to_json(const ComparisonReport& report) {
  nlohmann::ordered_json j;
  for (std::size_t k = 0; k < 6; ++k) j[std::string(kTvNames[k])] = report.scores[k];
  j["Average"] = report.average;
  j["n_frames_compared"] = report.n_frames_compared;
  j["n_frames_excluded"] = report.n_frames_excluded;
  return j.dump(2) + "\n";
}

}  // namespace tractvar
