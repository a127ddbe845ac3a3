#include "tractvar/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <map>
#include <optional>
#include <sstream>
#include <thread>
#include <vector>

#include <json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "tractvar/error.hpp"
#include "tractvar/plots.hpp"
#include "tractvar/tract_variables.hpp"

namespace tractvar {

namespace fs = std::filesystem;

void init_logging() {
  auto logger = spdlog::get("tractvar");
  if (!logger) logger = spdlog::stderr_color_mt("tractvar");
  logger->set_pattern("[%l] %v");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("TRACTVAR_LOG")) {
    const std::string level(env);
    if (level == "error") spdlog::set_level(spdlog::level::err);
    else if (level == "warn") spdlog::set_level(spdlog::level::warn);
    else if (level == "info") spdlog::set_level(spdlog::level::info);
    else if (level == "debug") spdlog::set_level(spdlog::level::debug);
    else spdlog::warn("unknown TRACTVAR_LOG level '{}', using warn", level);
  }
}

namespace {

nlohmann::ordered_json points_json(const geometry::Polyline& line) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto p : line.points()) arr.push_back({p.x, p.y});
  return arr;
}

int exit_code_for(ErrorKind kind) { return is_config_or_io(kind) ? kExitConfigOrIo : kExitData; }

struct LoadedSpeaker {
  const ingest::SpeakerManifest* manifest = nullptr;
  std::optional<anatomy::SpeakerAnatomy> anatomy;
};

struct UtteranceJob {
  const ingest::SpeakerManifest* speaker = nullptr;
  const anatomy::SpeakerAnatomy* anatomy = nullptr;
  fs::path path;
  std::string utterance_id;
};

struct UtteranceOutcome {
  bool ok = false;
  std::optional<ErrorKind> error_kind;
  std::string message;
  std::vector<std::string> warnings;
  std::size_t frames = 0;
};

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::IoError, "cannot create output directory " + dir.string() + ": " + ec.message());
}

void validate(const RunConfig& config) {
  if (!(config.target_rate > 0.0)) throw Error(ErrorKind::ConfigError, "--rate must be positive");
  if (config.parallelism < 1) throw Error(ErrorKind::ConfigError, "--parallelism must be >= 1");
  if (config.output_dir.empty()) throw Error(ErrorKind::ConfigError, "--out is required");
}

// Builds and writes every speaker's anatomy. Returns the worst exit code.
int build_anatomies(const std::vector<ingest::SpeakerManifest>& speakers, const RunConfig& config,
                    std::vector<LoadedSpeaker>& loaded, bool plots) {
  int status = kExitOk;
  for (const auto& s : speakers) {
    LoadedSpeaker entry{&s, std::nullopt};
    try {
      entry.anatomy.emplace(load_speaker_anatomy(s));
      plots::write_file(config.output_dir / (s.speaker_id + ".anatomy.json"), anatomy_to_json(*entry.anatomy));
      if (plots) {
        plots::write_file(config.output_dir / (s.speaker_id + ".anatomy.svg"), plots::anatomy_svg(*entry.anatomy));
      }
      spdlog::info("speaker {}: extended palate has {} points", s.speaker_id,
                   entry.anatomy->extended_palate().size());
    } catch (const Error& e) {
      spdlog::error("{}", e.what());
      entry.anatomy.reset();
      status = std::max(status, exit_code_for(e.kind()));
    }
    loaded.push_back(std::move(entry));
  }
  return status;
}

UtteranceOutcome process_utterance(const UtteranceJob& job, const RunConfig& config, int frame_threads) {
  UtteranceOutcome outcome;
  try {
    ingest::PelletFormatOptions opts;
    opts.speaker_id = job.speaker->speaker_id;
    opts.utterance_id = job.utterance_id;
    ingest::PelletFile file = ingest::parse_pellet_file(job.path, opts);
    PelletTrajectory traj = ingest::resample(file.trajectory, config.target_rate, &file.report);
    outcome.warnings = std::move(file.report.warnings);

    TvOptions tv;
    tv.clamp_tbcd = config.clamp_tbcd;
    tv.threads = frame_threads;
    const TvTrajectory tvs = compute_trajectory(traj, *job.anatomy, tv);

    std::ostringstream csv;
    write_tv_csv(csv, tvs, config.angle_unit);
    plots::write_file(config.output_dir / (job.utterance_id + ".tv.csv"), csv.str());
    if (config.emit_plots) {
      plots::write_file(config.output_dir / (job.utterance_id + ".tvs.svg"), plots::tv_svg(tvs, config.angle_unit));
    }
    outcome.ok = true;
    outcome.frames = tvs.frames.size();
  } catch (const Error& e) {
    outcome.error_kind = e.kind();
    outcome.message = e.what();
  } catch (const std::exception& e) {
    outcome.error_kind = ErrorKind::IoError;
    outcome.message = e.what();
  }
  return outcome;
}

}  // namespace

std::string anatomy_to_json(const anatomy::SpeakerAnatomy& a) {
  nlohmann::ordered_json j;
  j["speaker_id"] = a.speaker_id();
  j["sex"] = std::string(anatomy::to_string(a.sex()));
  j["thickness_mm"] = a.thickness();
  j["reference_center"] = {a.reference_center().x, a.reference_center().y};
  j["junction"] = {a.junction().x, a.junction().y};
  j["junction_index"] = a.junction_index();
  j["palate"] = points_json(a.palate());
  j["posterior_wall"] = points_json(a.posterior_wall());
  j["anterior_wall"] = points_json(a.anterior_wall());
  j["extended_palate"] = points_json(a.extended_palate());
  return j.dump(2) + "\n";
}

anatomy::SpeakerAnatomy load_speaker_anatomy(const ingest::SpeakerManifest& speaker) {
  auto load = [&](const fs::path& path, ingest::TraceKind kind) {
    try {
      ingest::TraceFile f = ingest::parse_trace_file(path, kind);
      for (const auto& w : f.warnings) spdlog::warn("speaker {}: {}", speaker.speaker_id, w);
      return std::move(f.trace);
    } catch (const Error& e) {
      throw e.with_context("speaker " + speaker.speaker_id);
    }
  };
  geometry::Polyline palate = load(speaker.palate, ingest::TraceKind::Palate);
  geometry::Polyline wall = load(speaker.posterior_wall, ingest::TraceKind::Wall);
  return anatomy::build_speaker_anatomy(speaker.speaker_id, std::move(palate), std::move(wall), speaker.sex,
                                        speaker.thickness_mm);
}

int run_anatomy(const RunConfig& config) {
  try {
    validate(config);
    const auto speakers = ingest::load_manifest(config.manifest_path);
    ensure_dir(config.output_dir);
    std::vector<LoadedSpeaker> loaded;
    return build_anatomies(speakers, config, loaded, true);
  } catch (const Error& e) {
    spdlog::error("{}", e.what());
    return exit_code_for(e.kind());
  }
}

int run_pipeline(const RunConfig& config) {
  std::vector<ingest::SpeakerManifest> speakers;
  try {
    validate(config);
    speakers = ingest::load_manifest(config.manifest_path);
    std::map<std::string, std::string> owner;
    for (const auto& s : speakers) {
      for (const auto& u : s.utterances) {
        const std::string id = u.stem().string();
        auto [it, inserted] = owner.emplace(id, s.speaker_id);
        if (!inserted) {
          throw Error(ErrorKind::ConfigError, "utterance id '" + id + "' appears for speakers " + it->second +
                                                  " and " + s.speaker_id + "; output names would collide");
        }
      }
    }
    ensure_dir(config.output_dir);
  } catch (const Error& e) {
    spdlog::error("{}", e.what());
    return exit_code_for(e.kind());
  }

  std::vector<LoadedSpeaker> loaded;
  int status = build_anatomies(speakers, config, loaded, config.emit_plots);

  std::vector<UtteranceJob> jobs;
  for (const auto& entry : loaded) {
    if (!entry.anatomy) continue;
    for (const auto& u : entry.manifest->utterances) {
      jobs.push_back({entry.manifest, &*entry.anatomy, u, u.stem().string()});
    }
  }

  std::vector<UtteranceOutcome> outcomes(jobs.size());
  const int workers = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(config.parallelism),
                                                             std::max<std::size_t>(jobs.size(), 1)));
  const int frame_threads = std::max(1, config.parallelism / workers);
  {
    std::atomic<std::size_t> next{0};
    auto work = [&] {
      for (std::size_t i = next.fetch_add(1); i < jobs.size(); i = next.fetch_add(1)) {
        outcomes[i] = process_utterance(jobs[i], config, frame_threads);
      }
    };
    std::vector<std::jthread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
  }

  // Report in manifest order.
  std::size_t failed = 0;
  std::optional<int> first_failure_code;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const auto& o = outcomes[i];
    for (const auto& w : o.warnings) spdlog::warn("speaker {}: {}", jobs[i].speaker->speaker_id, w);
    if (o.ok) {
      spdlog::info("speaker {}: {} -> {} frames", jobs[i].speaker->speaker_id, jobs[i].utterance_id, o.frames);
    } else {
      ++failed;
      spdlog::error("speaker {}: utterance {} skipped: {}", jobs[i].speaker->speaker_id, jobs[i].utterance_id,
                    o.message);
      if (!first_failure_code) first_failure_code = exit_code_for(*o.error_kind);
    }
  }
  if (!jobs.empty() && failed == jobs.size()) status = std::max(status, *first_failure_code);
  return status;
}

}  // namespace tractvar
