#pragma once

#include <filesystem>
#include <string>

#include "tractvar/anatomy.hpp"
#include "tractvar/ingest.hpp"
#include "tractvar/tv_csv.hpp"

namespace tractvar {

enum ExitCode : int { kExitOk = 0, kExitConfigOrIo = 1, kExitData = 2 };

struct RunConfig {
  std::filesystem::path manifest_path;
  std::filesystem::path output_dir;
  AngleUnit angle_unit = AngleUnit::Radians;
  bool clamp_tbcd = false;
  double target_rate = ingest::kCanonicalRateHz;
  bool emit_plots = false;
  int parallelism = 1;
};

// Reads TRACTVAR_LOG (error|warn|info|debug; default warn) and sets up the
// stderr logger.
void init_logging();

// Derived anatomy as JSON (traces, junction, reference center).
std::string anatomy_to_json(const anatomy::SpeakerAnatomy& anatomy);

// Loads traces and builds one speaker's anatomy; errors carry the speaker id.
anatomy::SpeakerAnatomy load_speaker_anatomy(const ingest::SpeakerManifest& speaker);

// Full batch run. Writes <speaker>.anatomy.json and <utterance>.tv.csv (plus
// <speaker>.anatomy.svg and <utterance>.tvs.svg with emit_plots). Returns an
// ExitCode: any speaker-level failure is fatal to the exit status, utterance
// failures only when every utterance fails.
int run_pipeline(const RunConfig& config);

// Anatomy-only run: JSON plus plot for every speaker.
int run_anatomy(const RunConfig& config);

}  // namespace tractvar
