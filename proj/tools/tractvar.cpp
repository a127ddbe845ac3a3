// tractvar: pellet trajectories -> tract variables.
//
//   tractvar run --manifest <path> --out <dir> [--degrees] [--clamp-tbcd]
//                [--rate 145] [--plots] [--parallelism N]
//   tractvar compare <a.tv.csv> <b.tv.csv> [--json <path>]
//   tractvar anatomy --manifest <path> --out <dir>

#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "tractvar/compare.hpp"
#include "tractvar/error.hpp"
#include "tractvar/pipeline.hpp"
#include "tractvar/plots.hpp"

int main(int argc, char** argv) {
  using namespace tractvar;
  init_logging();

  CLI::App app{"Convert midsagittal pellet trajectories into tract variables"};
  app.require_subcommand(1);

  RunConfig run_cfg;
  bool degrees = false;
  std::string manifest, out_dir;
  auto* run = app.add_subcommand("run", "Build anatomy and compute TVs for every utterance in a manifest");
  run->add_option("--manifest", manifest, "Speaker manifest (JSON)")->required();
  run->add_option("--out", out_dir, "Output directory")->required();
  run->add_flag("--degrees", degrees, "Write TBCL/TTCL in degrees instead of radians");
  run->add_flag("--clamp-tbcd", run_cfg.clamp_tbcd, "Clamp TBCD at 0 (no negative penetration values)");
  run->add_option("--rate", run_cfg.target_rate, "Resampling rate in Hz")->capture_default_str();
  run->add_flag("--plots", run_cfg.emit_plots, "Emit SVG plots");
  run->add_option("--parallelism", run_cfg.parallelism, "Worker count")->capture_default_str();

  std::string path_a, path_b, json_path;
  auto* compare = app.add_subcommand("compare", "PPMC between two TV CSV files");
  compare->add_option("a", path_a, "First .tv.csv")->required();
  compare->add_option("b", path_b, "Second .tv.csv")->required();
  compare->add_option("--json", json_path, "Also write the scores as JSON");

  std::string anat_manifest, anat_out;
  auto* anat = app.add_subcommand("anatomy", "Build anatomy JSON and plot only");
  anat->add_option("--manifest", anat_manifest, "Speaker manifest (JSON)")->required();
  anat->add_option("--out", anat_out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfigOrIo;
  }

  if (*run) {
    run_cfg.manifest_path = manifest;
    run_cfg.output_dir = out_dir;
    run_cfg.angle_unit = degrees ? AngleUnit::Degrees : AngleUnit::Radians;
    return run_pipeline(run_cfg);
  }
  if (*anat) {
    RunConfig cfg;
    cfg.manifest_path = anat_manifest;
    cfg.output_dir = anat_out;
    cfg.emit_plots = true;
    return run_anatomy(cfg);
  }

  try {
    const ComparisonReport report = compare_tvs(path_a, path_b);
    std::cout << format_table(report);
    if (!json_path.empty()) plots::write_file(json_path, to_json(report));
    return kExitOk;
  } catch (const Error& e) {
    spdlog::error("{}", e.what());
    return is_config_or_io(e.kind()) ? kExitConfigOrIo : kExitData;
  }
}
