// chitrakar: portrait -> candidate Jordan curves -> plotter/robot scripts.

#include <CLI11.hpp>

#include <chitrakar/chitrakar.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

namespace ck = chitrakar;

namespace {

struct RunOverrides {
  std::optional<std::string> input, mask, output_dir, dump_stages, mode, workspace;
  std::optional<std::size_t> points, tsp_passes, candidates;
  std::optional<double> gamma, threshold, vmax, amax, blend, margin;
  std::optional<std::uint64_t> seed;
  std::optional<int> grid_scale, port;
};

void apply(const RunOverrides& o, ck::PipelineConfig& c) {
  if (o.input) c.input_path = *o.input;
  if (o.mask) c.mask_path = *o.mask;
  if (o.output_dir) c.output_dir = *o.output_dir;
  if (o.dump_stages) c.dump_stages = *o.dump_stages;
  if (o.mode) c.stipple.mode = ck::parse_stipple_mode(*o.mode);
  if (o.points) c.stipple.target_points = *o.points;
  if (o.gamma) c.stipple.gamma = *o.gamma;
  if (o.threshold) c.stipple.threshold = *o.threshold;
  if (o.seed) c.stipple.seed = *o.seed;
  if (o.tsp_passes) c.tsp_passes = *o.tsp_passes;
  if (o.candidates) c.n_candidates = *o.candidates;
  if (o.grid_scale) c.grid_scale = *o.grid_scale;
  if (o.vmax) c.motion.v_max = *o.vmax;
  if (o.amax) c.motion.a_max = *o.amax;
  if (o.blend) c.motion.blend = *o.blend;
  if (o.margin) c.motion.margin = *o.margin;
  if (o.workspace) {
    const auto [w, h] = ck::parse_workspace_size(*o.workspace);
    c.motion.workspace.width = w;
    c.motion.workspace.height = h;
  }
  if (o.port) c.serve_port = *o.port;
}

void report(const std::vector<ck::CandidateRecord>& records) {
  for (const auto& r : records) {
    double ms = 0.0;
    for (const auto& t : r.timings) ms += t.ms;
    std::fprintf(stderr, "candidate %zu: seed %llu, %zu points, length %.1f px, %zu repairs, %.0f ms\n",
                 r.id, static_cast<unsigned long long>(r.seed), r.curve.size(), r.tour_length,
                 r.repair_moves, ms);
  }
}

void print_outputs(const ck::FinalOutputs& out) {
  std::printf("selected %zu\n", out.id);
  std::printf("  %s\n  %s\n  %s\n  %s\n", out.svg.c_str(), out.gcode.c_str(), out.script.c_str(),
              out.tour.c_str());
  std::printf("trajectory time %.1f s; estimate %.2f min (points), %.2f min (stroke)\n", out.draw_time_s,
              out.estimate.by_points_min, out.estimate.by_stroke_min);
}

int run(const std::string& config_path, const RunOverrides& o, bool headless, const std::string& pick) {
  ck::PipelineConfig cfg = config_path.empty() ? ck::PipelineConfig{} : ck::load_config(config_path);
  apply(o, cfg);
  if (cfg.input_path.empty()) throw ck::InvalidArgument("no input image (set `input` or pass --input)");
  cfg.validate();
  if (headless) {
    std::vector<ck::CandidateRecord> records;
    const auto out = ck::run_headless(cfg, ck::parse_pick(pick), &records);
    report(records);
    print_outputs(out);
    return 0;
  }
  const auto records = ck::generate_candidates(cfg);
  report(records);
  ck::SelectionServer server(records, cfg.ui_dir);
  const int port = server.start(cfg.serve_host, cfg.serve_port);
  std::fprintf(stderr, "gallery at http://%s:%d/ ; waiting for POST /select\n", cfg.serve_host.c_str(), port);
  const std::size_t chosen = server.wait();
  server.stop();
  print_outputs(ck::finalize(records[chosen], cfg));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Portrait to single-line Jordan curve drawings"};
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "generate candidates, select one, emit scripts");
  std::string config_path, pick = "shortest";
  bool headless = false;
  RunOverrides o;
  run_cmd->add_option("--config", config_path, "TOML config file");
  run_cmd->add_flag("--headless", headless, "skip the gallery and pick automatically");
  run_cmd->add_option("--pick", pick, "'shortest' or a candidate id (headless)");
  run_cmd->add_option("--input", o.input, "portrait image (PNG/JPEG)");
  run_cmd->add_option("--mask", o.mask, "subject mask PNG, nonzero = subject");
  run_cmd->add_option("--output-dir", o.output_dir);
  run_cmd->add_option("--dump-stages", o.dump_stages, "write intermediate images here");
  run_cmd->add_option("--points", o.points, "stipple budget");
  run_cmd->add_option("--gamma", o.gamma);
  run_cmd->add_option("--seed", o.seed, "base seed; candidate i uses seed + i");
  run_cmd->add_option("--mode", o.mode)->check(CLI::IsMember({"prob", "probabilistic", "threshold"}));
  run_cmd->add_option("--threshold", o.threshold);
  run_cmd->add_option("--tsp-passes", o.tsp_passes);
  run_cmd->add_option("--candidates", o.candidates);
  run_cmd->add_option("--grid-scale", o.grid_scale);
  run_cmd->add_option("--vmax", o.vmax, "m/s");
  run_cmd->add_option("--amax", o.amax, "m/s^2");
  run_cmd->add_option("--blend", o.blend, "m");
  run_cmd->add_option("--workspace", o.workspace, "WxH in meters");
  run_cmd->add_option("--margin", o.margin, "m");
  run_cmd->add_option("--port", o.port, "gallery port, 0 for any");

  auto* est_cmd = app.add_subcommand("estimate", "draw-time estimate from the fitted models");
  std::size_t n_points = 10000;
  double stroke_mm = 10.0;
  std::string family = "decagon";
  est_cmd->add_option("--points", n_points);
  est_cmd->add_option("--stroke-mm", stroke_mm);
  est_cmd->add_option("--family", family)->check(CLI::IsMember({"decagon", "random", "straight"}));

  auto* synth_cmd = app.add_subcommand("synth-portrait", "write the built-in test portrait");
  std::string synth_out = "portrait.png", synth_mask;
  std::size_t synth_size = 512;
  synth_cmd->add_option("output", synth_out)->required();
  synth_cmd->add_option("--mask", synth_mask, "also write its subject mask");
  synth_cmd->add_option("--size", synth_size);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) return run(config_path, o, headless, pick);
    if (*est_cmd) {
      const auto e = ck::estimate_time(n_points, stroke_mm, ck::TimeModel::preset(ck::parse_time_family(family)));
      std::printf("linear %.3f min\npower  %.3f min\n", e.by_points_min, e.by_stroke_min);
      return 0;
    }
    if (*synth_cmd) {
      ck::save_png(synth_out, ck::synthetic_portrait(synth_size, synth_size));
      if (!synth_mask.empty()) ck::save_png(synth_mask, ck::synthetic_portrait_mask(synth_size, synth_size));
      return 0;
    }
  } catch (const ck::StageError& e) {
    std::cerr << "error in stage " << e.stage() << ": " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
