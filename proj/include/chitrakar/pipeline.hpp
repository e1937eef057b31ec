#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <filesystem>
#include <fstream>
#include <optional>
#include <cctype>
#include <sstream>
#include <string>
#include <thread>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "config.hpp"
#include "emit.hpp"
#include "filters.hpp"
#include "image.hpp"
#include "motion.hpp"
#include "stipple.hpp"
#include "tour.hpp"
#include "uncross.hpp"

namespace chitrakar {

struct StageTiming {
  std::string stage;
  double ms = 0.0;
};

struct CandidateRecord {
  std::size_t id = 0;
  std::uint64_t seed = 0;
  JordanCurve curve;
  double tour_length = 0.0;   // pixels
  double est_time_min = 0.0;  // linear point-count model
  std::string svg;
  std::size_t repair_moves = 0;
  std::vector<StageTiming> timings;
};

namespace detail {

template <typename F>
auto run_stage(const char* stage, std::vector<StageTiming>* timings, F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  auto finish = [&] {
    if (timings)
      timings->push_back({stage, std::chrono::duration<double, std::milli>(
                                     std::chrono::steady_clock::now() - t0)
                                     .count()});
  };
  try {
    if constexpr (std::is_void_v<decltype(f())>) {
      f();
      finish();
    } else {
      auto r = f();
      finish();
      return r;
    }
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(stage, e.what());
  }
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace detail

// Load, mask, grayscale and enhance. Masked-out pixels are forced back to white
// after enhancement so the background never attracts stipples.
inline GrayImage prepare_image(const PipelineConfig& cfg, std::vector<StageTiming>* timings = nullptr) {
  using detail::run_stage;
  RgbImage rgb = run_stage("load", timings, [&] { return load_image(cfg.input_path); });
  std::optional<BinaryMask> mask;
  if (cfg.mask_path) {
    mask = run_stage("mask", timings, [&] {
      BinaryMask m = load_mask(*cfg.mask_path);
      rgb = apply_mask(rgb, m);
      return m;
    });
  }
  const GrayImage gray = run_stage("grayscale", timings, [&] { return to_grayscale(rgb); });
  GrayImage enhanced = run_stage("enhance", timings, [&] {
    GrayImage e = enhance(gray, cfg.filter, cfg.enhance_mode);
    if (!mask) return e;
    Grid<double> g = e.grid();
    for (std::size_t y = 0; y < g.height(); ++y)
      for (std::size_t x = 0; x < g.width(); ++x)
        if (!(*mask)(x, y)) g(x, y) = 1.0;
    return GrayImage(std::move(g));
  });
  if (cfg.dump_stages) {
    run_stage("dump", timings, [&] {
      std::filesystem::create_directories(*cfg.dump_stages);
      save_png(*cfg.dump_stages / "rgb.png", rgb);
      save_png(*cfg.dump_stages / "gray.png", gray);
      save_png(*cfg.dump_stages / "log.png", laplacian_of_gaussian(gray, cfg.filter));
      save_png(*cfg.dump_stages / "enhanced.png", enhanced);
    });
  }
  return enhanced;
}

// One full stipple -> tour -> Jordan curve chain with seed = base seed + id.
inline CandidateRecord build_candidate(const GrayImage& enhanced, const PipelineConfig& cfg,
                                       std::size_t id) {
  using detail::run_stage;
  std::vector<StageTiming> timings;
  StippleConfig sc = cfg.stipple;
  sc.seed = cfg.stipple.seed + id;
  const StippleSet points = run_stage("stipple", &timings, [&] { return stipple(enhanced, sc); });
  const Tour tour = run_stage("tour", &timings, [&] {
    return two_opt_improve(nearest_neighbor_tour(points, 0), points, cfg.tsp_passes);
  });
  RepairReport report;
  JordanCurve curve = run_stage("uncross", &timings, [&] {
    return remove_intersections(tour, points, cfg.grid_scale, &report);
  });
  CandidateRecord rec{.id = id,
                      .seed = sc.seed,
                      .curve = std::move(curve),
                      .tour_length = 0.0,
                      .est_time_min = 0.0,
                      .svg = {},
                      .repair_moves = report.moves.size(),
                      .timings = {}};
  rec.tour_length = tour_length(rec.curve.tour(), rec.curve.points());
  rec.est_time_min = estimate_time(rec.curve.size(), 10.0, TimeModel::preset(cfg.motion.time_family))
                         .by_points_min;
  rec.svg = emit_svg(rec.curve);
  if (cfg.dump_stages) {
    run_stage("dump", &timings, [&] {
      const auto dir = *cfg.dump_stages;
      const std::string tag = std::to_string(id);
      save_png(dir / ("stipple_" + tag + ".png"), render_preview(points));
      std::ostringstream pts, ordered;
      write_points_text(pts, points);
      write_tour_text(ordered, rec.curve.tour(), rec.curve.points());
      detail::write_text(dir / ("stipple_" + tag + ".txt"), pts.str());
      detail::write_text(dir / ("tour_" + tag + ".txt"), ordered.str());
      detail::write_text(dir / ("candidate_" + tag + ".svg"), rec.svg);
    });
  }
  rec.timings = std::move(timings);
  return rec;
}

// Builds cfg.n_candidates records in parallel; the result is ordered by id and
// independent of the worker count.
inline std::vector<CandidateRecord> generate_candidates(const PipelineConfig& cfg) {
  cfg.validate();
  if (cfg.dump_stages) std::filesystem::create_directories(*cfg.dump_stages);
  const GrayImage enhanced = prepare_image(cfg);
  const std::size_t n = cfg.n_candidates;
  std::size_t workers = cfg.workers ? cfg.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, n);

  std::vector<std::optional<CandidateRecord>> slots(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t id = next++; id < n; id = next++) {
      try {
        slots[id] = build_candidate(enhanced, cfg, id);
      } catch (...) {
        errors[id] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<CandidateRecord> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

// argmin tour_length, lowest id on ties.
inline std::size_t select_shortest(const std::vector<CandidateRecord>& records) {
  if (records.empty()) throw InvalidArgument("no candidates");
  std::size_t best = 0;
  for (std::size_t i = 1; i < records.size(); ++i)
    if (records[i].tour_length < records[best].tour_length) best = i;
  return records[best].id;
}

struct ShortestPick {};
using Pick = std::variant<std::size_t, ShortestPick>;

inline Pick parse_pick(const std::string& s) {
  if (s == "shortest") return ShortestPick{};
  std::size_t used = 0;
  unsigned long v = 0;
  if (!s.empty() && std::isdigit(static_cast<unsigned char>(s[0]))) {
    try {
      v = std::stoul(s, &used);
    } catch (...) {
      used = 0;
    }
  }
  if (used == 0 || used != s.size()) throw InvalidArgument("pick must be 'shortest' or an id, got '" + s + "'");
  return static_cast<std::size_t>(v);
}

struct FinalOutputs {
  std::size_t id = 0;
  std::filesystem::path svg;
  std::filesystem::path gcode;
  std::filesystem::path script;
  std::filesystem::path tour;
  double draw_time_s = 0.0;  // trapezoidal trajectory time
  TimeEstimate estimate;
};

// Writes selected.{svg,gcode,script} and selected_tour.txt for one record.
inline FinalOutputs finalize(const CandidateRecord& rec, const PipelineConfig& cfg) {
  const MotionConfig& m = cfg.motion;
  return detail::run_stage("finalize", nullptr, [&] {
    std::filesystem::create_directories(cfg.output_dir);
    const PhysicalPath path = scale_to_workspace(rec.curve, m.workspace, m.margin);
    const Trajectory traj = plan_trajectory(path, m.v_max, m.a_max, m.blend);
    FinalOutputs out;
    out.id = rec.id;
    out.svg = cfg.output_dir / "selected.svg";
    out.gcode = cfg.output_dir / "selected.gcode";
    out.script = cfg.output_dir / "selected.script";
    out.tour = cfg.output_dir / "selected_tour.txt";
    detail::write_text(out.svg, rec.svg);
    detail::write_text(out.gcode, emit_gcode(path, m.feed_mm_min, m.workspace));
    detail::write_text(out.script, emit_robot_script(traj, m.workspace, m.orientation));
    std::ostringstream ordered;
    write_tour_text(ordered, rec.curve.tour(), rec.curve.points());
    detail::write_text(out.tour, ordered.str());
    out.draw_time_s = traj.total_time;
    out.estimate = estimate_time(rec.curve.size(), path.stroke_length * 1000.0,
                                 TimeModel::preset(m.time_family));
    return out;
  });
}

inline std::size_t resolve_pick(const std::vector<CandidateRecord>& records, const Pick& pick) {
  if (std::holds_alternative<ShortestPick>(pick)) return select_shortest(records);
  const std::size_t id = std::get<std::size_t>(pick);
  if (id >= records.size()) throw InvalidArgument("invalid candidate id " + std::to_string(id));
  return id;
}

// Generates candidates and finalizes one without serving the gallery.
inline FinalOutputs run_headless(const PipelineConfig& cfg, const Pick& pick,
                                 std::vector<CandidateRecord>* records_out = nullptr) {
  if (const auto* id = std::get_if<std::size_t>(&pick); id && *id >= cfg.n_candidates)
    throw InvalidArgument("invalid candidate id " + std::to_string(*id));
  auto records = generate_candidates(cfg);
  const std::size_t chosen = resolve_pick(records, pick);
  FinalOutputs out = finalize(records[chosen], cfg);
  if (records_out) *records_out = std::move(records);
  return out;
}

}  // namespace chitrakar
