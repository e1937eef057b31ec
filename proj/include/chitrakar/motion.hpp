#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "geometry.hpp"
#include "uncross.hpp"

namespace chitrakar {

// Drawing area in the robot frame, meters.
struct Workspace {
  Point2 origin{0.0, 0.0};
  double width = 0.5;
  double height = 1.0;
  double z_draw = 0.0;
  double z_travel = 0.02;

  void validate() const {
    if (!(width > 0.0 && height > 0.0)) throw InvalidArgument("workspace extent must be positive");
    if (!(z_travel > z_draw)) throw InvalidArgument("z_travel must be above z_draw");
  }
};

// Closed path in meters: the first waypoint is repeated at the end.
struct PhysicalPath {
  std::vector<Point2> waypoints;
  double stroke_length = 0.0;  // longest inter-waypoint distance
};

inline double distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

// Uniform scale + translation of the curve's bounding box into the
// margin-inset workspace, centred, with the image y axis flipped to point up.
inline PhysicalPath scale_to_workspace(const JordanCurve& curve, const Workspace& ws, double margin) {
  ws.validate();
  if (!(margin >= 0.0)) throw InvalidArgument("margin must be non-negative");
  const double avail_w = ws.width - 2.0 * margin;
  const double avail_h = ws.height - 2.0 * margin;
  if (!(avail_w > 0.0 && avail_h > 0.0)) throw InvalidArgument("margin leaves no drawable area");

  const auto& pts = curve.points();
  std::int32_t min_x = pts[0].x, max_x = pts[0].x, min_y = pts[0].y, max_y = pts[0].y;
  for (const Pixel& p : pts) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  const double span_x = max_x - min_x;
  const double span_y = max_y - min_y;
  if (span_x == 0.0 && span_y == 0.0) throw InvalidArgument("degenerate bounding box");
  const double sx = span_x > 0.0 ? avail_w / span_x : std::numeric_limits<double>::infinity();
  const double sy = span_y > 0.0 ? avail_h / span_y : std::numeric_limits<double>::infinity();
  const double s = std::min(sx, sy);
  const double off_x = ws.origin.x + margin + (avail_w - s * span_x) / 2.0;
  const double off_y = ws.origin.y + margin + (avail_h - s * span_y) / 2.0;

  PhysicalPath path;
  path.waypoints.reserve(curve.size() + 1);
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const Pixel& p = curve.vertex(i);
    path.waypoints.push_back({off_x + s * (p.x - min_x), off_y + s * (max_y - p.y)});
  }
  path.waypoints.push_back(path.waypoints.front());
  for (std::size_t i = 0; i + 1 < path.waypoints.size(); ++i)
    path.stroke_length = std::max(path.stroke_length, distance(path.waypoints[i], path.waypoints[i + 1]));
  return path;
}

// Rest-to-rest velocity profile for one straight move.
struct TrapezoidalProfile {
  double distance = 0.0;
  double v_max = 0.0;
  double a_max = 0.0;
  double t_accel = 0.0;  // also the deceleration time
  double t_cruise = 0.0;
  double t_total = 0.0;
  double peak_v = 0.0;

  double velocity_at(double t) const {
    if (t <= 0.0 || t >= t_total) return 0.0;
    if (t < t_accel) return a_max * t;
    if (t <= t_accel + t_cruise) return peak_v;
    return a_max * (t_total - t);
  }

  // Closed-form position along the move.
  double position_at(double t) const {
    if (t <= 0.0) return 0.0;
    if (t >= t_total) return distance;
    const double ramp = 0.5 * a_max * t_accel * t_accel;
    if (t < t_accel) return 0.5 * a_max * t * t;
    if (t <= t_accel + t_cruise) return ramp + peak_v * (t - t_accel);
    const double rem = t_total - t;
    return distance - 0.5 * a_max * rem * rem;
  }
};

inline TrapezoidalProfile plan_trapezoid(double distance, double v_max, double a_max) {
  if (!(v_max > 0.0)) throw InvalidArgument("v_max must be positive");
  if (!(a_max > 0.0)) throw InvalidArgument("a_max must be positive");
  if (!(distance >= 0.0)) throw InvalidArgument("distance must be non-negative");
  TrapezoidalProfile p;
  p.distance = distance;
  p.v_max = v_max;
  p.a_max = a_max;
  if (distance == 0.0) return p;
  const double ramp_distance = v_max * v_max / a_max;  // accel + decel
  if (distance >= ramp_distance) {
    p.peak_v = v_max;
    p.t_accel = v_max / a_max;
    p.t_cruise = (distance - ramp_distance) / v_max;
    p.t_total = distance / v_max + v_max / a_max;
  } else {
    // Triangular: never reaches v_max.
    p.peak_v = std::sqrt(distance * a_max);
    p.t_accel = p.peak_v / a_max;
    p.t_cruise = 0.0;
    p.t_total = 2.0 * std::sqrt(distance / a_max);
  }
  return p;
}

struct Trajectory {
  std::vector<Point2> waypoints;
  std::vector<TrapezoidalProfile> segments;  // segments[i] joins waypoints i and i+1
  std::vector<double> blend_radii;           // per waypoint, zero at start and end
  double v_max = 0.0;
  double a_max = 0.0;
  double total_time = 0.0;  // sum of segment times; blending would only shorten it
};

inline Trajectory plan_trajectory(const PhysicalPath& path, double v_max, double a_max,
                                  double blend_radius) {
  if (path.waypoints.size() < 2) throw InvalidArgument("path needs at least two waypoints");
  if (!(blend_radius >= 0.0)) throw InvalidArgument("blend radius must be non-negative");
  Trajectory traj;
  traj.waypoints = path.waypoints;
  traj.v_max = v_max;
  traj.a_max = a_max;
  const std::size_t m = path.waypoints.size();
  std::vector<double> lengths(m - 1);
  for (std::size_t i = 0; i + 1 < m; ++i) {
    lengths[i] = distance(path.waypoints[i], path.waypoints[i + 1]);
    traj.segments.push_back(plan_trapezoid(lengths[i], v_max, a_max));
    traj.total_time += traj.segments.back().t_total;
  }
  traj.blend_radii.assign(m, 0.0);
  for (std::size_t i = 1; i + 1 < m; ++i)
    traj.blend_radii[i] = std::min(blend_radius, 0.5 * std::min(lengths[i - 1], lengths[i]));
  return traj;
}

enum class TimeFamily { decagon, random, straight };

inline TimeFamily parse_time_family(std::string_view s) {
  if (s == "decagon") return TimeFamily::decagon;
  if (s == "random") return TimeFamily::random;
  if (s == "straight") return TimeFamily::straight;
  throw InvalidArgument("unknown time model family: " + std::string(s));
}

// Fitted draw-time models, minutes. power(x) = b * x^a + c with x the stroke
// length in mm (10 points); linear(n) = m * n + c at a 10 mm stroke.
struct TimeModel {
  TimeFamily family = TimeFamily::decagon;
  double a = 0.715;
  double b = 0.654;
  double c = 0.396;
  double linear_m = 0.00243;
  double linear_c = 3.875;

  static TimeModel preset(TimeFamily family) {
    TimeModel m;
    m.family = family;
    switch (family) {
      case TimeFamily::decagon:
        m.a = 0.715, m.b = 0.654, m.c = 0.396;
        break;
      case TimeFamily::random:
        m.a = 0.626, m.b = 1.36, m.c = -0.044;
        break;
      case TimeFamily::straight:
        m.a = 0.643, m.b = 0.945, m.c = 0.195;
        break;
    }
    return m;
  }

  double power(double stroke_mm) const { return b * std::pow(stroke_mm, a) + c; }
  double linear(double n_points) const { return linear_m * n_points + linear_c; }
};

struct TimeEstimate {
  double by_points_min = 0.0;  // linear point-count model
  double by_stroke_min = 0.0;  // power-law stroke-length model
};

inline TimeEstimate estimate_time(std::size_t n_points, double stroke_mm, const TimeModel& model) {
  if (n_points < 3) throw InvalidArgument("n_points must be >= 3");
  if (!(stroke_mm > 0.0)) throw InvalidArgument("stroke length must be positive");
  return {model.linear(static_cast<double>(n_points)), model.power(stroke_mm)};
}

}  // namespace chitrakar
