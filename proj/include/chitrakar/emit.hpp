#pragma once

#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "error.hpp"
#include "motion.hpp"
#include "uncross.hpp"

namespace chitrakar {

namespace detail {

// Fixed-point with `digits` decimals; negative zero prints as zero.
inline std::string fixed(double v, int digits = 6) {
  const double unit = std::pow(10.0, -digits) / 2.0;
  if (std::fabs(v) < unit) v = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace detail

// Single closed path over the curve vertices, in source pixel coordinates.
inline std::string emit_svg(const JordanCurve& curve) {
  const auto& pts = curve.points();
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << pts.width() << ' '
      << pts.height() << "\" width=\"" << pts.width() << "\" height=\"" << pts.height() << "\">\n"
      << "<path fill=\"none\" stroke=\"black\" stroke-width=\"1\" stroke-linejoin=\"round\" d=\"";
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const Pixel& p = curve.vertex(i);
    out << (i == 0 ? "M" : " L") << p.x << ' ' << p.y;
  }
  out << " Z\"/>\n</svg>\n";
  return out.str();
}

// Vertices of the first <path> d attribute (M/L/Z absolute commands with
// integer coordinates, as written by emit_svg).
inline std::vector<Pixel> parse_svg_path(const std::string& svg) {
  const auto start = svg.find(" d=\"");
  if (start == std::string::npos) throw DecodeError("svg: no path data");
  const auto end = svg.find('"', start + 4);
  if (end == std::string::npos) throw DecodeError("svg: unterminated path data");
  std::string d = svg.substr(start + 4, end - start - 4);
  for (char& ch : d)
    if (ch == 'M' || ch == 'L' || ch == ',') ch = ' ';
  const auto z = d.find('Z');
  if (z == std::string::npos) throw DecodeError("svg: path is not closed");
  d.resize(z);
  std::istringstream in(d);
  std::vector<Pixel> out;
  long x = 0, y = 0;
  while (in >> x) {
    if (!(in >> y)) throw DecodeError("svg: odd coordinate count");
    out.push_back({static_cast<std::int32_t>(x), static_cast<std::int32_t>(y)});
  }
  if (!in.eof()) throw DecodeError("svg: unexpected token in path data");
  return out;
}

// G-code in millimetres: travel to start, plunge, one G1 per waypoint, lift, M2.
inline std::string emit_gcode(const PhysicalPath& path, double feed_mm_min,
                              const Workspace& ws = Workspace{}) {
  if (path.waypoints.empty()) throw InvalidArgument("empty path");
  if (!(feed_mm_min > 0.0)) throw InvalidArgument("feed must be positive");
  using detail::fixed;
  auto mm = [](double m) { return fixed(m * 1000.0, 3); };
  std::ostringstream out;
  const Point2 start = path.waypoints.front();
  out << "; chitrakar closed-curve plot\n"
      << "G21\n"
      << "G90\n"
      << "G0 Z" << mm(ws.z_travel) << '\n'
      << "G0 X" << mm(start.x) << " Y" << mm(start.y) << '\n'
      << "G1 Z" << mm(ws.z_draw) << " F" << fixed(feed_mm_min, 1) << '\n';
  for (std::size_t i = 1; i < path.waypoints.size(); ++i)
    out << "G1 X" << mm(path.waypoints[i].x) << " Y" << mm(path.waypoints[i].y) << '\n';
  out << "G0 Z" << mm(ws.z_travel) << '\n' << "M2\n";
  return out.str();
}

inline constexpr std::size_t kGcodeFixedLines = 8;  // preamble + postamble

// Fixed end-effector orientation, axis-angle (rx, ry, rz) in radians.
using AxisAngle = std::array<double, 3>;

// Robot program: hover over the start at z_travel, plunge, one linear move per
// waypoint at z_draw with its blend radius, retract. Meters, 6 decimals, LF.
inline std::string emit_robot_script(const Trajectory& traj, const Workspace& ws,
                                     const AxisAngle& orientation) {
  if (traj.waypoints.empty()) throw InvalidArgument("empty trajectory");
  using detail::fixed;
  const std::string accel = fixed(traj.a_max);
  const std::string vel = fixed(traj.v_max);
  const std::string rot =
      fixed(orientation[0]) + ", " + fixed(orientation[1]) + ", " + fixed(orientation[2]);
  std::ostringstream out;
  auto move = [&](Point2 p, double z, double blend) {
    out << "  movel(p[" << fixed(p.x) << ", " << fixed(p.y) << ", " << fixed(z) << ", " << rot
        << "], a=" << accel << ", v=" << vel << ", r=" << fixed(blend) << ")\n";
  };
  const Point2 start = traj.waypoints.front();
  const Point2 last = traj.waypoints.back();
  out << "def chitrakar_draw():\n";
  move(start, ws.z_travel, 0.0);
  move(start, ws.z_draw, 0.0);
  for (std::size_t i = 1; i < traj.waypoints.size(); ++i)
    move(traj.waypoints[i], ws.z_draw, traj.blend_radii[i]);
  move(last, ws.z_travel, 0.0);
  out << "end\n";
  return out.str();
}

}  // namespace chitrakar
