#pragma once

#include <cctype>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "emit.hpp"
#include "error.hpp"
#include "filters.hpp"
#include "motion.hpp"
#include "stipple.hpp"

namespace chitrakar {

// Flat view of a TOML document: "table.key" -> scalar or numeric array.
// Supports the subset the pipeline config needs: [tables], bare keys,
// strings, integers, floats, booleans, arrays of numbers and comments.
class ConfigTree {
 public:
  using Value = std::variant<bool, std::int64_t, double, std::string, std::vector<double>>;

  static ConfigTree parse(std::string_view text) {
    ConfigTree tree;
    std::string table;
    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
      ++line_no;
      std::string_view s = trim(strip_comment(line));
      if (s.empty()) continue;
      auto fail = [&](const std::string& why) {
        throw InvalidArgument("config line " + std::to_string(line_no) + ": " + why);
      };
      if (s.front() == '[') {
        if (s.back() != ']') fail("unterminated table header");
        table = std::string(trim(s.substr(1, s.size() - 2)));
        if (table.empty() || !valid_key(table, true)) fail("bad table name");
        continue;
      }
      const auto eq = s.find('=');
      if (eq == std::string_view::npos) fail("expected key = value");
      const std::string key(trim(s.substr(0, eq)));
      if (!valid_key(key, false)) fail("bad key '" + key + "'");
      const std::string full = table.empty() ? key : table + "." + key;
      if (tree.values_.contains(full)) fail("duplicate key '" + full + "'");
      try {
        tree.values_[full] = parse_value(trim(s.substr(eq + 1)));
      } catch (const InvalidArgument& e) {
        fail(e.what());
      }
    }
    return tree;
  }

  static ConfigTree load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
  }

  bool contains(const std::string& key) const { return values_.contains(key); }

  std::optional<std::string> get_string(const std::string& key) const {
    return get<std::string>(key, "string");
  }
  std::optional<bool> get_bool(const std::string& key) const { return get<bool>(key, "boolean"); }
  std::optional<std::int64_t> get_int(const std::string& key) const {
    return get<std::int64_t>(key, "integer");
  }
  std::optional<double> get_double(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    if (auto* i = std::get_if<std::int64_t>(&it->second)) return static_cast<double>(*i);
    if (auto* d = std::get_if<double>(&it->second)) return *d;
    throw InvalidArgument("config key '" + key + "' must be a number");
  }
  std::optional<std::vector<double>> get_array(const std::string& key) const {
    return get<std::vector<double>>(key, "number array");
  }

  std::vector<std::string> keys() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : values_) out.push_back(k);
    return out;
  }

 private:
  template <typename T>
  std::optional<T> get(const std::string& key, const char* what) const {
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    if (auto* v = std::get_if<T>(&it->second)) return *v;
    throw InvalidArgument("config key '" + key + "' must be a " + what);
  }

  static std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  }

  // Drops a trailing # comment that is not inside a string.
  static std::string_view strip_comment(std::string_view s) {
    char quote = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const char c = s[i];
      if (quote) {
        if (c == '\\' && quote == '"') ++i;
        else if (c == quote) quote = 0;
      } else if (c == '"' || c == '\'') {
        quote = c;
      } else if (c == '#') {
        return s.substr(0, i);
      }
    }
    return s;
  }

  static bool valid_key(std::string_view k, bool dotted) {
    if (k.empty()) return false;
    for (char c : k)
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || (dotted && c == '.')))
        return false;
    return true;
  }

  static Value parse_number(std::string_view s) {
    std::string clean;
    for (char c : s)
      if (c != '_') clean.push_back(c);
    if (!clean.empty() && clean.front() == '+') clean.erase(0, 1);
    const bool is_float = clean.find_first_of(".eE") != std::string::npos || clean == "inf" ||
                          clean == "-inf" || clean == "nan";
    if (is_float) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(clean, &used);
      } catch (...) {
        used = 0;
      }
      if (used == 0 || used != clean.size()) throw InvalidArgument("bad number '" + std::string(s) + "'");
      return v;
    }
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(clean.data(), clean.data() + clean.size(), v);
    if (ec != std::errc{} || ptr != clean.data() + clean.size())
      throw InvalidArgument("bad value '" + std::string(s) + "'");
    return v;
  }

  static Value parse_value(std::string_view s) {
    if (s.empty()) throw InvalidArgument("missing value");
    if (s == "true") return true;
    if (s == "false") return false;
    if (s.front() == '"') {
      std::string out;
      std::size_t i = 1;
      for (; i < s.size() && s[i] != '"'; ++i) {
        if (s[i] == '\\' && i + 1 < s.size()) {
          const char e = s[++i];
          switch (e) {
            case 'n': out.push_back('\n'); break;
            case 't': out.push_back('\t'); break;
            case '"': out.push_back('"'); break;
            case '\\': out.push_back('\\'); break;
            default: throw InvalidArgument(std::string("unsupported escape \\") + e);
          }
        } else {
          out.push_back(s[i]);
        }
      }
      if (i != s.size() - 1) throw InvalidArgument("bad string literal");
      return out;
    }
    if (s.front() == '\'') {
      if (s.size() < 2 || s.back() != '\'') throw InvalidArgument("bad string literal");
      return std::string(s.substr(1, s.size() - 2));
    }
    if (s.front() == '[') {
      if (s.back() != ']') throw InvalidArgument("unterminated array");
      std::vector<double> out;
      std::string_view body = trim(s.substr(1, s.size() - 2));
      while (!body.empty()) {
        const auto comma = body.find(',');
        const std::string_view item = trim(body.substr(0, comma));
        if (!item.empty()) {
          const Value v = parse_number(item);
          out.push_back(std::holds_alternative<double>(v) ? std::get<double>(v)
                                                          : static_cast<double>(std::get<std::int64_t>(v)));
        }
        if (comma == std::string_view::npos) break;
        body = body.substr(comma + 1);
      }
      return out;
    }
    return parse_number(s);
  }

  std::map<std::string, Value> values_;
};

struct MotionConfig {
  Workspace workspace{};
  double margin = 0.02;        // m
  double v_max = 0.1;          // m/s
  double a_max = 0.5;          // m/s^2
  double blend = 0.001;        // m
  double feed_mm_min = 3000.0; // G-code feed
  AxisAngle orientation{0.0, 3.141593, 0.0};
  TimeFamily time_family = TimeFamily::decagon;
};

struct PipelineConfig {
  std::filesystem::path input_path;
  std::optional<std::filesystem::path> mask_path;
  FilterParams filter{};
  EnhanceMode enhance_mode = EnhanceMode::multiply;
  StippleConfig stipple{};
  std::size_t tsp_passes = 50;
  std::size_t n_candidates = 6;
  int grid_scale = 2;
  MotionConfig motion{};
  std::filesystem::path output_dir = "out";
  std::optional<std::filesystem::path> dump_stages;
  std::optional<std::filesystem::path> ui_dir;
  std::string serve_host = "127.0.0.1";
  int serve_port = 8080;
  std::size_t workers = 0;  // 0: hardware concurrency

  void validate() const {
    filter.validate();
    stipple.validate();
    motion.workspace.validate();
    if (n_candidates < 1) throw InvalidArgument("n_candidates must be >= 1");
    if (grid_scale < 1) throw InvalidArgument("grid_scale must be >= 1");
    if (!(motion.v_max > 0.0 && motion.a_max > 0.0)) throw InvalidArgument("vmax and amax must be positive");
    if (!(motion.blend >= 0.0 && motion.margin >= 0.0)) throw InvalidArgument("blend and margin must be >= 0");
    if (!(motion.feed_mm_min > 0.0)) throw InvalidArgument("feed must be positive");
    if (serve_port < 0 || serve_port > 65535) throw InvalidArgument("serve_port out of range");
  }
};

// Parses "WxH" (meters), e.g. "0.5x1.0".
inline std::pair<double, double> parse_workspace_size(const std::string& s) {
  const auto x = s.find_first_of("xX");
  if (x == std::string::npos) throw InvalidArgument("workspace must be WxH, got '" + s + "'");
  try {
    std::size_t u1 = 0, u2 = 0;
    const std::string ws = s.substr(0, x), hs = s.substr(x + 1);
    const double w = std::stod(ws, &u1);
    const double h = std::stod(hs, &u2);
    if (u1 != ws.size() || u2 != hs.size()) throw InvalidArgument("");
    return {w, h};
  } catch (...) {
    throw InvalidArgument("workspace must be WxH, got '" + s + "'");
  }
}

// Builds a PipelineConfig from a config tree; relative paths resolve against
// `base_dir`. Unknown keys are rejected.
inline PipelineConfig config_from_tree(const ConfigTree& t, const std::filesystem::path& base_dir = {}) {
  static const std::set<std::string> known = {
      "input", "mask", "output_dir", "dump_stages", "ui_dir", "candidates", "seed", "workers",
      "serve.host", "serve.port",
      "filter.sigma", "filter.radius", "filter.enhance",
      "stipple.mode", "stipple.points", "stipple.gamma", "stipple.threshold",
      "tour.passes", "uncross.grid_scale",
      "motion.vmax", "motion.amax", "motion.blend", "motion.workspace", "motion.margin",
      "motion.origin", "motion.z_draw", "motion.z_travel", "motion.feed", "motion.orientation",
      "motion.time_model"};
  for (const auto& k : t.keys())
    if (!known.contains(k)) throw InvalidArgument("unknown config key '" + k + "'");

  auto path_of = [&](const std::string& s) {
    std::filesystem::path p(s);
    return p.is_absolute() || base_dir.empty() ? p : base_dir / p;
  };
  auto non_negative = [](std::int64_t v, const char* key) {
    if (v < 0) throw InvalidArgument(std::string(key) + " must be non-negative");
    return static_cast<std::size_t>(v);
  };

  PipelineConfig c;
  if (auto v = t.get_string("input")) c.input_path = path_of(*v);
  if (auto v = t.get_string("mask")) c.mask_path = path_of(*v);
  if (auto v = t.get_string("output_dir")) c.output_dir = path_of(*v);
  if (auto v = t.get_string("dump_stages")) c.dump_stages = path_of(*v);
  if (auto v = t.get_string("ui_dir")) c.ui_dir = path_of(*v);
  if (auto v = t.get_int("candidates")) c.n_candidates = non_negative(*v, "candidates");
  if (auto v = t.get_int("seed")) c.stipple.seed = static_cast<std::uint64_t>(*v);
  if (auto v = t.get_int("workers")) c.workers = non_negative(*v, "workers");
  if (auto v = t.get_string("serve.host")) c.serve_host = *v;
  if (auto v = t.get_int("serve.port")) c.serve_port = static_cast<int>(*v);
  if (auto v = t.get_double("filter.sigma")) c.filter.sigma = *v;
  if (auto v = t.get_int("filter.radius")) c.filter.radius = static_cast<int>(*v);
  if (auto v = t.get_string("filter.enhance")) c.enhance_mode = parse_enhance_mode(*v);
  if (auto v = t.get_string("stipple.mode")) c.stipple.mode = parse_stipple_mode(*v);
  if (auto v = t.get_int("stipple.points")) c.stipple.target_points = non_negative(*v, "stipple.points");
  if (auto v = t.get_double("stipple.gamma")) c.stipple.gamma = *v;
  if (auto v = t.get_double("stipple.threshold")) c.stipple.threshold = *v;
  if (auto v = t.get_int("tour.passes")) c.tsp_passes = non_negative(*v, "tour.passes");
  if (auto v = t.get_int("uncross.grid_scale")) c.grid_scale = static_cast<int>(*v);
  if (auto v = t.get_double("motion.vmax")) c.motion.v_max = *v;
  if (auto v = t.get_double("motion.amax")) c.motion.a_max = *v;
  if (auto v = t.get_double("motion.blend")) c.motion.blend = *v;
  if (auto v = t.get_double("motion.margin")) c.motion.margin = *v;
  if (auto v = t.get_double("motion.z_draw")) c.motion.workspace.z_draw = *v;
  if (auto v = t.get_double("motion.z_travel")) c.motion.workspace.z_travel = *v;
  if (auto v = t.get_double("motion.feed")) c.motion.feed_mm_min = *v;
  if (auto v = t.get_string("motion.workspace")) {
    const auto [w, h] = parse_workspace_size(*v);
    c.motion.workspace.width = w;
    c.motion.workspace.height = h;
  }
  if (auto v = t.get_array("motion.origin")) {
    if (v->size() != 2) throw InvalidArgument("motion.origin must have 2 entries");
    c.motion.workspace.origin = {(*v)[0], (*v)[1]};
  }
  if (auto v = t.get_array("motion.orientation")) {
    if (v->size() != 3) throw InvalidArgument("motion.orientation must have 3 entries");
    c.motion.orientation = {(*v)[0], (*v)[1], (*v)[2]};
  }
  if (auto v = t.get_string("motion.time_model")) c.motion.time_family = parse_time_family(*v);
  return c;
}

inline PipelineConfig load_config(const std::filesystem::path& path) {
  return config_from_tree(ConfigTree::load(path), path.parent_path());
}

}  // namespace chitrakar
