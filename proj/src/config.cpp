#include "fexray/config.hpp"

#include "fexray/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <vector>

namespace fexray {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::vector<std::string_view> words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    const std::size_t b = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > b) out.push_back(s.substr(b, i - b));
  }
  return out;
}

double to_double(std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ValidationError("expected a number, got '" + std::string(s) + "'");
  }
  return v;
}

int to_int(std::string_view s) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ValidationError("expected an integer, got '" + std::string(s) + "'");
  }
  return v;
}

std::pair<double, double> to_double_pair(std::string_view s) {
  const auto w = words(s);
  if (w.size() != 2) throw ValidationError("expected two numbers");
  return {to_double(w[0]), to_double(w[1])};
}

std::string fmt(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void require(bool ok, const char* what) {
  if (!ok) throw ValidationError(what);
}

using Setter = std::function<void(RenderConfig&, std::string_view)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"mesh", [](RenderConfig& c, std::string_view v) { require(!v.empty(), "path is empty"); c.mesh = v; }},
      {"field", [](RenderConfig& c, std::string_view v) { require(!v.empty(), "path is empty"); c.field = v; }},
      {"face",
       [](RenderConfig& c, std::string_view v) {
         if (v == "auto") {
           c.face.reset();
           return;
         }
         c.face = parse_face(v);
         require(c.face.has_value(), "expected auto, +x, -x, +y, -y, +z or -z");
       }},
      {"rays_per_cm2",
       [](RenderConfig& c, std::string_view v) {
         c.rays_per_cm2 = to_double(v);
         require(*c.rays_per_cm2 > 0.0, "must be positive");
       }},
      {"pitch",
       [](RenderConfig& c, std::string_view v) {
         c.pitch = to_double(v);
         require(*c.pitch > 0.0, "must be positive");
       }},
      {"grid",
       [](RenderConfig& c, std::string_view v) {
         const auto w = words(v);
         require(w.size() == 2, "expected two integers");
         c.grid = std::pair{to_int(w[0]), to_int(w[1])};
         require(c.grid->first >= 1 && c.grid->second >= 1, "must be at least 1 1");
       }},
      {"step",
       [](RenderConfig& c, std::string_view v) {
         c.integration.step = to_double(v);
         require(c.integration.step > 0.0, "must be positive");
       }},
      {"max_leaf_elements",
       [](RenderConfig& c, std::string_view v) {
         c.integration.max_leaf_elements = to_int(v);
         require(c.integration.max_leaf_elements >= 1, "must be at least 1");
       }},
      {"eps_tol",
       [](RenderConfig& c, std::string_view v) {
         c.integration.newton.eps_tol = to_double(v);
         require(c.integration.newton.eps_tol > 0.0, "must be positive");
       }},
      {"max_iter",
       [](RenderConfig& c, std::string_view v) {
         c.integration.newton.max_iter = to_int(v);
         require(c.integration.newton.max_iter >= 1, "must be at least 1");
       }},
      {"geom_tol",
       [](RenderConfig& c, std::string_view v) {
         c.integration.geom_tol = to_double(v);
         require(c.integration.geom_tol >= 0.0, "must be non-negative");
       }},
      {"attenuation",
       [](RenderConfig& c, std::string_view v) {
         if (v == "identity") c.attenuation.kind = AttenuationKind::identity;
         else if (v == "linear") c.attenuation.kind = AttenuationKind::linear;
         else if (v == "lookup") c.attenuation.kind = AttenuationKind::lookup;
         else throw ValidationError("expected identity, linear or lookup");
       }},
      {"kappa",
       [](RenderConfig& c, std::string_view v) {
         c.attenuation.kappa = to_double(v);
         require(c.attenuation.kappa >= 0.0, "must be non-negative");
       }},
      {"table",
       [](RenderConfig& c, std::string_view v) {
         c.attenuation.table.clear();
         for (std::string_view entry : split(v, ',')) {
           const auto parts = split(entry, ':');
           require(parts.size() == 2, "expected rho:mu pairs separated by commas");
           c.attenuation.table.emplace_back(to_double(parts[0]), to_double(parts[1]));
         }
       }},
      {"intensity_in",
       [](RenderConfig& c, std::string_view v) {
         c.attenuation.intensity_in = to_double(v);
         require(c.attenuation.intensity_in > 0.0, "must be positive");
       }},
      {"threads",
       [](RenderConfig& c, std::string_view v) {
         c.threads = to_int(v);
         require(c.threads >= 0, "must be non-negative");
       }},
      {"output_grid", [](RenderConfig& c, std::string_view v) { c.output_grid = v; }},
      {"output_intensity", [](RenderConfig& c, std::string_view v) { c.output_intensity = v; }},
      {"output_pgm", [](RenderConfig& c, std::string_view v) { c.output_pgm = v; }},
      {"pgm_bits",
       [](RenderConfig& c, std::string_view v) {
         c.pgm_bits = to_int(v);
         require(c.pgm_bits == 8 || c.pgm_bits == 16, "must be 8 or 16");
       }},
      {"window",
       [](RenderConfig& c, std::string_view v) {
         if (v == "auto") {
           c.window.reset();
           return;
         }
         c.window = to_double_pair(v);
         require(c.window->first < c.window->second, "min must be below max");
       }},
      {"output_error", [](RenderConfig& c, std::string_view v) { c.output_error = v; }},
      {"output_stats", [](RenderConfig& c, std::string_view v) { c.output_stats = v; }},
      {"oracle",
       [](RenderConfig& c, std::string_view v) {
         if (v == "none") c.oracle = OracleKind::none;
         else if (v == "ball") c.oracle = OracleKind::ball;
         else if (v == "cylinder") c.oracle = OracleKind::cylinder;
         else throw ValidationError("expected none, ball or cylinder");
       }},
      {"ball_radius",
       [](RenderConfig& c, std::string_view v) {
         c.ball.radius = to_double(v);
         require(c.ball.radius > 0.0, "must be positive");
       }},
      {"ball_density", [](RenderConfig& c, std::string_view v) { c.ball.density = to_double(v); }},
      {"cylinder_radius",
       [](RenderConfig& c, std::string_view v) {
         c.cylinder.radius = to_double(v);
         require(c.cylinder.radius > 0.0, "must be positive");
       }},
      {"cylinder_height",
       [](RenderConfig& c, std::string_view v) {
         c.cylinder.height = to_double(v);
         require(c.cylinder.height > 0.0, "must be positive");
       }},
  };
  return table;
}

// Checks that involve more than one key.
void cross_check(const RenderConfig& c, std::vector<std::string>& problems) {
  if (c.mesh.empty()) problems.emplace_back("mesh: required");
  if (c.field.empty()) problems.emplace_back("field: required");
  if (c.rays_per_cm2 && c.pitch) problems.emplace_back("rays_per_cm2, pitch: give only one");
  if (!c.rays_per_cm2 && !c.pitch) problems.emplace_back("rays_per_cm2: required (or pitch)");
  try {
    c.attenuation.validate();
  } catch (const ValidationError& e) {
    problems.emplace_back(std::string("attenuation: ") + e.what());
  }
  if (!c.output_error.empty() && c.oracle == OracleKind::none) {
    problems.emplace_back("output_error: requires an oracle");
  }
}

std::string oracle_name(OracleKind k) {
  switch (k) {
    case OracleKind::ball: return "ball";
    case OracleKind::cylinder: return "cylinder";
    case OracleKind::none: break;
  }
  return "none";
}

std::string attenuation_name(AttenuationKind k) {
  switch (k) {
    case AttenuationKind::linear: return "linear";
    case AttenuationKind::lookup: return "lookup";
    case AttenuationKind::identity: break;
  }
  return "identity";
}

}  // namespace

RenderConfig parse_config(std::string_view text, const std::string& source) {
  RenderConfig config;
  std::vector<std::string> problems;
  std::map<std::string, int, std::less<>> seen;
  int line_no = 0;
  for (std::string_view raw : split(text, '\n')) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string_view line = trim(raw.substr(0, hash));
    if (line.empty()) continue;
    const std::string where = source + ":" + std::to_string(line_no) + ": ";
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      problems.push_back(where + "expected 'key = value'");
      continue;
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) {
      problems.push_back(where + std::string(key) + ": unknown key");
      continue;
    }
    if (const auto [pos, fresh] = seen.emplace(std::string(key), line_no); !fresh) {
      problems.push_back(where + std::string(key) + ": repeated (first on line " +
                         std::to_string(pos->second) + ")");
      continue;
    }
    try {
      it->second(config, value);
    } catch (const ValidationError& e) {
      problems.push_back(where + std::string(key) + ": " + e.what());
    }
  }
  cross_check(config, problems);
  if (!problems.empty()) {
    std::string msg = "invalid configuration";
    for (const auto& p : problems) msg += "\n  " + p;
    throw ValidationError(msg);
  }
  return config;
}

RenderConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path);
}

std::string serialize_config(const RenderConfig& c) {
  std::ostringstream out;
  const auto kv = [&](const char* key, const std::string& value) {
    if (!value.empty()) out << key << " = " << value << '\n';
  };
  kv("mesh", c.mesh);
  kv("field", c.field);
  kv("face", c.face ? std::string(face_name(*c.face)) : "auto");
  if (c.rays_per_cm2) kv("rays_per_cm2", fmt(*c.rays_per_cm2));
  if (c.pitch) kv("pitch", fmt(*c.pitch));
  if (c.grid) kv("grid", std::to_string(c.grid->first) + " " + std::to_string(c.grid->second));
  kv("step", fmt(c.integration.step));
  kv("max_leaf_elements", std::to_string(c.integration.max_leaf_elements));
  kv("eps_tol", fmt(c.integration.newton.eps_tol));
  kv("max_iter", std::to_string(c.integration.newton.max_iter));
  kv("geom_tol", fmt(c.integration.geom_tol));
  kv("attenuation", attenuation_name(c.attenuation.kind));
  kv("kappa", fmt(c.attenuation.kappa));
  std::string table;
  for (const auto& [rho, mu] : c.attenuation.table) {
    if (!table.empty()) table += ", ";
    table += fmt(rho) + ":" + fmt(mu);
  }
  kv("table", table);
  kv("intensity_in", fmt(c.attenuation.intensity_in));
  kv("threads", std::to_string(c.threads));
  kv("output_grid", c.output_grid);
  kv("output_intensity", c.output_intensity);
  kv("output_pgm", c.output_pgm);
  kv("pgm_bits", std::to_string(c.pgm_bits));
  kv("window", c.window ? fmt(c.window->first) + " " + fmt(c.window->second) : "auto");
  kv("output_error", c.output_error);
  kv("output_stats", c.output_stats);
  kv("oracle", oracle_name(c.oracle));
  kv("ball_radius", fmt(c.ball.radius));
  kv("ball_density", fmt(c.ball.density));
  kv("cylinder_radius", fmt(c.cylinder.radius));
  kv("cylinder_height", fmt(c.cylinder.height));
  return out.str();
}

}  // namespace fexray
