#pragma once

#include "fexray/attenuation.hpp"
#include "fexray/detector.hpp"
#include "fexray/phantoms.hpp"
#include "fexray/render.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace fexray {

enum class OracleKind { none, ball, cylinder };

struct RenderConfig {
  std::string mesh;
  std::string field;

  std::optional<Face> face;                 ///< default_face() when unset
  std::optional<double> rays_per_cm2;       ///< exactly one of these two
  std::optional<double> pitch;
  std::optional<std::pair<int, int>> grid;  ///< explicit nu x nv

  IntegrationSettings integration;
  AttenuationModel attenuation;
  int threads = 0;  ///< 0: runtime default

  std::string output_grid;       ///< projected density, float grid
  std::string output_intensity;  ///< intensity, float grid
  std::string output_pgm;
  int pgm_bits = 8;
  std::optional<std::pair<double, double>> window;  ///< default [0, max]
  std::string output_error;                         ///< needs an oracle
  std::string output_stats;                         ///< JSON

  OracleKind oracle = OracleKind::none;
  BallSpec ball;
  CylinderSpec cylinder;
};

/// Parses "key = value" lines; '#' starts a comment. Unknown or repeated keys
/// and out-of-range values are collected and reported together in one
/// ValidationError (each entry names the line and key).
RenderConfig parse_config(std::string_view text, const std::string& source = "<config>");
RenderConfig parse_config_file(const std::string& path);

/// Canonical text: every key in a fixed order with defaults filled in.
std::string serialize_config(const RenderConfig& config);

}  // namespace fexray
