#include "fexray/cli.hpp"

#include "fexray/config.hpp"
#include "fexray/error.hpp"
#include "fexray/image_io.hpp"
#include "fexray/mesh_io.hpp"
#include "fexray/phantoms.hpp"
#include "fexray/render.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>

namespace fexray {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path resolve(const fs::path& base, const std::string& p) {
  const fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

struct ErrorSummary {
  double max = 0.0;
  double mean = 0.0;
  int i = 0;
  int j = 0;
};

ErrorSummary summarize(const ProjectionImage& err) {
  ErrorSummary s;
  s.max = -1.0;
  double sum = 0.0;
  for (int j = 0; j < err.nv(); ++j) {
    for (int i = 0; i < err.nu(); ++i) {
      const double e = err.at(i, j);
      sum += e;
      if (e > s.max) s = {e, 0.0, i, j};
    }
  }
  s.mean = sum / static_cast<double>(err.density.size());
  return s;
}

std::vector<double> oracle_values(const Detector& d, OracleKind kind, const BallSpec& ball,
                                  const CylinderSpec& cyl) {
  if (kind == OracleKind::ball) {
    return oracle_image(d, [&](const Vec3& c, const Vec3& dir) { return ball_projection_oracle(c, dir, ball); });
  }
  if (kind == OracleKind::cylinder) {
    if (std::abs(std::abs(d.dir.z()) - 1.0) > 1e-12) {
      throw ValidationError("cylinder oracle needs rays along the z axis");
    }
    return oracle_image(d, [&](const Vec3& c, const Vec3&) { return cylinder_projection_oracle(c, cyl); });
  }
  throw ValidationError("no oracle selected");
}

json error_json(const ProjectionImage& err, OracleKind kind, const BallSpec& ball) {
  const ErrorSummary s = summarize(err);
  json j{{"max_error", s.max}, {"mean_error", s.mean}, {"max_error_pixel", {s.i, s.j}}};
  if (kind == OracleKind::ball) {
    const Vec3 c = err.detector.pixel_center(s.i, s.j);
    const Vec3 d = err.detector.dir.normalized();
    const double rho = (c - c.dot(d) * d).norm();
    j["max_error_silhouette_distance_px"] = std::abs(rho - ball.radius) / err.pitch();
  }
  return j;
}

json stats_json(const ProjectionImage& img, Face face) {
  const RenderStats& s = img.stats;
  const double max_density = img.density.empty() ? 0.0 : *std::max_element(img.density.begin(), img.density.end());
  return json{{"rays", s.rays},
              {"rays_hit", s.rays_hit},
              {"samples", s.samples},
              {"samples_inside", s.samples_inside},
              {"newton_solves", s.newton_solves},
              {"newton_iterations", s.newton_iterations},
              {"non_converged", s.non_converged},
              {"wall_seconds", s.wall_seconds},
              {"threads", s.threads},
              {"nu", img.nu()},
              {"nv", img.nv()},
              {"pitch", img.pitch()},
              {"face", std::string(face_name(face))},
              {"mass", image_mass(img)},
              {"max_density", max_density}};
}

int cmd_render(const std::string& config_path, int threads_override, bool serial, bool brute,
               std::ostream& out) {
  const RenderConfig cfg = parse_config_file(config_path);
  const fs::path base = fs::path(config_path).parent_path();

  const Mesh mesh = read_mesh_file(resolve(base, cfg.mesh));
  const NodalField field = read_field_file(resolve(base, cfg.field));
  const Renderer renderer(mesh, field, cfg.integration, cfg.attenuation,
                          brute ? CandidateMode::brute_force : CandidateMode::tree);

  const Aabb box = model_box(mesh);
  const Face face = cfg.face.value_or(default_face(box));
  const double pitch = cfg.pitch ? *cfg.pitch : 1.0 / std::sqrt(*cfg.rays_per_cm2);
  const Detector det = make_detector_pitch(box, face, pitch, cfg.grid);

  const int threads = threads_override >= 0 ? threads_override : cfg.threads;
  const ProjectionImage img = serial ? renderer.render_serial(det) : renderer.render(det, threads);

  if (!cfg.output_grid.empty()) write_float_grid_file(resolve(base, cfg.output_grid), {det, img.density});
  if (!cfg.output_intensity.empty()) {
    write_float_grid_file(resolve(base, cfg.output_intensity), {det, img.intensity});
  }
  if (!cfg.output_pgm.empty()) {
    const auto [lo, hi] = cfg.window.value_or(default_window(img.density));
    write_text(resolve(base, cfg.output_pgm), write_graymap(img.density, det.nu, det.nv, cfg.pgm_bits, lo, hi));
  }

  json stats = stats_json(img, face);
  if (cfg.oracle != OracleKind::none) {
    const ProjectionImage err = error_map(img, oracle_values(det, cfg.oracle, cfg.ball, cfg.cylinder));
    stats["error"] = error_json(err, cfg.oracle, cfg.ball);
    if (!cfg.output_error.empty()) write_float_grid_file(resolve(base, cfg.output_error), {det, err.density});
  }
  if (!cfg.output_stats.empty()) write_text(resolve(base, cfg.output_stats), stats.dump(2) + "\n");
  out << stats.dump(2) << '\n';
  return kExitOk;
}

int cmd_error_map(const std::string& grid_path, const std::string& oracle, const BallSpec& ball,
                  const CylinderSpec& cyl, const std::string& output, const std::string& pgm,
                  int bits, std::ostream& out) {
  FloatGrid grid = read_float_grid_file(grid_path);
  ProjectionImage img;
  img.detector = grid.detector;
  img.density = std::move(grid.values);
  const OracleKind kind = oracle == "ball" ? OracleKind::ball : OracleKind::cylinder;
  const ProjectionImage err = error_map(img, oracle_values(img.detector, kind, ball, cyl));
  if (!output.empty()) write_float_grid_file(output, {err.detector, err.density});
  if (!pgm.empty()) {
    const auto [lo, hi] = default_window(err.density);
    write_text(pgm, write_graymap(err.density, err.nu(), err.nv(), bits, lo, hi));
  }
  out << error_json(err, kind, ball).dump(2) << '\n';
  return kExitOk;
}

int cmd_info(const std::string& mesh_path, const std::string& field_path, int max_leaf,
             const std::string& dump_tree, std::ostream& out) {
  const Mesh mesh = read_mesh_file(mesh_path);
  const Aabb box = model_box(mesh);
  out << "nodes " << mesh.node_count() << '\n'
      << "elements " << mesh.element_count() << '\n'
      << "order " << (mesh.order() == ElementOrder::quadratic ? "quadratic" : "linear") << '\n'
      << "volume " << mesh_volume(mesh) << '\n'
      << "bounds " << box.min.x() << ' ' << box.min.y() << ' ' << box.min.z() << "  " << box.max.x()
      << ' ' << box.max.y() << ' ' << box.max.z() << '\n'
      << "boundary_faces " << boundary_faces(mesh).size() << '\n';
  if (!field_path.empty()) {
    const NodalField field = read_field_file(field_path);
    field.check_matches(mesh);
    out << "field_integral " << field_integral(field, mesh) << '\n';
  }
  if (max_leaf > 0 || !dump_tree.empty()) {
    const ObbTree tree = build_obb_tree(mesh, max_leaf > 0 ? max_leaf : ObbTree::kDefaultMaxLeafElements);
    out << "tree_nodes " << tree.nodes().size() << '\n'
        << "tree_leaves " << tree.leaf_count() << '\n'
        << "tree_depth " << tree.depth() << '\n';
    if (!dump_tree.empty()) write_text(dump_tree, tree.dump_json() + "\n");
  }
  return kExitOk;
}

void write_phantom(const Phantom& ph, const std::string& mesh_path, const std::string& field_path,
                   std::ostream& out) {
  write_mesh_file(mesh_path, ph.mesh);
  write_field_file(field_path, ph.field);
  out << "nodes " << ph.mesh.node_count() << '\n'
      << "elements " << ph.mesh.element_count() << '\n'
      << "volume " << mesh_volume(ph.mesh) << '\n';
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simulated X-ray projections of finite element density fields", "fexray"};
  app.require_subcommand(1);

  std::string config_path;
  int threads = -1;
  bool serial = false;
  bool brute = false;
  auto* render = app.add_subcommand("render", "Render a projection image from a config file");
  render->add_option("config", config_path, "Configuration file")->required();
  render->add_option("--threads", threads, "Worker threads (overrides the config)")->check(CLI::NonNegativeNumber);
  render->add_flag("--serial", serial, "Use the single-threaded reference renderer");
  render->add_flag("--brute-force", brute, "Test every element instead of the OBB tree");

  BallSpec ball;
  CylinderSpec cyl;
  std::string mesh_path, field_path;
  auto* gen_ball = app.add_subcommand("generate-ball", "Write the ball benchmark mesh and field");
  gen_ball->add_option("--radius", ball.radius, "Radius (cm)");
  gen_ball->add_option("--elements", ball.target_elements, "Target element count");
  gen_ball->add_option("--density", ball.density, "Density (g/cm^3)");
  gen_ball->add_option("--mesh", mesh_path, "Output mesh file")->required();
  gen_ball->add_option("--field", field_path, "Output field file")->required();

  auto* gen_cyl = app.add_subcommand("generate-cylinder", "Write the cylinder benchmark mesh and field");
  gen_cyl->add_option("--radius", cyl.radius, "Radius (cm)");
  gen_cyl->add_option("--height", cyl.height, "Height (cm)");
  gen_cyl->add_option("--elements", cyl.target_elements, "Target element count");
  gen_cyl->add_option("--layers", cyl.layers, "Element layers along the axis");
  gen_cyl->add_option("--mesh", mesh_path, "Output mesh file")->required();
  gen_cyl->add_option("--field", field_path, "Output field file")->required();

  std::string grid_path, oracle, output, pgm;
  int bits = 8;
  auto* err_map = app.add_subcommand("error-map", "Compare a float grid with an analytic oracle");
  err_map->add_option("grid", grid_path, "Projected density float grid")->required();
  err_map->add_option("--oracle", oracle, "ball or cylinder")->required()->check(CLI::IsMember({"ball", "cylinder"}));
  err_map->add_option("--radius", ball.radius, "Phantom radius (cm)");
  err_map->add_option("--density", ball.density, "Ball density (g/cm^3)");
  err_map->add_option("--height", cyl.height, "Cylinder height (cm)");
  err_map->add_option("--output", output, "Error float grid");
  err_map->add_option("--pgm", pgm, "Error graymap");
  err_map->add_option("--bits", bits, "Graymap bit depth")->check(CLI::IsMember({8, 16}));

  std::string info_mesh, info_field, dump_tree;
  int max_leaf = 0;
  auto* info = app.add_subcommand("info", "Print mesh statistics");
  info->add_option("mesh", info_mesh, "Mesh file")->required();
  info->add_option("--field", info_field, "Field file");
  info->add_option("--tree", max_leaf, "Also build the OBB tree with this leaf size")->check(CLI::PositiveNumber);
  info->add_option("--dump-tree", dump_tree, "Write the tree as JSON");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "fexray: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*render) return cmd_render(config_path, threads, serial, brute, out);
    if (*gen_ball) {
      write_phantom(generate_ball(ball), mesh_path, field_path, out);
      return kExitOk;
    }
    if (*gen_cyl) {
      write_phantom(generate_cylinder(cyl), mesh_path, field_path, out);
      return kExitOk;
    }
    if (*err_map) {
      cyl.radius = ball.radius;
      return cmd_error_map(grid_path, oracle, ball, cyl, output, pgm, bits, out);
    }
    if (*info) return cmd_info(info_mesh, info_field, max_leaf, dump_tree, out);
  } catch (const ValidationError& e) {
    err << "fexray: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "fexray: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace fexray
