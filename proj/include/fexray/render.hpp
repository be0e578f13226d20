#pragma once

#include "fexray/attenuation.hpp"
#include "fexray/detector.hpp"
#include "fexray/locate.hpp"
#include "fexray/mesh.hpp"
#include "fexray/obb_tree.hpp"
#include "fexray/raycast.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace fexray {

struct IntegrationSettings {
  double step = 0.01;  ///< sample spacing along the ray (cm)
  int max_leaf_elements = ObbTree::kDefaultMaxLeafElements;
  NewtonSettings newton;
  double geom_tol = kDefaultGeomTol;

  void validate() const;
};

struct RenderStats {
  std::uint64_t rays = 0;
  std::uint64_t rays_hit = 0;           ///< rays with at least one sample inside
  std::uint64_t samples = 0;            ///< sample points evaluated
  std::uint64_t samples_inside = 0;
  std::uint64_t newton_solves = 0;
  std::uint64_t newton_iterations = 0;
  std::uint64_t non_converged = 0;
  double wall_seconds = 0.0;
  int threads = 1;

  void merge(const RenderStats& other);
};

struct RayIntegral {
  double density = 0.0;      ///< sum_j step * rho_j (g/cm^2)
  double mu_integral = 0.0;  ///< sum_j step * mu(rho_j), per-sample models only
};

struct ProjectionImage {
  Detector detector;
  std::vector<double> density;    ///< row-major, detector.nu per row
  std::vector<double> intensity;  ///< empty unless rendered with an attenuation model
  RenderStats stats;

  int nu() const noexcept { return detector.nu; }
  int nv() const noexcept { return detector.nv; }
  double pitch() const noexcept { return detector.pitch; }
  double at(int i, int j) const { return density[static_cast<std::size_t>(j) * detector.nu + i]; }
};

enum class CandidateMode {
  tree,         ///< elements of the OBB-tree leaves hit by the ray
  brute_force,  ///< every element of the mesh
};

/// Projects a nodal field along detector rays. Sample points sit on the grid
/// t_j = (j + 1/2) step measured from the ray origin, restricted to the ray's
/// intervals through the hit leaf boxes. Each sample is looked up in the
/// candidate elements ordered by their linear-guess entry parameter (ties by
/// element id); samples outside every element contribute 0.
///
/// Holds references to mesh and field; both must outlive the renderer.
class Renderer {
 public:
  /// Validates all inputs and builds the tree. Throws ValidationError.
  Renderer(const Mesh& mesh, const NodalField& field, IntegrationSettings settings,
           AttenuationModel model = {}, CandidateMode mode = CandidateMode::tree);

  RayIntegral integrate_ray(const Ray& ray, RenderStats* stats = nullptr) const;

  /// Single-threaded reference.
  ProjectionImage render_serial(const Detector& detector) const;
  /// OpenMP over detector rows; threads <= 0 uses the runtime default.
  /// Bitwise equal to render_serial for any thread count.
  ProjectionImage render(const Detector& detector, int threads = 0) const;

  const ObbTree& tree() const noexcept { return tree_; }
  const IntegrationSettings& settings() const noexcept { return settings_; }
  const AttenuationModel& model() const noexcept { return model_; }
  CandidateMode mode() const noexcept { return mode_; }

 private:
  struct Candidate {
    double entry;
    ElementId element;
    double t_lo;
    double t_hi;
  };

  void gather(const Ray& ray, std::vector<HitInterval>& ranges, std::vector<Candidate>& cands) const;
  void render_row(const Detector& detector, int j, ProjectionImage& img, RenderStats& stats) const;

  const Mesh& mesh_;
  const NodalField& field_;
  IntegrationSettings settings_;
  AttenuationModel model_;
  CandidateMode mode_;
  ObbTree tree_;
  std::vector<Aabb> element_boxes_;
  std::vector<ElementGeometry> geometry_;
  Aabb model_box_;
};

/// Sum of pixel values times pitch^2 (g).
double image_mass(const ProjectionImage& img);

/// Per-pixel oracle values, row-major on the image grid.
std::vector<double> oracle_image(const Detector& detector,
                                 const std::function<double(const Vec3& center, const Vec3& dir)>& oracle);

/// |img - oracle| per pixel. Throws ValidationError on a size mismatch.
ProjectionImage error_map(const ProjectionImage& img, const std::vector<double>& oracle);

}  // namespace fexray
