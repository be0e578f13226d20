#include "fexray/render.hpp"

#include "fexray/error.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

namespace fexray {

void IntegrationSettings::validate() const {
  if (!(step > 0.0) || !std::isfinite(step)) throw ValidationError("step must be positive");
  if (max_leaf_elements < 1) throw ValidationError("max_leaf_elements must be at least 1");
  if (!(geom_tol >= 0.0) || !std::isfinite(geom_tol)) {
    throw ValidationError("geom_tol must be non-negative");
  }
  newton.validate();
}

void RenderStats::merge(const RenderStats& other) {
  rays += other.rays;
  rays_hit += other.rays_hit;
  samples += other.samples;
  samples_inside += other.samples_inside;
  newton_solves += other.newton_solves;
  newton_iterations += other.newton_iterations;
  non_converged += other.non_converged;
}

Renderer::Renderer(const Mesh& mesh, const NodalField& field, IntegrationSettings settings,
                   AttenuationModel model, CandidateMode mode)
    : mesh_(mesh), field_(field), settings_(settings), model_(std::move(model)), mode_(mode) {
  settings_.validate();
  model_.validate();
  field_.check_matches(mesh_);
  if (mesh_.element_count() == 0) throw ValidationError("mesh has no elements");

  tree_ = build_obb_tree(mesh_, settings_.max_leaf_elements);
  element_boxes_.reserve(mesh_.element_count());
  geometry_.reserve(mesh_.element_count());
  std::vector<Vec3> pts;
  for (ElementId e = 0; e < mesh_.element_count(); ++e) {
    const BoundingPoints b = mesh_.bounding_points(e);
    pts.clear();
    for (Eigen::Index k = 0; k < b.cols(); ++k) pts.push_back(b.col(k));
    element_boxes_.push_back(fit_obb(pts, Basis{}).box);
    model_box_.extend(element_boxes_.back().min);
    model_box_.extend(element_boxes_.back().max);
    geometry_.push_back(mesh_.geometry(e));
  }
}

void Renderer::gather(const Ray& ray, std::vector<HitInterval>& ranges,
                      std::vector<Candidate>& cands) const {
  ranges.clear();
  cands.clear();
  const auto add = [&](ElementId e) {
    const auto hit = ray_aabb(ray, element_boxes_[e]);
    if (!hit) return;
    const auto ids = mesh_.element(e);
    const std::array<Vec3, 4> corners{mesh_.node(ids[0]), mesh_.node(ids[1]), mesh_.node(ids[2]),
                                      mesh_.node(ids[3])};
    const auto entry = ray_tet_entry(ray, corners);
    cands.push_back({entry.value_or(std::numeric_limits<double>::infinity()), e, hit->t_enter,
                     hit->t_exit});
  };

  if (mode_ == CandidateMode::tree) {
    for (const LeafHit& leaf : traverse(tree_, ray)) {
      ranges.push_back(leaf.interval);
      for (ElementId e : tree_.elements(tree_.nodes()[leaf.node])) add(e);
    }
  } else {
    if (const auto hit = ray_aabb(ray, model_box_)) ranges.push_back(*hit);
    for (ElementId e = 0; e < mesh_.element_count(); ++e) add(e);
  }

  // traverse() already orders by t_enter; merge overlapping intervals.
  std::size_t out = 0;
  for (std::size_t k = 0; k < ranges.size(); ++k) {
    if (out > 0 && ranges[k].t_enter <= ranges[out - 1].t_exit) {
      ranges[out - 1].t_exit = std::max(ranges[out - 1].t_exit, ranges[k].t_exit);
    } else {
      ranges[out++] = ranges[k];
    }
  }
  ranges.resize(out);

  std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    if (a.entry != b.entry) return a.entry < b.entry;
    return a.element < b.element;
  });
}

RayIntegral Renderer::integrate_ray(const Ray& ray, RenderStats* stats) const {
  thread_local std::vector<HitInterval> ranges;
  thread_local std::vector<Candidate> cands;
  gather(ray, ranges, cands);

  RenderStats local;
  local.rays = 1;
  double rho_sum = 0.0;
  double mu_sum = 0.0;
  const double step = settings_.step;
  std::int64_t next_j = 0;

  for (const HitInterval& range : ranges) {
    if (range.t_exit < 0.0) continue;
    const double lo = std::max(range.t_enter, 0.0);
    auto j = std::max(next_j, static_cast<std::int64_t>(std::ceil(lo / step - 0.5)) - 1);
    const auto j_end = static_cast<std::int64_t>(std::floor(range.t_exit / step - 0.5)) + 1;
    for (; j <= j_end; ++j) {
      const double t = (static_cast<double>(j) + 0.5) * step;
      if (t < lo || t > range.t_exit) continue;
      next_j = j + 1;
      const Vec3 p = ray.at(t);
      ++local.samples;
      for (const Candidate& c : cands) {
        if (t < c.t_lo || t > c.t_hi) continue;
        const NewtonResult r = solve_local(geometry_[c.element], p, settings_.newton);
        ++local.newton_solves;
        local.newton_iterations += static_cast<std::uint64_t>(r.iterations);
        if (!r.converged()) {
          ++local.non_converged;
          continue;
        }
        if (!in_hull(r.xi, settings_.geom_tol)) continue;
        const auto ids = mesh_.element(c.element);
        const ShapeVector n = shape_values(r.xi, mesh_.order());
        double rho = 0.0;
        for (std::size_t k = 0; k < ids.size(); ++k) rho += n[static_cast<Eigen::Index>(k)] * field_[ids[k]];
        rho_sum += rho;
        if (model_.per_sample()) mu_sum += model_.mu(rho);
        ++local.samples_inside;
        break;
      }
    }
  }
  if (local.samples_inside > 0) local.rays_hit = 1;
  if (stats) stats->merge(local);
  return {rho_sum * step, mu_sum * step};
}

void Renderer::render_row(const Detector& detector, int j, ProjectionImage& img,
                          RenderStats& stats) const {
  for (int i = 0; i < detector.nu; ++i) {
    const RayIntegral r = integrate_ray(detector.ray(i, j), &stats);
    const std::size_t idx = static_cast<std::size_t>(j) * detector.nu + i;
    img.density[idx] = r.density;
    img.intensity[idx] = attenuate(model_.mu_integral(r.density, r.mu_integral), model_);
  }
}

namespace {

ProjectionImage blank_image(const Detector& detector) {
  if (detector.nu < 1 || detector.nv < 1) throw ValidationError("detector grid is empty");
  ProjectionImage img;
  img.detector = detector;
  img.density.assign(detector.pixel_count(), 0.0);
  img.intensity.assign(detector.pixel_count(), 0.0);
  return img;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

ProjectionImage Renderer::render_serial(const Detector& detector) const {
  const auto start = std::chrono::steady_clock::now();
  ProjectionImage img = blank_image(detector);
  for (int j = 0; j < detector.nv; ++j) render_row(detector, j, img, img.stats);
  img.stats.threads = 1;
  img.stats.wall_seconds = seconds_since(start);
  return img;
}

ProjectionImage Renderer::render(const Detector& detector, int threads) const {
  const auto start = std::chrono::steady_clock::now();
  ProjectionImage img = blank_image(detector);
  const int nthreads = threads > 0 ? threads : omp_get_max_threads();
  RenderStats total;
  int used = 1;

#pragma omp parallel num_threads(nthreads)
  {
    RenderStats local;
#pragma omp for schedule(dynamic)
    for (int j = 0; j < detector.nv; ++j) render_row(detector, j, img, local);
#pragma omp critical
    total.merge(local);
#pragma omp single
    used = omp_get_num_threads();
  }

  img.stats = total;
  img.stats.threads = used;
  img.stats.wall_seconds = seconds_since(start);
  return img;
}

double image_mass(const ProjectionImage& img) {
  double sum = 0.0;
  for (double v : img.density) sum += v;
  return sum * img.pitch() * img.pitch();
}

std::vector<double> oracle_image(const Detector& detector,
                                 const std::function<double(const Vec3&, const Vec3&)>& oracle) {
  std::vector<double> out(detector.pixel_count());
  for (int j = 0; j < detector.nv; ++j) {
    for (int i = 0; i < detector.nu; ++i) {
      out[static_cast<std::size_t>(j) * detector.nu + i] = oracle(detector.pixel_center(i, j), detector.dir);
    }
  }
  return out;
}

ProjectionImage error_map(const ProjectionImage& img, const std::vector<double>& oracle) {
  if (oracle.size() != img.density.size()) {
    throw ValidationError("oracle has " + std::to_string(oracle.size()) + " pixels, image has " +
                          std::to_string(img.density.size()));
  }
  ProjectionImage err;
  err.detector = img.detector;
  err.density.resize(img.density.size());
  for (std::size_t k = 0; k < oracle.size(); ++k) err.density[k] = std::abs(img.density[k] - oracle[k]);
  return err;
}

}  // namespace fexray
