#include "fexray/locate.hpp"

#include "fexray/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace fexray {

namespace {

constexpr double kSingularTol = 1e-14;
constexpr double kResidualTol = 1e-14;
constexpr double kDivergenceBound = 10.0;

}  // namespace

void NewtonSettings::validate() const {
  if (!(eps_tol > 0.0)) throw ValidationError("eps_tol must be positive");
  if (max_iter < 1) throw ValidationError("max_iter must be at least 1");
  if (!initial_guess.allFinite()) throw ValidationError("initial guess must be finite");
}

namespace {

NewtonResult newton(const ElementGeometry& element, const Vec3& x, const NewtonSettings& settings,
                    const LocalCoords& start) {
  const double det_scale = kSingularTol * 6.0 * std::abs(element.corner_volume());
  const double residual_tol = kResidualTol * element.diameter();
  LocalCoords xi = start;
  double first_norm = 1.0;

  for (int n = 0; n < settings.max_iter; ++n) {
    const Vec3 f = element.map(xi) - x;
    if (n > 0 && f.norm() <= residual_tol) return {NewtonStatus::converged, xi, n};
    const Mat3 jac = element.jacobian(xi);
    const double det = jac.determinant();
    if (!(std::abs(det) >= det_scale)) return {NewtonStatus::singular, xi, n};

    const Vec3 delta = jac.inverse() * f;
    const LocalCoords next = xi - delta;
    if (n == 0) first_norm = std::max(next.norm(), 1.0);
    if (!(next.norm() <= kDivergenceBound)) return {NewtonStatus::diverged, next, n + 1};
    xi = next;
    if (delta.norm() / first_norm < settings.eps_tol) return {NewtonStatus::converged, xi, n + 1};
  }
  return {NewtonStatus::max_iterations, xi, settings.max_iter};
}

// Preimage of x under the map of the corner tetrahedron.
LocalCoords affine_guess(const ElementGeometry& element, const Vec3& x) {
  Mat3 a;
  for (int k = 0; k < 3; ++k) a.col(k) = element.x.col(k + 1) - element.x.col(0);
  return a.inverse() * (x - element.x.col(0));
}

}  // namespace

NewtonResult solve_local(const ElementGeometry& element, const Vec3& x, const NewtonSettings& settings) {
  const NewtonResult first = newton(element, x, settings, settings.initial_guess);
  const double orientation = element.corner_volume();
  if (first.converged() && element.jacobian(first.xi).determinant() * orientation > 0.0) return first;
  if (!(orientation != 0.0) || first.iterations >= settings.max_iter) return first;
  NewtonSettings rest = settings;
  rest.max_iter = settings.max_iter - first.iterations;
  NewtonResult second = newton(element, x, rest, affine_guess(element, x));
  second.iterations += first.iterations;
  if (second.converged() || !first.converged()) return second;
  return first;
}

std::optional<LocalCoords> global_to_local(const Mesh& mesh, ElementId e, const Vec3& x,
                                           const NewtonSettings& settings) {
  const NewtonResult r = solve_local(mesh.geometry(e), x, settings);
  if (!r.converged()) return std::nullopt;
  return r.xi;
}

bool in_hull(const LocalCoords& xi, double geom_tol) {
  return xi[0] >= -geom_tol && xi[1] >= -geom_tol && xi[2] >= -geom_tol &&
         xi[0] + xi[1] + xi[2] <= 1.0 + geom_tol;
}

std::optional<Location> locate_point(const Mesh& mesh, std::span<const ElementId> candidates,
                                     const Vec3& x, const NewtonSettings& settings, double geom_tol) {
  for (ElementId e : candidates) {
    const NewtonResult r = solve_local(mesh.geometry(e), x, settings);
    if (r.converged() && in_hull(r.xi, geom_tol)) return Location{e, r.xi, r.iterations};
  }
  return std::nullopt;
}

}  // namespace fexray
