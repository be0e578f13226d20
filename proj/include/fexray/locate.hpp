#pragma once

#include "fexray/mesh.hpp"
#include "fexray/types.hpp"

#include <optional>
#include <span>

namespace fexray {

struct NewtonSettings {
  double eps_tol = 1e-10;  ///< relative step tolerance
  int max_iter = 20;
  LocalCoords initial_guess{0.25, 0.25, 0.25};

  /// Throws ValidationError unless eps_tol > 0 and max_iter >= 1.
  void validate() const;
};

inline constexpr double kDefaultGeomTol = 1e-8;

enum class NewtonStatus { converged, max_iterations, singular, diverged };

struct NewtonResult {
  NewtonStatus status;
  LocalCoords xi;
  int iterations;  ///< Newton updates applied

  bool converged() const noexcept { return status == NewtonStatus::converged; }
};

/// Newton-Raphson on f(xi) = sum_i N_i(xi) x_i - x. Stops when
/// |xi(n+1) - xi(n)| / max(|xi(1)|, 1) < eps_tol, or earlier once the
/// residual is at roundoff level (1e-14 * element diameter) after at least
/// one update. Aborts as singular when |det J| < 1e-14 * 6 * corner volume
/// and as diverged when |xi| > 10. If the solve from the initial guess fails
/// or ends on a root where det J has the wrong sign (a spurious root outside
/// a valid element), it is repeated once from the preimage under the corner
/// tetrahedron map with the remaining iteration budget; `iterations` then
/// counts both runs and never exceeds max_iter.
NewtonResult solve_local(const ElementGeometry& element, const Vec3& x, const NewtonSettings& settings);

/// Local coordinates of x in element e, or nothing when Newton fails.
/// The result may still lie outside the reference element; see in_hull().
std::optional<LocalCoords> global_to_local(const Mesh& mesh, ElementId e, const Vec3& x,
                                           const NewtonSettings& settings = {});

/// xi_i >= -tol and xi_1 + xi_2 + xi_3 <= 1 + tol.
bool in_hull(const LocalCoords& xi, double geom_tol = kDefaultGeomTol);

struct Location {
  ElementId element;
  LocalCoords xi;
  int iterations;
};

/// First candidate, in the given order, whose Newton solve converges inside
/// the reference element.
std::optional<Location> locate_point(const Mesh& mesh, std::span<const ElementId> candidates,
                                     const Vec3& x, const NewtonSettings& settings = {},
                                     double geom_tol = kDefaultGeomTol);

}  // namespace fexray
