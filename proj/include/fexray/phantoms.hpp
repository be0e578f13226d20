#pragma once

#include "fexray/mesh.hpp"
#include "fexray/types.hpp"

#include <utility>

namespace fexray {

/// Ball of radius r centered at the origin with constant density.
struct BallSpec {
  double radius = 1.0;
  int target_elements = 50;
  double density = 1.0;

  void validate() const;
};

/// Cylinder along +z from z = 0 to z = height with radial density
/// rho(s) = -4 (s - 0.5)^2 + 2, s = distance from the axis.
struct CylinderSpec {
  double radius = 1.0;
  double height = 0.1;
  int target_elements = 2143;
  int layers = 1;

  void validate() const;
  double density(double s) const { return -4.0 * (s - 0.5) * (s - 0.5) + 2.0; }
};

struct Phantom {
  Mesh mesh;
  NodalField field;
};

/// Cube [-1,1]^3 split into n^3 cells of six Kuhn tetrahedra, with n chosen
/// so 6 n^3 is closest to the target. Corners are pushed onto concentric
/// spheres by p |p|_inf / |p|_2; midnodes of edges on the cube surface are
/// projected onto the sphere, interior midnodes stay straight.
Phantom generate_ball(const BallSpec& spec = {});

/// Polar disk (center node plus N rings of M nodes) extruded into prisms,
/// each split into three tetrahedra. Rim midnodes lie on the cylinder
/// surface. N and M are chosen so 3 layers M (2N - 1) is close to the
/// target with M near 3N.
Phantom generate_cylinder(const CylinderSpec& spec = {});

/// Ring count N and ring size M used by generate_cylinder.
std::pair<int, int> cylinder_resolution(const CylinderSpec& spec);

/// Cells per cube side used by generate_ball.
int ball_resolution(const BallSpec& spec);

/// 2 rho sqrt(r^2 - p^2) for impact parameter p < r, else 0.
double ball_projection_oracle(const Vec3& pixel_center, const Vec3& dir, const BallSpec& spec);

/// height * rho(s) for a ray parallel to the axis at distance s <= r, else 0.
double cylinder_projection_oracle(const Vec3& pixel_center, const CylinderSpec& spec);

}  // namespace fexray
