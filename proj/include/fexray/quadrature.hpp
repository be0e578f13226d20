#pragma once

#include "fexray/types.hpp"

#include <span>

namespace fexray {

struct QuadraturePoint {
  LocalCoords xi;
  double weight;
};

/// Collapsed 4x4x4 Gauss-Legendre rule on the reference tetrahedron, exact
/// for polynomials of total degree 7. Weights sum to 1/6.
std::span<const QuadraturePoint> tet_gauss_rule();

}  // namespace fexray
