#pragma once

#include <Eigen/Core>

#include <cstdint>

namespace fexray {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

using NodeId = std::uint32_t;
using ElementId = std::uint32_t;

/// Reference coordinates (xi1, xi2, xi3) of a tetrahedron; xi4 = 1 - sum.
using LocalCoords = Eigen::Vector3d;

}  // namespace fexray
