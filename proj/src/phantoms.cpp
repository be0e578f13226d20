#include "fexray/phantoms.hpp"

#include "fexray/error.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

namespace fexray {

namespace {

constexpr int kMaxElements = 5'000'000;

// Reorders a 10-node element with negative corner volume by swapping corners 1 and 2.
constexpr std::array<int, 10> kFlip{0, 2, 1, 3, 6, 5, 4, 7, 9, 8};

void append_element(std::vector<NodeId>& conn, const std::array<NodeId, 10>& ids,
                    const std::vector<Vec3>& nodes) {
  const Vec3 a = nodes[ids[1]] - nodes[ids[0]];
  const Vec3 b = nodes[ids[2]] - nodes[ids[0]];
  const Vec3 c = nodes[ids[3]] - nodes[ids[0]];
  const bool flip = a.cross(b).dot(c) < 0.0;
  for (int k = 0; k < 10; ++k) conn.push_back(ids[flip ? kFlip[k] : k]);
}

}  // namespace

void BallSpec::validate() const {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw ValidationError("ball radius must be positive");
  if (target_elements < 1 || target_elements > kMaxElements) {
    throw ValidationError("ball element target out of range");
  }
  if (!std::isfinite(density)) throw ValidationError("ball density must be finite");
}

void CylinderSpec::validate() const {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw ValidationError("cylinder radius must be positive");
  if (!(height > 0.0) || !std::isfinite(height)) throw ValidationError("cylinder height must be positive");
  if (layers < 1) throw ValidationError("cylinder layers must be at least 1");
  if (target_elements < 9 * layers || target_elements > kMaxElements) {
    throw ValidationError("cylinder element target out of range");
  }
}

int ball_resolution(const BallSpec& spec) {
  spec.validate();
  int best = 1;
  for (int n = 2; 6 * (n - 1) * (n - 1) * (n - 1) <= spec.target_elements; ++n) {
    if (std::abs(6 * n * n * n - spec.target_elements) < std::abs(6 * best * best * best - spec.target_elements)) {
      best = n;
    }
  }
  return best;
}

Phantom generate_ball(const BallSpec& spec) {
  const int n = ball_resolution(spec);
  const double r = spec.radius;

  // Keys live on the doubled grid: corners at even indices, midnodes at sums.
  std::map<std::array<int, 3>, NodeId> ids;
  std::vector<Vec3> nodes;

  const auto cube_point = [n](const std::array<int, 3>& k2) -> Vec3 {
    return Vec3(k2[0], k2[1], k2[2]) / n - Vec3::Ones();
  };
  const auto to_sphere = [r](const Vec3& p) -> Vec3 {
    const double l2 = p.norm();
    if (l2 == 0.0) return Vec3::Zero();
    return p * (p.cwiseAbs().maxCoeff() / l2 * r);
  };
  const auto corner = [&](const std::array<int, 3>& k) {
    const std::array<int, 3> key{2 * k[0], 2 * k[1], 2 * k[2]};
    const auto [it, inserted] = ids.try_emplace(key, static_cast<NodeId>(nodes.size()));
    if (inserted) nodes.push_back(to_sphere(cube_point(key)));
    return it->second;
  };
  const auto midnode = [&](const std::array<int, 3>& ka, const std::array<int, 3>& kb) {
    const std::array<int, 3> key{ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2]};
    const auto [it, inserted] = ids.try_emplace(key, static_cast<NodeId>(nodes.size()));
    if (inserted) {
      const Vec3 mid = 0.5 * (to_sphere(cube_point({2 * ka[0], 2 * ka[1], 2 * ka[2]})) +
                              to_sphere(cube_point({2 * kb[0], 2 * kb[1], 2 * kb[2]})));
      bool on_surface = false;
      for (int a = 0; a < 3; ++a) {
        if (ka[a] == kb[a] && (ka[a] == 0 || ka[a] == n)) on_surface = true;
      }
      nodes.push_back(on_surface ? Vec3(mid.normalized() * r) : mid);
    }
    return it->second;
  };

  static constexpr std::array<std::array<int, 4>, 6> kKuhn{
      {{0, 1, 3, 7}, {0, 1, 5, 7}, {0, 2, 3, 7}, {0, 2, 6, 7}, {0, 4, 5, 7}, {0, 4, 6, 7}}};

  std::vector<NodeId> conn;
  conn.reserve(static_cast<std::size_t>(60) * n * n * n);
  for (int z = 0; z < n; ++z) {
    for (int y = 0; y < n; ++y) {
      for (int x = 0; x < n; ++x) {
        for (const auto& tet : kKuhn) {
          std::array<std::array<int, 3>, 4> k;
          for (int c = 0; c < 4; ++c) {
            const int bits = tet[c];
            k[c] = {x + (bits & 1), y + ((bits >> 1) & 1), z + ((bits >> 2) & 1)};
          }
          std::array<NodeId, 10> el;
          for (int c = 0; c < 4; ++c) el[c] = corner(k[c]);
          for (std::size_t e = 0; e < kTetEdges.size(); ++e) {
            el[4 + e] = midnode(k[kTetEdges[e][0]], k[kTetEdges[e][1]]);
          }
          append_element(conn, el, nodes);
        }
      }
    }
  }

  std::vector<double> rho(nodes.size(), spec.density);
  Mesh mesh(std::move(nodes), std::move(conn), ElementOrder::quadratic);
  return {std::move(mesh), NodalField(std::move(rho))};
}

std::pair<int, int> cylinder_resolution(const CylinderSpec& spec) {
  spec.validate();
  const double target = spec.target_elements;
  double best_score = std::numeric_limits<double>::infinity();
  std::pair<int, int> best{1, 3};
  for (int rings = 1; 3.0 * spec.layers * 3 * (2 * rings - 1) <= 2.0 * target; ++rings) {
    for (int m = 3;; ++m) {
      const double count = 3.0 * spec.layers * m * (2 * rings - 1);
      if (count > 2.0 * target) break;
      const double score = std::abs(count - target) / target + 0.05 * std::abs(std::log(m / (3.0 * rings)));
      if (score < best_score) {
        best_score = score;
        best = {rings, m};
      }
    }
  }
  return best;
}

Phantom generate_cylinder(const CylinderSpec& spec) {
  const auto [rings, m] = cylinder_resolution(spec);
  const double r = spec.radius;
  const int layers = spec.layers;

  // Planar nodes: center, then ring k (1..rings) node j at index 1 + (k-1) m + j.
  const int n2d = 1 + rings * m;
  const auto id2d = [m](int k, int j) { return k == 0 ? 0 : 1 + (k - 1) * m + (j % m); };
  std::vector<Vec3> nodes;
  nodes.reserve(static_cast<std::size_t>(n2d) * (layers + 1));
  for (int l = 0; l <= layers; ++l) {
    const double z = spec.height * l / layers;
    nodes.emplace_back(0.0, 0.0, z);
    for (int k = 1; k <= rings; ++k) {
      const double s = r * k / rings;
      for (int j = 0; j < m; ++j) {
        const double theta = 2.0 * std::numbers::pi * j / m;
        nodes.emplace_back(s * std::cos(theta), s * std::sin(theta), z);
      }
    }
  }
  const auto on_rim = [&](NodeId id) { return static_cast<int>(id % n2d) > (rings - 1) * m; };

  std::vector<std::array<int, 3>> tris;
  for (int j = 0; j < m; ++j) tris.push_back({0, id2d(1, j), id2d(1, j + 1)});
  for (int k = 1; k < rings; ++k) {
    for (int j = 0; j < m; ++j) {
      const int a = id2d(k, j), b = id2d(k + 1, j), c = id2d(k + 1, j + 1), d = id2d(k, j + 1);
      tris.push_back({a, b, c});
      tris.push_back({a, c, d});
    }
  }

  std::map<std::pair<NodeId, NodeId>, NodeId> mids;
  const auto midnode = [&](NodeId a, NodeId b) {
    const auto key = std::minmax(a, b);
    const auto [it, inserted] = mids.try_emplace({key.first, key.second}, static_cast<NodeId>(nodes.size()));
    if (inserted) {
      Vec3 p = 0.5 * (nodes[a] + nodes[b]);
      if (on_rim(a) && on_rim(b)) {
        const double s = std::hypot(p.x(), p.y());
        p.x() *= r / s;
        p.y() *= r / s;
      }
      nodes.push_back(p);
    }
    return it->second;
  };

  std::vector<NodeId> conn;
  conn.reserve(tris.size() * layers * 30);
  for (int l = 0; l < layers; ++l) {
    const auto lo = static_cast<NodeId>(l * n2d);
    const auto hi = static_cast<NodeId>((l + 1) * n2d);
    for (auto t : tris) {
      std::sort(t.begin(), t.end());
      const NodeId a = lo + t[0], b = lo + t[1], c = lo + t[2];
      const NodeId a1 = hi + t[0], b1 = hi + t[1], c1 = hi + t[2];
      const std::array<std::array<NodeId, 4>, 3> tets{{{a, b, c, c1}, {a, b, b1, c1}, {a, a1, b1, c1}}};
      for (const auto& tet : tets) {
        std::array<NodeId, 10> el;
        for (int q = 0; q < 4; ++q) el[q] = tet[q];
        for (std::size_t e = 0; e < kTetEdges.size(); ++e) {
          el[4 + e] = midnode(tet[kTetEdges[e][0]], tet[kTetEdges[e][1]]);
        }
        append_element(conn, el, nodes);
      }
    }
  }

  std::vector<double> rho;
  rho.reserve(nodes.size());
  for (const Vec3& p : nodes) rho.push_back(spec.density(std::hypot(p.x(), p.y())));
  Mesh mesh(std::move(nodes), std::move(conn), ElementOrder::quadratic);
  return {std::move(mesh), NodalField(std::move(rho))};
}

double ball_projection_oracle(const Vec3& pixel_center, const Vec3& dir, const BallSpec& spec) {
  const Vec3 d = dir.normalized();
  const Vec3 perp = pixel_center - pixel_center.dot(d) * d;
  const double p2 = perp.squaredNorm();
  const double r2 = spec.radius * spec.radius;
  if (p2 >= r2) return 0.0;
  return 2.0 * spec.density * std::sqrt(r2 - p2);
}

double cylinder_projection_oracle(const Vec3& pixel_center, const CylinderSpec& spec) {
  const double s = std::hypot(pixel_center.x(), pixel_center.y());
  if (s > spec.radius) return 0.0;
  return spec.height * spec.density(s);
}

}  // namespace fexray
