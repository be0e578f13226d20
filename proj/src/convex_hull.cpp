#include "fexray/convex_hull.hpp"

#include "fexray/error.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace fexray {

namespace {

struct Face {
  std::array<int, 3> v;
  Vec3 normal;
  double offset;
  std::vector<int> outside;
  bool alive = true;
  int visit = 0;

  double distance(const Vec3& p) const { return normal.dot(p) - offset; }
};

std::uint64_t edge_key(int a, int b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

class QuickHull {
 public:
  explicit QuickHull(std::span<const Vec3> points) : pts_(points) {}

  ConvexHull run() {
    if (pts_.size() < 4) throw DegenerateHullError("convex hull needs at least 4 points");
    Aabb box;
    double magnitude = 0.0;
    for (const Vec3& p : pts_) {
      box.extend(p);
      magnitude = std::max(magnitude, p.cwiseAbs().maxCoeff());
    }
    eps_ = 1e-12 * (box.diagonal() + magnitude);
    initial_simplex();
    expand();
    return collect();
  }

 private:
  int add_face(int a, int b, int c) {
    Face f;
    f.v = {a, b, c};
    f.normal = (pts_[b] - pts_[a]).cross(pts_[c] - pts_[a]);
    const double len = f.normal.norm();
    f.normal = len > 0.0 ? Vec3(f.normal / len) : Vec3::Zero();
    f.offset = f.normal.dot(pts_[a]);
    const int id = static_cast<int>(faces_.size());
    faces_.push_back(std::move(f));
    for (int k = 0; k < 3; ++k) edges_[edge_key(faces_[id].v[k], faces_[id].v[(k + 1) % 3])] = id;
    return id;
  }

  void kill_face(int id) {
    Face& f = faces_[id];
    f.alive = false;
    for (int k = 0; k < 3; ++k) {
      const auto it = edges_.find(edge_key(f.v[k], f.v[(k + 1) % 3]));
      if (it != edges_.end() && it->second == id) edges_.erase(it);
    }
  }

  void initial_simplex() {
    const int n = static_cast<int>(pts_.size());
    std::array<int, 6> extreme{0, 0, 0, 0, 0, 0};
    for (int i = 0; i < n; ++i) {
      for (int d = 0; d < 3; ++d) {
        if (pts_[i][d] < pts_[extreme[2 * d]][d]) extreme[2 * d] = i;
        if (pts_[i][d] > pts_[extreme[2 * d + 1]][d]) extreme[2 * d + 1] = i;
      }
    }
    int i0 = 0, i1 = 0;
    double best = -1.0;
    for (int a : extreme) {
      for (int b : extreme) {
        const double d = (pts_[a] - pts_[b]).squaredNorm();
        if (d > best) best = d, i0 = a, i1 = b;
      }
    }
    if (std::sqrt(best) <= eps_) throw DegenerateHullError("convex hull input is a single point");

    const Vec3 dir = (pts_[i1] - pts_[i0]).normalized();
    int i2 = -1;
    best = eps_;
    for (int i = 0; i < n; ++i) {
      const Vec3 w = pts_[i] - pts_[i0];
      const double d = (w - w.dot(dir) * dir).norm();
      if (d > best) best = d, i2 = i;
    }
    if (i2 < 0) throw DegenerateHullError("convex hull input is collinear");

    const Vec3 normal = (pts_[i1] - pts_[i0]).cross(pts_[i2] - pts_[i0]).normalized();
    int i3 = -1;
    best = eps_;
    for (int i = 0; i < n; ++i) {
      const double d = std::abs(normal.dot(pts_[i] - pts_[i0]));
      if (d > best) best = d, i3 = i;
    }
    if (i3 < 0) throw DegenerateHullError("convex hull input is coplanar");

    if (normal.dot(pts_[i3] - pts_[i0]) > 0.0) std::swap(i1, i2);
    // Now i3 lies below the plane (i0, i1, i2); all faces point outward.
    const std::array<int, 4> f = {add_face(i0, i1, i2), add_face(i0, i3, i1),
                                  add_face(i1, i3, i2), add_face(i2, i3, i0)};
    for (int i = 0; i < n; ++i) {
      if (i == i0 || i == i1 || i == i2 || i == i3) continue;
      for (int id : f) {
        if (faces_[id].distance(pts_[i]) > eps_) {
          faces_[id].outside.push_back(i);
          break;
        }
      }
    }
  }

  void expand() {
    std::vector<int> pending;
    for (int i = 0; i < static_cast<int>(faces_.size()); ++i) pending.push_back(i);
    std::vector<int> visible;
    std::vector<int> stack;
    std::vector<std::array<int, 2>> horizon;
    std::vector<int> orphans;
    int stamp = 0;

    while (!pending.empty()) {
      const int fid = pending.back();
      pending.pop_back();
      if (!faces_[fid].alive || faces_[fid].outside.empty()) continue;

      int eye = -1;
      double far = -1.0;
      for (int i : faces_[fid].outside) {
        const double d = faces_[fid].distance(pts_[i]);
        if (d > far) far = d, eye = i;
      }
      const Vec3& e = pts_[eye];

      ++stamp;
      visible.clear();
      horizon.clear();
      stack.assign(1, fid);
      faces_[fid].visit = stamp;
      while (!stack.empty()) {
        const int cur = stack.back();
        stack.pop_back();
        visible.push_back(cur);
        for (int k = 0; k < 3; ++k) {
          const int a = faces_[cur].v[k];
          const int b = faces_[cur].v[(k + 1) % 3];
          const auto it = edges_.find(edge_key(b, a));
          if (it == edges_.end()) continue;
          const int nb = it->second;
          if (faces_[nb].visit == stamp) continue;
          if (faces_[nb].distance(e) > eps_) {
            faces_[nb].visit = stamp;
            stack.push_back(nb);
          }
        }
      }
      for (int cur : visible) {
        for (int k = 0; k < 3; ++k) {
          const int a = faces_[cur].v[k];
          const int b = faces_[cur].v[(k + 1) % 3];
          const auto it = edges_.find(edge_key(b, a));
          if (it == edges_.end() || faces_[it->second].visit != stamp) horizon.push_back({a, b});
        }
      }

      orphans.clear();
      for (int cur : visible) {
        for (int i : faces_[cur].outside) {
          if (i != eye) orphans.push_back(i);
        }
        faces_[cur].outside.clear();
        kill_face(cur);
      }
      const std::size_t first_new = faces_.size();
      for (const auto& [a, b] : horizon) add_face(a, b, eye);
      for (int i : orphans) {
        for (std::size_t id = first_new; id < faces_.size(); ++id) {
          if (faces_[id].distance(pts_[i]) > eps_) {
            faces_[id].outside.push_back(i);
            break;
          }
        }
      }
      for (std::size_t id = first_new; id < faces_.size(); ++id) {
        if (!faces_[id].outside.empty()) pending.push_back(static_cast<int>(id));
      }
    }
  }

  ConvexHull collect() const {
    ConvexHull hull;
    std::unordered_map<int, std::uint32_t> remap;
    for (const Face& f : faces_) {
      if (!f.alive) continue;
      std::array<std::uint32_t, 3> tri{};
      for (int k = 0; k < 3; ++k) {
        auto [it, inserted] = remap.try_emplace(f.v[k], static_cast<std::uint32_t>(hull.vertices.size()));
        if (inserted) hull.vertices.push_back(pts_[f.v[k]]);
        tri[k] = it->second;
      }
      hull.faces.push_back(tri);
    }
    return hull;
  }

  std::span<const Vec3> pts_;
  std::vector<Face> faces_;
  std::unordered_map<std::uint64_t, int> edges_;
  double eps_ = 0.0;
};

}  // namespace

std::vector<Triangle> ConvexHull::triangles() const {
  std::vector<Triangle> tris;
  tris.reserve(faces.size());
  for (const auto& f : faces) tris.push_back({vertices[f[0]], vertices[f[1]], vertices[f[2]]});
  return tris;
}

double ConvexHull::volume() const {
  double v = 0.0;
  for (const auto& f : faces) {
    v += vertices[f[0]].dot(vertices[f[1]].cross(vertices[f[2]]));
  }
  return v / 6.0;
}

ConvexHull convex_hull(std::span<const Vec3> points) { return QuickHull(points).run(); }

}  // namespace fexray
