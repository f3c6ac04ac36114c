#include "etk/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>

#include <Eigen/Dense>

namespace etk {

namespace {

constexpr double kHullEps = 1e-12;

using Vec3 = Eigen::Vector3d;

struct Face {
  std::array<int, 3> v;
  Vec3 normal;
  double offset = 0;  // normal . x == offset on the plane
  std::vector<int> outside;
  bool alive = true;

  double distance(const Vec3& p) const { return normal.dot(p) - offset; }
};

Face make_face(const std::vector<Vec3>& pts, int a, int b, int c) {
  Face f;
  f.v = {a, b, c};
  f.normal = (pts[b] - pts[a]).cross(pts[c] - pts[a]);
  const double len = f.normal.norm();
  if (len > 0) f.normal /= len;
  f.offset = f.normal.dot(pts[a]);
  return f;
}

std::vector<int> dedupe(const std::vector<Vec3>& pts) {
  std::vector<int> keep;
  for (int a = 0; a < static_cast<int>(pts.size()); ++a) {
    bool dup = false;
    for (int b : keep) {
      if ((pts[a] - pts[b]).norm() <= kHullEps) {
        dup = true;
        break;
      }
    }
    if (!dup) keep.push_back(a);
  }
  return keep;
}

Polytope3 degenerate_hull(std::span<const Weights> points, const std::vector<Vec3>& pts) {
  Polytope3 out;
  out.degenerate = true;
  for (int a : dedupe(pts)) out.vertices.push_back(points[a]);
  return out;
}

}  // namespace

Polytope3 convex_hull_3d(std::span<const Weights> points) {
  std::vector<Vec3> pts;
  pts.reserve(points.size());
  for (const auto& w : points) pts.push_back(to_affine(w));
  const int n = static_cast<int>(pts.size());
  if (n < 4) return degenerate_hull(points, pts);

  // Initial tetrahedron: extremes along x, farthest from that line, farthest
  // from that plane.
  int a = 0, b = 0;
  for (int p = 1; p < n; ++p) {
    if (pts[p].x() < pts[a].x()) a = p;
    if (pts[p].x() > pts[b].x()) b = p;
  }
  if ((pts[b] - pts[a]).norm() <= kHullEps) {
    // All x equal; fall back to the farthest pair from point 0.
    for (int p = 0; p < n; ++p) {
      if ((pts[p] - pts[a]).norm() > (pts[b] - pts[a]).norm()) b = p;
    }
    if ((pts[b] - pts[a]).norm() <= kHullEps) return degenerate_hull(points, pts);
  }
  const Vec3 axis = (pts[b] - pts[a]).normalized();
  int c = -1;
  double best = kHullEps;
  for (int p = 0; p < n; ++p) {
    const Vec3 d = pts[p] - pts[a];
    const double dist = (d - d.dot(axis) * axis).norm();
    if (dist > best) best = dist, c = p;
  }
  if (c < 0) return degenerate_hull(points, pts);
  const Vec3 plane_normal = (pts[b] - pts[a]).cross(pts[c] - pts[a]).normalized();
  int d = -1;
  best = kHullEps;
  for (int p = 0; p < n; ++p) {
    const double dist = std::abs(plane_normal.dot(pts[p] - pts[a]));
    if (dist > best) best = dist, d = p;
  }
  if (d < 0) return degenerate_hull(points, pts);

  std::vector<Face> faces;
  const Vec3 interior = (pts[a] + pts[b] + pts[c] + pts[d]) / 4;
  auto add_face = [&](int x, int y, int z) {
    Face f = make_face(pts, x, y, z);
    if (f.distance(interior) > 0) f = make_face(pts, x, z, y);
    faces.push_back(std::move(f));
  };
  add_face(a, b, c);
  add_face(a, b, d);
  add_face(a, c, d);
  add_face(b, c, d);

  auto assign = [&](int p, std::span<const int> candidates) {
    for (int fi : candidates) {
      if (faces[fi].distance(pts[p]) > kHullEps) {
        faces[fi].outside.push_back(p);
        return;
      }
    }
  };
  {
    const int initial[] = {0, 1, 2, 3};
    for (int p = 0; p < n; ++p) {
      if (p == a || p == b || p == c || p == d) continue;
      assign(p, initial);
    }
  }

  for (std::size_t cursor = 0; cursor < faces.size();) {
    if (!faces[cursor].alive || faces[cursor].outside.empty()) {
      ++cursor;
      continue;
    }
    // Farthest outside point of this face.
    int eye = faces[cursor].outside.front();
    for (int p : faces[cursor].outside) {
      if (faces[cursor].distance(pts[p]) > faces[cursor].distance(pts[eye])) eye = p;
    }

    std::vector<int> visible;
    std::set<std::pair<int, int>> visible_edges;
    for (int fi = 0; fi < static_cast<int>(faces.size()); ++fi) {
      if (faces[fi].alive && faces[fi].distance(pts[eye]) > kHullEps) {
        visible.push_back(fi);
        const auto& v = faces[fi].v;
        for (int e = 0; e < 3; ++e) visible_edges.insert({v[e], v[(e + 1) % 3]});
      }
    }

    std::vector<int> orphans;
    for (int fi : visible) {
      faces[fi].alive = false;
      for (int p : faces[fi].outside) {
        if (p != eye) orphans.push_back(p);
      }
      faces[fi].outside.clear();
    }

    std::vector<int> created;
    for (int fi : visible) {
      const auto v = faces[fi].v;
      for (int e = 0; e < 3; ++e) {
        const int from = v[e], to = v[(e + 1) % 3];
        if (visible_edges.count({to, from})) continue;  // interior edge
        faces.push_back(make_face(pts, from, to, eye));
        created.push_back(static_cast<int>(faces.size()) - 1);
      }
    }
    for (int p : orphans) assign(p, created);
    cursor = 0;
  }

  Polytope3 out;
  std::map<int, int> remap;
  for (const auto& f : faces) {
    if (!f.alive) continue;
    std::array<int, 3> tri{};
    for (int e = 0; e < 3; ++e) {
      auto [it, inserted] = remap.try_emplace(f.v[e], static_cast<int>(out.vertices.size()));
      if (inserted) out.vertices.push_back(points[f.v[e]]);
      tri[e] = it->second;
    }
    out.facets.push_back(tri);
  }
  return out;
}

double Polytope3::volume() const {
  if (degenerate || empty || facets.empty()) return 0.0;
  Vec3 center = Vec3::Zero();
  for (const auto& w : vertices) center += to_affine(w);
  center /= static_cast<double>(vertices.size());
  double vol = 0;
  for (const auto& f : facets) {
    const Vec3 p0 = to_affine(vertices[f[0]]) - center;
    const Vec3 p1 = to_affine(vertices[f[1]]) - center;
    const Vec3 p2 = to_affine(vertices[f[2]]) - center;
    vol += p0.dot(p1.cross(p2)) / 6.0;
  }
  return std::abs(vol);
}

bool Polytope3::contains(const Weights& w, double tol) const {
  if (empty || degenerate) return false;
  const Vec3 x = to_affine(w);
  for (const auto& f : facets) {
    const Vec3 p0 = to_affine(vertices[f[0]]);
    Vec3 normal = (to_affine(vertices[f[1]]) - p0).cross(to_affine(vertices[f[2]]) - p0);
    const double len = normal.norm();
    if (len == 0) continue;
    normal /= len;
    if (normal.dot(x - p0) > tol) return false;
  }
  return true;
}

namespace {

struct Plane {
  std::string name;
  Vec3 normal;     // normal . x + constant >= 0
  double constant;
};

}  // namespace

Polytope3 outer_region(const std::vector<CrossSectionHalfspace>& bank) {
  std::vector<Plane> planes{
      {"alpha>=0", Vec3(-1, -1, -1), 1.0},
      {"beta>=0", Vec3(1, 0, 0), 0.0},
      {"gamma>=0", Vec3(0, 1, 0), 0.0},
      {"delta>=0", Vec3(0, 0, 1), 0.0},
  };
  for (const auto& hs : bank) {
    const auto& [a, b, c, d] = hs.abcd;
    // a(1 - beta - gamma - delta) + b beta + c gamma + d delta >= 0
    planes.push_back({hs.name, Vec3(b - a, c - a, d - a), a});
  }

  constexpr double kFeasTol = 1e-12;
  constexpr double kMergeTol = 1e-9;
  std::vector<Vec3> found;
  const int m = static_cast<int>(planes.size());
  for (int p = 0; p < m; ++p) {
    for (int q = p + 1; q < m; ++q) {
      for (int r = q + 1; r < m; ++r) {
        Eigen::Matrix3d A;
        A.row(0) = planes[p].normal.transpose();
        A.row(1) = planes[q].normal.transpose();
        A.row(2) = planes[r].normal.transpose();
        const Eigen::FullPivLU<Eigen::Matrix3d> lu(A);
        if (!lu.isInvertible() || std::abs(lu.determinant()) < 1e-14) continue;
        const Vec3 x = lu.solve(-Vec3(planes[p].constant, planes[q].constant, planes[r].constant));
        bool feasible = true;
        for (const auto& pl : planes) {
          const double scale = std::max(1.0, pl.normal.cwiseAbs().maxCoeff());
          if (pl.normal.dot(x) + pl.constant < -kFeasTol * scale) {
            feasible = false;
            break;
          }
        }
        if (!feasible) continue;
        if (std::none_of(found.begin(), found.end(),
                         [&](const Vec3& y) { return (x - y).norm() <= kMergeTol; })) {
          found.push_back(x);
        }
      }
    }
  }

  Polytope3 out;
  if (found.empty()) {
    out.empty = true;
    return out;
  }
  std::vector<Weights> ws;
  for (const auto& x : found) {
    Weights w = from_affine(x);
    // Rounding leaves weights like -6e-18 on the simplex faces.
    for (int c = 0; c < 4; ++c) {
      if (std::abs(w[c]) < 1e-15) w[c] = 0;
    }
    ws.push_back(w);
  }
  out = convex_hull_3d(ws);
  for (const auto& w : out.vertices) {
    const Vec3 x = to_affine(w);
    std::vector<std::string> names;
    for (const auto& pl : planes) {
      const double scale = std::max(1.0, pl.normal.cwiseAbs().maxCoeff());
      if (std::abs(pl.normal.dot(x) + pl.constant) <= kMergeTol * scale) names.push_back(pl.name);
    }
    out.active.push_back(std::move(names));
  }
  return out;
}

double max_alpha(const Polytope3& poly) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& w : poly.vertices) best = std::max(best, w[0]);
  return best;
}

double max_alpha_on_edge(const Polytope3& poly, int partner, double tol) {
  if (partner < 1 || partner > 3) throw std::invalid_argument("edge partner must be 1, 2 or 3");
  double best = 0;
  for (const auto& w : poly.vertices) {
    bool on_edge = true;
    for (int c = 1; c < 4; ++c) on_edge = on_edge && (c == partner || std::abs(w[c]) <= tol);
    if (on_edge) best = std::max(best, w[0]);
  }
  return best;
}

}  // namespace etk
