#include "spheresum/icosa_mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

namespace spheresum {

IcosaMesh IcosaMesh::base_icosahedron() {
  IcosaMesh m;
  m.vertices_.reserve(12);
  m.vertices_.emplace_back(0.0, 0.0, 1.0);  // north pole
  const double ring_lat = std::atan(0.5);
  for (int k = 0; k < 5; ++k) {
    m.vertices_.push_back(latlon_to_unit({ring_lat, 2.0 * M_PI * k / 5.0}));
  }
  for (int k = 0; k < 5; ++k) {
    m.vertices_.push_back(latlon_to_unit({-ring_lat, 2.0 * M_PI * k / 5.0 + M_PI / 5.0}));
  }
  m.vertices_.emplace_back(0.0, 0.0, -1.0);  // south pole

  std::vector<Face> faces;
  faces.reserve(20);
  for (int k = 0; k < 5; ++k) {
    const int u = 1 + k, un = 1 + (k + 1) % 5;        // upper ring
    const int l = 6 + k, ln = 6 + (k + 1) % 5;        // lower ring
    faces.push_back({0, u, un});                      // cap around the north pole
    faces.push_back({u, l, un});                      // band, apex up
    faces.push_back({un, l, ln});                     // band, apex down
    faces.push_back({11, ln, l});                     // cap around the south pole
  }
  m.faces_by_level_.push_back(std::move(faces));
  return m;
}

void IcosaMesh::refine(int levels) {
  for (int r = 0; r < levels; ++r) {
    const std::vector<Face>& parents = faces_by_level_.back();
    std::vector<Face> children;
    children.resize(parents.size() * 4);
    std::map<std::pair<int, int>, int> midpoint_of_edge;
    auto midpoint = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      auto it = midpoint_of_edge.find(key);
      if (it != midpoint_of_edge.end()) return it->second;
      const int id = static_cast<int>(vertices_.size());
      vertices_.push_back(UnitVector3(vertices_[a].vec() + vertices_[b].vec()));
      midpoint_of_edge.emplace(key, id);
      return id;
    };
    for (std::size_t f = 0; f < parents.size(); ++f) {
      const Face& p = parents[f];
      const int mab = midpoint(p[0], p[1]);
      const int mbc = midpoint(p[1], p[2]);
      const int mca = midpoint(p[2], p[0]);
      children[4 * f + 0] = {p[0], mab, mca};
      children[4 * f + 1] = {mab, p[1], mbc};
      children[4 * f + 2] = {mca, mbc, p[2]};
      children[4 * f + 3] = {mab, mbc, mca};
    }
    faces_by_level_.push_back(std::move(children));
  }
}

std::array<int, 6> IcosaMesh::refinement_stencil(int lvl, int f) const {
  const Face& parent = faces_by_level_[lvl][f];
  const std::vector<Face>& kids = faces_by_level_[lvl + 1];
  return {parent[0],           parent[1],           parent[2],
          kids[4 * f + 0][1],  // midpoint (0,1)
          kids[4 * f + 1][2],  // midpoint (1,2)
          kids[4 * f + 2][0]};  // midpoint (2,0)
}

std::vector<double> IcosaMesh::node_patch_areas() const {
  const std::vector<Face>& leafs = faces_by_level_.back();
  std::vector<std::vector<std::pair<double, int>>> around(vertices_.size());
  std::vector<UnitVector3> centers;
  centers.reserve(leafs.size());
  for (std::size_t f = 0; f < leafs.size(); ++f) {
    centers.push_back(triangle_circumcenter(face_triangle(level(), static_cast<int>(f))));
  }
  // Sort each vertex's incident circumcenters counterclockwise by angle in the
  // tangent plane.
  for (std::size_t f = 0; f < leafs.size(); ++f) {
    for (int corner : leafs[f]) {
      const UnitVector3& v = vertices_[corner];
      // Right-handed tangent frame (e1, e2, v).
      const Vec3 seed = std::abs(v.z) < 0.9 ? Vec3{0, 0, 1} : Vec3{1, 0, 0};
      const UnitVector3 e1(cross(seed, v.vec()));
      const Vec3 e2 = cross(v.vec(), e1.vec());
      const Vec3 d = centers[f].vec() - dot(centers[f], v) * v.vec();
      const double ang = std::atan2(dot(d, e2), dot(d, e1.vec()));
      around[corner].emplace_back(ang, static_cast<int>(f));
    }
  }
  std::vector<double> areas(vertices_.size(), 0.0);
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    std::sort(around[v].begin(), around[v].end());
    std::vector<UnitVector3> poly;
    poly.reserve(around[v].size());
    for (const auto& [ang, f] : around[v]) poly.push_back(centers[f]);
    areas[v] = spherical_polygon_area(poly);
  }
  return areas;
}

int IcosaMesh::locate_deformed_face(const std::vector<UnitVector3>& deformed,
                                    const UnitVector3& p) const {
  auto pick_child = [&](int lvl, int first, int count) {
    int best = first;
    double best_score = -1e300;
    for (int f = first; f < first + count; ++f) {
      const Face& fc = faces_by_level_[lvl][f];
      const double s = barycentric_min_score(deformed[fc[0]], deformed[fc[1]], deformed[fc[2]], p);
      if (s >= kContainTol) return f;  // first containing face wins
      if (s > best_score) {
        best_score = s;
        best = f;
      }
    }
    return best;
  };
  int f = pick_child(0, 0, 20);
  for (int lvl = 1; lvl <= level(); ++lvl) f = pick_child(lvl, 4 * f, 4);
  return f;
}

IcosaMesh make_icosa_mesh(int level) {
  IcosaMesh m = IcosaMesh::base_icosahedron();
  m.refine(level);
  return m;
}

}  // namespace spheresum
