#include "spheresum/face_tree.hpp"

#include <algorithm>

#include "spheresum/icosa_mesh.hpp"

namespace spheresum {

FaceTree::FaceTree() {
  const IcosaMesh base = IcosaMesh::base_icosahedron();
  nodes_.reserve(20);
  for (int f = 0; f < 20; ++f) {
    nodes_.emplace_back(base.face_triangle(0, f));
    nodes_.back().root_face = f;
  }
}

void FaceTree::ensure_children(int id) {
  if (nodes_[id].has_children()) return;
  const SphericalTriangle t = nodes_[id].triangle;
  const UnitVector3 m12(t.v1.vec() + t.v2.vec());
  const UnitVector3 m23(t.v2.vec() + t.v3.vec());
  const UnitVector3 m31(t.v3.vec() + t.v1.vec());
  const int base = static_cast<int>(nodes_.size());
  const int lvl = nodes_[id].level + 1;
  const int root = nodes_[id].root_face;
  nodes_[id].child_base = base;
  nodes_.emplace_back(SphericalTriangle{t.v1, m12, m31});
  nodes_.emplace_back(SphericalTriangle{m12, t.v2, m23});
  nodes_.emplace_back(SphericalTriangle{m31, m23, t.v3});
  nodes_.emplace_back(SphericalTriangle{m12, m23, m31});
  for (int c = base; c < base + 4; ++c) {
    nodes_[c].level = lvl;
    nodes_[c].parent = id;
    nodes_[c].root_face = root;
  }
}

void FaceTree::distribute(int id, const std::vector<UnitVector3>& positions, int n_threshold,
                          int max_depth) {
  if (nodes_[id].bin.empty()) return;
  if (!nodes_[id].has_children()) {
    if (nodes_[id].size() <= n_threshold || nodes_[id].level >= max_depth) {
      for (int i : nodes_[id].bin) leaf_of_[i] = id;
      return;
    }
    ensure_children(id);
  }
  const int cb = nodes_[id].child_base;
  for (int i : nodes_[id].bin) {
    const UnitVector3& p = positions[i];
    int best = cb;
    double best_score = -1e300;
    bool placed = false;
    for (int c = cb; c < cb + 4; ++c) {
      const SphericalTriangle& t = nodes_[c].triangle;
      const double s = barycentric_min_score(t.v1, t.v2, t.v3, p);
      if (s >= kContainTol) {
        nodes_[c].bin.push_back(i);
        placed = true;
        break;
      }
      if (s > best_score) {
        best_score = s;
        best = c;
      }
    }
    if (!placed) nodes_[best].bin.push_back(i);
  }
  for (int c = cb; c < cb + 4; ++c) distribute(c, positions, n_threshold, max_depth);
}

void FaceTree::bin_particles(const std::vector<UnitVector3>& positions, int n_threshold,
                             int max_depth) {
  for (TreeNode& n : nodes_) n.bin.clear();
  leaf_of_.assign(positions.size(), -1);
  for (int i = 0; i < static_cast<int>(positions.size()); ++i) {
    bool placed = false;
    for (int f = 0; f < 20 && !placed; ++f) {
      if (triangle_contains(nodes_[f].triangle, positions[i])) {
        nodes_[f].bin.push_back(i);
        placed = true;
      }
    }
    if (!placed) throw GeometryError("particle contained in no root face");
  }
  for (int f = 0; f < 20; ++f) distribute(f, positions, n_threshold, max_depth);
}

std::vector<int> FaceTree::path_of_particle(int i) const {
  std::vector<int> path;
  for (int id = leaf_of_[i]; id >= 0; id = nodes_[id].parent) path.push_back(id);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace spheresum
