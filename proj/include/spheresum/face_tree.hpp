#pragma once

#include <vector>

#include "spheresum/geometry.hpp"

namespace spheresum {

// One triangle of the icosahedral face hierarchy, with the particles it
// currently contains. A parent's bin is the union of its children's bins;
// bins hold particle ids in ascending order.
struct TreeNode {
  SphericalTriangle triangle;
  UnitVector3 circumcenter;
  double radius = 0.0;
  int level = 0;
  int parent = -1;
  int root_face = 0;
  int child_base = -1;  // children are ids child_base .. child_base+3
  std::vector<int> bin;

  explicit TreeNode(const SphericalTriangle& t)
      : triangle(t), circumcenter(triangle_circumcenter(t)) {
    radius = great_circle_distance(circumcenter, t.v1);
  }

  bool has_children() const { return child_base >= 0; }
  int size() const { return static_cast<int>(bin.size()); }
};

// The static geometric hierarchy over the 20 base icosahedron faces. Node
// geometry persists across calls; bins are rebuilt from the current particle
// positions on every bin_particles call, deepening the tree wherever a bin
// exceeds the threshold (up to max_depth).
class FaceTree {
 public:
  FaceTree();

  void bin_particles(const std::vector<UnitVector3>& positions, int n_threshold, int max_depth);

  const TreeNode& node(int id) const { return nodes_[id]; }
  TreeNode& node(int id) { return nodes_[id]; }
  int node_count() const { return static_cast<int>(nodes_.size()); }

  // Deepest node containing particle i (valid after bin_particles).
  int leaf_of_particle(int i) const { return leaf_of_[i]; }

  // Node ids from the root face down to the leaf of particle i.
  std::vector<int> path_of_particle(int i) const;

 private:
  void ensure_children(int id);
  void distribute(int id, const std::vector<UnitVector3>& positions, int n_threshold,
                  int max_depth);

  std::vector<TreeNode> nodes_;
  std::vector<int> leaf_of_;
};

}  // namespace spheresum
