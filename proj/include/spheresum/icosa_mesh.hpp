#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "spheresum/geometry.hpp"

namespace spheresum {

// Iteratively refined icosahedron. Vertices accumulate across levels, so the
// vertex ids of a level-L mesh are a prefix of the ids of any finer mesh built
// from the same base. Faces of level k are stored per level; the children of
// face f at level k are faces 4f..4f+3 at level k+1.
class IcosaMesh {
 public:
  using Face = std::array<int, 3>;  // counterclockwise vertex ids

  // The 12-vertex, 20-face regular icosahedron, two vertices at the poles.
  static IcosaMesh base_icosahedron();

  // Refines `levels` more times (0 is the identity).
  void refine(int levels);

  int level() const { return static_cast<int>(faces_by_level_.size()) - 1; }
  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int face_count() const { return static_cast<int>(faces_by_level_.back().size()); }
  int face_count_at(int lvl) const { return static_cast<int>(faces_by_level_[lvl].size()); }

  const std::vector<UnitVector3>& vertices() const { return vertices_; }
  const std::vector<Face>& faces() const { return faces_by_level_.back(); }
  const std::vector<Face>& faces_at(int lvl) const { return faces_by_level_[lvl]; }

  SphericalTriangle face_triangle(int lvl, int f) const {
    const Face& fc = faces_by_level_[lvl][f];
    return {vertices_[fc[0]], vertices_[fc[1]], vertices_[fc[2]]};
  }

  // The six vertex ids of the refinement of face (lvl, f): the three corners
  // followed by the midpoints of edges (0,1), (1,2), (2,0). Requires lvl <
  // level().
  std::array<int, 6> refinement_stencil(int lvl, int f) const;

  // Quadrature weight per vertex: the spherical polygon bounded by the
  // circumcenters of the faces around the vertex (faces of the dual
  // polyhedron). Pentagons at the 12 base vertices, hexagons elsewhere.
  std::vector<double> node_patch_areas() const;

  // Leaf face at the finest level containing p, descending the face hierarchy
  // with the triangle positions replaced by `deformed` (one position per
  // vertex id). When no child contains p (folded mesh), picks the child whose
  // barycentric coordinates have the least-negative minimum.
  int locate_deformed_face(const std::vector<UnitVector3>& deformed, const UnitVector3& p) const;

  int locate_face(const UnitVector3& p) const { return locate_deformed_face(vertices_, p); }

 private:
  IcosaMesh() = default;

  std::vector<UnitVector3> vertices_;
  std::vector<std::vector<Face>> faces_by_level_;
};

// Builds a level-`level` mesh in one call.
IcosaMesh make_icosa_mesh(int level);

}  // namespace spheresum
