#pragma once
#include <utility>
#include <vector>

#include "patchfold/prismatoid.hpp"

namespace patchfold {

// Vertex-and-face-cycle polyhedron; face cycles are ccw seen from outside.
struct ConvexPolyhedron {
  std::vector<Vec3> vertices;
  std::vector<std::vector<int>> faces;

  double diameter() const;
  // Planarity, closed-surface edge pairing, Euler count, and every vertex on
  // or behind every face plane (within support_eps).
  void validate(double support_eps) const;
};

// Brute-force hull of a small point set.  Facets whose planes agree within
// merge_angle radians are merged into one convex face, so exactly coplanar
// rings come out as a single polygon.   Intended for n up to a few dozen.
ConvexPolyhedron convex_hull3(const std::vector<Vec3>& pts,
                              double merge_angle = 1e-7);

ConvexPolyhedron to_polyhedron(const Prismatoid& P);

enum class PatchKind { Edge, Vertex };

// A face of a convex polyhedron together with its edge- or vertex-sharing
// neighbors, forming a topological disk.
struct ConvexPatch {
  ConvexPolyhedron poly;
  int base_face = 0;
  PatchKind kind = PatchKind::Vertex;
  std::vector<int> faces;  // polyhedron face indices, base first

  std::vector<std::pair<int, int>> interior_edges;  // (lo, hi) vertex ids
  std::vector<std::pair<int, int>> boundary_edges;
  std::vector<int> interior_vertices;
  std::vector<int> boundary_vertices;
};

ConvexPatch neighborhood(const ConvexPolyhedron& poly, int base_face,
                         PatchKind kind);

}  // namespace patchfold
