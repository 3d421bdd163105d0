#pragma once
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "patchfold/layout.hpp"
#include "patchfold/patch.hpp"

namespace patchfold {

struct OverlapWitness {
  std::string face_a, face_b;
  Vec2 point;
  double depth = 0;
};

struct OverlapReport {
  bool overlapping = false;
  std::vector<OverlapWitness> witnesses;
  double max_depth = 0;
  // Closest approach among face pairs that neither overlap nor share a
  // hinge; infinity when no such pair exists.
  double min_clearance = std::numeric_limits<double>::infinity();
  long pairs_checked = 0;
};

// Separating-axis test for convex polygons (any winding).  Touching within
// eps does not count as overlap; *depth receives the smallest penetration
// over all axes when the polygons do overlap.
bool convex_polys_overlap(const std::vector<Vec2>& a,
                          const std::vector<Vec2>& b, double eps,
                          double* depth = nullptr);

// A point inside the common region: first proper edge crossing, else a
// vertex of one polygon strictly inside the other, else a centroid.
Vec2 overlap_witness_point(const std::vector<Vec2>& a,
                           const std::vector<Vec2>& b, double eps);

double convex_polys_clearance(const std::vector<Vec2>& a,
                              const std::vector<Vec2>& b);

OverlapReport layout_overlaps(const Layout& L);

// Angle bookkeeping around one global vertex of a layout.  When every
// incident face sits in one connected component the gap 2*pi - sum is the
// flat angle defect; otherwise the sums are reported per component root.
struct VertexStarReport {
  int vertex = -1;
  bool present = false;
  bool surrounded = false;
  double angle_sum = 0;
  double gap = 0;
  std::map<std::string, double> component_sums;
};
VertexStarReport angle_gap(const Layout& L, int vertex);

// Sum of angle defects over all vertices; 4*pi for a closed convex surface.
double total_curvature(const ConvexPolyhedron& P);

}  // namespace patchfold
