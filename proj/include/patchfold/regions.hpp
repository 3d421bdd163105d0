#pragma once
#include <vector>

#include "patchfold/prismatoid.hpp"

namespace patchfold {

// Data for one base edge when its lateral triangle is unfolded into the base
// plane: the apex lands at foot + sqrt(d^2 + z^2) * normal, strictly outside
// the base polygon.
struct BaseUnfoldEntry {
  Vec2 foot;
  Vec2 normal;  // unit outward normal of the base edge
  double d;     // signed planar offset of the 3D apex, outward positive
  Vec2 apex;    // unfolded apex position
};

std::vector<BaseUnfoldEntry> base_unfolding(const Prismatoid& P);

// Altitude rays shoot from each unfolded apex along its edge normal.  The
// partition is valid only when no two rays cross; a crossing raises
// RayCrossing.
struct AltitudePartition {
  std::vector<BaseUnfoldEntry> entries;
};
AltitudePartition altitude_partition(const Prismatoid& P);

bool rays_cross(const Vec2& o1, const Vec2& d1, const Vec2& o2, const Vec2& d2,
                double eps);

// Unfolded apex positions of one base edge across several heights.  They all
// lie on the edge's altitude line, marching away from the edge as z grows.
std::vector<Vec2> apex_track(const Prismatoid& P, int edge,
                             const std::vector<double>& zs);
double max_line_deviation(const std::vector<Vec2>& pts);

// The unbounded cell of the altitude partition at base vertex i: bounded by
// the two incident unfolded triangle edges and the two altitude rays.
// Containment is closed; eps expands the region slightly.
struct AltitudeRegion {
  Vec2 b, apL, apR, nL, nR;
  double far_scale;
  bool contains(const Vec2& p, double eps) const;
};
AltitudeRegion altitude_region(const Prismatoid& P,
                               const std::vector<BaseUnfoldEntry>& bu, int i);

// Kite at base vertex i spanned by the two adjacent unfolded apexes, with
// right-angle caps at the apexes.  Star-shaped around b.  Needs every
// lateral face nonobtuse.
struct Diamond {
  Vec2 b, apL, apR;
  bool contains(const Vec2& p, double eps) const;
};
Diamond diamond(const Prismatoid& P, const std::vector<BaseUnfoldEntry>& bu,
                int i);

// Unbounded wedge at base vertex i of a triangular prismatoid, bounded by
// the lines from b through the two adjacent unfolded apexes.  Needs the
// lateral faces and the top triangle nonobtuse.
struct VWedge {
  Vec2 b, apL, apR;
  bool contains(const Vec2& p, double eps) const;
};
VWedge v_wedge(const Prismatoid& P, const std::vector<BaseUnfoldEntry>& bu,
               int i);

void require_nonobtuse_lateral_faces(const Prismatoid& P);
bool face_angles_nonobtuse(const std::vector<Vec3>& tri, double eps_ang);

}  // namespace patchfold
