#pragma once
#include <string>
#include <vector>

#include "patchfold/geom.hpp"

namespace patchfold {

enum class FaceKind { BTriangle, ATriangle };
enum class Slope { Up, Down };

// One lateral face of the band.  B-triangles sit on a base edge with an apex
// on the top polygon, A-triangles hang from a top edge with an apex on the
// base.  Vertex order is fixed: B-triangle (b_e, b_{e+1}, a_apex),
// A-triangle (a_{e+1}, a_e, b_apex); both are ccw seen from outside.
struct BandFace {
  FaceKind kind;
  int edge;
  int apex;
};

// Convex hull of two parallel convex polygons: top A at height z over base B
// at height 0, both listed ccw from above.  Global vertex ids: base vertex i
// is i, top vertex j is nB + j.
class Prismatoid {
 public:
  static Prismatoid build(std::vector<Vec2> A, std::vector<Vec2> B, double z);

  const std::vector<Vec2>& A() const { return A_; }
  const std::vector<Vec2>& B() const { return B_; }
  int nA() const { return int(A_.size()); }
  int nB() const { return int(B_.size()); }
  double z() const { return z_; }
  double diameter() const { return diam_; }
  const Tolerance& tol() const { return tol_; }
  const std::vector<BandFace>& band() const { return band_; }

  Prismatoid at_height(double z) const;

  Vec3 vertex(int gid) const;
  std::vector<int> face_vertex_ids(const BandFace& f) const;
  std::vector<Vec3> face_vertices(const BandFace& f) const;
  std::string face_id(const BandFace& f) const;

  Slope slope(const BandFace& f) const;

  int band_index_of_b_face(int edge) const;
  int band_index_of_a_face(int edge) const;

  // Band indices of the A-triangles between the two B-triangles incident to
  // base vertex i, in band order.  May be empty.
  std::vector<int> fan_at(int i) const;
  // Top vertex indices connected to base vertex i by lateral edges, from the
  // apex of the left B-triangle to the apex of the right one.
  std::vector<int> chain_at(int i) const;
  std::vector<double> lateral_edge_lengths(int i) const;

  double top_vertex_curvature(int j) const;
  double base_vertex_curvature(int i) const;

 private:
  std::vector<Vec2> A_, B_;
  double z_ = 0;
  double diam_ = 0;
  Tolerance tol_;
  std::vector<BandFace> band_;
};

void require_convex_ccw(const std::vector<Vec2>& poly, double eps_len,
                        const char* label);

}  // namespace patchfold
