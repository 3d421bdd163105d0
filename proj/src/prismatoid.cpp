#include "patchfold/prismatoid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace patchfold {

void require_convex_ccw(const std::vector<Vec2>& poly, double eps_len,
                        const char* label) {
  int n = int(poly.size());
  if (n < 3)
    fail(ErrorCode::MalformedInput,
         std::string(label) + " needs at least 3 vertices");
  for (const auto& p : poly)
    if (!finite(p))
      fail(ErrorCode::NonFiniteInput, std::string(label) + " has a non-finite vertex");
  int neg = 0;
  for (int i = 0; i < n; ++i) {
    int s = orient2d(poly[i], poly[(i + 1) % n], poly[(i + 2) % n], eps_len);
    if (s == 0)
      fail(ErrorCode::NonConvexInput,
           std::string(label) + " has collinear consecutive vertices");
    if (s < 0) ++neg;
  }
  if (neg == n)
    fail(ErrorCode::NonConvexInput, std::string(label) + " is listed clockwise");
  if (neg > 0)
    fail(ErrorCode::NonConvexInput, std::string(label) + " is not convex");
}

namespace {

Vec2 edge_outward_normal(const std::vector<Vec2>& poly, int e) {
  int n = int(poly.size());
  Vec2 d = poly[(e + 1) % n] - poly[e];
  double L = d.norm();
  return Vec2{d.y, -d.x} / L;
}

// Index of the vertex of `pts` farthest along direction n.  A near-tie means
// the hull would carry a quadrilateral lateral face there.
int extreme_vertex(const std::vector<Vec2>& pts, const Vec2& n, double eps,
                   const char* what) {
  int best = 0;
  double bv = pts[0].dot(n);
  for (int j = 1; j < int(pts.size()); ++j) {
    double v = pts[j].dot(n);
    if (v > bv) { bv = v; best = j; }
  }
  int ties = 0;
  for (int j = 0; j < int(pts.size()); ++j)
    if (pts[j].dot(n) > bv - eps) ++ties;
  if (ties > 1) fail(ErrorCode::QuadLateralFace, what);
  return best;
}

}  // namespace

Prismatoid Prismatoid::build(std::vector<Vec2> A, std::vector<Vec2> B,
                             double z) {
  if (!std::isfinite(z)) fail(ErrorCode::NonFiniteInput, "height is not finite");
  if (z < 0) fail(ErrorCode::MalformedInput, "height must be nonnegative");

  Prismatoid P;
  P.A_ = std::move(A);
  P.B_ = std::move(B);
  P.z_ = z;

  std::vector<Vec2> all = P.A_;
  all.insert(all.end(), P.B_.begin(), P.B_.end());
  for (const auto& p : all)
    if (!finite(p)) fail(ErrorCode::NonFiniteInput, "non-finite vertex");
  P.diam_ = polygon_diameter(all);
  if (P.diam_ <= 0) fail(ErrorCode::MalformedInput, "all vertices coincide");
  P.tol_ = Tolerance::for_diameter(P.diam_);

  require_convex_ccw(P.A_, P.tol_.eps_len, "top polygon");
  require_convex_ccw(P.B_, P.tol_.eps_len, "base polygon");

  struct Entry { double ang; BandFace f; };
  std::vector<Entry> entries;
  int nA = P.nA(), nB = P.nB();
  for (int i = 0; i < nB; ++i) {
    Vec2 n = edge_outward_normal(P.B_, i);
    int j = extreme_vertex(P.A_, n, P.tol_.eps_len,
                           "top support is an edge over a base edge");
    entries.push_back({std::atan2(n.y, n.x),
                       BandFace{FaceKind::BTriangle, i, j}});
  }
  for (int j = 0; j < nA; ++j) {
    Vec2 n = edge_outward_normal(P.A_, j);
    int i = extreme_vertex(P.B_, n, P.tol_.eps_len,
                           "base support is an edge under a top edge");
    entries.push_back({std::atan2(n.y, n.x),
                       BandFace{FaceKind::ATriangle, j, i}});
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.ang != b.ang) return a.ang < b.ang;
    return a.f.kind == FaceKind::BTriangle && b.f.kind == FaceKind::ATriangle;
  });
  P.band_.reserve(entries.size());
  for (auto& e : entries) P.band_.push_back(e.f);

  // Consecutive band faces must share a lateral edge; anything else means
  // the support structure is inconsistent.
  int N = int(P.band_.size());
  for (int k = 0; k < N; ++k) {
    auto u = P.face_vertex_ids(P.band_[k]);
    auto v = P.face_vertex_ids(P.band_[(k + 1) % N]);
    int shared = 0;
    for (int a : u)
      for (int b : v)
        if (a == b) ++shared;
    if (shared != 2)
      fail(ErrorCode::InternalInvariant,
           "adjacent band faces do not share a lateral edge");
  }
  return P;
}

Prismatoid Prismatoid::at_height(double z) const {
  Prismatoid Q = build(A_, B_, z);
  return Q;
}

Vec3 Prismatoid::vertex(int gid) const {
  if (gid < nB()) return {B_[gid].x, B_[gid].y, 0.0};
  int j = gid - nB();
  return {A_[j].x, A_[j].y, z_};
}

std::vector<int> Prismatoid::face_vertex_ids(const BandFace& f) const {
  if (f.kind == FaceKind::BTriangle) {
    return {f.edge, (f.edge + 1) % nB(), nB() + f.apex};
  }
  return {nB() + (f.edge + 1) % nA(), nB() + f.edge, f.apex};
}

std::vector<Vec3> Prismatoid::face_vertices(const BandFace& f) const {
  std::vector<Vec3> out;
  for (int gid : face_vertex_ids(f)) out.push_back(vertex(gid));
  return out;
}

std::string Prismatoid::face_id(const BandFace& f) const {
  return (f.kind == FaceKind::BTriangle ? "B" : "A") + std::to_string(f.edge);
}

Slope Prismatoid::slope(const BandFace& f) const {
  double d;
  if (f.kind == FaceKind::BTriangle) {
    Vec2 n = edge_outward_normal(B_, f.edge);
    d = n.dot(A_[f.apex] - B_[f.edge]);
    if (std::fabs(d) <= tol_.eps_len)
      fail(ErrorCode::ExactlyHorizontalNormal,
           "lateral face normal is horizontal at " + face_id(f));
    return d < 0 ? Slope::Up : Slope::Down;
  }
  Vec2 n = edge_outward_normal(A_, f.edge);
  d = n.dot(B_[f.apex] - A_[f.edge]);
  if (std::fabs(d) <= tol_.eps_len)
    fail(ErrorCode::ExactlyHorizontalNormal,
         "lateral face normal is horizontal at " + face_id(f));
  return d > 0 ? Slope::Up : Slope::Down;
}

int Prismatoid::band_index_of_b_face(int edge) const {
  for (int k = 0; k < int(band_.size()); ++k)
    if (band_[k].kind == FaceKind::BTriangle && band_[k].edge == edge) return k;
  fail(ErrorCode::InternalInvariant, "missing base triangle in band");
}

int Prismatoid::band_index_of_a_face(int edge) const {
  for (int k = 0; k < int(band_.size()); ++k)
    if (band_[k].kind == FaceKind::ATriangle && band_[k].edge == edge) return k;
  fail(ErrorCode::InternalInvariant, "missing top triangle in band");
}

std::vector<int> Prismatoid::fan_at(int i) const {
  int left = band_index_of_b_face((i + nB() - 1) % nB());
  int N = int(band_.size());
  std::vector<int> out;
  for (int k = (left + 1) % N; ; k = (k + 1) % N) {
    const BandFace& f = band_[k];
    if (f.kind == FaceKind::BTriangle) {
      if (f.edge != i)
        fail(ErrorCode::InternalInvariant, "band walk skipped a base triangle");
      break;
    }
    if (f.apex != i)
      fail(ErrorCode::InternalInvariant, "fan triangle hangs from wrong vertex");
    out.push_back(k);
  }
  return out;
}

std::vector<int> Prismatoid::chain_at(int i) const {
  int left = band_index_of_b_face((i + nB() - 1) % nB());
  std::vector<int> chain{band_[left].apex};
  for (int k : fan_at(i)) chain.push_back((band_[k].edge + 1) % nA());
  return chain;
}

std::vector<double> Prismatoid::lateral_edge_lengths(int i) const {
  std::vector<double> out;
  Vec2 b = B_[i];
  for (int j : chain_at(i)) {
    Vec2 d = A_[j] - b;
    out.push_back(std::sqrt(d.norm2() + z_ * z_));
  }
  return out;
}

double Prismatoid::top_vertex_curvature(int j) const {
  int gid = nB() + j;
  double sum = angle_at(A_[j], A_[(j + 1) % nA()], A_[(j + nA() - 1) % nA()]);
  for (const auto& f : band_) {
    auto ids = face_vertex_ids(f);
    for (int k = 0; k < 3; ++k)
      if (ids[k] == gid)
        sum += angle_at(vertex(ids[k]), vertex(ids[(k + 1) % 3]),
                        vertex(ids[(k + 2) % 3]));
  }
  return 2 * std::numbers::pi - sum;
}

double Prismatoid::base_vertex_curvature(int i) const {
  double sum = angle_at(B_[i], B_[(i + 1) % nB()], B_[(i + nB() - 1) % nB()]);
  for (const auto& f : band_) {
    auto ids = face_vertex_ids(f);
    for (int k = 0; k < 3; ++k)
      if (ids[k] == i)
        sum += angle_at(vertex(ids[k]), vertex(ids[(k + 1) % 3]),
                        vertex(ids[(k + 2) % 3]));
  }
  return 2 * std::numbers::pi - sum;
}

}  // namespace patchfold
