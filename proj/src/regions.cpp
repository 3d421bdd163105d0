#include "patchfold/regions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace patchfold {

namespace {

double dist_point_ray(const Vec2& p, const Vec2& o, const Vec2& dir) {
  double t = std::max(0.0, (p - o).dot(dir));
  return (p - (o + t * dir)).norm();
}

bool point_in_poly_parity(const std::vector<Vec2>& poly, const Vec2& p) {
  bool in = false;
  size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % n];
    if ((a.y > p.y) != (b.y > p.y)) {
      double xint = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
      if (p.x < xint) in = !in;
    }
  }
  return in;
}

}  // namespace

std::vector<BaseUnfoldEntry> base_unfolding(const Prismatoid& P) {
  std::vector<BaseUnfoldEntry> out;
  out.reserve(P.nB());
  double z = P.z();
  for (int i = 0; i < P.nB(); ++i) {
    const BandFace& f = P.band()[P.band_index_of_b_face(i)];
    Vec2 b0 = P.B()[i];
    Vec2 e = P.B()[(i + 1) % P.nB()] - b0;
    double L = e.norm();
    Vec2 eh = e / L;
    Vec2 n{eh.y, -eh.x};
    Vec2 a = P.A()[f.apex];
    double t = (a - b0).dot(eh);
    double d = (a - b0).dot(n);
    BaseUnfoldEntry be;
    be.foot = b0 + t * eh;
    be.normal = n;
    be.d = d;
    be.apex = be.foot + std::sqrt(d * d + z * z) * n;
    out.push_back(be);
  }
  return out;
}

bool rays_cross(const Vec2& o1, const Vec2& d1, const Vec2& o2, const Vec2& d2,
                double eps) {
  double den = d1.cross(d2);
  Vec2 w = o2 - o1;
  if (std::fabs(den) < 1e-14) {
    if (std::fabs(d1.cross(w)) > eps) return false;  // parallel, offset lines
    if (d1.dot(d2) > 0) return true;  // collinear, same direction: overlap
    return w.dot(d1) > eps;           // head-on: overlap iff o2 lies ahead
  }
  double t1 = w.cross(d2) / den;
  double t2 = w.cross(d1) / den;
  return t1 >= eps && t2 >= eps;
}

AltitudePartition altitude_partition(const Prismatoid& P) {
  AltitudePartition ap;
  ap.entries = base_unfolding(P);
  int n = int(ap.entries.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rays_cross(ap.entries[i].apex, ap.entries[i].normal,
                     ap.entries[j].apex, ap.entries[j].normal,
                     P.tol().eps_len))
        fail(ErrorCode::RayCrossing,
             "altitude rays of edges " + std::to_string(i) + " and " +
                 std::to_string(j) + " cross");
  return ap;
}

std::vector<Vec2> apex_track(const Prismatoid& P, int edge,
                             const std::vector<double>& zs) {
  std::vector<Vec2> out;
  out.reserve(zs.size());
  for (double z : zs) {
    Prismatoid Q = P.at_height(z);
    out.push_back(base_unfolding(Q)[edge].apex);
  }
  return out;
}

double max_line_deviation(const std::vector<Vec2>& pts) {
  if (pts.size() < 3) return 0;
  Vec2 d = pts.back() - pts.front();
  double L = d.norm();
  if (L == 0) {
    double m = 0;
    for (const auto& p : pts) m = std::max(m, (p - pts.front()).norm());
    return m;
  }
  Vec2 u = d / L;
  double m = 0;
  for (const auto& p : pts) m = std::max(m, std::fabs(u.cross(p - pts.front())));
  return m;
}

bool AltitudeRegion::contains(const Vec2& p, double eps) const {
  if (dist_point_segment(p, b, apL) <= eps) return true;
  if (dist_point_segment(p, b, apR) <= eps) return true;
  if (dist_point_ray(p, apL, nL) <= eps) return true;
  if (dist_point_ray(p, apR, nR) <= eps) return true;
  Vec2 mid = nL + nR;
  double mn = mid.norm();
  if (mn < 1e-12)
    fail(ErrorCode::InternalInvariant, "region spans a straight angle");
  mid = mid / mn;
  double M = far_scale;
  std::vector<Vec2> poly{b,         apL, apL + M * nL, b + M * mid,
                         apR + M * nR, apR};
  return point_in_poly_parity(poly, p);
}

AltitudeRegion altitude_region(const Prismatoid& P,
                               const std::vector<BaseUnfoldEntry>& bu, int i) {
  int li = (i + P.nB() - 1) % P.nB();
  AltitudeRegion r;
  r.b = P.B()[i];
  r.apL = bu[li].apex;
  r.nL = bu[li].normal;
  r.apR = bu[i].apex;
  r.nR = bu[i].normal;
  r.far_scale = 1e4 * P.diameter();
  return r;
}

bool face_angles_nonobtuse(const std::vector<Vec3>& tri, double eps_ang) {
  for (int k = 0; k < 3; ++k)
    if (angle_at(tri[k], tri[(k + 1) % 3], tri[(k + 2) % 3]) >
        std::numbers::pi / 2 + eps_ang)
      return false;
  return true;
}

void require_nonobtuse_lateral_faces(const Prismatoid& P) {
  for (const auto& f : P.band())
    if (!face_angles_nonobtuse(P.face_vertices(f), P.tol().eps_ang))
      fail(ErrorCode::ObtuseFace, "lateral face " + P.face_id(f) +
                                      " has an obtuse angle");
}

namespace {

// Wedge membership around b between directions uL and uR, reflex aware: when
// the turn from uL to uR is reflex the two half-plane conditions are joined
// by OR instead of AND.
bool in_wedge(const Vec2& b, const Vec2& uL, const Vec2& uR, const Vec2& p,
              double eps) {
  double cL = uL.cross(p - b);
  double cR = uR.cross(p - b);
  bool convex_span = uL.cross(uR) >= 0;
  if (convex_span) return cL >= -eps && cR <= eps;
  return cL >= -eps || cR <= eps;
}

}  // namespace

bool Diamond::contains(const Vec2& p, double eps) const {
  Vec2 uL = apL - b, uR = apR - b;
  if (!in_wedge(b, uL, uR, p, eps)) return false;
  return (p - apL).dot(uL) <= eps && (p - apR).dot(uR) <= eps;
}

Diamond diamond(const Prismatoid& P, const std::vector<BaseUnfoldEntry>& bu,
                int i) {
  require_nonobtuse_lateral_faces(P);
  int li = (i + P.nB() - 1) % P.nB();
  return Diamond{P.B()[i], bu[li].apex, bu[i].apex};
}

bool VWedge::contains(const Vec2& p, double eps) const {
  return in_wedge(b, apL - b, apR - b, p, eps);
}

VWedge v_wedge(const Prismatoid& P, const std::vector<BaseUnfoldEntry>& bu,
               int i) {
  if (P.nA() != 3 || P.nB() != 3)
    fail(ErrorCode::MalformedInput,
         "wedge containment is stated for triangular prismatoids");
  require_nonobtuse_lateral_faces(P);
  std::vector<Vec3> top;
  for (int j = 0; j < 3; ++j) top.push_back(P.vertex(P.nB() + j));
  if (!face_angles_nonobtuse(top, P.tol().eps_ang))
    fail(ErrorCode::ObtuseFace, "top triangle has an obtuse angle");
  int li = (i + P.nB() - 1) % P.nB();
  return VWedge{P.B()[i], bu[li].apex, bu[i].apex};
}

}  // namespace patchfold
