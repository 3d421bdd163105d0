#include "patchfold/geom.hpp"

#include <algorithm>
#include <cstdlib>

namespace patchfold {

const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::NonFiniteInput: return "NonFiniteInput";
    case ErrorCode::MalformedInput: return "MalformedInput";
    case ErrorCode::NonConvexInput: return "NonConvexInput";
    case ErrorCode::QuadLateralFace: return "QuadLateralFace";
    case ErrorCode::ExactlyHorizontalNormal: return "ExactlyHorizontalNormal";
    case ErrorCode::DegenerateHinge: return "DegenerateHinge";
    case ErrorCode::NonPlanarFace: return "NonPlanarFace";
    case ErrorCode::DegenerateAngle: return "DegenerateAngle";
    case ErrorCode::DegenerateHull: return "DegenerateHull";
    case ErrorCode::NotADisk: return "NotADisk";
    case ErrorCode::UnsupportedPatch: return "UnsupportedPatch";
    case ErrorCode::ObtuseFace: return "ObtuseFace";
    case ErrorCode::RayCrossing: return "RayCrossing";
    case ErrorCode::NoSafeFlip: return "NoSafeFlip";
    case ErrorCode::ContainmentFailure: return "ContainmentFailure";
    case ErrorCode::OverlapDetected: return "OverlapDetected";
    case ErrorCode::CombinatorialExplosion: return "CombinatorialExplosion";
    case ErrorCode::GenerationExhausted: return "GenerationExhausted";
    case ErrorCode::UnhandledCase: return "UnhandledCase";
    case ErrorCode::InternalInvariant: return "InternalInvariant";
  }
  return "UnknownError";
}

double Tolerance::scale() {
  static const double s = [] {
    if (const char* env = std::getenv("PATCHFOLD_TOL")) {
      char* end = nullptr;
      double v = std::strtod(env, &end);
      if (end != env && std::isfinite(v) && v > 0) return v;
    }
    return 1e-9;
  }();
  return s;
}

Tolerance Tolerance::for_diameter(double diam) {
  Tolerance t;
  t.eps_len = scale() * diam;
  t.eps_ang = scale();
  return t;
}

bool finite(const Vec2& v) { return std::isfinite(v.x) && std::isfinite(v.y); }
bool finite(const Vec3& v) {
  return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

double polygon_diameter(const std::vector<Vec2>& pts) {
  double d = 0;
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j)
      d = std::max(d, (pts[i] - pts[j]).norm());
  return d;
}

double polygon_diameter(const std::vector<Vec3>& pts) {
  double d = 0;
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j)
      d = std::max(d, (pts[i] - pts[j]).norm());
  return d;
}

double polygon_area(const std::vector<Vec2>& poly) {
  double a = 0;
  size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) a += poly[i].cross(poly[(i + 1) % n]);
  return 0.5 * a;
}

Vec2 polygon_centroid(const std::vector<Vec2>& poly) {
  Vec2 c{0, 0};
  for (const auto& p : poly) c = c + p;
  return c / double(poly.size());
}

int orient2d(const Vec2& p, const Vec2& q, const Vec2& r, double eps_len) {
  Vec2 pq = q - p;
  double cr = pq.cross(r - p);
  double L = pq.norm();
  if (std::fabs(cr) <= eps_len * L) return 0;
  return cr > 0 ? 1 : -1;
}

bool point_in_convex_ccw(const std::vector<Vec2>& poly, const Vec2& p,
                         double eps_len) {
  size_t n = poly.size();
  for (size_t i = 0; i < n; ++i)
    if (orient2d(poly[i], poly[(i + 1) % n], p, eps_len) < 0) return false;
  return true;
}

double dist_point_segment(const Vec2& p, const Vec2& a, const Vec2& b) {
  Vec2 ab = b - a;
  double L2 = ab.norm2();
  if (L2 == 0) return (p - a).norm();
  double t = std::clamp((p - a).dot(ab) / L2, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

bool segments_properly_intersect(const Vec2& a, const Vec2& b, const Vec2& c,
                                 const Vec2& d, double eps_len, Vec2* witness) {
  int o1 = orient2d(a, b, c, eps_len);
  int o2 = orient2d(a, b, d, eps_len);
  int o3 = orient2d(c, d, a, eps_len);
  int o4 = orient2d(c, d, b, eps_len);

  if (o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0) {
    double denom = (b - a).cross(d - c);
    if (denom != 0) {
      double t = (c - a).cross(d - c) / denom;
      if (witness) *witness = a + t * (b - a);
    } else if (witness) {
      *witness = (a + b + c + d) / 4.0;
    }
    return true;
  }

  if (o1 == 0 && o2 == 0 && o3 == 0 && o4 == 0) {
    // Both segments on one line: proper only when the overlap has positive
    // length; touching end-to-end is fine.
    Vec2 dir = b - a;
    double L = dir.norm();
    if (L <= eps_len) return false;
    dir = dir / L;
    double ta0 = 0, ta1 = L;
    double tc = (c - a).dot(dir), td = (d - a).dot(dir);
    double tlo = std::min(tc, td), thi = std::max(tc, td);
    double lo = std::max(ta0, tlo), hi = std::min(ta1, thi);
    if (hi - lo > eps_len) {
      if (witness) *witness = a + 0.5 * (lo + hi) * dir;
      return true;
    }
    return false;
  }
  return false;
}

Vec2 reflect_across_line(const Vec2& p, const Vec2& origin, const Vec2& dir) {
  double L = dir.norm();
  if (L == 0) fail(ErrorCode::DegenerateHinge, "reflection axis has no direction");
  Vec2 u = dir / L;
  Vec2 w = p - origin;
  double along = w.dot(u);
  Vec2 perp = w - along * u;
  return origin + along * u - perp;
}

double angle_at(const Vec2& apex, const Vec2& u, const Vec2& v) {
  Vec2 du = u - apex, dv = v - apex;
  double nu = du.norm(), nv = dv.norm();
  if (nu == 0 || nv == 0)
    fail(ErrorCode::DegenerateAngle, "angle leg has zero length");
  double c = std::clamp(du.dot(dv) / (nu * nv), -1.0, 1.0);
  return std::acos(c);
}

double angle_at(const Vec3& apex, const Vec3& u, const Vec3& v) {
  Vec3 du = u - apex, dv = v - apex;
  double nu = du.norm(), nv = dv.norm();
  if (nu == 0 || nv == 0)
    fail(ErrorCode::DegenerateAngle, "angle leg has zero length");
  double c = std::clamp(du.dot(dv) / (nu * nv), -1.0, 1.0);
  return std::acos(c);
}

std::vector<Vec2> unfold_face_about_edge(const std::vector<Vec3>& face,
                                          const Vec3& h0, const Vec3& h1,
                                          const Vec2& g0, const Vec2& g1,
                                          int side, double eps_len) {
  Vec3 e3 = h1 - h0;
  double L3 = e3.norm();
  if (L3 <= eps_len) fail(ErrorCode::DegenerateHinge, "hinge endpoints coincide");

  // Newell normal; also the planarity certificate for the face.
  Vec3 n{0, 0, 0};
  size_t m = face.size();
  for (size_t i = 0; i < m; ++i) {
    const Vec3& p = face[i];
    const Vec3& q = face[(i + 1) % m];
    n.x += (p.y - q.y) * (p.z + q.z);
    n.y += (p.z - q.z) * (p.x + q.x);
    n.z += (p.x - q.x) * (p.y + q.y);
  }
  double nn = n.norm();
  if (nn == 0) fail(ErrorCode::NonPlanarFace, "face has no area");
  Vec3 nh = n / nn;
  for (const auto& p : face)
    if (std::fabs((p - h0).dot(nh)) > std::max(eps_len, 1e-12 * L3) * 16)
      fail(ErrorCode::NonPlanarFace, "face vertices leave their plane");

  Vec3 ex3 = e3 / L3;
  Vec3 ey3 = nh.cross(ex3);

  Vec2 g = g1 - g0;
  double L2 = g.norm();
  if (L2 <= eps_len) fail(ErrorCode::DegenerateHinge, "hinge image collapses");
  Vec2 ex2 = g / L2;
  Vec2 ey2{-ex2.y, ex2.x};

  // (u,w) face coordinates in the hinge frame; flip w so the bulk of the
  // face (largest |w| vertex) lands on the requested side.
  std::vector<double> us(m), ws(m);
  double wmax = 0;
  for (size_t i = 0; i < m; ++i) {
    Vec3 d = face[i] - h0;
    us[i] = d.dot(ex3);
    ws[i] = d.dot(ey3);
    if (std::fabs(ws[i]) > std::fabs(wmax)) wmax = ws[i];
  }
  double s = (wmax >= 0) ? double(side) : double(-side);

  std::vector<Vec2> out(m);
  for (size_t i = 0; i < m; ++i) out[i] = g0 + us[i] * ex2 + s * ws[i] * ey2;
  return out;
}

}  // namespace patchfold
