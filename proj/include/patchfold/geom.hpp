#pragma once
#include <cmath>
#include <optional>
#include <vector>

#include "patchfold/errors.hpp"

namespace patchfold {

struct Vec2 {
  double x = 0, y = 0;
  Vec2() = default;
  Vec2(double x_, double y_) : x(x_), y(y_) {}
  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator/(double s) const { return {x / s, y / s}; }
  double dot(const Vec2& o) const { return x * o.x + y * o.y; }
  double cross(const Vec2& o) const { return x * o.y - y * o.x; }
  double norm() const { return std::hypot(x, y); }
  double norm2() const { return x * x + y * y; }
};
inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

struct Vec3 {
  double x = 0, y = 0, z = 0;
  Vec3() = default;
  Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}
  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double norm() const { return std::sqrt(x * x + y * y + z * z); }
  double norm2() const { return x * x + y * y + z * z; }
};
inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

// Length tolerances scale with the instance diameter so that the library
// behaves identically for a model in millimetres or kilometres.  The scale
// factor defaults to 1e-9 and can be overridden through the PATCHFOLD_TOL
// environment variable (read once per process).
struct Tolerance {
  double eps_len = 0;   // absolute length threshold, scale * diameter
  double eps_ang = 0;   // angle threshold in radians

  static double scale();  // env override or 1e-9
  static Tolerance for_diameter(double diam);
};

bool finite(const Vec2& v);
bool finite(const Vec3& v);

double polygon_diameter(const std::vector<Vec2>& pts);
double polygon_diameter(const std::vector<Vec3>& pts);
double polygon_area(const std::vector<Vec2>& poly);  // signed, ccw positive
Vec2 polygon_centroid(const std::vector<Vec2>& poly);

// Sign of the turn p->q->r: +1 left, -1 right, 0 when r lies within eps_len
// of the line pq (the threshold is a distance from the line, not a raw
// cross-product bound).
int orient2d(const Vec2& p, const Vec2& q, const Vec2& r, double eps_len);

bool point_in_convex_ccw(const std::vector<Vec2>& poly, const Vec2& p,
                         double eps_len);
double dist_point_segment(const Vec2& p, const Vec2& a, const Vec2& b);

// True when the open interiors of ab and cd meet, including collinear
// overlap of positive length.  Shared endpoints and endpoint-on-interior
// touches do not count.  On success *witness receives a point of the
// intersection.
bool segments_properly_intersect(const Vec2& a, const Vec2& b, const Vec2& c,
                                 const Vec2& d, double eps_len,
                                 Vec2* witness = nullptr);

Vec2 reflect_across_line(const Vec2& p, const Vec2& origin, const Vec2& dir);

double angle_at(const Vec2& apex, const Vec2& u, const Vec2& v);
double angle_at(const Vec3& apex, const Vec3& u, const Vec3& v);

// Rigidly maps a planar face in 3-space into the plane: hinge vertices h0,h1
// land on g0,g1 and the face body falls on `side` of the directed segment
// g0->g1 (+1 left, -1 right).  Lengths and angles are preserved.
std::vector<Vec2> unfold_face_about_edge(const std::vector<Vec3>& face,
                                          const Vec3& h0, const Vec3& h1,
                                          const Vec2& g0, const Vec2& g1,
                                          int side, double eps_len);

}  // namespace patchfold
