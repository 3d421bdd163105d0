#include "patchfold/overlap.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace patchfold {

namespace {

struct Interval {
  double lo, hi;
};

Interval project(const std::vector<Vec2>& poly, const Vec2& axis) {
  double lo = poly[0].dot(axis), hi = lo;
  for (const auto& p : poly) {
    double v = p.dot(axis);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {lo, hi};
}

std::vector<Vec2> ccw_copy(const std::vector<Vec2>& poly) {
  if (polygon_area(poly) >= 0) return poly;
  return {poly.rbegin(), poly.rend()};
}

bool strictly_inside(const std::vector<Vec2>& ccwpoly, const Vec2& p,
                     double eps) {
  size_t n = ccwpoly.size();
  for (size_t i = 0; i < n; ++i)
    if (orient2d(ccwpoly[i], ccwpoly[(i + 1) % n], p, eps) <= 0) return false;
  return true;
}

struct BBox {
  double x0 = 1e300, y0 = 1e300, x1 = -1e300, y1 = -1e300;
  void add(const Vec2& p) {
    x0 = std::min(x0, p.x);
    y0 = std::min(y0, p.y);
    x1 = std::max(x1, p.x);
    y1 = std::max(y1, p.y);
  }
  bool apart(const BBox& o, double eps) const {
    return x1 + eps < o.x0 || o.x1 + eps < x0 || y1 + eps < o.y0 ||
           o.y1 + eps < y0;
  }
};

}  // namespace

bool convex_polys_overlap(const std::vector<Vec2>& a,
                          const std::vector<Vec2>& b, double eps,
                          double* depth) {
  double best = 1e300;
  for (const auto* poly : {&a, &b}) {
    size_t n = poly->size();
    for (size_t i = 0; i < n; ++i) {
      Vec2 e = (*poly)[(i + 1) % n] - (*poly)[i];
      double L = e.norm();
      if (L < 1e-300) continue;
      Vec2 axis{-e.y / L, e.x / L};
      Interval ia = project(a, axis), ib = project(b, axis);
      double pen = std::min(ia.hi, ib.hi) - std::max(ia.lo, ib.lo);
      if (pen <= eps) return false;
      best = std::min(best, pen);
    }
  }
  if (depth) *depth = best;
  return true;
}

Vec2 overlap_witness_point(const std::vector<Vec2>& a,
                           const std::vector<Vec2>& b, double eps) {
  size_t na = a.size(), nb = b.size();
  Vec2 w;
  for (size_t i = 0; i < na; ++i)
    for (size_t j = 0; j < nb; ++j)
      if (segments_properly_intersect(a[i], a[(i + 1) % na], b[j],
                                      b[(j + 1) % nb], eps, &w))
        return w;
  auto ac = ccw_copy(a), bc = ccw_copy(b);
  for (const auto& p : a)
    if (strictly_inside(bc, p, eps)) return p;
  for (const auto& p : b)
    if (strictly_inside(ac, p, eps)) return p;
  Vec2 ca = polygon_centroid(a);
  if (strictly_inside(bc, ca, eps)) return ca;
  Vec2 cb = polygon_centroid(b);
  if (strictly_inside(ac, cb, eps)) return cb;
  return (ca + cb) / 2.0;
}

double convex_polys_clearance(const std::vector<Vec2>& a,
                              const std::vector<Vec2>& b) {
  double best = 1e300;
  size_t na = a.size(), nb = b.size();
  for (const auto& p : a)
    for (size_t j = 0; j < nb; ++j)
      best = std::min(best, dist_point_segment(p, b[j], b[(j + 1) % nb]));
  for (const auto& p : b)
    for (size_t i = 0; i < na; ++i)
      best = std::min(best, dist_point_segment(p, a[i], a[(i + 1) % na]));
  return best;
}

OverlapReport layout_overlaps(const Layout& L) {
  OverlapReport rep;
  int n = int(L.faces.size());
  double eps = Tolerance::for_diameter(std::max(L.extent(), 1e-300)).eps_len;

  std::vector<BBox> boxes(n);
  for (int i = 0; i < n; ++i)
    for (const auto& p : L.faces[i].polygon) boxes[i].add(p);

  auto adjacent = [&](int i, int j) {
    return L.faces[i].parent == L.faces[j].id ||
           L.faces[j].parent == L.faces[i].id;
  };

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      ++rep.pairs_checked;
      if (boxes[i].apart(boxes[j], eps)) {
        if (!adjacent(i, j)) {
          double c = convex_polys_clearance(L.faces[i].polygon,
                                            L.faces[j].polygon);
          rep.min_clearance = std::min(rep.min_clearance, c);
        }
        continue;
      }
      double depth = 0;
      if (convex_polys_overlap(L.faces[i].polygon, L.faces[j].polygon, eps,
                               &depth)) {
        rep.overlapping = true;
        rep.max_depth = std::max(rep.max_depth, depth);
        OverlapWitness w;
        w.face_a = L.faces[i].id;
        w.face_b = L.faces[j].id;
        w.depth = depth;
        w.point =
            overlap_witness_point(L.faces[i].polygon, L.faces[j].polygon, eps);
        rep.witnesses.push_back(std::move(w));
      } else if (!adjacent(i, j)) {
        double c =
            convex_polys_clearance(L.faces[i].polygon, L.faces[j].polygon);
        rep.min_clearance = std::min(rep.min_clearance, c);
      }
    }
  return rep;
}

VertexStarReport angle_gap(const Layout& L, int vertex) {
  VertexStarReport rep;
  rep.vertex = vertex;

  bool have_ids = false;
  for (const auto& f : L.faces)
    if (!f.vertex_ids.empty()) { have_ids = true; break; }
  if (!have_ids)
    fail(ErrorCode::MalformedInput,
         "layout carries no vertex ids; angle sums need them");

  auto root_of = [&](const PlacedFace& f) {
    const PlacedFace* cur = &f;
    while (!cur->parent.empty()) {
      int pi = L.index_of(cur->parent);
      if (pi < 0)
        fail(ErrorCode::MalformedInput, "layout parent id is unknown");
      cur = &L.faces[pi];
    }
    return cur->id;
  };

  for (const auto& f : L.faces) {
    int m = int(f.vertex_ids.size());
    for (int k = 0; k < m; ++k) {
      if (f.vertex_ids[k] != vertex) continue;
      rep.present = true;
      double ang = angle_at(f.polygon[k], f.polygon[(k + 1) % m],
                            f.polygon[(k + m - 1) % m]);
      rep.angle_sum += ang;
      rep.component_sums[root_of(f)] += ang;
    }
  }
  if (!rep.present) return rep;
  rep.surrounded = rep.component_sums.size() == 1;
  rep.gap = 2 * std::numbers::pi - rep.angle_sum;
  return rep;
}

double total_curvature(const ConvexPolyhedron& P) {
  std::vector<double> sums(P.vertices.size(), 0.0);
  for (const auto& f : P.faces) {
    int m = int(f.size());
    for (int k = 0; k < m; ++k)
      sums[f[k]] += angle_at(P.vertices[f[k]], P.vertices[f[(k + 1) % m]],
                             P.vertices[f[(k + m - 1) % m]]);
  }
  double total = 0;
  for (double s : sums) total += 2 * std::numbers::pi - s;
  return total;
}

}  // namespace patchfold
