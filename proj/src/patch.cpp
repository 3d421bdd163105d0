#include "patchfold/patch.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <string>

namespace patchfold {

double ConvexPolyhedron::diameter() const { return polygon_diameter(vertices); }

namespace {

Vec3 face_unit_normal(const ConvexPolyhedron& P, const std::vector<int>& face) {
  Vec3 n{0, 0, 0};
  size_t m = face.size();
  for (size_t i = 0; i < m; ++i) {
    const Vec3& p = P.vertices[face[i]];
    const Vec3& q = P.vertices[face[(i + 1) % m]];
    n.x += (p.y - q.y) * (p.z + q.z);
    n.y += (p.z - q.z) * (p.x + q.x);
    n.z += (p.x - q.x) * (p.y + q.y);
  }
  double L = n.norm();
  if (L == 0) fail(ErrorCode::NonPlanarFace, "face has no area");
  return n / L;
}

}  // namespace

void ConvexPolyhedron::validate(double support_eps) const {
  if (vertices.size() < 4)
    fail(ErrorCode::MalformedInput, "polyhedron needs at least 4 vertices");
  for (const auto& v : vertices)
    if (!finite(v)) fail(ErrorCode::NonFiniteInput, "non-finite vertex");
  if (faces.size() < 4)
    fail(ErrorCode::MalformedInput, "polyhedron needs at least 4 faces");

  std::map<std::pair<int, int>, int> directed;
  for (const auto& f : faces) {
    if (f.size() < 3) fail(ErrorCode::MalformedInput, "face with fewer than 3 vertices");
    std::set<int> uniq(f.begin(), f.end());
    if (uniq.size() != f.size())
      fail(ErrorCode::MalformedInput, "face repeats a vertex");
    for (int id : f)
      if (id < 0 || id >= int(vertices.size()))
        fail(ErrorCode::MalformedInput, "face vertex id out of range");
    for (size_t i = 0; i < f.size(); ++i)
      directed[{f[i], f[(i + 1) % f.size()]}]++;
  }
  for (const auto& [e, c] : directed) {
    if (c != 1)
      fail(ErrorCode::MalformedInput, "directed edge repeated across faces");
    if (!directed.count({e.second, e.first}))
      fail(ErrorCode::MalformedInput, "surface is not closed at an edge");
  }
  size_t E = directed.size() / 2;
  if (int(vertices.size()) - int(E) + int(faces.size()) != 2)
    fail(ErrorCode::MalformedInput, "Euler count is not 2");

  for (const auto& f : faces) {
    Vec3 n = face_unit_normal(*this, f);
    const Vec3& p0 = vertices[f[0]];
    for (int id : f)
      if (std::fabs((vertices[id] - p0).dot(n)) > support_eps)
        fail(ErrorCode::NonPlanarFace, "face vertices leave their plane");
    for (const auto& v : vertices)
      if ((v - p0).dot(n) > support_eps)
        fail(ErrorCode::NonConvexInput, "vertex lies outside a face plane");
  }
}

ConvexPolyhedron convex_hull3(const std::vector<Vec3>& pts,
                              double merge_angle) {
  int n = int(pts.size());
  if (n < 4) fail(ErrorCode::DegenerateHull, "need at least 4 points");
  for (const auto& p : pts)
    if (!finite(p)) fail(ErrorCode::NonFiniteInput, "non-finite point");
  double diam = polygon_diameter(pts);
  if (diam <= 0) fail(ErrorCode::DegenerateHull, "all points coincide");
  double eps = Tolerance::for_diameter(diam).eps_len;

  struct Plane {
    Vec3 n;       // outward unit normal
    double d;     // n . x = d on the plane
    std::set<int> members;
  };
  std::vector<Plane> planes;

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        Vec3 nv = (pts[j] - pts[i]).cross(pts[k] - pts[i]);
        double L = nv.norm();
        if (L <= eps * diam) continue;
        Vec3 nh = nv / L;
        double mx = -1e300, mn = 1e300;
        for (int m = 0; m < n; ++m) {
          double o = (pts[m] - pts[i]).dot(nh);
          mx = std::max(mx, o);
          mn = std::min(mn, o);
        }
        bool sup_pos = mx <= eps;
        bool sup_neg = mn >= -eps;
        if (!sup_pos && !sup_neg) continue;
        if (sup_pos && sup_neg)
          fail(ErrorCode::DegenerateHull, "points are coplanar");
        Vec3 out = sup_pos ? nh : -1.0 * nh;
        double d = out.dot(pts[i]);
        std::set<int> mem;
        for (int m = 0; m < n; ++m)
          if (std::fabs(out.dot(pts[m]) - d) <= eps) mem.insert(m);

        bool grouped = false;
        for (auto& pl : planes) {
          double dot = std::clamp(pl.n.dot(out), -1.0, 1.0);
          if (std::acos(dot) < merge_angle &&
              std::fabs(pl.d - d) < merge_angle * diam + eps) {
            pl.members.insert(mem.begin(), mem.end());
            grouped = true;
            break;
          }
        }
        if (!grouped) planes.push_back({out, d, std::move(mem)});
      }

  if (planes.size() < 4) fail(ErrorCode::DegenerateHull, "too few hull faces");

  // Drop faces whose member set is contained in a larger face's set.
  std::vector<char> keep(planes.size(), 1);
  for (size_t a = 0; a < planes.size(); ++a)
    for (size_t b = 0; b < planes.size(); ++b) {
      if (a == b || !keep[a] || !keep[b]) continue;
      if (planes[a].members == planes[b].members) {
        if (a > b) keep[a] = 0;
        continue;
      }
      if (std::includes(planes[b].members.begin(), planes[b].members.end(),
                        planes[a].members.begin(), planes[a].members.end()))
        keep[a] = 0;
    }

  ConvexPolyhedron out;
  out.vertices = pts;
  for (size_t a = 0; a < planes.size(); ++a) {
    if (!keep[a]) continue;
    const Plane& pl = planes[a];
    if (pl.members.size() < 3) continue;
    Vec3 c{0, 0, 0};
    for (int m : pl.members) c = c + pts[m];
    c = c / double(pl.members.size());
    std::vector<int> mem(pl.members.begin(), pl.members.end());
    Vec3 ex = pts[mem[0]] - c;
    ex = ex / ex.norm();
    Vec3 ey = pl.n.cross(ex);
    std::sort(mem.begin(), mem.end(), [&](int u, int v) {
      Vec3 du = pts[u] - c, dv = pts[v] - c;
      return std::atan2(du.dot(ey), du.dot(ex)) <
             std::atan2(dv.dot(ey), dv.dot(ex));
    });
    out.faces.push_back(std::move(mem));
  }
  out.validate(3 * eps + merge_angle * diam);
  return out;
}

ConvexPolyhedron to_polyhedron(const Prismatoid& P) {
  ConvexPolyhedron out;
  for (int i = 0; i < P.nB(); ++i) out.vertices.push_back(P.vertex(i));
  for (int j = 0; j < P.nA(); ++j) out.vertices.push_back(P.vertex(P.nB() + j));
  std::vector<int> base(P.nB());
  for (int i = 0; i < P.nB(); ++i) base[i] = P.nB() - 1 - i;  // ccw from below
  out.faces.push_back(base);
  std::vector<int> top(P.nA());
  for (int j = 0; j < P.nA(); ++j) top[j] = P.nB() + j;
  out.faces.push_back(top);
  for (const auto& f : P.band()) out.faces.push_back(P.face_vertex_ids(f));
  return out;
}

namespace {

std::pair<int, int> norm_edge(int u, int v) {
  return {std::min(u, v), std::max(u, v)};
}

}  // namespace

ConvexPatch neighborhood(const ConvexPolyhedron& poly, int base_face,
                         PatchKind kind) {
  if (base_face < 0 || base_face >= int(poly.faces.size()))
    fail(ErrorCode::MalformedInput, "base face index out of range");

  const auto& bf = poly.faces[base_face];
  std::set<int> bverts(bf.begin(), bf.end());
  std::set<std::pair<int, int>> bedges;
  for (size_t i = 0; i < bf.size(); ++i)
    bedges.insert(norm_edge(bf[i], bf[(i + 1) % bf.size()]));

  ConvexPatch patch;
  patch.poly = poly;
  patch.base_face = base_face;
  patch.kind = kind;
  patch.faces.push_back(base_face);
  for (int fi = 0; fi < int(poly.faces.size()); ++fi) {
    if (fi == base_face) continue;
    const auto& f = poly.faces[fi];
    bool take = false;
    if (kind == PatchKind::Edge) {
      for (size_t i = 0; i < f.size() && !take; ++i)
        take = bedges.count(norm_edge(f[i], f[(i + 1) % f.size()])) > 0;
    } else {
      for (int id : f)
        if (bverts.count(id)) { take = true; break; }
    }
    if (take) patch.faces.push_back(fi);
  }

  // Edge incidence over the chosen faces decides interior vs boundary.
  std::map<std::pair<int, int>, int> count;
  std::set<int> verts;
  for (int fi : patch.faces) {
    const auto& f = poly.faces[fi];
    for (size_t i = 0; i < f.size(); ++i) {
      count[norm_edge(f[i], f[(i + 1) % f.size()])]++;
      verts.insert(f[i]);
    }
  }
  for (const auto& [e, c] : count) {
    if (c == 2) patch.interior_edges.push_back(e);
    else if (c == 1) patch.boundary_edges.push_back(e);
    else fail(ErrorCode::NotADisk, "an edge is shared by more than two faces");
  }
  if (patch.boundary_edges.empty())
    fail(ErrorCode::NotADisk, "patch covers the whole surface");

  int V = int(verts.size());
  int E = int(count.size());
  int F = int(patch.faces.size());
  if (V - E + F != 1) fail(ErrorCode::NotADisk, "patch Euler count is not 1");

  // Boundary must close into one cycle.
  std::map<int, std::vector<int>> badj;
  for (const auto& [u, v] : patch.boundary_edges) {
    badj[u].push_back(v);
    badj[v].push_back(u);
  }
  for (const auto& [v, nb] : badj)
    if (nb.size() != 2)
      fail(ErrorCode::NotADisk, "patch boundary branches at a vertex");
  std::set<int> seen;
  int start = badj.begin()->first, prev = -1, cur = start;
  do {
    seen.insert(cur);
    const auto& nb = badj[cur];
    int nxt = (nb[0] == prev) ? nb[1] : nb[0];
    prev = cur;
    cur = nxt;
  } while (cur != start);
  if (seen.size() != badj.size())
    fail(ErrorCode::NotADisk, "patch boundary has several loops");

  // Faces must hang together through shared interior edges.
  std::map<std::pair<int, int>, std::vector<int>> efaces;
  for (int fi : patch.faces) {
    const auto& f = poly.faces[fi];
    for (size_t i = 0; i < f.size(); ++i)
      efaces[norm_edge(f[i], f[(i + 1) % f.size()])].push_back(fi);
  }
  std::map<int, int> comp;
  for (int fi : patch.faces) comp[fi] = fi;
  std::function<int(int)> find = [&](int x) {
    while (comp[x] != x) x = comp[x] = comp[comp[x]];
    return x;
  };
  for (const auto& [e, fs] : efaces)
    if (fs.size() == 2) comp[find(fs[0])] = find(fs[1]);
  for (int fi : patch.faces)
    if (find(fi) != find(patch.faces[0]))
      fail(ErrorCode::NotADisk, "patch faces are not connected");

  for (const auto& [v, nb] : badj) patch.boundary_vertices.push_back(v);
  for (int v : verts)
    if (!badj.count(v)) patch.interior_vertices.push_back(v);
  return patch;
}

}  // namespace patchfold
