#include "patchfold/unfold.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <string>

#include "patchfold/overlap.hpp"

namespace patchfold {

namespace {

constexpr double kPi = std::numbers::pi;

std::pair<int, int> shared_pair(const std::vector<int>& a,
                                const std::vector<int>& b) {
  std::vector<int> common;
  for (int u : a)
    for (int v : b)
      if (u == v) common.push_back(u);
  if (common.size() != 2)
    fail(ErrorCode::InternalInvariant, "faces do not share exactly one edge");
  return {std::min(common[0], common[1]), std::max(common[0], common[1])};
}

// Incremental layout construction.  Children are placed across the edge they
// share with an already placed parent, on the side away from the parent.
struct Builder {
  Layout L;
  std::function<Vec3(int)> vtx;
  double eps;

  int root(const std::string& id, const std::vector<int>& ids,
           const std::vector<Vec2>& poly) {
    PlacedFace f;
    f.id = id;
    f.polygon = poly;
    f.vertex_ids = ids;
    L.faces.push_back(std::move(f));
    return int(L.faces.size()) - 1;
  }

  int attach(const std::string& id, const std::vector<int>& ids,
             int parent_idx) {
    const PlacedFace& par = L.faces[parent_idx];
    auto [u, v] = shared_pair(par.vertex_ids, ids);
    int pu = -1, pv = -1;
    for (int k = 0; k < int(par.vertex_ids.size()); ++k) {
      if (par.vertex_ids[k] == u) pu = k;
      if (par.vertex_ids[k] == v) pv = k;
    }
    Vec2 g0 = par.polygon[pu], g1 = par.polygon[pv];

    // The parent body side is judged by its farthest corner off the hinge.
    double best = 0;
    int sp = 1;
    for (int k = 0; k < int(par.vertex_ids.size()); ++k) {
      if (k == pu || k == pv) continue;
      double c = (g1 - g0).cross(par.polygon[k] - g0);
      if (std::fabs(c) > std::fabs(best)) { best = c; sp = c > 0 ? 1 : -1; }
    }
    int side = -sp;

    std::vector<Vec3> face3;
    face3.reserve(ids.size());
    for (int gid : ids) face3.push_back(vtx(gid));
    auto placed = unfold_face_about_edge(face3, vtx(u), vtx(v), g0, g1, side, eps);

    PlacedFace f;
    f.id = id;
    f.polygon = std::move(placed);
    f.parent = par.id;
    f.hinge = {u, v};
    f.vertex_ids = ids;
    L.faces.push_back(std::move(f));
    return int(L.faces.size()) - 1;
  }
};

Builder make_builder(const Prismatoid& P) {
  Builder b;
  b.vtx = [&P](int gid) { return P.vertex(gid); };
  b.eps = P.tol().eps_len;
  return b;
}

std::vector<int> base_ids_ccw_outside(const Prismatoid& P) {
  std::vector<int> ids(P.nB());
  for (int i = 0; i < P.nB(); ++i) ids[i] = P.nB() - 1 - i;
  return ids;
}

std::vector<int> top_ids(const Prismatoid& P) {
  std::vector<int> ids(P.nA());
  for (int j = 0; j < P.nA(); ++j) ids[j] = P.nB() + j;
  return ids;
}

void add_cuts(Layout& L, const std::set<std::pair<int, int>>& all_edges) {
  std::set<std::pair<int, int>> hinges;
  for (const auto& f : L.faces)
    if (f.hinge[0] >= 0)
      hinges.insert({std::min(f.hinge[0], f.hinge[1]),
                     std::max(f.hinge[0], f.hinge[1])});
  for (const auto& e : all_edges)
    if (!hinges.count(e)) L.cuts.push_back(e);
}

std::set<std::pair<int, int>> prismatoid_edges(const Prismatoid& P,
                                               bool with_top) {
  std::set<std::pair<int, int>> edges;
  int nB = P.nB(), nA = P.nA();
  for (int i = 0; i < nB; ++i)
    edges.insert({std::min(i, (i + 1) % nB), std::max(i, (i + 1) % nB)});
  for (int i = 0; i < nB; ++i)
    for (int j : P.chain_at(i)) edges.insert({i, nB + j});
  if (with_top)
    for (int j = 0; j < nA; ++j)
      edges.insert({std::min(nB + j, nB + (j + 1) % nA),
                    std::max(nB + j, nB + (j + 1) % nA)});
  return edges;
}

}  // namespace

// ---------- band ----------

Layout band_unfolding(const Prismatoid& P, const BandOptions& opt) {
  const auto& band = P.band();
  int N = int(band.size());
  if (opt.cut < 0 || opt.cut >= N)
    fail(ErrorCode::MalformedInput, "cut position out of range");

  std::vector<int> order(N);
  for (int k = 0; k < N; ++k) order[k] = (opt.cut + 1 + k) % N;

  Builder b = make_builder(P);

  // The strip starts at the severed edge, laid along +y.
  auto ids0 = P.face_vertex_ids(band[order[0]]);
  auto idsPrev = P.face_vertex_ids(band[opt.cut]);
  auto [cu, cv] = shared_pair(idsPrev, ids0);
  Vec3 h0 = P.vertex(cu), h1 = P.vertex(cv);
  double Lcut = (h1 - h0).norm();
  auto first = unfold_face_about_edge(P.face_vertices(band[order[0]]), h0, h1,
                                      Vec2{0, 0}, Vec2{0, Lcut}, 1,
                                      P.tol().eps_len);
  int prev = b.root(P.face_id(band[order[0]]), ids0, first);
  // Root bookkeeping: remember the severed edge as a cut, not a hinge.
  for (int k = 1; k < N; ++k)
    prev = b.attach(P.face_id(band[order[k]]),
                    P.face_vertex_ids(band[order[k]]), prev);

  auto pos_of = [&](int band_idx) {
    return (band_idx - (opt.cut + 1) + N) % N;
  };
  int kb;
  if (opt.attach_base) {
    int bi = *opt.attach_base;
    if (bi < 0 || bi >= N || band[bi].kind != FaceKind::BTriangle)
      fail(ErrorCode::MalformedInput, "base attachment is not a base triangle");
    kb = pos_of(bi);
  } else if (band[order[0]].kind == FaceKind::BTriangle) {
    kb = 0;
  } else if (band[order[N - 1]].kind == FaceKind::BTriangle) {
    kb = N - 1;
  } else {
    kb = 0;
    while (band[order[kb]].kind != FaceKind::BTriangle) ++kb;
  }
  int ka;
  if (opt.attach_top) {
    int ai = *opt.attach_top;
    if (ai < 0 || ai >= N || band[ai].kind != FaceKind::ATriangle)
      fail(ErrorCode::MalformedInput, "top attachment is not a top triangle");
    ka = pos_of(ai);
  } else if (band[order[0]].kind == FaceKind::ATriangle) {
    ka = 0;
  } else if (band[order[N - 1]].kind == FaceKind::ATriangle) {
    ka = N - 1;
  } else {
    ka = N - 1;
    while (band[order[ka]].kind != FaceKind::ATriangle) --ka;
  }

  b.attach("B", base_ids_ccw_outside(P), kb);
  b.attach("TOP", top_ids(P), ka);

  add_cuts(b.L, prismatoid_edges(P, true));
  return b.L;
}

// ---------- petal ----------

namespace {

// Places the two base triangles flanking base vertex i and the fan between
// them under split m; returns layout indices of the fan faces.
std::vector<int> build_fan(Builder& b, const Prismatoid& P, int root_idx,
                           int bt_left_idx, int bt_right_idx, int i, int m,
                           std::vector<int>* fan_layout_idx) {
  auto fan = P.fan_at(i);
  int N = int(fan.size());
  if (m < 0 || m > N)
    fail(ErrorCode::MalformedInput, "fan split out of range");
  std::vector<int> out;
  int parent = bt_left_idx;
  for (int f = 0; f < m; ++f)
    parent = b.attach(P.face_id(P.band()[fan[f]]),
                      P.face_vertex_ids(P.band()[fan[f]]), parent),
    out.push_back(parent);
  parent = bt_right_idx;
  for (int f = N - 1; f >= m; --f)
    parent = b.attach(P.face_id(P.band()[fan[f]]),
                      P.face_vertex_ids(P.band()[fan[f]]), parent),
    out.push_back(parent);
  (void)root_idx;
  if (fan_layout_idx) *fan_layout_idx = out;
  return out;
}

}  // namespace

Layout petal_layout(const Prismatoid& P, const std::vector<int>& splits,
                    std::optional<int> top_attach) {
  int nB = P.nB();
  if (int(splits.size()) != nB)
    fail(ErrorCode::MalformedInput, "one split per base vertex expected");

  Builder b = make_builder(P);
  std::vector<int> bids(nB);
  for (int i = 0; i < nB; ++i) bids[i] = i;
  int root = b.root("B", bids, P.B());

  std::vector<int> bt(nB);
  for (int e = 0; e < nB; ++e) {
    const BandFace& f = P.band()[P.band_index_of_b_face(e)];
    bt[e] = b.attach(P.face_id(f), P.face_vertex_ids(f), root);
  }
  for (int i = 0; i < nB; ++i)
    build_fan(b, P, root, bt[(i + nB - 1) % nB], bt[i], i, splits[i], nullptr);

  if (top_attach) {
    int j = *top_attach;
    if (j < 0 || j >= P.nA())
      fail(ErrorCode::MalformedInput, "top attachment edge out of range");
    const BandFace& af = P.band()[P.band_index_of_a_face(j)];
    int parent = b.L.index_of(P.face_id(af));
    if (parent < 0)
      fail(ErrorCode::InternalInvariant, "attachment face missing from layout");
    b.attach("TOP", top_ids(P), parent);
  }

  add_cuts(b.L, prismatoid_edges(P, top_attach.has_value()));
  return b.L;
}

namespace {

// Placed corners of the fan at base vertex i under split m, via a throwaway
// partial layout.
std::vector<Vec2> fan_points_for_split(const Prismatoid& P, int i, int m) {
  Builder b = make_builder(P);
  int nB = P.nB();
  std::vector<int> bids(nB);
  for (int k = 0; k < nB; ++k) bids[k] = k;
  int root = b.root("B", bids, P.B());
  int li = (i + nB - 1) % nB;
  const BandFace& fl = P.band()[P.band_index_of_b_face(li)];
  const BandFace& fr = P.band()[P.band_index_of_b_face(i)];
  int btl = b.attach(P.face_id(fl), P.face_vertex_ids(fl), root);
  int btr = (li == i) ? btl
                      : b.attach(P.face_id(fr), P.face_vertex_ids(fr), root);
  std::vector<int> fidx;
  build_fan(b, P, root, btl, btr, i, m, &fidx);
  std::vector<Vec2> pts;
  for (int k : fidx)
    pts.insert(pts.end(), b.L.faces[k].polygon.begin(),
               b.L.faces[k].polygon.end());
  return pts;
}

bool split_keeps_fan_in_region(const Prismatoid& P0,
                               const std::vector<BaseUnfoldEntry>& bu0, int i,
                               int m) {
  AltitudeRegion R = altitude_region(P0, bu0, i);
  for (const Vec2& p : fan_points_for_split(P0, i, m))
    if (!R.contains(p, P0.tol().eps_len)) return false;
  return true;
}

}  // namespace

std::vector<int> choose_topless_splits(const Prismatoid& P,
                                       std::vector<std::string>* case_log) {
  Prismatoid P0 = P.at_height(0);
  auto bu0 = base_unfolding(P0);
  int nB = P0.nB();
  std::vector<int> splits(nB, 0);

  for (int i = 0; i < nB; ++i) {
    auto fan = P0.fan_at(i);
    int N = int(fan.size());
    if (N == 0) {
      splits[i] = 0;
      if (case_log) case_log->push_back("empty");
      continue;
    }
    Slope udL = P0.slope(P0.band()[P0.band_index_of_b_face((i + nB - 1) % nB)]);
    Slope udR = P0.slope(P0.band()[P0.band_index_of_b_face(i)]);
    std::vector<Slope> ud(N);
    for (int f = 0; f < N; ++f) ud[f] = P0.slope(P0.band()[fan[f]]);

    std::vector<int> cands;
    const char* kind;
    int s = -1, e = -1;
    for (int f = 0; f < N; ++f)
      if (ud[f] == Slope::Up) {
        if (s < 0) s = f;
        e = f;
      }
    if (s < 0) {
      kind = "no-up";
      if (udR == Slope::Down) cands.push_back(0);
      if (udL == Slope::Down) cands.push_back(N);
    } else {
      for (int f = s; f <= e; ++f)
        if (ud[f] != Slope::Up)
          fail(ErrorCode::UnhandledCase,
               "rising fan triangles are not consecutive");
      kind = "up-run";
      int mL = e + 1, mR = s;
      if (udL == Slope::Down && udR != Slope::Down) {
        cands = {mL, mR};
      } else if (udR == Slope::Down && udL != Slope::Down) {
        cands = {mR, mL};
      } else {
        cands = {mL, mR};
      }
    }
    int preferred = int(cands.size());
    for (int m = 0; m <= N; ++m)
      if (std::find(cands.begin(), cands.end(), m) == cands.end())
        cands.push_back(m);

    int found = -1, at = -1;
    for (int c = 0; c < int(cands.size()); ++c)
      if (split_keeps_fan_in_region(P0, bu0, i, cands[c])) {
        found = cands[c];
        at = c;
        break;
      }
    if (found < 0)
      fail(ErrorCode::ContainmentFailure,
           "no split keeps fan " + std::to_string(i) +
               " inside its altitude region at height zero");
    splits[i] = found;
    if (case_log)
      case_log->push_back(std::string(kind) +
                          (at >= preferred ? "-fallback" : ""));
  }
  return splits;
}

namespace {

void check_fans_in_regions(const Prismatoid& P, const Layout& L) {
  auto bu = base_unfolding(P);
  for (int i = 0; i < P.nB(); ++i) {
    AltitudeRegion R = altitude_region(P, bu, i);
    for (int k : P.fan_at(i)) {
      int li = L.index_of(P.face_id(P.band()[k]));
      if (li < 0)
        fail(ErrorCode::InternalInvariant, "fan face missing from layout");
      for (const Vec2& p : L.faces[li].polygon)
        if (!R.contains(p, P.tol().eps_len))
          fail(ErrorCode::ContainmentFailure,
               "petal " + L.faces[li].id + " leaves region " +
                   std::to_string(i));
    }
  }
}

void check_no_overlap(const Layout& L, const char* what) {
  OverlapReport rep = layout_overlaps(L);
  if (rep.overlapping)
    fail(ErrorCode::OverlapDetected,
         std::string(what) + ": faces " + rep.witnesses[0].face_a + " and " +
             rep.witnesses[0].face_b + " overlap");
}

}  // namespace

Layout petal_unfold_topless(const Prismatoid& P,
                            std::vector<std::string>* case_log) {
  auto splits = choose_topless_splits(P, case_log);
  Layout L = petal_layout(P, splits, std::nullopt);
  check_no_overlap(L, "petal unfolding");
  check_fans_in_regions(P, L);
  return L;
}

Layout petal_unfold_nonobtuse(const Prismatoid& P, bool include_top) {
  require_nonobtuse_lateral_faces(P);
  if (include_top && (P.nA() != 3 || P.nB() != 3))
    fail(ErrorCode::MalformedInput,
         "top attachment is certified for triangular prismatoids only");
  auto splits = choose_topless_splits(P);
  std::optional<int> attach;
  if (include_top) attach = 0;
  Layout L = petal_layout(P, splits, attach);
  check_no_overlap(L, "nonobtuse petal unfolding");

  auto bu = base_unfolding(P);
  for (int i = 0; i < P.nB(); ++i) {
    Diamond D = diamond(P, bu, i);
    AltitudeRegion R = altitude_region(P, bu, i);
    for (int k : P.fan_at(i)) {
      int li = L.index_of(P.face_id(P.band()[k]));
      for (const Vec2& p : L.faces[li].polygon) {
        if (!D.contains(p, P.tol().eps_len))
          fail(ErrorCode::ContainmentFailure,
               "petal " + L.faces[li].id + " leaves its kite");
        if (!R.contains(p, P.tol().eps_len))
          fail(ErrorCode::ContainmentFailure,
               "petal " + L.faces[li].id + " leaves region " +
                   std::to_string(i));
      }
    }
  }
  if (include_top) {
    const BandFace& af = P.band()[P.band_index_of_a_face(0)];
    VWedge W = v_wedge(P, bu, af.apex);
    int ti = L.index_of("TOP");
    for (const Vec2& p : L.faces[ti].polygon)
      if (!W.contains(p, P.tol().eps_len))
        fail(ErrorCode::ContainmentFailure, "top leaves its wedge");
  }
  return L;
}

void enumerate_petal_layouts(
    const Prismatoid& P, bool include_top, long cap,
    const std::function<void(const Layout&, const std::vector<int>&, int)>& fn) {
  int nB = P.nB();
  std::vector<int> sizes(nB);
  double total = 1;
  for (int i = 0; i < nB; ++i) {
    sizes[i] = int(P.fan_at(i).size());
    total *= sizes[i] + 1;
  }
  if (include_top) total *= P.nA();
  if (total > double(cap))
    fail(ErrorCode::CombinatorialExplosion,
         "petal enumeration would produce " + std::to_string((long long)total) +
             " layouts");

  std::vector<int> splits(nB, 0);
  for (;;) {
    if (include_top) {
      for (int j = 0; j < P.nA(); ++j)
        fn(petal_layout(P, splits, j), splits, j);
    } else {
      fn(petal_layout(P, splits, std::nullopt), splits, -1);
    }
    int i = 0;
    while (i < nB) {
      if (++splits[i] <= sizes[i]) break;
      splits[i] = 0;
      ++i;
    }
    if (i == nB) break;
  }
}

// ---------- fan analysis ----------

FanSegmentation fan_segmentation(const Prismatoid& P, int i) {
  FanSegmentation seg;
  auto fan = P.fan_at(i);
  int N = int(fan.size());
  for (int f = 0; f < N; ++f)
    seg.fan_slopes.push_back(P.slope(P.band()[fan[f]]));
  int s = -1, e = -1;
  for (int f = 0; f < N; ++f)
    if (seg.fan_slopes[f] == Slope::Up) {
      if (s < 0) s = f;
      e = f;
    }
  if (s >= 0) {
    for (int f = s; f <= e; ++f)
      if (seg.fan_slopes[f] != Slope::Up)
        fail(ErrorCode::UnhandledCase,
             "rising fan triangles are not consecutive");
    seg.has_up = true;
    seg.up_begin = s;
    seg.up_end = e + 1;
    seg.s_chain = s;
    seg.t_chain = e + 1;
  } else {
    auto lens = P.lateral_edge_lengths(i);
    int best = 0;
    for (int k = 1; k < int(lens.size()); ++k)
      if (lens[k] < lens[best]) best = k;
    seg.s_chain = seg.t_chain = best;
  }
  return seg;
}

int split_for_side(const Prismatoid& P, int i, FlipSide side) {
  FanSegmentation seg = fan_segmentation(P, i);
  int N = int(seg.fan_slopes.size());
  if (seg.has_up)
    return side == FlipSide::LeftTangent ? seg.up_end : seg.up_begin;
  return side == FlipSide::LeftTangent ? N : 0;
}

bool flip_side_safe(const Prismatoid& P, int i, FlipSide side) {
  Prismatoid P0 = P.at_height(0);
  auto bu0 = base_unfolding(P0);
  int m = split_for_side(P0, i, side);
  return split_keeps_fan_in_region(P0, bu0, i, m);
}

FlipSide safe_flip_side(const Prismatoid& P, int i) {
  bool sl = flip_side_safe(P, i, FlipSide::LeftTangent);
  bool sr = flip_side_safe(P, i, FlipSide::RightTangent);
  if (!sl && !sr)
    fail(ErrorCode::NoSafeFlip,
         "neither one-sided split of fan " + std::to_string(i) +
             " keeps it in its region");
  if (sl != sr) return sl ? FlipSide::LeftTangent : FlipSide::RightTangent;
  int nB = P.nB();
  Slope udL = P.slope(P.band()[P.band_index_of_b_face((i + nB - 1) % nB)]);
  Slope udR = P.slope(P.band()[P.band_index_of_b_face(i)]);
  if (udR == Slope::Down && udL != Slope::Down) return FlipSide::RightTangent;
  return FlipSide::LeftTangent;
}

std::optional<std::vector<int>> obtuse_avoiding_splits(const Prismatoid& P) {
  int nB = P.nB();
  double half = kPi / 2, eps = P.tol().eps_ang;
  std::vector<int> splits(nB, 0);
  for (int i = 0; i < nB; ++i) {
    auto fan = P.fan_at(i);
    if (fan.size() != 1) return std::nullopt;
    const BandFace& f = P.band()[fan[0]];
    auto v = P.face_vertices(f);
    auto ids = P.face_vertex_ids(f);
    auto chain = P.chain_at(i);
    // v[0] and v[1] are the two top corners; find which one is the left
    // B-triangle's apex, i.e. on the hinge when the fan chains left
    int left_corner;
    if (ids[0] - nB == chain.front())
      left_corner = 0;
    else if (ids[1] - nB == chain.front())
      left_corner = 1;
    else
      fail(ErrorCode::InternalInvariant, "fan triangle misses its chain end");
    double at0 = angle_at(v[0], v[1], v[2]);
    double at1 = angle_at(v[1], v[2], v[0]);
    double ang_left = left_corner == 0 ? at0 : at1;
    double ang_right = left_corner == 0 ? at1 : at0;
    // place the obtuse corner on the cut side; an obtuse apex angle or an
    // all-nonobtuse triangle leaves the rule indifferent
    if (ang_left > half + eps)
      splits[i] = 0;
    else if (ang_right > half + eps)
      splits[i] = 1;
    else
      splits[i] = 0;
  }
  return splits;
}

// ---------- chain angle facts ----------

double chain_angle(const Prismatoid& P, int i, int l) {
  auto chain = P.chain_at(i);
  if (l <= 0 || l >= int(chain.size()) - 1)
    fail(ErrorCode::MalformedInput, "not an interior chain vertex");
  Vec3 b = P.vertex(i);
  Vec3 prev = P.vertex(P.nB() + chain[l - 1]);
  Vec3 mid = P.vertex(P.nB() + chain[l]);
  Vec3 next = P.vertex(P.nB() + chain[l + 1]);
  return angle_at(mid, prev, b) + angle_at(mid, b, next);
}

AngleClass chain_angle_class(const Prismatoid& P, int i, int l) {
  double a = chain_angle(P, i, l);
  if (std::fabs(a - kPi) <= P.tol().eps_ang) return AngleClass::Straight;
  return a < kPi ? AngleClass::Convex : AngleClass::Reflex;
}

Vec2 chain_straight_base_point(const Vec2& a_prev, const Vec2& a_mid,
                               const Vec2& a_next, double t) {
  Vec2 w1 = a_prev - a_mid, w2 = a_next - a_mid;
  double n1 = w1.norm(), n2 = w2.norm();
  if (n1 == 0 || n2 == 0)
    fail(ErrorCode::DegenerateAngle, "chain neighbors coincide");
  Vec2 s = w1 / n1 + w2 / n2;
  Vec2 dir;
  if (s.norm() < 1e-12) {
    dir = Vec2{-w1.y, w1.x} / n1;  // neighbors opposite: every direction works
  } else {
    s = s / s.norm();
    dir = {-s.y, s.x};
  }
  return a_mid + t * dir;
}

ApexAngleLaw apex_angle_law(double L1, double x, double y, double z) {
  if (!(L1 > 0) || !std::isfinite(x) || !std::isfinite(y) || !(z >= 0))
    fail(ErrorCode::MalformedInput, "apex angle law needs L1>0, z>=0");
  double r = std::hypot(x, y);
  if (r == 0) fail(ErrorCode::DegenerateAngle, "top vertices coincide");
  ApexAngleLaw out;
  Vec3 b{0, 0, 0}, a1{L1, 0, z}, a2{L1 + x, y, z};
  out.measured = angle_at(a1, b, a2);
  out.closed_form =
      std::acos(std::clamp(-L1 * x / (std::sqrt(L1 * L1 + z * z) * r), -1.0, 1.0));
  out.x_sign = (x > 0) - (x < 0);
  return out;
}

// ---------- petal unfoldings of polyhedron patches ----------

namespace {

std::map<std::pair<int, int>, std::vector<int>> patch_edge_faces(
    const ConvexPatch& patch) {
  std::map<std::pair<int, int>, std::vector<int>> ef;
  for (int fi : patch.faces) {
    const auto& f = patch.poly.faces[fi];
    for (size_t i = 0; i < f.size(); ++i) {
      int u = f[i], v = f[(i + 1) % f.size()];
      ef[{std::min(u, v), std::max(u, v)}].push_back(fi);
    }
  }
  return ef;
}

Builder make_patch_builder(const ConvexPatch& patch) {
  Builder b;
  const ConvexPolyhedron* poly = &patch.poly;
  b.vtx = [poly](int gid) { return poly->vertices[gid]; };
  b.eps = Tolerance::for_diameter(patch.poly.diameter()).eps_len;
  return b;
}

// Root faces whose plane is horizontal keep their xy coordinates; any other
// face is developed in an in-plane frame anchored at its first vertex.
std::vector<Vec2> root_face_plan(const ConvexPolyhedron& poly,
                                 const std::vector<int>& face) {
  Vec3 n{0, 0, 0};
  size_t m = face.size();
  for (size_t i = 0; i < m; ++i) {
    const Vec3& p = poly.vertices[face[i]];
    const Vec3& q = poly.vertices[face[(i + 1) % m]];
    n.x += (p.y - q.y) * (p.z + q.z);
    n.y += (p.z - q.z) * (p.x + q.x);
    n.z += (p.x - q.x) * (p.y + q.y);
  }
  double nn = n.norm();
  if (nn == 0) fail(ErrorCode::NonPlanarFace, "root face has no area");
  Vec3 nh = n / nn;
  std::vector<Vec2> out(m);
  if (std::fabs(nh.z) > 1 - 1e-9) {
    for (size_t i = 0; i < m; ++i) {
      const Vec3& p = poly.vertices[face[i]];
      out[i] = {p.x, p.y};
    }
    return out;
  }
  Vec3 o = poly.vertices[face[0]];
  Vec3 ex = poly.vertices[face[1]] - o;
  ex = ex / ex.norm();
  Vec3 ey = nh.cross(ex);
  for (size_t i = 0; i < m; ++i) {
    Vec3 d = poly.vertices[face[i]] - o;
    out[i] = {d.dot(ex), d.dot(ey)};
  }
  return out;
}

}  // namespace

PatchPetalStructure patch_petal_structure(const ConvexPatch& patch) {
  auto ef = patch_edge_faces(patch);
  const auto& bf = patch.poly.faces[patch.base_face];
  int n = int(bf.size());
  PatchPetalStructure st;

  auto across = [&](int u, int v) {
    auto it = ef.find({std::min(u, v), std::max(u, v)});
    if (it == ef.end() || it->second.size() != 2)
      fail(ErrorCode::UnsupportedPatch,
           "a base edge is not interior to the patch");
    return it->second[0] == patch.base_face ? it->second[1] : it->second[0];
  };

  for (int ci = 0; ci < n; ++ci) {
    int v = bf[ci];
    int u = bf[(ci + n - 1) % n];
    int w = bf[(ci + 1) % n];
    PatchFan fan;
    fan.v = v;
    fan.left_face = across(u, v);
    fan.right_face = across(v, w);

    std::vector<int> at_v;
    for (int fi : patch.faces) {
      if (fi == patch.base_face) continue;
      const auto& f = patch.poly.faces[fi];
      if (std::find(f.begin(), f.end(), v) != f.end()) at_v.push_back(fi);
    }
    auto edges_through_v = [&](int fi) {
      const auto& f = patch.poly.faces[fi];
      std::vector<std::pair<int, int>> es;
      int fm = int(f.size());
      for (int k = 0; k < fm; ++k) {
        int a = f[k], c = f[(k + 1) % fm];
        if (a == v || c == v) es.push_back({std::min(a, c), std::max(a, c)});
      }
      return es;
    };

    std::set<int> visited{fan.left_face};
    int cur = fan.left_face;
    while (cur != fan.right_face) {
      int nxt = -1;
      for (const auto& e : edges_through_v(cur)) {
        auto it = ef.find(e);
        if (it == ef.end() || it->second.size() != 2) continue;
        int other = it->second[0] == cur ? it->second[1] : it->second[0];
        if (other == patch.base_face || visited.count(other)) continue;
        if (std::find(at_v.begin(), at_v.end(), other) == at_v.end()) continue;
        nxt = other;
        break;
      }
      if (nxt < 0)
        fail(ErrorCode::UnsupportedPatch,
             "face ring around a base vertex does not close");
      if (nxt != fan.right_face) fan.fan_faces.push_back(nxt);
      visited.insert(nxt);
      cur = nxt;
    }
    st.fans.push_back(std::move(fan));
  }
  return st;
}

Layout patch_petal_layout(const ConvexPatch& patch,
                          const std::vector<int>& splits) {
  PatchPetalStructure st = patch_petal_structure(patch);
  int n = int(st.fans.size());
  if (int(splits.size()) != n)
    fail(ErrorCode::MalformedInput, "one split per base vertex expected");

  Builder b = make_patch_builder(patch);
  const auto& bf = patch.poly.faces[patch.base_face];
  int root = b.root("F" + std::to_string(patch.base_face), bf,
                    root_face_plan(patch.poly, bf));

  // Edge neighbors first (the petals' anchors), one per base edge.
  std::map<int, int> placed;  // patch face index -> layout index
  placed[patch.base_face] = root;
  for (int ci = 0; ci < n; ++ci) {
    int fi = st.fans[ci].right_face;
    if (placed.count(fi)) continue;
    placed[fi] = b.attach("F" + std::to_string(fi), patch.poly.faces[fi], root);
  }
  for (int ci = 0; ci < n; ++ci) {
    const PatchFan& fan = st.fans[ci];
    int N = int(fan.fan_faces.size());
    int m = splits[ci];
    if (m < 0 || m > N)
      fail(ErrorCode::MalformedInput, "fan split out of range");
    int parent = placed.at(fan.left_face);
    for (int f = 0; f < m; ++f) {
      int fi = fan.fan_faces[f];
      if (placed.count(fi))
        fail(ErrorCode::UnsupportedPatch, "a face belongs to two petals");
      parent = b.attach("F" + std::to_string(fi), patch.poly.faces[fi], parent);
      placed[fi] = parent;
    }
    parent = placed.at(fan.right_face);
    for (int f = N - 1; f >= m; --f) {
      int fi = fan.fan_faces[f];
      if (placed.count(fi))
        fail(ErrorCode::UnsupportedPatch, "a face belongs to two petals");
      parent = b.attach("F" + std::to_string(fi), patch.poly.faces[fi], parent);
      placed[fi] = parent;
    }
  }

  std::set<std::pair<int, int>> interior(patch.interior_edges.begin(),
                                         patch.interior_edges.end());
  add_cuts(b.L, interior);
  return b.L;
}

void enumerate_patch_petal_layouts(
    const ConvexPatch& patch, long cap,
    const std::function<void(const Layout&, const std::vector<int>&)>& fn) {
  PatchPetalStructure st = patch_petal_structure(patch);
  int n = int(st.fans.size());
  std::vector<int> sizes(n);
  double total = 1;
  for (int i = 0; i < n; ++i) {
    sizes[i] = int(st.fans[i].fan_faces.size());
    total *= sizes[i] + 1;
  }
  if (total > double(cap))
    fail(ErrorCode::CombinatorialExplosion,
         "petal enumeration would produce " + std::to_string((long long)total) +
             " layouts");
  std::vector<int> splits(n, 0);
  for (;;) {
    fn(patch_petal_layout(patch, splits), splits);
    int i = 0;
    while (i < n) {
      if (++splits[i] <= sizes[i]) break;
      splits[i] = 0;
      ++i;
    }
    if (i == n) break;
  }
}

// ---------- single-tree unfoldings ----------

namespace {

Layout develop_patch(const ConvexPatch& patch,
                     const std::set<std::pair<int, int>>& hinges) {
  Builder b = make_patch_builder(patch);
  auto ef = patch_edge_faces(patch);
  const auto& bf = patch.poly.faces[patch.base_face];
  int root = b.root("F" + std::to_string(patch.base_face), bf,
                    root_face_plan(patch.poly, bf));
  (void)root;
  std::map<int, int> placed{{patch.base_face, 0}};
  std::vector<int> queue{patch.base_face};
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    int fi = queue[qi];
    const auto& f = patch.poly.faces[fi];
    for (size_t k = 0; k < f.size(); ++k) {
      int u = f[k], v = f[(k + 1) % f.size()];
      std::pair<int, int> e{std::min(u, v), std::max(u, v)};
      if (!hinges.count(e)) continue;
      auto it = ef.find(e);
      if (it == ef.end() || it->second.size() != 2) continue;
      int other = it->second[0] == fi ? it->second[1] : it->second[0];
      if (placed.count(other)) continue;
      placed[other] = b.attach("F" + std::to_string(other),
                               patch.poly.faces[other], placed.at(fi));
      queue.push_back(other);
    }
  }
  if (placed.size() != patch.faces.size())
    fail(ErrorCode::InternalInvariant, "cut tree disconnects the unfolding");
  std::set<std::pair<int, int>> interior(patch.interior_edges.begin(),
                                         patch.interior_edges.end());
  add_cuts(b.L, interior);
  return b.L;
}

}  // namespace

void enumerate_tree_layouts(
    const ConvexPatch& patch, long cap,
    const std::function<void(const Layout&,
                             const std::vector<std::pair<int, int>>&)>& fn) {
  const auto& interior = patch.interior_edges;
  std::set<int> iv(patch.interior_vertices.begin(),
                   patch.interior_vertices.end());
  int need = int(iv.size());

  if (need == 0) {
    std::set<std::pair<int, int>> hinges(interior.begin(), interior.end());
    fn(develop_patch(patch, hinges), {});
    return;
  }

  long emitted = 0;
  long examined = 0;
  std::vector<int> bvs = patch.boundary_vertices;
  std::sort(bvs.begin(), bvs.end());

  for (int bv : bvs) {
    std::vector<std::pair<int, int>> allowed;
    for (const auto& e : interior) {
      bool ok1 = iv.count(e.first) || e.first == bv;
      bool ok2 = iv.count(e.second) || e.second == bv;
      if (ok1 && ok2) allowed.push_back(e);
    }
    if (int(allowed.size()) < need) continue;

    std::vector<int> pick;
    std::function<void(int)> rec = [&](int start) {
      if (int(pick.size()) == need) {
        if (++examined > 20000000)
          fail(ErrorCode::CombinatorialExplosion,
               "cut tree enumeration examined too many edge sets");
        std::map<int, int> parent;
        std::function<int(int)> find = [&](int x) {
          if (!parent.count(x)) parent[x] = x;
          while (parent[x] != x) x = parent[x] = parent[parent[x]];
          return x;
        };
        for (int t : pick) {
          int a = find(allowed[t].first), bnode = find(allowed[t].second);
          if (a == bnode) return;  // cycle
          parent[a] = bnode;
        }
        // An acyclic pick of |interior vertices| edges inside this node set
        // necessarily spans every interior vertex and the boundary vertex.
        if (++emitted > cap)
          fail(ErrorCode::CombinatorialExplosion,
               "more cut trees than the cap allows");
        std::set<std::pair<int, int>> hinges(interior.begin(), interior.end());
        std::vector<std::pair<int, int>> tree;
        for (int t : pick) {
          hinges.erase(allowed[t]);
          tree.push_back(allowed[t]);
        }
        fn(develop_patch(patch, hinges), tree);
        return;
      }
      for (int t = start; t < int(allowed.size()); ++t) {
        if (int(allowed.size()) - t < need - int(pick.size())) break;
        pick.push_back(t);
        rec(t + 1);
        pick.pop_back();
      }
    };
    rec(0);
  }
}

}  // namespace patchfold
