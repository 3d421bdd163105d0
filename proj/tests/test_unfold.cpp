#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "patchfold/fixtures.hpp"
#include "patchfold/overlap.hpp"
#include "patchfold/search.hpp"
#include "patchfold/sweep.hpp"
#include "patchfold/unfold.hpp"
#include "support.hpp"

using namespace patchfold;
using namespace patchfold::fixtures;
using testsupport::expect_error;
using testsupport::tri_prism;

namespace {

constexpr double kPi = std::numbers::pi;

// Wherever a child names hinge vertices, parent and child must place them at
// the same planar points.
void check_hinges(const Layout& L, double eps) {
  for (const auto& f : L.faces) {
    if (f.parent.empty()) continue;
    int pi = L.index_of(f.parent);
    REQUIRE(pi >= 0);
    const PlacedFace& p = L.faces[pi];
    for (int h : {f.hinge[0], f.hinge[1]}) {
      auto fit = std::find(f.vertex_ids.begin(), f.vertex_ids.end(), h);
      auto pit = std::find(p.vertex_ids.begin(), p.vertex_ids.end(), h);
      REQUIRE(fit != f.vertex_ids.end());
      REQUIRE(pit != p.vertex_ids.end());
      Vec2 a = f.polygon[fit - f.vertex_ids.begin()];
      Vec2 b = p.polygon[pit - p.vertex_ids.begin()];
      CHECK((a - b).norm() <= eps);
    }
  }
}

void check_band_isometry(const Prismatoid& P, const Layout& L) {
  for (const auto& f : P.band()) {
    int li = L.index_of(P.face_id(f));
    REQUIRE(li >= 0);
    testsupport::check_isometric(P.face_vertices(f), L.faces[li].polygon,
                                 1e-9 * P.diameter());
  }
}

}  // namespace

TEST_CASE("band unfolding of the banded hexagon") {
  Prismatoid P = banded_hexagon();
  Layout L = band_unfolding(P);
  REQUIRE(L.faces.size() == 14);
  CHECK(L.cuts.size() == 11);  // 24 edges, 13 hinges

  // strip starts right after the cut and walks around the band
  CHECK(L.faces[0].id == "B3");
  CHECK(L.faces[0].parent.empty());
  for (int k = 1; k < 12; ++k) CHECK(L.faces[k].parent == L.faces[k - 1].id);

  // the severed lateral edge lies on the y axis, strip to its left
  CHECK(testsupport::near(L.faces[0].polygon[0], {0, 0}, 1e-12));
  bool on_axis = false;
  for (const Vec2& v : L.faces[0].polygon)
    if (std::fabs(v.x) < 1e-9 && v.y > 0.1) on_axis = true;
  CHECK(on_axis);

  // base and top hang off the strip ends
  int bi = L.index_of("B"), ti = L.index_of("TOP");
  REQUIRE(bi >= 0);
  REQUIRE(ti >= 0);
  CHECK(L.faces[bi].parent == "B3");
  CHECK(L.faces[ti].parent == "A2");

  check_band_isometry(P, L);
  check_hinges(L, 1e-9 * P.diameter());
}

TEST_CASE("band cut position and attachment overrides") {
  Prismatoid P = banded_hexagon();
  BandOptions opt;
  opt.cut = 5;
  Layout L = band_unfolding(P, opt);
  CHECK(L.faces[0].id == P.face_id(P.band()[6]));

  int bpos = -1, apos = -1;
  for (int k = 0; k < int(P.band().size()); ++k) {
    if (P.band()[k].kind == FaceKind::BTriangle && bpos < 0) bpos = k;
    if (P.band()[k].kind == FaceKind::ATriangle) apos = k;
  }
  BandOptions opt2;
  opt2.attach_base = bpos;
  opt2.attach_top = apos;
  Layout L2 = band_unfolding(P, opt2);
  CHECK(L2.faces[L2.index_of("B")].parent == P.face_id(P.band()[bpos]));
  CHECK(L2.faces[L2.index_of("TOP")].parent == P.face_id(P.band()[apos]));

  BandOptions bad;
  bad.attach_base = apos;  // wrong kind
  expect_error(ErrorCode::MalformedInput, [&] { band_unfolding(P, bad); });
}

TEST_CASE("a nearly flat twisted prism unrolls without overlap") {
  std::vector<Vec2> B{{1, 1}, {-1, 1}, {-1, -1}, {1, -1}};
  std::vector<Vec2> A;
  double c = std::cos(0.35), s = std::sin(0.35);
  for (const Vec2& b : B) A.push_back({0.97 * (c * b.x - s * b.y),
                                       0.97 * (s * b.x + c * b.y)});
  Prismatoid P = Prismatoid::build(A, B, 0.01);
  Layout L = band_unfolding(P);
  CHECK(!layout_overlaps(L).overlapping);
}

TEST_CASE("petal layout structure") {
  Prismatoid P = banded_hexagon();
  Layout L = petal_layout(P, std::vector<int>(6, 0), 0);
  REQUIRE(L.faces.size() == 14);
  CHECK(L.cuts.size() == 11);
  CHECK(L.faces[0].id == "B");
  CHECK(L.faces[0].parent.empty());
  for (int e = 0; e < 6; ++e) {
    int li = L.index_of("B" + std::to_string(e));
    REQUIRE(li >= 0);
    CHECK(L.faces[li].parent == "B");
  }
  // with no left-chained triangles every fan face hangs off a base triangle
  for (int e = 0; e < 6; ++e) {
    int li = L.index_of("A" + std::to_string(e));
    REQUIRE(li >= 0);
    CHECK(L.faces[li].parent[0] == 'B');
  }
  CHECK(L.faces[L.index_of("TOP")].parent == "A0");
  check_band_isometry(P, L);
  check_hinges(L, 1e-9 * P.diameter());

  Layout topless = petal_layout(P, std::vector<int>(6, 0), std::nullopt);
  CHECK(topless.faces.size() == 13);
  // without the top polygon its edges are boundary, so only the six severed
  // lateral edges are cuts
  CHECK(topless.cuts.size() == 6);
  CHECK(topless.index_of("TOP") == -1);

  Layout other = petal_layout(P, std::vector<int>(6, 0), 2);
  CHECK(other.faces[other.index_of("TOP")].parent == "A2");
}

TEST_CASE("height zero split rule on the fixtures") {
  std::vector<std::string> log;
  auto w = choose_topless_splits(wings_ccw(), &log);
  CHECK(w == std::vector<int>{0, 1, 0});
  CHECK(log == std::vector<std::string>{"no-up", "up-run", "no-up"});

  log.clear();
  auto d = choose_topless_splits(drum(), &log);
  CHECK(d == std::vector<int>{0, 1, 1, 1, 0, 1});
  REQUIRE(log.size() == 6);
  for (const auto& c : log) CHECK(c == "up-run");
}

TEST_CASE("bad splits overlap, the chosen ones do not") {
  SUBCASE("skewed triangular instance") {
    Prismatoid W = wings_ccw();
    Layout bad = petal_layout(W, {0, 1, 1}, std::nullopt);
    OverlapReport rep = layout_overlaps(bad);
    REQUIRE(rep.overlapping);
    bool hit = false;
    for (const auto& wit : rep.witnesses)
      if ((wit.face_a == "A2" && wit.face_b == "A0") ||
          (wit.face_a == "A0" && wit.face_b == "A2"))
        hit = true;
    CHECK(hit);
    Layout good = petal_unfold_topless(W);
    CHECK(!layout_overlaps(good).overlapping);
  }
  SUBCASE("near regular drum with a top") {
    Prismatoid D = drum();
    Layout bad = petal_layout(D, std::vector<int>(6, 0), 2);
    OverlapReport rep = layout_overlaps(bad);
    REQUIRE(rep.overlapping);
    CHECK(((rep.witnesses[0].face_a == "A3" &&
            rep.witnesses[0].face_b == "TOP") ||
           (rep.witnesses[0].face_a == "TOP" &&
            rep.witnesses[0].face_b == "A3")));
    Layout rescued = petal_layout(D, {0, 0, 0, 0, 1, 0}, 2);
    CHECK(!layout_overlaps(rescued).overlapping);
  }
}

TEST_CASE("certified petal construction succeeds on the fixtures") {
  for (Prismatoid P : {banded_hexagon(), drum(), wings_ccw(), tri_prism()}) {
    Layout L = petal_unfold_topless(P);
    CHECK(!layout_overlaps(L).overlapping);
    CHECK(int(L.faces.size()) == 1 + P.nA() + P.nB());
  }
}

TEST_CASE("petal enumeration counts split vectors times attachments") {
  Prismatoid P = tri_prism();
  std::set<std::vector<int>> seen;
  int n = 0;
  enumerate_petal_layouts(P, false, 100,
                          [&](const Layout&, const std::vector<int>& s,
                              int) {
                            seen.insert(s);
                            n++;
                          });
  CHECK(n == 8);  // three fans of one triangle each, two sides per fan
  CHECK(seen.size() == 8);

  int with_top = 0;
  enumerate_petal_layouts(P, true, 100,
                          [&](const Layout& L, const std::vector<int>&,
                              int ta) {
                            with_top++;
                            CHECK(ta >= 0);
                            CHECK(ta < 3);
                            CHECK(L.index_of("TOP") >= 0);
                          });
  CHECK(with_top == 24);

  expect_error(ErrorCode::CombinatorialExplosion, [&] {
    enumerate_petal_layouts(P, true, 5,
                            [](const Layout&, const std::vector<int>&, int) {});
  });
}

TEST_CASE("fan segmentation labels the rising run") {
  Prismatoid W = wings_ccw();
  FanSegmentation s0 = fan_segmentation(W, 0);
  FanSegmentation s1 = fan_segmentation(W, 1);
  CHECK(!s0.has_up);
  CHECK(s1.has_up);
  REQUIRE(s1.fan_slopes.size() == 1);
  CHECK(s1.fan_slopes[0] == Slope::Up);
  CHECK(s1.up_begin == 0);
  CHECK(s1.up_end == 1);
  for (int i = 0; i < W.nB(); ++i) {
    FanSegmentation s = fan_segmentation(W, i);
    auto fan = W.fan_at(i);
    REQUIRE(s.fan_slopes.size() == fan.size());
    for (size_t k = 0; k < fan.size(); ++k)
      CHECK(s.fan_slopes[k] == W.slope(W.band()[fan[k]]));
    CHECK(s.s_chain >= 0);
    CHECK(s.t_chain <= int(W.chain_at(i).size()) - 1);
  }
}

TEST_CASE("one-sided splits and the safe side") {
  Prismatoid W = wings_ccw();
  for (int i = 0; i < W.nB(); ++i) {
    int l = split_for_side(W, i, FlipSide::LeftTangent);
    int r = split_for_side(W, i, FlipSide::RightTangent);
    int N = int(W.fan_at(i).size());
    CHECK(l >= 0);
    CHECK(l <= N);
    CHECK(r >= 0);
    CHECK(r <= N);
    FlipSide side = safe_flip_side(W, i);
    CHECK(flip_side_safe(W, i, side));
  }

  // across a random corpus, every fan with a reflex chain vertex has at
  // least one safe side and safe_flip_side finds it
  GeneratorConfig cfg;
  cfg.seed = 3;
  int reflex_seen = 0;
  for (long k = 0; k < 60; ++k) {
    Prismatoid P = random_prismatoid(cfg, k);
    for (int i = 0; i < P.nB(); ++i) {
      auto chain = P.chain_at(i);
      bool reflex = false;
      for (int l = 1; l + 1 < int(chain.size()); ++l)
        if (chain_angle_class(P, i, l) == AngleClass::Reflex) reflex = true;
      if (!reflex) continue;
      reflex_seen++;
      bool left = flip_side_safe(P, i, FlipSide::LeftTangent);
      bool right = flip_side_safe(P, i, FlipSide::RightTangent);
      CHECK((left || right));
      CHECK(flip_side_safe(P, i, safe_flip_side(P, i)));
    }
  }
  CHECK(reflex_seen > 0);
}

TEST_CASE("obtuse turn rule for singleton fans") {
  SUBCASE("resolves the crossed triangular fixture") {
    Prismatoid P = wings_ccw();
    auto s = obtuse_avoiding_splits(P);
    REQUIRE(s.has_value());
    // fans 0 and 2 carry obtuse corners on their left top vertex, forcing
    // the right turn; fan 1 is obtuse only at the apex, so indifferent
    CHECK(*s == std::vector<int>{0, 0, 0});
    CHECK(!layout_overlaps(petal_layout(P, *s, std::nullopt)).overlapping);
    CHECK(layout_overlaps(petal_layout(P, {1, 1, 1}, std::nullopt))
              .overlapping);
  }
  SUBCASE("frees the obtuse corner on the alternating hexagon") {
    Prismatoid P = banded_hexagon();
    auto s = obtuse_avoiding_splits(P);
    REQUIRE(s.has_value());
    CHECK(*s == std::vector<int>{1, 0, 1, 0, 1, 0});
    CHECK(!layout_overlaps(petal_layout(P, *s, std::nullopt)).overlapping);
  }
  SUBCASE("undefined when a fan holds several triangles") {
    std::vector<Vec2> A;
    for (int k = 0; k < 8; ++k) {
      double t = 2 * kPi * k / 8 + 0.2 + 0.03 * k;
      A.push_back({0.5 * std::cos(t), 0.5 * std::sin(t)});
    }
    Prismatoid P =
        Prismatoid::build(A, {{2.1, 0}, {-1.6, 1.9}, {-1.4, -2.2}}, 1.0);
    CHECK(!obtuse_avoiding_splits(P).has_value());
  }
}

TEST_CASE("chain angles: class fixed in height, march toward pi") {
  // triangle base under an octagon top makes chains with interior vertices
  std::vector<Vec2> A;
  for (int k = 0; k < 8; ++k) {
    double t = 2 * kPi * k / 8 + 0.2 + 0.03 * k;
    A.push_back({0.5 * std::cos(t), 0.5 * std::sin(t)});
  }
  std::vector<Vec2> B{{2.1, 0}, {-1.6, 1.9}, {-1.4, -2.2}};
  Prismatoid P = Prismatoid::build(A, B, 1.0);
  auto grid = default_z_grid();
  int interior = 0;
  for (int i = 0; i < P.nB(); ++i) {
    auto chain = P.chain_at(i);
    for (int l = 1; l + 1 < int(chain.size()); ++l) {
      interior++;
      AngleClass cls = chain_angle_class(P.at_height(grid[0]), i, l);
      double prev_gap = -1;
      for (double z : grid) {
        Prismatoid Q = P.at_height(z);
        CHECK(chain_angle_class(Q, i, l) == cls);
        double gap = std::fabs(chain_angle(Q, i, l) - kPi);
        if (prev_gap >= 0) CHECK(gap <= prev_gap + 1e-9);
        prev_gap = gap;
      }
    }
  }
  CHECK(interior == 5);  // 8 fan triangles across 3 fans
}

TEST_CASE("base points on the straightening line pin the angle at pi") {
  Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    Vec2 prev{rng.uniform(-2, 2), rng.uniform(-2, 2)};
    Vec2 mid{rng.uniform(-2, 2), rng.uniform(-2, 2)};
    Vec2 next{rng.uniform(-2, 2), rng.uniform(-2, 2)};
    if ((prev - mid).norm() < 0.3 || (next - mid).norm() < 0.3) continue;
    Vec2 w1 = (prev - mid) / (prev - mid).norm();
    Vec2 w2 = (next - mid) / (next - mid).norm();
    if ((w1 + w2).norm() < 0.05) continue;  // nearly straight already
    double t = rng.uniform(0.2, 2.0) * (trial % 2 ? 1 : -1);
    Vec2 b = chain_straight_base_point(prev, mid, next, t);
    for (double z : default_z_grid()) {
      Vec3 p3{prev.x, prev.y, z}, m3{mid.x, mid.y, z}, n3{next.x, next.y, z};
      Vec3 b3{b.x, b.y, 0};
      double alpha = angle_at(m3, p3, b3) + angle_at(m3, b3, n3);
      CHECK(std::fabs(alpha - kPi) < 1e-9);
    }
  }
}

TEST_CASE("apex angle closed form and the sign dichotomy") {
  auto grid = default_z_grid();
  SUBCASE("x positive: obtuse, falling toward a right angle") {
    double prev = kPi;
    for (double z : grid) {
      ApexAngleLaw law = apex_angle_law(1.3, 0.4, 0.6, z);
      CHECK(law.x_sign == 1);
      CHECK(std::fabs(law.measured - law.closed_form) <= 1e-12);
      CHECK(law.measured > kPi / 2);
      CHECK(law.measured < prev);
      prev = law.measured;
    }
  }
  SUBCASE("x negative: acute, rising toward a right angle") {
    double prev = 0;
    for (double z : grid) {
      ApexAngleLaw law = apex_angle_law(0.8, -0.5, 0.3, z);
      CHECK(law.x_sign == -1);
      CHECK(std::fabs(law.measured - law.closed_form) <= 1e-12);
      CHECK(law.measured < kPi / 2);
      CHECK(law.measured > prev);
      prev = law.measured;
    }
  }
  SUBCASE("x zero: right angle at every height") {
    for (double z : grid) {
      ApexAngleLaw law = apex_angle_law(2.0, 0.0, 0.9, z);
      CHECK(law.x_sign == 0);
      CHECK(std::fabs(law.measured - kPi / 2) <= 1e-12);
    }
  }
}

TEST_CASE("petal structure of the counterexample patch") {
  PatchFixture fx = counterexample_nv();
  ConvexPatch patch = neighborhood(fx.poly, fx.base_face, fx.kind);
  PatchPetalStructure st = patch_petal_structure(patch);
  REQUIRE(st.fans.size() == 3);
  CHECK(st.fans[0].v == 3);
  CHECK(st.fans[1].v == 0);
  CHECK(st.fans[2].v == 4);
  CHECK(st.fans[0].fan_faces.size() == 2);
  CHECK(st.fans[1].fan_faces.size() == 1);
  CHECK(st.fans[2].fan_faces.size() == 2);
  std::set<int> members(patch.faces.begin(), patch.faces.end());
  for (const auto& f : st.fans) {
    CHECK(members.count(f.left_face) == 1);
    CHECK(members.count(f.right_face) == 1);
    for (int g : f.fan_faces) CHECK(members.count(g) == 1);
  }

  int layouts = 0, overlapping = 0, thin_witness = 0;
  enumerate_patch_petal_layouts(
      patch, 100, [&](const Layout& L, const std::vector<int>&) {
        layouts++;
        OverlapReport rep = layout_overlaps(L);
        if (rep.overlapping) overlapping++;
        for (const auto& w : rep.witnesses)
          if (w.face_a == "F2" || w.face_b == "F2") {
            thin_witness++;
            break;
          }
      });
  CHECK(layouts == 18);
  CHECK(overlapping == 18);
  CHECK(thin_witness == 18);
}

TEST_CASE("hexagon topless patch petals are all clean") {
  ConvexPatch patch = banded_hexagon_patch(false);
  int layouts = 0, clean = 0;
  enumerate_patch_petal_layouts(patch, 200,
                                [&](const Layout& L, const std::vector<int>&) {
                                  layouts++;
                                  if (!layout_overlaps(L).overlapping) clean++;
                                });
  CHECK(layouts == 64);
  CHECK(clean == 64);
}

TEST_CASE("tree unfoldings") {
  ConvexPolyhedron poly = to_polyhedron(tri_prism());
  SUBCASE("no interior vertices, one layout") {
    ConvexPatch edgeN = neighborhood(poly, 0, PatchKind::Edge);
    int n = 0;
    enumerate_tree_layouts(edgeN, 100,
                           [&](const Layout& L,
                               const std::vector<std::pair<int, int>>& tree) {
                             n++;
                             CHECK(tree.empty());
                             CHECK(L.faces.size() == 4);
                             CHECK(!layout_overlaps(L).overlapping);
                           });
    CHECK(n == 1);
  }
  SUBCASE("vertex neighborhood of a triangular base") {
    ConvexPatch vertN = neighborhood(poly, 0, PatchKind::Vertex);
    int n = 0;
    enumerate_tree_layouts(vertN, 1000,
                           [&](const Layout& L,
                               const std::vector<std::pair<int, int>>&) {
                             n++;
                             CHECK(L.faces.size() == vertN.faces.size());
                             check_hinges(L, 1e-9 * poly.diameter());
                           });
    CHECK(n == 24);
    expect_error(ErrorCode::CombinatorialExplosion, [&] {
      enumerate_tree_layouts(
          vertN, 5,
          [](const Layout&, const std::vector<std::pair<int, int>>&) {});
    });
  }
  SUBCASE("every single tree layout of the baseless hexagon patch overlaps") {
    ConvexPatch patch = banded_hexagon_patch(true);
    int n = 0, overlapping = 0;
    enumerate_tree_layouts(patch, 1000,
                           [&](const Layout& L,
                               const std::vector<std::pair<int, int>>&) {
                             n++;
                             if (layout_overlaps(L).overlapping) overlapping++;
                           });
    CHECK(n == 102);
    CHECK(overlapping == 102);
  }
}
