#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "patchfold/fixtures.hpp"
#include "patchfold/overlap.hpp"
#include "patchfold/unfold.hpp"
#include "support.hpp"

using namespace patchfold;
using namespace patchfold::fixtures;

namespace {
constexpr double kDeg = std::numbers::pi / 180.0;
}

TEST_CASE("counterexample coordinates are the published ones") {
  PatchFixture fx = counterexample_nv();
  REQUIRE(fx.poly.vertices.size() == 9);
  REQUIRE(fx.poly.faces.size() == 11);
  CHECK(fx.base_face == 0);
  CHECK(fx.kind == PatchKind::Vertex);

  const std::vector<Vec3> want{
      {0.0, 0.0, 0.2},
      {0.603496, 0.0399127, 0.2},
      {-0.603496, 0.0399127, 0.2},
      {2.0, -0.1, 0.0},
      {-2.0, -0.1, 0.0},
      {0.0124876, 0.501659, 0.2},
      {-0.0124876, 0.501659, 0.2},
      {6.03626, -0.4, -0.6},
      {-6.03626, -0.4, -0.6},
  };
  for (size_t k = 0; k < want.size(); ++k) {
    CHECK(fx.poly.vertices[k].x == want[k].x);
    CHECK(fx.poly.vertices[k].y == want[k].y);
    CHECK(fx.poly.vertices[k].z == want[k].z);
  }
  CHECK(fx.poly.faces[0] == std::vector<int>{3, 0, 4});
  CHECK(fx.poly.faces[2] == std::vector<int>{0, 1, 2});
  CHECK(fx.poly.faces[10] == std::vector<int>{8, 6, 5, 7});
}

TEST_CASE("counterexample is mirror symmetric in x") {
  PatchFixture fx = counterexample_nv();
  // the reflection x -> -x permutes the vertex list as 0, 2<->1, 4<->3, ...
  const int mirror[9] = {0, 2, 1, 4, 3, 6, 5, 8, 7};
  for (int k = 0; k < 9; ++k) {
    Vec3 v = fx.poly.vertices[k];
    Vec3 m = fx.poly.vertices[mirror[k]];
    CHECK(v.x == -m.x);
    CHECK(v.y == m.y);
    CHECK(v.z == m.z);
  }
}

TEST_CASE("counterexample supports its faces at the stated tolerance") {
  PatchFixture fx = counterexample_nv();
  fx.poly.validate(kCounterexampleSupportTol);
}

TEST_CASE("every petal unfolding of the counterexample patch overlaps") {
  PatchFixture fx = counterexample_nv();
  ConvexPatch patch = neighborhood(fx.poly, fx.base_face, fx.kind);
  int layouts = 0, overlapping = 0;
  double worst = 0;
  enumerate_patch_petal_layouts(patch, 100,
                                [&](const Layout& L, const std::vector<int>&) {
                                  layouts++;
                                  OverlapReport rep = layout_overlaps(L);
                                  if (rep.overlapping) overlapping++;
                                  worst = std::max(worst, rep.max_depth);
                                });
  CHECK(layouts == 18);
  CHECK(overlapping == 18);
  // the deepest penetration across the enumeration is small but real
  CHECK(worst == doctest::Approx(0.0203281).epsilon(1e-4));
}

TEST_CASE("banded hexagon hits its curvature targets") {
  Prismatoid P = banded_hexagon();
  CHECK(P.nA() == 6);
  CHECK(P.nB() == 6);
  CHECK(P.z() == 0.3);
  for (int j = 0; j < 6; ++j) {
    double want = (j % 2 == 0) ? 7.5 : 2.0;
    CHECK(P.top_vertex_curvature(j) / kDeg ==
          doctest::Approx(want).epsilon(1e-9));
  }
}

TEST_CASE("banded hexagon is threefold symmetric") {
  Prismatoid P = banded_hexagon();
  double c = std::cos(120 * kDeg), s = std::sin(120 * kDeg);
  for (int k = 0; k < 6; ++k) {
    Vec2 ra{c * P.A()[k].x - s * P.A()[k].y, s * P.A()[k].x + c * P.A()[k].y};
    CHECK(testsupport::near(ra, P.A()[(k + 2) % 6], 1e-12));
    Vec2 rb{c * P.B()[k].x - s * P.B()[k].y, s * P.B()[k].x + c * P.B()[k].y};
    CHECK(testsupport::near(rb, P.B()[(k + 2) % 6], 1e-12));
  }
}

TEST_CASE("the radii literals agree with a fresh curvature solve") {
  auto [r1, r2] = solve_hexagon_radii(15.0, 1.0, 0.7, 0.3, 7.5, 2.0);
  CHECK(r1 == doctest::Approx(0.14303130363489264).epsilon(1e-12));
  CHECK(r2 == doctest::Approx(0.094144090829495639).epsilon(1e-12));
}

TEST_CASE("all twelve band unfoldings of the hexagon overlap") {
  Prismatoid P = banded_hexagon();
  int overlapping = 0;
  for (int cut = 0; cut < 12; ++cut) {
    BandOptions opt;
    opt.cut = cut;
    if (layout_overlaps(band_unfolding(P, opt)).overlapping) overlapping++;
  }
  CHECK(overlapping == 12);
  // while the petal unfolding is clean
  CHECK(!layout_overlaps(petal_unfold_topless(P)).overlapping);
}

TEST_CASE("single tree unfoldings of the baseless hexagon patch all overlap") {
  ConvexPatch patch = banded_hexagon_patch(true);
  int n = 0, overlapping = 0;
  double min_depth = 1e9;
  enumerate_tree_layouts(patch, 1000,
                         [&](const Layout& L,
                             const std::vector<std::pair<int, int>>&) {
                           n++;
                           OverlapReport rep = layout_overlaps(L);
                           if (rep.overlapping) {
                             overlapping++;
                             min_depth = std::min(min_depth, rep.max_depth);
                           }
                         });
  CHECK(n == 102);
  CHECK(overlapping == 102);
  // the shallowest of the 102 overlaps, pinned
  CHECK(min_depth == doctest::Approx(6.095482494361537e-05).epsilon(1e-6));
}

TEST_CASE("drum and wings shapes") {
  Prismatoid D = drum();
  CHECK(D.nA() == 6);
  CHECK(D.nB() == 6);
  CHECK(D.z() == 0.25);
  Prismatoid W = wings_ccw();
  CHECK(W.nA() == 3);
  CHECK(W.nB() == 3);
  CHECK(W.z() == 0.01);
}
