#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>

#include "patchfold/prismatoid.hpp"
#include "support.hpp"

using namespace patchfold;
using testsupport::expect_error;
using testsupport::tri_prism;

namespace {

// Outward normal of a band face from its 3D vertices (ccw seen from outside).
Vec3 face_normal(const Prismatoid& P, const BandFace& f) {
  auto v = P.face_vertices(f);
  return (v[1] - v[0]).cross(v[2] - v[0]);
}

}  // namespace

TEST_CASE("build rejects broken input") {
  std::vector<Vec2> tri{{1, 0}, {-1, 1}, {-1, -1}};
  SUBCASE("too few vertices") {
    expect_error(ErrorCode::MalformedInput, [&] {
      Prismatoid::build({{0, 0}, {1, 0}}, tri, 1);
    });
  }
  SUBCASE("clockwise polygon") {
    std::vector<Vec2> cw(tri.rbegin(), tri.rend());
    expect_error(ErrorCode::NonConvexInput,
                 [&] { Prismatoid::build(cw, tri, 1); });
  }
  SUBCASE("reflex vertex") {
    std::vector<Vec2> dart{{2, 0}, {0, 2}, {0.2, 0}, {0, -2}};
    expect_error(ErrorCode::NonConvexInput,
                 [&] { Prismatoid::build(tri, dart, 1); });
  }
  SUBCASE("non finite coordinate") {
    std::vector<Vec2> bad{{0, 0}, {1, std::nan("")}, {0, 1}};
    expect_error(ErrorCode::NonFiniteInput,
                 [&] { Prismatoid::build(bad, tri, 1); });
  }
  SUBCASE("top edge parallel over a base edge") {
    // a shrunk copy keeps every edge parallel, so the hull has quad faces
    std::vector<Vec2> sq{{1, 1}, {-1, 1}, {-1, -1}, {1, -1}};
    std::vector<Vec2> small{{0.5, 0.5}, {-0.5, 0.5}, {-0.5, -0.5},
                            {0.5, -0.5}};
    expect_error(ErrorCode::QuadLateralFace,
                 [&] { Prismatoid::build(small, sq, 1); });
  }
}

TEST_CASE("band alternates and covers every edge once") {
  Prismatoid P = tri_prism();
  const auto& band = P.band();
  REQUIRE(band.size() == 6);
  std::set<int> aEdges, bEdges;
  for (const auto& f : band) {
    if (f.kind == FaceKind::ATriangle)
      aEdges.insert(f.edge);
    else
      bEdges.insert(f.edge);
  }
  CHECK(aEdges.size() == 3);
  CHECK(bEdges.size() == 3);

  // round trips through the index lookups
  for (int e = 0; e < 3; ++e) {
    CHECK(band[P.band_index_of_b_face(e)].edge == e);
    CHECK(band[P.band_index_of_b_face(e)].kind == FaceKind::BTriangle);
    CHECK(band[P.band_index_of_a_face(e)].edge == e);
  }
}

TEST_CASE("band faces wind ccw seen from outside") {
  Prismatoid P = tri_prism();
  // interior reference point: average of all vertices
  Vec3 c{0, 0, 0};
  int n = P.nA() + P.nB();
  for (int g = 0; g < n; ++g) c = c + P.vertex(g);
  c = c / double(n);
  for (const auto& f : P.band()) {
    Vec3 nml = face_normal(P, f);
    Vec3 p = P.face_vertices(f)[0];
    CHECK(nml.dot(p - c) > 0);
  }
}

TEST_CASE("slope labels agree with the 3D normal") {
  auto check_all = [](const Prismatoid& P) {
    for (const auto& f : P.band()) {
      Slope s = P.slope(f);
      double nz = face_normal(P, f).z;
      CHECK((s == Slope::Up) == (nz > 0));
    }
  };
  SUBCASE("generic instance") { check_all(tri_prism()); }
  SUBCASE("frustum: top inside the base, every face tilts up") {
    Prismatoid P = Prismatoid::build({{0.6, 0.0}, {-0.1, 0.5}, {-0.5, -0.4}},
                                     {{2, 0}, {0, 2}, {-2, -2}}, 1);
    for (const auto& f : P.band()) CHECK(P.slope(f) == Slope::Up);
    check_all(P);
  }
  SUBCASE("overhang: top covers the base, every face tilts down") {
    Prismatoid P = Prismatoid::build({{2, 0}, {0, 2}, {-2, -2}},
                                     {{0.6, 0.0}, {-0.1, 0.5}, {-0.5, -0.4}},
                                     1);
    for (const auto& f : P.band()) CHECK(P.slope(f) == Slope::Down);
    check_all(P);
  }
}

TEST_CASE("height changes leave the combinatorics alone") {
  Prismatoid P = tri_prism();
  for (double z : {0.03125, 0.5, 8.0}) {
    Prismatoid Q = P.at_height(z);
    CHECK(Q.z() == z);
    REQUIRE(Q.band().size() == P.band().size());
    for (size_t k = 0; k < P.band().size(); ++k) {
      CHECK(Q.band()[k].kind == P.band()[k].kind);
      CHECK(Q.band()[k].edge == P.band()[k].edge);
      CHECK(Q.band()[k].apex == P.band()[k].apex);
      CHECK(Q.slope(Q.band()[k]) == P.slope(P.band()[k]));
    }
  }
  // a flat build works too
  Prismatoid Q0 = P.at_height(0);
  CHECK(Q0.z() == 0);
  CHECK(Q0.band().size() == P.band().size());
}

TEST_CASE("lateral edge lengths follow pythagoras and keep their order") {
  Prismatoid P = tri_prism(1.0);
  for (int i = 0; i < P.nB(); ++i) {
    auto lens1 = P.lateral_edge_lengths(i);
    auto chain = P.chain_at(i);
    REQUIRE(lens1.size() == chain.size());
    for (size_t k = 0; k < chain.size(); ++k) {
      double planar = (P.A()[chain[k]] - P.B()[i]).norm();
      CHECK(lens1[k] == doctest::Approx(std::hypot(planar, P.z())));
    }
    // sorted order is the same at any height
    auto lens2 = P.at_height(5.0).lateral_edge_lengths(i);
    std::vector<int> ord1(lens1.size()), ord2(lens2.size());
    std::iota(ord1.begin(), ord1.end(), 0);
    std::iota(ord2.begin(), ord2.end(), 0);
    std::stable_sort(ord1.begin(), ord1.end(),
                     [&](int a, int b) { return lens1[a] < lens1[b]; });
    std::stable_sort(ord2.begin(), ord2.end(),
                     [&](int a, int b) { return lens2[a] < lens2[b]; });
    CHECK(ord1 == ord2);
  }
}

TEST_CASE("chains and fans are consistent") {
  Prismatoid P = tri_prism();
  size_t total_fan = 0;
  for (int i = 0; i < P.nB(); ++i) {
    auto fan = P.fan_at(i);
    auto chain = P.chain_at(i);
    total_fan += fan.size();
    CHECK(chain.size() == fan.size() + 1);
    // chain endpoints are the apexes of the two neighboring base triangles
    int left = P.band_index_of_b_face((i + P.nB() - 1) % P.nB());
    int right = P.band_index_of_b_face(i);
    CHECK(chain.front() == P.band()[left].apex);
    CHECK(chain.back() == P.band()[right].apex);
    // every fan member is an A-triangle with apex i
    for (int k : fan) {
      CHECK(P.band()[k].kind == FaceKind::ATriangle);
      CHECK(P.band()[k].apex == i);
    }
  }
  CHECK(total_fan == size_t(P.nA()));
}

TEST_CASE("global vertex ids and face ids") {
  Prismatoid P = tri_prism(2.0);
  CHECK(P.vertex(0).z == 0);
  CHECK(P.vertex(P.nB()).z == 2.0);
  CHECK(P.vertex(1).x == P.B()[1].x);
  CHECK(P.vertex(P.nB() + 2).y == P.A()[2].y);

  for (const auto& f : P.band()) {
    std::string id = P.face_id(f);
    CHECK(id.size() >= 2);
    CHECK(id[0] == (f.kind == FaceKind::BTriangle ? 'B' : 'A'));
    auto ids = P.face_vertex_ids(f);
    REQUIRE(ids.size() == 3);
    if (f.kind == FaceKind::BTriangle) {
      CHECK(ids[0] == f.edge);
      CHECK(ids[1] == (f.edge + 1) % P.nB());
      CHECK(ids[2] == P.nB() + f.apex);
    } else {
      CHECK(ids[0] == P.nB() + (f.edge + 1) % P.nA());
      CHECK(ids[1] == P.nB() + f.edge);
      CHECK(ids[2] == f.apex);
    }
  }
}

TEST_CASE("vertex curvatures sum to 4 pi") {
  const double kPi = std::numbers::pi;
  for (Prismatoid P : {tri_prism(0.4), tri_prism(3.0)}) {
    double total = 0;
    for (int j = 0; j < P.nA(); ++j) total += P.top_vertex_curvature(j);
    for (int i = 0; i < P.nB(); ++i) total += P.base_vertex_curvature(i);
    CHECK(total == doctest::Approx(4 * kPi).epsilon(1e-9));
    // each vertex of a convex body has positive curvature
    for (int j = 0; j < P.nA(); ++j) CHECK(P.top_vertex_curvature(j) > 0);
  }
}
