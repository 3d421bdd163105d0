#include "patchfold/fixtures.hpp"

#include <cmath>
#include <numbers>

namespace patchfold {
namespace fixtures {

namespace {
constexpr double kDeg = std::numbers::pi / 180.0;
}

PatchFixture counterexample_nv() {
  PatchFixture fx;
  fx.poly.vertices = {
      {0.0, 0.0, 0.2},           // 0  base apex vertex
      {0.603496, 0.0399127, 0.2},   // 1
      {-0.603496, 0.0399127, 0.2},  // 2
      {2.0, -0.1, 0.0},          // 3  base corner, right
      {-2.0, -0.1, 0.0},         // 4  base corner, left
      {0.0124876, 0.501659, 0.2},   // 5
      {-0.0124876, 0.501659, 0.2},  // 6
      {6.03626, -0.4, -0.6},     // 7
      {-6.03626, -0.4, -0.6},    // 8
  };
  fx.poly.faces = {
      {3, 0, 4},      // 0  base
      {4, 8, 7, 3},   // 1
      {0, 1, 2},      // 2  thin sliver over the base apex
      {1, 5, 6, 2},   // 3
      {1, 0, 3},      // 4
      {2, 4, 0},      // 5
      {3, 5, 1},      // 6
      {3, 7, 5},      // 7
      {4, 2, 6},      // 8
      {4, 6, 8},      // 9
      {8, 6, 5, 7},   // 10
  };
  fx.base_face = 0;
  fx.kind = PatchKind::Vertex;
  return fx;
}

namespace {

std::vector<Vec2> alternating_hexagon(double r_even, double r_odd,
                                      double phi_deg) {
  std::vector<Vec2> out;
  for (int k = 0; k < 6; ++k) {
    double r = (k % 2 == 0) ? r_even : r_odd;
    double a = (60.0 * k + phi_deg) * kDeg;
    out.push_back({r * std::cos(a), r * std::sin(a)});
  }
  return out;
}

}  // namespace

Prismatoid banded_hexagon() {
  return Prismatoid::build(
      alternating_hexagon(0.14303130363489264, 0.094144090829495639, 15.0),
      alternating_hexagon(1.0, 0.7, 0.0), 0.3);
}

ConvexPatch banded_hexagon_patch(bool baseless) {
  ConvexPolyhedron poly = to_polyhedron(banded_hexagon());
  return neighborhood(poly, baseless ? 1 : 0, PatchKind::Vertex);
}

std::pair<double, double> solve_hexagon_radii(double phi_deg, double RB_even,
                                              double RB_odd, double z,
                                              double kappa_even_deg,
                                              double kappa_odd_deg) {
  auto kappas = [&](double r1, double r2) {
    Prismatoid P = Prismatoid::build(alternating_hexagon(r1, r2, phi_deg),
                                     alternating_hexagon(RB_even, RB_odd, 0.0),
                                     z);
    return std::pair<double, double>{P.top_vertex_curvature(0),
                                     P.top_vertex_curvature(1)};
  };
  double t1 = kappa_even_deg * kDeg, t2 = kappa_odd_deg * kDeg;
  double x1 = 0.5, x2 = 0.4;
  const double h = 1e-7;
  for (int it = 0; it < 60; ++it) {
    auto [k1, k2] = kappas(x1, x2);
    double f1 = k1 - t1, f2 = k2 - t2;
    if (std::max(std::fabs(f1), std::fabs(f2)) < 1e-13) break;
    auto [k1a, k2a] = kappas(x1 + h, x2);
    auto [k1b, k2b] = kappas(x1, x2 + h);
    double j11 = (k1a - k1) / h, j12 = (k1b - k1) / h;
    double j21 = (k2a - k2) / h, j22 = (k2b - k2) / h;
    double det = j11 * j22 - j12 * j21;
    if (std::fabs(det) < 1e-18)
      fail(ErrorCode::InternalInvariant, "singular curvature Jacobian");
    double d1 = (f1 * j22 - f2 * j12) / det;
    double d2 = (j11 * f2 - j21 * f1) / det;
    double n1 = x1 - d1, n2 = x2 - d2;
    if (std::min(n1, n2) <= 0.02) {
      n1 = 0.5 * (x1 + std::max(n1, 0.02));
      n2 = 0.5 * (x2 + std::max(n2, 0.02));
    }
    x1 = n1;
    x2 = n2;
  }
  Prismatoid P = Prismatoid::build(alternating_hexagon(x1, x2, phi_deg),
                                   alternating_hexagon(RB_even, RB_odd, 0.0),
                                   z);
  for (int j = 0; j < 6; ++j) {
    double target = (j % 2 == 0) ? t1 : t2;
    if (std::fabs(P.top_vertex_curvature(j) - target) > 0.02 * kDeg)
      fail(ErrorCode::InternalInvariant,
           "curvature solve did not reach its targets");
  }
  return {x1, x2};
}

Prismatoid drum() {
  const double jA[6] = {1.1, 1.05, 1.1, 0.9, 1.1, 0.9};
  const double jB[6] = {1.05, 1.0, 1.1, 0.95, 0.95, 1.05};
  std::vector<Vec2> A, B;
  for (int k = 0; k < 6; ++k) {
    double aa = (15.0 + 60.0 * k) * kDeg;
    A.push_back({0.85 * jA[k] * std::cos(aa), 0.85 * jA[k] * std::sin(aa)});
    double ab = 60.0 * k * kDeg;
    B.push_back({jB[k] * std::cos(ab), jB[k] * std::sin(ab)});
  }
  return Prismatoid::build(A, B, 0.25);
}

Prismatoid wings_ccw() {
  return Prismatoid::build(
      {{0.77, 0.5}, {-1.1, -0.05}, {-1.66, -0.36}},
      {{-0.5, 0.0}, {-0.58, -0.07}, {0.85, 0.5}}, 0.01);
}

}  // namespace fixtures
}  // namespace patchfold
