#pragma once
#include <doctest.h>

#include <cmath>
#include <vector>

#include "patchfold/errors.hpp"
#include "patchfold/geom.hpp"
#include "patchfold/prismatoid.hpp"

namespace testsupport {

// Runs f and checks that it throws a patchfold::Error carrying `code`.
template <class F>
void expect_error(patchfold::ErrorCode code, F&& f) {
  bool threw = false;
  try {
    f();
  } catch (const patchfold::Error& e) {
    threw = true;
    CHECK(e.code() == code);
    if (e.code() != code) MESSAGE(e.what());
  } catch (const std::exception& e) {
    threw = true;
    FAIL_CHECK("wrong exception type: " << e.what());
  }
  CHECK(threw);
}

// Pairwise distances of a placed polygon match the 3D source face.
inline void check_isometric(const std::vector<patchfold::Vec3>& face3,
                            const std::vector<patchfold::Vec2>& flat,
                            double eps) {
  REQUIRE(face3.size() == flat.size());
  for (size_t i = 0; i < face3.size(); ++i)
    for (size_t j = i + 1; j < face3.size(); ++j) {
      double d3 = (face3[i] - face3[j]).norm();
      double d2 = (flat[i] - flat[j]).norm();
      CHECK(std::fabs(d3 - d2) <= eps);
    }
}

inline bool near(const patchfold::Vec2& a, const patchfold::Vec2& b,
                 double eps) {
  return (a - b).norm() <= eps;
}

// A skewed triangle-over-triangle instance with nothing special about it.
inline patchfold::Prismatoid tri_prism(double z = 1.0) {
  return patchfold::Prismatoid::build(
      {{0.2, 0.1}, {-0.3, 0.05}, {0, -0.25}},
      {{1.2, -0.1}, {0, 1.1}, {-1.3, -0.9}}, z);
}

}  // namespace testsupport
