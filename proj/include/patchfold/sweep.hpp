#pragma once
#include <string>
#include <vector>

#include "patchfold/prismatoid.hpp"

namespace patchfold {

struct SweepCheck {
  std::string name;
  bool pass = true;
  std::string detail;
};

struct SweepReport {
  std::vector<SweepCheck> checks;
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

// Nine heights, powers of two from 2^-6 to 2^4, evenly spaced in the
// exponent.
std::vector<double> default_z_grid();

// Re-derives the prismatoid at every grid height and checks the facts that
// must not depend on the height: the band combinatorics (cross-checked
// against an independently built hull), slope labels, lateral edge order,
// non-crossing altitude rays, collinear and outward-marching apex tracks,
// chain angle classes marching monotonically toward pi, and the closed-form
// apex angle law.
SweepReport sweep_properties(const Prismatoid& P,
                             const std::vector<double>& zgrid);

}  // namespace patchfold
