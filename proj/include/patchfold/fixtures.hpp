#pragma once
#include <utility>

#include "patchfold/patch.hpp"
#include "patchfold/prismatoid.hpp"

namespace patchfold {
namespace fixtures {

// Convex polyhedron with a three-vertex base face whose vertex neighborhood
// admits no overlap-free petal unfolding: every one of its 18 petal layouts
// self-overlaps.  Published to six significant digits, so its faces support
// the hull only to about 1e-6.
struct PatchFixture {
  ConvexPolyhedron poly;
  int base_face;
  PatchKind kind;
};
PatchFixture counterexample_nv();

// Tolerance for checking the rounded counterexample coordinates against
// exact hull membership.
inline constexpr double kCounterexampleSupportTol = 2e-6;

// Hexagonal prismatoid with alternating top curvatures of 7.5 and 2 degrees
// whose twelve band unfoldings and all single-tree unfoldings of its
// baseless top patch overlap, while its topless petal unfoldings are clean.
Prismatoid banded_hexagon();

// The hexagon's two neighborhood patches: the base with every lateral face
// (topless) or the top with every lateral face (baseless).
ConvexPatch banded_hexagon_patch(bool baseless);

// Re-derives the two top radii of the banded hexagon from the curvature
// targets by Newton iteration; used to cross-check the frozen literals.
std::pair<double, double> solve_hexagon_radii(double phi_deg, double RB_even,
                                              double RB_odd, double z,
                                              double kappa_even_deg,
                                              double kappa_odd_deg);

// Near-regular hexagonal drum: the all-zero split vector with one specific
// top attachment overlaps while other splits rescue it.
Prismatoid drum();

// Skewed triangular prismatoid whose all-left split vector overlaps; the
// height-zero split rule picks a clean mixed vector.
Prismatoid wings_ccw();

}  // namespace fixtures
}  // namespace patchfold
