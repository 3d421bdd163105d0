#pragma once
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "patchfold/layout.hpp"
#include "patchfold/patch.hpp"
#include "patchfold/prismatoid.hpp"
#include "patchfold/regions.hpp"

namespace patchfold {

// ---------- band ----------

struct BandOptions {
  int cut = 0;                    // band position of the severed lateral edge
  std::optional<int> attach_base;  // band position carrying the base polygon
  std::optional<int> attach_top;   // band position carrying the top polygon
};

// Cuts one lateral edge, rolls the band into a straight strip, and hangs the
// base and top polygons off it.  By default each polygon attaches to a strip
// end next to the cut; the options override that.
Layout band_unfolding(const Prismatoid& P, const BandOptions& opt = {});

// ---------- petal ----------

// splits[i] counts the fan triangles at base vertex i that chain off the left
// base triangle; the rest chain off the right one.  top_attach, when given,
// hangs the top polygon across the top edge of that A-triangle (by top edge
// index).
Layout petal_layout(const Prismatoid& P, const std::vector<int>& splits,
                    std::optional<int> top_attach);

std::vector<int> choose_topless_splits(const Prismatoid& P,
                                       std::vector<std::string>* case_log = nullptr);

// The guaranteed-clean construction: picks splits at height zero, lifts them
// to the target height, and certifies the result (no overlaps, every fan
// inside its altitude region).
Layout petal_unfold_topless(const Prismatoid& P,
                            std::vector<std::string>* case_log = nullptr);

// For prismatoids with nonobtuse lateral faces; include_top additionally
// needs a triangular, nonobtuse top.  Certifies fans against their kites and
// the top against its wedge.
Layout petal_unfold_nonobtuse(const Prismatoid& P, bool include_top);

void enumerate_petal_layouts(
    const Prismatoid& P, bool include_top, long cap,
    const std::function<void(const Layout&, const std::vector<int>& splits,
                             int top_attach)>& fn);

// ---------- fan analysis ----------

struct FanSegmentation {
  std::vector<Slope> fan_slopes;  // per fan triangle, left to right
  bool has_up = false;
  int up_begin = 0, up_end = 0;   // fan triangle range [up_begin, up_end)
  int s_chain = 0, t_chain = 0;   // chain vertex indices bounding the up part
};
FanSegmentation fan_segmentation(const Prismatoid& P, int i);

enum class FlipSide { LeftTangent, RightTangent };

int split_for_side(const Prismatoid& P, int i, FlipSide side);

// Tries both one-sided splits of fan i at height zero and returns a side
// whose layout keeps the fan inside its altitude region.  Ties prefer the
// side whose base triangle slopes down, then the left.
FlipSide safe_flip_side(const Prismatoid& P, int i);
bool flip_side_safe(const Prismatoid& P, int i, FlipSide side);

// Turn rule for the singleton-fan case (exactly one fan triangle per base
// vertex): chain each lone triangle so that its obtuse corner, if it has
// one at a top vertex, sits away from the hinge with the neighboring base
// triangle.  Indifferent fans stay on the right.  Resolves the crossed
// triangular fixture, but carries no guarantee; a scan mode hunts for
// shapes where it fails.  Empty when some fan is not a singleton.
std::optional<std::vector<int>> obtuse_avoiding_splits(const Prismatoid& P);

// ---------- chain angle facts ----------

enum class AngleClass { Convex, Straight, Reflex };

// Surface angle at interior chain vertex l of the fan at base vertex i
// (sum of the two incident fan triangle angles).
double chain_angle(const Prismatoid& P, int i, int l);
AngleClass chain_angle_class(const Prismatoid& P, int i, int l);

// Base point choice that pins the chain angle at a_mid to exactly pi for
// every height: any point of the line through a_mid orthogonal to the sum of
// the unit directions toward the neighbors.
Vec2 chain_straight_base_point(const Vec2& a_prev, const Vec2& a_mid,
                               const Vec2& a_next, double t);

// Apex angle of a fan triangle in a canonical frame: base vertex at the
// origin, near top vertex at (L1, 0, z), far top vertex offset by (x, y) in
// the top plane.  Returns the measured angle, the closed form
// acos(-L1 x / (sqrt(L1^2+z^2) sqrt(x^2+y^2))), and the sign of x, which
// decides whether the angle is obtuse (+1), right (0), or acute (-1).
struct ApexAngleLaw {
  double measured;
  double closed_form;
  int x_sign;
};
ApexAngleLaw apex_angle_law(double L1, double x, double y, double z);

// ---------- petal unfoldings of polyhedron patches ----------

struct PatchFan {
  int v;                       // base vertex id
  int left_face, right_face;   // patch face indices across the base edges
  std::vector<int> fan_faces;  // patch face indices between them
};
struct PatchPetalStructure {
  std::vector<PatchFan> fans;  // one per base face vertex, in cycle order
};
PatchPetalStructure patch_petal_structure(const ConvexPatch& patch);

Layout patch_petal_layout(const ConvexPatch& patch,
                          const std::vector<int>& splits);

void enumerate_patch_petal_layouts(
    const ConvexPatch& patch, long cap,
    const std::function<void(const Layout&, const std::vector<int>& splits)>& fn);

// ---------- single-tree unfoldings ----------

// Enumerates every cut forest that is a spanning tree of the interior
// vertices plus exactly one boundary vertex, develops each resulting
// unfolding, and reports it together with its cut edges.
void enumerate_tree_layouts(
    const ConvexPatch& patch, long cap,
    const std::function<void(const Layout&,
                             const std::vector<std::pair<int, int>>& tree)>& fn);

}  // namespace patchfold
