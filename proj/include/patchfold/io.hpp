#pragma once
#include <string>
#include <vector>

#include "patchfold/layout.hpp"
#include "patchfold/overlap.hpp"
#include "patchfold/patch.hpp"
#include "patchfold/prismatoid.hpp"
#include "patchfold/sweep.hpp"

namespace patchfold {

// %.17g, enough for an exact double round trip; emitters below all use it,
// so serializing the same object twice gives byte-identical text.
std::string format_double(double v);

std::string prismatoid_to_json(const Prismatoid& P);
std::string polyhedron_to_json(const ConvexPolyhedron& poly);
std::string patch_to_json(const ConvexPatch& patch);
std::string layout_to_json(const Layout& L);
std::string overlap_report_to_json(const OverlapReport& rep);
std::string sweep_report_to_json(const SweepReport& rep);

enum class DocumentKind { PrismatoidDoc, PatchDoc, PolyhedronDoc, LayoutDoc };
DocumentKind detect_document(const std::string& text);

Prismatoid parse_prismatoid(const std::string& text);
// The raw arrays, for callers that transform them before building.
struct RawPrismatoid {
  std::vector<Vec2> A, B;
  double z = 0;
};
RawPrismatoid parse_prismatoid_doc(const std::string& text);
// Structural checks only; geometric validation is the caller's choice of
// support tolerance (published coordinates are often rounded).
ConvexPolyhedron parse_polyhedron(const std::string& text);
ConvexPatch parse_patch(const std::string& text);
Layout parse_layout(const std::string& text);

// Extra strokes on top of a layout rendering: dashed rays, translucent
// filled regions, and dot markers.
struct RenderOverlay {
  struct Ray {
    Vec2 origin, dir;
  };
  std::vector<Ray> rays;
  double ray_length = 0;
  std::vector<std::vector<Vec2>> shaded;
  std::vector<Vec2> markers;
};

std::string render_svg(const Layout& L, const RenderOverlay* overlay = nullptr);

}  // namespace patchfold
