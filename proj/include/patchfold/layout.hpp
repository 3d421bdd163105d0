#pragma once
#include <array>
#include <string>
#include <utility>
#include <vector>

#include "patchfold/geom.hpp"

namespace patchfold {

// One face developed into the plane.  `hinge` holds the global vertex ids of
// the edge shared with the parent ({-1,-1} for the root) and `vertex_ids`
// names each polygon corner, so cuts and vertex stars can be reconstructed
// from the flat data alone.
struct PlacedFace {
  std::string id;
  std::vector<Vec2> polygon;
  std::string parent;
  std::array<int, 2> hinge{-1, -1};
  std::vector<int> vertex_ids;
};

struct Layout {
  std::vector<PlacedFace> faces;
  std::vector<std::pair<int, int>> cuts;  // (lo, hi) global vertex ids

  int index_of(const std::string& id) const {
    for (int i = 0; i < int(faces.size()); ++i)
      if (faces[i].id == id) return i;
    return -1;
  }
  double extent() const {
    double d = 0;
    std::vector<Vec2> all;
    for (const auto& f : faces)
      all.insert(all.end(), f.polygon.begin(), f.polygon.end());
    return polygon_diameter(all);
  }
};

}  // namespace patchfold
