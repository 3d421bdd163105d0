#include "patchfold/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "patchfold/patch.hpp"
#include "patchfold/regions.hpp"
#include "patchfold/unfold.hpp"

namespace patchfold {

std::vector<double> default_z_grid() {
  std::vector<double> zs;
  for (int k = 0; k < 9; ++k) zs.push_back(std::pow(2.0, -6.0 + 10.0 * k / 8.0));
  return zs;
}

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

bool hull_matches_band(const Prismatoid& Q) {
  std::vector<Vec3> pts;
  for (int g = 0; g < Q.nB() + Q.nA(); ++g) pts.push_back(Q.vertex(g));
  ConvexPolyhedron hull = convex_hull3(pts);

  std::set<std::set<int>> expect;
  std::set<int> base, top;
  for (int i = 0; i < Q.nB(); ++i) base.insert(i);
  for (int j = 0; j < Q.nA(); ++j) top.insert(Q.nB() + j);
  expect.insert(base);
  expect.insert(top);
  for (const auto& f : Q.band()) {
    auto ids = Q.face_vertex_ids(f);
    expect.insert(std::set<int>(ids.begin(), ids.end()));
  }

  std::set<std::set<int>> got;
  for (const auto& f : hull.faces) got.insert(std::set<int>(f.begin(), f.end()));
  return got == expect;
}

}  // namespace

SweepReport sweep_properties(const Prismatoid& P,
                             const std::vector<double>& zgrid) {
  SweepReport rep;
  auto add = [&rep](const std::string& name, bool pass,
                    const std::string& detail) {
    rep.checks.push_back({name, pass, detail});
  };

  std::vector<Prismatoid> Q;
  for (double z : zgrid) Q.push_back(P.at_height(z));
  int nz = int(Q.size());
  if (nz == 0) {
    add("grid-nonempty", false, "empty height grid");
    return rep;
  }

  {  // band combinatorics stay put
    bool ok = true;
    std::string det;
    for (int t = 1; t < nz && ok; ++t) {
      if (Q[t].band().size() != Q[0].band().size()) { ok = false; break; }
      for (size_t k = 0; k < Q[0].band().size(); ++k) {
        const BandFace &a = Q[0].band()[k], &b = Q[t].band()[k];
        if (a.kind != b.kind || a.edge != b.edge || a.apex != b.apex) {
          ok = false;
          det = "band differs at height " + fmt(zgrid[t]);
          break;
        }
      }
    }
    add("band-combinatorics-fixed", ok, det);
  }

  {  // independently built hull agrees with the band at every height
    bool ok = true;
    std::string det;
    for (int t = 0; t < nz && ok; ++t)
      if (!hull_matches_band(Q[t])) {
        ok = false;
        det = "hull face sets differ at height " + fmt(zgrid[t]);
      }
    add("hull-matches-band", ok, det);
  }

  {  // slope labels are height free
    bool ok = true;
    std::string det;
    for (int t = 1; t < nz && ok; ++t)
      for (size_t k = 0; k < Q[0].band().size(); ++k)
        if (Q[0].slope(Q[0].band()[k]) != Q[t].slope(Q[t].band()[k])) {
          ok = false;
          det = "slope flips at height " + fmt(zgrid[t]);
          break;
        }
    add("slope-labels-fixed", ok, det);
  }

  {  // lateral edges keep their length order at every base vertex
    bool ok = true;
    std::string det;
    for (int i = 0; i < P.nB() && ok; ++i) {
      auto order_of = [&](const Prismatoid& R) {
        auto lens = R.lateral_edge_lengths(i);
        std::vector<int> idx(lens.size());
        for (size_t k = 0; k < idx.size(); ++k) idx[k] = int(k);
        std::stable_sort(idx.begin(), idx.end(),
                         [&](int a, int b) { return lens[a] < lens[b]; });
        return idx;
      };
      auto base_order = order_of(Q[0]);
      for (int t = 1; t < nz; ++t)
        if (order_of(Q[t]) != base_order) {
          ok = false;
          det = "edge order changes at vertex " + std::to_string(i);
          break;
        }
    }
    add("lateral-edge-order-fixed", ok, det);
  }

  {  // altitude rays never cross
    bool ok = true;
    std::string det;
    for (int t = 0; t < nz && ok; ++t) {
      try {
        altitude_partition(Q[t]);
      } catch (const Error& e) {
        ok = false;
        det = std::string(e.what()) + " at height " + fmt(zgrid[t]);
      }
    }
    add("altitude-rays-disjoint", ok, det);
  }

  {  // apex tracks: collinear along the edge normal, marching outward
    bool ok_line = true, ok_mono = true;
    double worst = 0;
    std::vector<std::vector<BaseUnfoldEntry>> bus;
    for (int t = 0; t < nz; ++t) bus.push_back(base_unfolding(Q[t]));
    double zmax = *std::max_element(zgrid.begin(), zgrid.end());
    double tol_here =
        Tolerance::for_diameter(P.diameter() + 2 * zmax).eps_len;
    for (int e = 0; e < P.nB(); ++e) {
      std::vector<Vec2> track;
      for (int t = 0; t < nz; ++t) track.push_back(bus[t][e].apex);
      double dev = max_line_deviation(track);
      worst = std::max(worst, dev);
      if (dev > tol_here) ok_line = false;
      for (int t = 1; t < nz; ++t) {
        double d0 = (bus[t - 1][e].apex - bus[t - 1][e].foot).norm();
        double d1 = (bus[t][e].apex - bus[t][e].foot).norm();
        if (d1 <= d0 - tol_here) ok_mono = false;
      }
    }
    add("apex-track-collinear", ok_line, "max deviation " + fmt(worst));
    add("apex-track-outward", ok_mono, "");
  }

  {  // chain angle classes persist and march toward pi
    bool ok_class = true, ok_mono = true;
    std::string det;
    for (int i = 0; i < P.nB(); ++i) {
      int m = int(P.chain_at(i).size());
      for (int l = 1; l + 1 < m; ++l) {
        AngleClass c0 = chain_angle_class(Q[0], i, l);
        double prev_gap = std::fabs(chain_angle(Q[0], i, l) - std::numbers::pi);
        for (int t = 1; t < nz; ++t) {
          AngleClass ct = chain_angle_class(Q[t], i, l);
          if (ct != c0 && c0 != AngleClass::Straight) {
            ok_class = false;
            det = "class changes at vertex " + std::to_string(i);
          }
          double gap = std::fabs(chain_angle(Q[t], i, l) - std::numbers::pi);
          if (gap > prev_gap + P.tol().eps_ang) ok_mono = false;
          prev_gap = gap;
        }
      }
    }
    add("chain-class-fixed", ok_class, det);
    add("chain-angle-toward-straight", ok_mono, "");
  }

  {  // measured apex angles match the closed form
    bool ok = true;
    double worst = 0;
    for (int t = 0; t < nz; ++t) {
      const Prismatoid& R = Q[t];
      for (const auto& f : R.band()) {
        if (f.kind != FaceKind::ATriangle) continue;
        Vec2 b = R.B()[f.apex];
        Vec2 a0 = R.A()[f.edge];
        Vec2 a1 = R.A()[(f.edge + 1) % R.nA()];
        Vec2 u = a0 - b;
        double L1 = u.norm();
        if (L1 == 0) continue;
        Vec2 ex = u / L1, ey{-ex.y, ex.x};
        Vec2 rel = a1 - a0;
        ApexAngleLaw law =
            apex_angle_law(L1, rel.dot(ex), rel.dot(ey), R.z());
        worst = std::max(worst, std::fabs(law.measured - law.closed_form));
      }
    }
    if (worst > 1e-12) ok = false;
    add("apex-angle-closed-form", ok, "max residual " + fmt(worst));
  }

  return rep;
}

}  // namespace patchfold
