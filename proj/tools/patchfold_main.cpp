// Command line front end: unfolds prismatoids and convex patches, checks
// layouts for overlap, renders diagrams, and drives the randomized scan.
//
// Exit codes: 0 success, 1 an overlap was found, 2 bad input, 3 a violated
// construction guarantee or internal invariant.

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "patchfold/errors.hpp"
#include "patchfold/fixtures.hpp"
#include "patchfold/io.hpp"
#include "patchfold/overlap.hpp"
#include "patchfold/regions.hpp"
#include "patchfold/search.hpp"
#include "patchfold/sweep.hpp"
#include "patchfold/unfold.hpp"

using namespace patchfold;

namespace {

int g_exit = 0;

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::RayCrossing:
    case ErrorCode::NoSafeFlip:
    case ErrorCode::ContainmentFailure:
    case ErrorCode::OverlapDetected:
    case ErrorCode::UnhandledCase:
    case ErrorCode::InternalInvariant:
      return 3;
    default:
      return 2;
  }
}

std::string read_input(const std::string& path) {
  std::ostringstream ss;
  if (path.empty() || path == "-") {
    ss << std::cin.rdbuf();
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::MalformedInput, "cannot open " + path);
    ss << in.rdbuf();
  }
  return ss.str();
}

void write_output(const std::string& path, const std::string& body) {
  if (path.empty() || path == "-") {
    std::cout << body;
    if (body.empty() || body.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::MalformedInput, "cannot write " + path);
  out << body;
  if (body.empty() || body.back() != '\n') out << "\n";
}

std::string ints_json(const std::vector<int>& v) {
  std::string s = "[";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + "]";
}

// Accept published coordinates rounded to roughly six significant digits.
void validate_parsed(const ConvexPolyhedron& poly) {
  double d = poly.diameter();
  poly.validate(std::max(Tolerance::for_diameter(d).eps_len, 1e-5 * d));
}

// Optional explicit nudge: rotate the top polygon about its centroid, used
// to break exact edge parallelism that would otherwise be rejected.
Prismatoid load_prismatoid(const std::string& text, double nudge) {
  if (nudge == 0) return parse_prismatoid(text);
  RawPrismatoid raw = parse_prismatoid_doc(text);
  Vec2 c = polygon_centroid(raw.A);
  double co = std::cos(nudge), si = std::sin(nudge);
  for (auto& p : raw.A) {
    Vec2 d = p - c;
    p = c + Vec2{co * d.x - si * d.y, si * d.x + co * d.y};
  }
  return Prismatoid::build(std::move(raw.A), std::move(raw.B), raw.z);
}

struct PetalArgs {
  std::string in, out, svg;
  std::vector<int> splits;
  bool splits_given = false;
  int top_attach = -1;
  bool topless = false, with_top = false, enumerate = false, all = false;
  long cap = 1000000;
  double nudge = 0;
};

void emit_layout(const Layout& L, const std::string& out,
                 const std::string& svg) {
  write_output(out, layout_to_json(L));
  if (!svg.empty()) write_output(svg, render_svg(L));
}

void run_unfold_petal(const PetalArgs& a) {
  std::string text = read_input(a.in);
  DocumentKind kind = detect_document(text);
  if (kind == DocumentKind::PrismatoidDoc) {
    Prismatoid P = load_prismatoid(text, a.nudge);
    if (a.enumerate) {
      enumerate_petal_layouts(
          P, a.with_top, a.cap,
          [&](const Layout& L, const std::vector<int>& splits, int ta) {
            std::string line = "{\"splits\":" + ints_json(splits) +
                               ",\"top_attach\":" +
                               (ta < 0 ? "null" : std::to_string(ta)) +
                               ",\"overlapping\":";
            line += layout_overlaps(L).overlapping ? "true" : "false";
            if (a.all) line += ",\"layout\":" + layout_to_json(L);
            std::cout << line << "}\n";
          });
      return;
    }
    Layout L = [&] {
      if (a.splits_given)
        return petal_layout(P, a.splits,
                            a.top_attach < 0 ? std::optional<int>{}
                                             : std::optional<int>(a.top_attach));
      std::vector<int> splits = choose_topless_splits(P);
      if (a.top_attach >= 0) return petal_layout(P, splits, a.top_attach);
      return petal_unfold_topless(P);
    }();
    emit_layout(L, a.out, a.svg);
    return;
  }
  ConvexPatch patch = parse_patch(text);
  validate_parsed(patch.poly);
  if (a.enumerate) {
    enumerate_patch_petal_layouts(
        patch, a.cap, [&](const Layout& L, const std::vector<int>& splits) {
          std::string line = "{\"splits\":" + ints_json(splits) +
                             ",\"overlapping\":";
          line += layout_overlaps(L).overlapping ? "true" : "false";
          if (a.all) line += ",\"layout\":" + layout_to_json(L);
          std::cout << line << "}\n";
        });
    return;
  }
  std::vector<int> splits = a.splits;
  if (!a.splits_given)
    splits.assign(patch.poly.faces[patch.base_face].size(), 0);
  emit_layout(patch_petal_layout(patch, splits), a.out, a.svg);
}

struct BandArgs {
  std::string in, out, svg;
  int cut = 0;
  int attach_b = -1, attach_a = -1;
  bool all = false;
  double nudge = 0;
};

void run_unfold_band(const BandArgs& a) {
  Prismatoid P = load_prismatoid(read_input(a.in), a.nudge);
  if (a.all) {
    int N = int(P.band().size());
    for (int c = 0; c < N; ++c) {
      BandOptions opt;
      opt.cut = c;
      Layout L = band_unfolding(P, opt);
      std::string line = "{\"cut\":" + std::to_string(c) + ",\"overlapping\":";
      line += layout_overlaps(L).overlapping ? "true" : "false";
      line += ",\"layout\":" + layout_to_json(L) + "}";
      std::cout << line << "\n";
    }
    return;
  }
  BandOptions opt;
  opt.cut = a.cut;
  if (a.attach_b >= 0) opt.attach_base = a.attach_b;
  if (a.attach_a >= 0) opt.attach_top = a.attach_a;
  emit_layout(band_unfolding(P, opt), a.out, a.svg);
}

struct NonobtuseArgs {
  std::string in, out, svg;
  bool with_top = false;
  double nudge = 0;
};

void run_unfold_nonobtuse(const NonobtuseArgs& a) {
  Prismatoid P = load_prismatoid(read_input(a.in), a.nudge);
  emit_layout(petal_unfold_nonobtuse(P, a.with_top), a.out, a.svg);
}

struct TreeArgs {
  std::string in, out, svg;
  long cap = 1000000;
  long index = -1;
  bool all = false;
  int base = 0;
  std::string kind = "vertex";
};

void run_unfold_tree(const TreeArgs& a) {
  std::string text = read_input(a.in);
  DocumentKind kind = detect_document(text);
  ConvexPatch patch;
  if (kind == DocumentKind::PrismatoidDoc) {
    Prismatoid P = parse_prismatoid(text);
    patch = neighborhood(to_polyhedron(P), 0, PatchKind::Vertex);
  } else if (kind == DocumentKind::PatchDoc) {
    patch = parse_patch(text);
    validate_parsed(patch.poly);
  } else if (kind == DocumentKind::PolyhedronDoc) {
    ConvexPolyhedron poly = parse_polyhedron(text);
    validate_parsed(poly);
    PatchKind pk = PatchKind::Vertex;
    if (a.kind == "edge")
      pk = PatchKind::Edge;
    else if (a.kind != "vertex")
      fail(ErrorCode::MalformedInput, "--kind must be vertex or edge");
    patch = neighborhood(poly, a.base, pk);
  } else {
    fail(ErrorCode::MalformedInput,
         "tree unfolding needs a prismatoid, patch, or polyhedron");
  }

  long at = 0;
  bool found = false;
  enumerate_tree_layouts(
      patch, a.cap,
      [&](const Layout& L, const std::vector<std::pair<int, int>>& tree) {
        if (a.index >= 0) {
          if (at++ == a.index) {
            emit_layout(L, a.out, a.svg);
            found = true;
          }
          return;
        }
        std::string line = "{\"tree\":[";
        for (size_t i = 0; i < tree.size(); ++i) {
          if (i) line += ",";
          line += "[" + std::to_string(tree[i].first) + "," +
                  std::to_string(tree[i].second) + "]";
        }
        line += "],\"overlapping\":";
        line += layout_overlaps(L).overlapping ? "true" : "false";
        if (a.all) line += ",\"layout\":" + layout_to_json(L);
        std::cout << line << "}\n";
      });
  if (a.index >= 0 && !found)
    fail(ErrorCode::MalformedInput,
         "layout index out of range: only " + std::to_string(at) +
             " admissible cut trees");
}

struct VerifyArgs {
  std::string in;
  bool quiet = false;
};

Layout layout_from_json_value(const nlohmann::json& j) {
  if (j.contains("layout")) return parse_layout(j["layout"].dump());
  return parse_layout(j.dump());
}

void run_verify(const VerifyArgs& a) {
  std::string text = read_input(a.in);
  std::vector<Layout> layouts;
  bool whole = false;
  try {
    nlohmann::json j = nlohmann::json::parse(text);
    layouts.push_back(layout_from_json_value(j));
    whole = true;
  } catch (const std::exception&) {
  }
  if (!whole) {
    std::istringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(line);
      } catch (const std::exception& e) {
        fail(ErrorCode::MalformedInput, std::string("bad line: ") + e.what());
      }
      layouts.push_back(layout_from_json_value(j));
    }
  }
  if (layouts.empty()) fail(ErrorCode::MalformedInput, "no layouts to verify");
  for (const Layout& L : layouts) {
    OverlapReport rep = layout_overlaps(L);
    if (!a.quiet) std::cout << overlap_report_to_json(rep) << "\n";
    if (rep.overlapping) g_exit = 1;
  }
}

struct PartitionArgs {
  std::string in, out;
  bool regions = false, diamonds = false;
  double nudge = 0;
};

void run_partition(const PartitionArgs& a) {
  Prismatoid P = load_prismatoid(read_input(a.in), a.nudge);
  AltitudePartition part = altitude_partition(P);
  const auto& bu = part.entries;
  int nB = P.nB();

  Layout L;
  PlacedFace base;
  base.id = "B";
  base.polygon = P.B();
  for (int i = 0; i < nB; ++i) base.vertex_ids.push_back(i);
  L.faces.push_back(base);
  for (int e = 0; e < nB; ++e) {
    int apex = -1;
    for (const auto& f : P.band())
      if (f.kind == FaceKind::BTriangle && f.edge == e) apex = f.apex;
    PlacedFace t;
    t.id = "B" + std::to_string(e);
    t.polygon = {P.B()[e], P.B()[(e + 1) % nB], bu[e].apex};
    t.parent = "B";
    t.hinge = {std::min(e, (e + 1) % nB), std::max(e, (e + 1) % nB)};
    t.vertex_ids = {e, (e + 1) % nB, nB + apex};
    L.faces.push_back(t);
  }

  RenderOverlay ov;
  ov.ray_length = 2.5 * P.diameter();
  for (int e = 0; e < nB; ++e) ov.rays.push_back({bu[e].apex, bu[e].normal});
  if (a.regions) {
    double M = 1.0 * P.diameter();
    for (int i = 0; i < nB; ++i) {
      AltitudeRegion R = altitude_region(P, bu, i);
      Vec2 mid = R.nL + R.nR;
      mid = mid / mid.norm();
      ov.shaded.push_back({R.b, R.apL, R.apL + R.nL * M, R.b + mid * M,
                           R.apR + R.nR * M, R.apR});
    }
  }
  if (a.diamonds) {
    require_nonobtuse_lateral_faces(P);
    for (int i = 0; i < nB; ++i) {
      Diamond D = diamond(P, bu, i);
      Vec2 uL = D.apL - D.b, uR = D.apR - D.b;
      // far corner: intersection of the two right-angle cap lines
      Vec2 pL{-uL.y, uL.x}, pR{-uR.y, uR.x};
      double den = pL.x * (-pR.y) - (-pR.x) * pL.y;
      if (std::fabs(den) > 1e-12) {
        Vec2 rhs = D.apR - D.apL;
        double t = (rhs.x * (-pR.y) - (-pR.x) * rhs.y) / den;
        ov.shaded.push_back({D.b, D.apL, D.apL + pL * t, D.apR});
      } else {
        ov.shaded.push_back({D.b, D.apL, D.apR});
      }
    }
  }
  write_output(a.out, render_svg(L, &ov));
}

struct SweepArgs {
  std::string in;
  std::vector<double> zgrid;
  double nudge = 0;
};

void run_sweep(const SweepArgs& a) {
  Prismatoid P = load_prismatoid(read_input(a.in), a.nudge);
  std::vector<double> zs = a.zgrid.empty() ? default_z_grid() : a.zgrid;
  for (double z : zs)
    if (!(z > 0)) fail(ErrorCode::MalformedInput, "heights must be positive");
  SweepReport rep = sweep_properties(P, zs);
  std::cout << sweep_report_to_json(rep) << "\n";
  if (!rep.all_pass()) g_exit = 3;
}

struct FixtureArgs {
  std::string name, out;
  std::string patch;  // for banded-hexagon: "", "topless", "baseless"
};

void run_fixture(const FixtureArgs& a) {
  if (a.name == "counterexample-nv") {
    fixtures::PatchFixture f = fixtures::counterexample_nv();
    ConvexPatch p;
    p.poly = f.poly;
    p.base_face = f.base_face;
    p.kind = f.kind;
    write_output(a.out, patch_to_json(p));
  } else if (a.name == "banded-hexagon") {
    if (a.patch.empty()) {
      write_output(a.out, prismatoid_to_json(fixtures::banded_hexagon()));
    } else if (a.patch == "topless") {
      write_output(a.out, patch_to_json(fixtures::banded_hexagon_patch(false)));
    } else if (a.patch == "baseless") {
      write_output(a.out, patch_to_json(fixtures::banded_hexagon_patch(true)));
    } else {
      fail(ErrorCode::MalformedInput, "--patch must be topless or baseless");
    }
  } else if (a.name == "drum") {
    write_output(a.out, prismatoid_to_json(fixtures::drum()));
  } else if (a.name == "wings-ccw") {
    write_output(a.out, prismatoid_to_json(fixtures::wings_ccw()));
  } else {
    fail(ErrorCode::MalformedInput,
         "unknown fixture; choose counterexample-nv, banded-hexagon, drum, "
         "or wings-ccw");
  }
}

struct SearchArgs {
  SearchOptions opt;
  std::string bias = "mixed", mode = "constructive";
};

void run_search(SearchArgs& a) {
  static const std::map<std::string, ShapeBias> biases{
      {"generic", ShapeBias::Generic},
      {"near-flat", ShapeBias::NearFlat},
      {"drum", ShapeBias::DrumLike},
      {"drum-like", ShapeBias::DrumLike},
      {"thin", ShapeBias::Thin},
      {"mixed", ShapeBias::Mixed}};
  auto it = biases.find(a.bias);
  if (it == biases.end())
    fail(ErrorCode::MalformedInput,
         "--bias must be generic, near-flat, drum, thin, or mixed");
  a.opt.gen.bias = it->second;
  if (a.mode == "constructive")
    a.opt.mode = SearchMode::Constructive;
  else if (a.mode == "exhaustive")
    a.opt.mode = SearchMode::Exhaustive;
  else if (a.mode == "turn-heuristic")
    a.opt.mode = SearchMode::TurnHeuristic;
  else
    fail(ErrorCode::MalformedInput,
         "--mode must be constructive, exhaustive, or turn-heuristic");

  SearchSummary sum = conjecture_scan(a.opt);
  std::string j = "{\"tried\":" + std::to_string(sum.tried) +
                  ",\"skipped\":" + std::to_string(sum.skipped) +
                  ",\"clean\":" + std::to_string(sum.clean) +
                  ",\"counterexamples\":" + std::to_string(sum.counterexamples) +
                  ",\"failures\":" + std::to_string(sum.failures.size()) + "}";
  std::cout << j << "\n";
  for (const auto& f : sum.failures)
    std::cerr << "instance " << f.index << ": " << f.reason << "\n  replay: "
              << f.replay << "\n";
  // a constructive failure is a broken guarantee; the other modes merely
  // found what they were hunting for
  if (!sum.failures.empty())
    g_exit = a.opt.mode == SearchMode::Constructive ? 3 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"prismatoid and convex-patch unfolding toolkit"};
  app.require_subcommand(1);

  auto add_io = [](CLI::App* cmd, std::string* in, std::string* out,
                   std::string* svg) {
    cmd->add_option("--in", *in, "input file (default: stdin)");
    if (out) cmd->add_option("--out", *out, "output file (default: stdout)");
    if (svg) cmd->add_option("--svg", *svg, "also render the layout here");
  };

  CLI::App* unfold = app.add_subcommand("unfold", "develop a shape into the plane");
  unfold->require_subcommand(1);

  PetalArgs pa;
  CLI::App* petal = unfold->add_subcommand(
      "petal", "petal unfolding: base kept whole, lateral fans around it");
  add_io(petal, &pa.in, &pa.out, &pa.svg);
  petal->add_option("--splits", pa.splits,
                    "fan split per base vertex, comma separated")
      ->delimiter(',');
  petal->add_option("--top-attach", pa.top_attach,
                    "hang the top across this top edge");
  petal->add_flag("--topless", pa.topless,
                  "certified topless construction (the default)");
  petal->add_flag("--top", pa.with_top,
                  "when enumerating, also vary a top attachment");
  petal->add_flag("--enumerate", pa.enumerate,
                  "emit every split choice as one json line");
  petal->add_flag("--all", pa.all, "include full layouts in enumeration lines");
  petal->add_option("--cap", pa.cap, "refuse to enumerate more than this");
  petal->add_option("--nudge", pa.nudge,
                    "rotate the top by this angle (radians) before building");

  BandArgs ba;
  CLI::App* band = unfold->add_subcommand(
      "band", "cut one lateral edge and roll the band straight");
  add_io(band, &ba.in, &ba.out, &ba.svg);
  band->add_option("--cut", ba.cut, "band position of the cut edge");
  band->add_option("--attach-b", ba.attach_b,
                   "band position carrying the base polygon");
  band->add_option("--attach-a", ba.attach_a,
                   "band position carrying the top polygon");
  band->add_flag("--all", ba.all, "emit every cut position, one json line each");
  band->add_option("--nudge", ba.nudge,
                   "rotate the top by this angle (radians) before building");

  NonobtuseArgs na;
  CLI::App* nonob = unfold->add_subcommand(
      "nonobtuse", "certified petal unfolding for nonobtuse lateral faces");
  add_io(nonob, &na.in, &na.out, &na.svg);
  nonob->add_flag("--top", na.with_top,
                  "include a triangular nonobtuse top");
  nonob->add_option("--nudge", na.nudge,
                    "rotate the top by this angle (radians) before building");

  TreeArgs ta;
  CLI::App* tree = unfold->add_subcommand(
      "tree", "all unfoldings whose cuts form one spanning tree");
  add_io(tree, &ta.in, &ta.out, &ta.svg);
  tree->add_option("--cap", ta.cap, "refuse to enumerate more than this");
  tree->add_option("--index", ta.index, "emit only this layout, as json");
  tree->add_flag("--all", ta.all, "include full layouts in enumeration lines");
  tree->add_option("--base", ta.base, "base face for bare polyhedron input");
  tree->add_option("--kind", ta.kind,
                   "patch kind for bare polyhedron input: vertex or edge");

  VerifyArgs va;
  CLI::App* verify = app.add_subcommand(
      "verify", "check layouts for overlap; exit 1 when any overlaps");
  verify->add_option("--in", va.in, "layout json or one json per line");
  verify->add_flag("--quiet", va.quiet, "suppress the per-layout reports");

  PartitionArgs qa;
  CLI::App* part = app.add_subcommand(
      "partition", "render the base-plane altitude partition as svg");
  part->add_option("--in", qa.in, "input file (default: stdin)");
  part->add_option("--out", qa.out, "output file (default: stdout)");
  part->add_flag("--regions", qa.regions, "shade the vertex regions");
  part->add_flag("--diamonds", qa.diamonds,
                 "shade the nonobtuse-case kites instead");
  part->add_option("--nudge", qa.nudge,
                   "rotate the top by this angle (radians) before building");

  SweepArgs wa;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "re-derive the prismatoid across heights and check invariants");
  sweep->add_option("--in", wa.in, "input file (default: stdin)");
  sweep->add_option("--z-grid", wa.zgrid, "heights, comma separated")
      ->delimiter(',');
  sweep->add_option("--nudge", wa.nudge,
                    "rotate the top by this angle (radians) before building");

  FixtureArgs fa;
  CLI::App* fixture = app.add_subcommand("fixture", "emit a built-in shape");
  fixture->add_option("name", fa.name,
                      "counterexample-nv | banded-hexagon | drum | wings-ccw")
      ->required();
  fixture->add_option("--out", fa.out, "output file (default: stdout)");
  fixture->add_option("--patch", fa.patch,
                      "for banded-hexagon: topless or baseless patch");

  SearchArgs sa;
  CLI::App* search = app.add_subcommand(
      "search", "random prismatoids through the certified construction");
  search->add_option("--seed", sa.opt.gen.seed, "stream seed");
  search->add_option("--count", sa.opt.count, "instances to try");
  search->add_option("--index", sa.opt.start, "first instance index");
  search->add_option("--mode", sa.mode,
                     "constructive | exhaustive | turn-heuristic");
  search->add_option("--bias", sa.bias,
                     "generic | near-flat | drum | thin | mixed");
  search->add_option("--cap", sa.opt.cap, "layout cap per instance");
  search->add_option("--out", sa.opt.out_dir, "artifact directory");
  search->add_option("--min-vertices", sa.opt.gen.min_vertices,
                     "fewest polygon vertices");
  search->add_option("--max-vertices", sa.opt.gen.max_vertices,
                     "most polygon vertices");

  petal->callback([&] {
    pa.splits_given = petal->count("--splits") > 0;
    run_unfold_petal(pa);
  });
  band->callback([&] { run_unfold_band(ba); });
  nonob->callback([&] { run_unfold_nonobtuse(na); });
  tree->callback([&] { run_unfold_tree(ta); });
  verify->callback([&] { run_verify(va); });
  part->callback([&] { run_partition(qa); });
  sweep->callback([&] { run_sweep(wa); });
  fixture->callback([&] { run_fixture(fa); });
  search->callback([&] { run_search(sa); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return g_exit;
}
