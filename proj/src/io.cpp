#include "patchfold/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <json.hpp>
#include <string>

#include "patchfold/errors.hpp"

namespace patchfold {

using nlohmann::json;

std::string format_double(double v) {
  // shortest decimal form that parses back to the same double
  char buf[40];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

namespace {

std::string escape_json(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

std::string pts2(const std::vector<Vec2>& pts) {
  std::string s = "[";
  for (size_t i = 0; i < pts.size(); ++i) {
    if (i) s += ",";
    s += "[" + format_double(pts[i].x) + "," + format_double(pts[i].y) + "]";
  }
  return s + "]";
}

std::string ints(const std::vector<int>& v) {
  std::string s = "[";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + "]";
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorCode::MalformedInput, std::string("not valid json: ") + e.what());
  }
}

double finite_number(const json& j, const char* what) {
  if (!j.is_number()) fail(ErrorCode::MalformedInput, std::string(what) + " must be a number");
  double v = j.get<double>();
  if (!std::isfinite(v)) fail(ErrorCode::NonFiniteInput, std::string(what) + " is not finite");
  return v;
}

std::vector<Vec2> read_points2(const json& j, const char* what) {
  if (!j.is_array()) fail(ErrorCode::MalformedInput, std::string(what) + " must be an array");
  std::vector<Vec2> pts;
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2)
      fail(ErrorCode::MalformedInput, std::string(what) + " entries must be [x,y]");
    pts.push_back({finite_number(p[0], what), finite_number(p[1], what)});
  }
  return pts;
}

}  // namespace

std::string prismatoid_to_json(const Prismatoid& P) {
  return "{\"A\":" + pts2(P.A()) + ",\"B\":" + pts2(P.B()) +
         ",\"z\":" + format_double(P.z()) + "}";
}

std::string polyhedron_to_json(const ConvexPolyhedron& poly) {
  std::string s = "{\"vertices\":[";
  for (size_t i = 0; i < poly.vertices.size(); ++i) {
    if (i) s += ",";
    const Vec3& v = poly.vertices[i];
    s += "[" + format_double(v.x) + "," + format_double(v.y) + "," +
         format_double(v.z) + "]";
  }
  s += "],\"faces\":[";
  for (size_t f = 0; f < poly.faces.size(); ++f) {
    if (f) s += ",";
    s += ints(poly.faces[f]);
  }
  return s + "]}";
}

std::string patch_to_json(const ConvexPatch& patch) {
  return "{\"polyhedron\":" + polyhedron_to_json(patch.poly) +
         ",\"base_face\":" + std::to_string(patch.base_face) + ",\"kind\":\"" +
         (patch.kind == PatchKind::Vertex ? "vertex" : "edge") + "\"}";
}

std::string layout_to_json(const Layout& L) {
  std::string s = "{\"faces\":[";
  for (size_t i = 0; i < L.faces.size(); ++i) {
    const PlacedFace& f = L.faces[i];
    if (i) s += ",";
    s += "{\"id\":\"" + escape_json(f.id) + "\",\"polygon\":" + pts2(f.polygon);
    if (f.parent.empty())
      s += ",\"parent\":null,\"hinge\":null";
    else
      s += ",\"parent\":\"" + escape_json(f.parent) + "\",\"hinge\":[" +
           std::to_string(f.hinge[0]) + "," + std::to_string(f.hinge[1]) + "]";
    s += ",\"vertices\":" + ints(f.vertex_ids) + "}";
  }
  s += "],\"cuts\":[";
  for (size_t i = 0; i < L.cuts.size(); ++i) {
    if (i) s += ",";
    s += "[" + std::to_string(L.cuts[i].first) + "," +
         std::to_string(L.cuts[i].second) + "]";
  }
  return s + "]}";
}

std::string overlap_report_to_json(const OverlapReport& rep) {
  std::string s = "{\"overlapping\":";
  s += rep.overlapping ? "true" : "false";
  s += ",\"witnesses\":[";
  for (size_t i = 0; i < rep.witnesses.size(); ++i) {
    const OverlapWitness& w = rep.witnesses[i];
    if (i) s += ",";
    s += "{\"faces\":[\"" + escape_json(w.face_a) + "\",\"" +
         escape_json(w.face_b) + "\"],\"point\":[" + format_double(w.point.x) +
         "," + format_double(w.point.y) +
         "],\"depth\":" + format_double(w.depth) + "}";
  }
  s += "],\"max_depth\":" + format_double(rep.max_depth) + ",\"min_clearance\":";
  s += std::isinf(rep.min_clearance) ? "null" : format_double(rep.min_clearance);
  s += ",\"pairs_checked\":" + std::to_string(rep.pairs_checked) + "}";
  return s;
}

std::string sweep_report_to_json(const SweepReport& rep) {
  std::string s = "{\"all_pass\":";
  s += rep.all_pass() ? "true" : "false";
  s += ",\"checks\":[";
  for (size_t i = 0; i < rep.checks.size(); ++i) {
    const SweepCheck& c = rep.checks[i];
    if (i) s += ",";
    s += "{\"name\":\"" + escape_json(c.name) + "\",\"pass\":";
    s += c.pass ? "true" : "false";
    s += ",\"detail\":\"" + escape_json(c.detail) + "\"}";
  }
  return s + "]}";
}

DocumentKind detect_document(const std::string& text) {
  json j = parse_text(text);
  if (!j.is_object()) fail(ErrorCode::MalformedInput, "document must be a json object");
  if (j.contains("A") && j.contains("B") && j.contains("z"))
    return DocumentKind::PrismatoidDoc;
  if (j.contains("polyhedron") && j.contains("base_face"))
    return DocumentKind::PatchDoc;
  if (j.contains("vertices") && j.contains("faces"))
    return DocumentKind::PolyhedronDoc;
  if (j.contains("faces") && j["faces"].is_array() &&
      (j["faces"].empty() || j["faces"][0].contains("polygon")))
    return DocumentKind::LayoutDoc;
  fail(ErrorCode::MalformedInput,
       "unrecognized document: expected prismatoid {A,B,z}, patch "
       "{polyhedron,base_face,kind}, polyhedron {vertices,faces}, or layout "
       "{faces,cuts}");
}

RawPrismatoid parse_prismatoid_doc(const std::string& text) {
  json j = parse_text(text);
  try {
    if (!j.is_object() || !j.contains("A") || !j.contains("B") || !j.contains("z"))
      fail(ErrorCode::MalformedInput, "prismatoid document needs A, B, z");
    RawPrismatoid raw;
    raw.A = read_points2(j["A"], "A");
    raw.B = read_points2(j["B"], "B");
    raw.z = finite_number(j["z"], "z");
    return raw;
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    fail(ErrorCode::MalformedInput, e.what());
  }
}

Prismatoid parse_prismatoid(const std::string& text) {
  RawPrismatoid raw = parse_prismatoid_doc(text);
  return Prismatoid::build(std::move(raw.A), std::move(raw.B), raw.z);
}

ConvexPolyhedron parse_polyhedron(const std::string& text) {
  json j = parse_text(text);
  try {
    if (!j.is_object() || !j.contains("vertices") || !j.contains("faces"))
      fail(ErrorCode::MalformedInput, "polyhedron document needs vertices, faces");
    ConvexPolyhedron poly;
    if (!j["vertices"].is_array())
      fail(ErrorCode::MalformedInput, "vertices must be an array");
    for (const auto& p : j["vertices"]) {
      if (!p.is_array() || p.size() != 3)
        fail(ErrorCode::MalformedInput, "vertex entries must be [x,y,z]");
      poly.vertices.push_back({finite_number(p[0], "vertex"),
                               finite_number(p[1], "vertex"),
                               finite_number(p[2], "vertex")});
    }
    if (!j["faces"].is_array())
      fail(ErrorCode::MalformedInput, "faces must be an array");
    for (const auto& f : j["faces"]) {
      if (!f.is_array() || f.size() < 3)
        fail(ErrorCode::MalformedInput, "faces need at least three vertices");
      std::vector<int> ids;
      for (const auto& e : f) {
        if (!e.is_number_integer())
          fail(ErrorCode::MalformedInput, "face entries must be vertex ids");
        int id = e.get<int>();
        if (id < 0 || id >= int(poly.vertices.size()))
          fail(ErrorCode::MalformedInput, "face vertex id out of range");
        ids.push_back(id);
      }
      poly.faces.push_back(std::move(ids));
    }
    return poly;
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    fail(ErrorCode::MalformedInput, e.what());
  }
}

ConvexPatch parse_patch(const std::string& text) {
  json j = parse_text(text);
  try {
    if (!j.is_object() || !j.contains("polyhedron") || !j.contains("base_face"))
      fail(ErrorCode::MalformedInput,
           "patch document needs polyhedron, base_face, kind");
    ConvexPolyhedron poly = parse_polyhedron(j["polyhedron"].dump());
    if (!j["base_face"].is_number_integer())
      fail(ErrorCode::MalformedInput, "base_face must be an integer");
    int base = j["base_face"].get<int>();
    if (base < 0 || base >= int(poly.faces.size()))
      fail(ErrorCode::MalformedInput, "base_face out of range");
    PatchKind kind = PatchKind::Vertex;
    if (j.contains("kind")) {
      std::string k = j["kind"].get<std::string>();
      if (k == "vertex")
        kind = PatchKind::Vertex;
      else if (k == "edge")
        kind = PatchKind::Edge;
      else
        fail(ErrorCode::MalformedInput, "kind must be \"vertex\" or \"edge\"");
    }
    return neighborhood(poly, base, kind);
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    fail(ErrorCode::MalformedInput, e.what());
  }
}

Layout parse_layout(const std::string& text) {
  json j = parse_text(text);
  try {
    if (!j.is_object() || !j.contains("faces"))
      fail(ErrorCode::MalformedInput, "layout document needs faces");
    Layout L;
    for (const auto& f : j["faces"]) {
      PlacedFace pf;
      pf.id = f.at("id").get<std::string>();
      pf.polygon = read_points2(f.at("polygon"), "polygon");
      if (pf.polygon.size() < 3)
        fail(ErrorCode::MalformedInput, "placed polygons need three corners");
      if (f.contains("parent") && !f["parent"].is_null()) {
        pf.parent = f["parent"].get<std::string>();
        const auto& h = f.at("hinge");
        if (!h.is_array() || h.size() != 2)
          fail(ErrorCode::MalformedInput, "hinge must be [lo,hi]");
        pf.hinge = {h[0].get<int>(), h[1].get<int>()};
      }
      if (f.contains("vertices")) {
        for (const auto& e : f["vertices"]) pf.vertex_ids.push_back(e.get<int>());
        if (!pf.vertex_ids.empty() &&
            pf.vertex_ids.size() != pf.polygon.size())
          fail(ErrorCode::MalformedInput,
               "vertices must name every polygon corner");
      }
      L.faces.push_back(std::move(pf));
    }
    if (j.contains("cuts")) {
      for (const auto& c : j["cuts"]) {
        if (!c.is_array() || c.size() != 2)
          fail(ErrorCode::MalformedInput, "cut entries must be [lo,hi]");
        L.cuts.push_back({c[0].get<int>(), c[1].get<int>()});
      }
    }
    return L;
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    fail(ErrorCode::MalformedInput, e.what());
  }
}

// ---------- svg ----------

namespace {

std::string svg_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.8g", v);
  return buf;
}

std::string face_fill(const PlacedFace& f) {
  if (f.id == "B") return "#dcead0";
  if (f.id == "TOP") return "#f4c97a";
  if (!f.id.empty() && f.id[0] == 'B') return "#9fc97f";
  if (!f.id.empty() && f.id[0] == 'A') return "#f2e394";
  if (!f.id.empty() && f.id[0] == 'F' && f.parent.empty()) return "#d8dee9";
  return "#e6ecf5";
}

}  // namespace

std::string render_svg(const Layout& L, const RenderOverlay* overlay) {
  double minx = 1e300, miny = 1e300, maxx = -1e300, maxy = -1e300;
  auto grow = [&](const Vec2& p) {
    minx = std::min(minx, p.x);
    miny = std::min(miny, p.y);
    maxx = std::max(maxx, p.x);
    maxy = std::max(maxy, p.y);
  };
  for (const auto& f : L.faces)
    for (const auto& p : f.polygon) grow(p);
  if (overlay) {
    for (const auto& r : overlay->rays) {
      grow(r.origin);
      grow(r.origin + r.dir * overlay->ray_length);
    }
    for (const auto& poly : overlay->shaded)
      for (const auto& p : poly) grow(p);
    for (const auto& p : overlay->markers) grow(p);
  }
  if (minx > maxx) { minx = miny = 0; maxx = maxy = 1; }

  const double margin = 24;
  double w = maxx - minx, h = maxy - miny;
  double span = std::max({w, h, 1e-12});
  double s = 900.0 / span;
  double W = w * s + 2 * margin, H = h * s + 2 * margin;
  auto px = [&](const Vec2& p) { return margin + (p.x - minx) * s; };
  auto py = [&](const Vec2& p) { return margin + (maxy - p.y) * s; };
  auto pt = [&](const Vec2& p) { return svg_num(px(p)) + "," + svg_num(py(p)); };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + svg_num(W) +
         "\" height=\"" + svg_num(H) + "\" viewBox=\"0 0 " + svg_num(W) + " " +
         svg_num(H) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

  for (const auto& f : L.faces) {
    out += "<polygon points=\"";
    for (size_t i = 0; i < f.polygon.size(); ++i) {
      if (i) out += " ";
      out += pt(f.polygon[i]);
    }
    out += "\" fill=\"" + face_fill(f) +
           "\" fill-opacity=\"0.85\" stroke=\"#3a4149\" stroke-width=\"1\" "
           "stroke-linejoin=\"round\"/>\n";
  }

  // cut edges, drawn over every placed copy
  for (const auto& cut : L.cuts) {
    for (const auto& f : L.faces) {
      if (f.vertex_ids.size() != f.polygon.size() || f.vertex_ids.empty())
        continue;
      int n = int(f.polygon.size());
      for (int i = 0; i < n; ++i) {
        int a = f.vertex_ids[i], b = f.vertex_ids[(i + 1) % n];
        if ((a == cut.first && b == cut.second) ||
            (a == cut.second && b == cut.first)) {
          out += "<line x1=\"" + svg_num(px(f.polygon[i])) + "\" y1=\"" +
                 svg_num(py(f.polygon[i])) + "\" x2=\"" +
                 svg_num(px(f.polygon[(i + 1) % n])) + "\" y2=\"" +
                 svg_num(py(f.polygon[(i + 1) % n])) +
                 "\" stroke=\"#b3302e\" stroke-width=\"3\" "
                 "stroke-linecap=\"round\"/>\n";
        }
      }
    }
  }

  if (overlay) {
    for (const auto& poly : overlay->shaded) {
      out += "<polygon points=\"";
      for (size_t i = 0; i < poly.size(); ++i) {
        if (i) out += " ";
        out += pt(poly[i]);
      }
      out += "\" fill=\"#7f9cc4\" fill-opacity=\"0.3\" stroke=\"none\"/>\n";
    }
    for (const auto& r : overlay->rays) {
      Vec2 tip = r.origin + r.dir * overlay->ray_length;
      out += "<line x1=\"" + svg_num(px(r.origin)) + "\" y1=\"" +
             svg_num(py(r.origin)) + "\" x2=\"" + svg_num(px(tip)) +
             "\" y2=\"" + svg_num(py(tip)) +
             "\" stroke=\"#666666\" stroke-width=\"1\" "
             "stroke-dasharray=\"6 4\"/>\n";
    }
    for (const auto& m : overlay->markers) {
      out += "<circle cx=\"" + svg_num(px(m)) + "\" cy=\"" + svg_num(py(m)) +
             "\" r=\"4.5\" fill=\"#d81b1b\"/>\n";
    }
  }

  out += "</svg>\n";
  return out;
}

}  // namespace patchfold
