#include "patchfold/search.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>

#include "patchfold/io.hpp"
#include "patchfold/regions.hpp"
#include "patchfold/unfold.hpp"

namespace patchfold {

uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double Rng::uniform() {
  return double(eng_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double a, double b) { return a + (b - a) * uniform(); }

int Rng::uniform_int(int a, int b) {
  int span = b - a + 1;
  int v = a + int(uniform() * span);
  return std::min(v, b);
}

double Rng::log_uniform(double a, double b) {
  return std::exp(uniform(std::log(a), std::log(b)));
}

Rng instance_rng(uint64_t seed, long index) {
  uint64_t state = seed ^ (0x9E3779B97F4A7C15ULL * uint64_t(index + 1));
  uint64_t x = splitmix64(state);
  splitmix64(state);
  return Rng(x ^ state);
}

std::vector<Vec2> random_convex_polygon(Rng& rng, int n, double rbase,
                                        double jitter) {
  // Valtr's construction: sort two random coordinate multisets, split each
  // into an up and a down chain, pair the signed steps at random, and walk
  // them in angular order.  Convex by construction; a redraw is only needed
  // when two steps come out numerically collinear.
  for (int attempt = 0; attempt < 200; ++attempt) {
    std::vector<double> xs(n), ys(n);
    for (double& v : xs) v = rng.uniform();
    for (double& v : ys) v = rng.uniform();
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    auto chain_steps = [&](const std::vector<double>& c) {
      std::vector<double> d;
      double top = c[0], bot = c[0];
      for (int k = 1; k + 1 < n; ++k) {
        if (rng.uniform() < 0.5) {
          d.push_back(c[k] - top);
          top = c[k];
        } else {
          d.push_back(bot - c[k]);
          bot = c[k];
        }
      }
      d.push_back(c[n - 1] - top);
      d.push_back(bot - c[n - 1]);
      return d;
    };
    std::vector<double> dx = chain_steps(xs), dy = chain_steps(ys);
    for (int k = n - 1; k > 0; --k) std::swap(dy[k], dy[rng.uniform_int(0, k)]);
    std::vector<Vec2> step(n);
    for (int k = 0; k < n; ++k) step[k] = {dx[k], dy[k]};
    std::sort(step.begin(), step.end(), [](const Vec2& a, const Vec2& b) {
      return std::atan2(a.y, a.x) < std::atan2(b.y, b.x);
    });
    std::vector<Vec2> pts(n);
    Vec2 cur{0, 0};
    for (int k = 0; k < n; ++k) {
      pts[k] = cur;
      cur = cur + step[k];
    }
    Vec2 c = polygon_centroid(pts);
    double rmax = 0;
    for (const auto& p : pts) rmax = std::max(rmax, (p - c).norm());
    if (rmax == 0) continue;
    double sx = rbase * (1.0 + jitter * rng.uniform(-1.0, 1.0)) / rmax;
    double sy = rbase * (1.0 + jitter * rng.uniform(-1.0, 1.0)) / rmax;
    for (auto& p : pts) p = {(p.x - c.x) * sx, (p.y - c.y) * sy};
    bool strict = true;
    for (int k = 0; k < n && strict; ++k) {
      Vec2 e1 = pts[(k + 1) % n] - pts[k];
      Vec2 e2 = pts[(k + 2) % n] - pts[(k + 1) % n];
      if (e1.cross(e2) <= 1e-9 * e1.norm() * e2.norm()) strict = false;
    }
    if (strict) return pts;
  }
  fail(ErrorCode::GenerationExhausted, "no convex polygon after 200 draws");
}

namespace {

Prismatoid generic_instance(Rng& rng, const GeneratorConfig& cfg,
                            double rel_lo, double rel_hi) {
  int nA = rng.uniform_int(cfg.min_vertices, cfg.max_vertices);
  int nB = rng.uniform_int(cfg.min_vertices, cfg.max_vertices);
  auto A = random_convex_polygon(rng, nA, rng.uniform(0.3, 1.4), 0.45);
  auto B = random_convex_polygon(rng, nB, 1.0, 0.45);
  Vec2 shift{rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)};
  for (auto& p : A) p = p + shift;
  std::vector<Vec2> all = A;
  all.insert(all.end(), B.begin(), B.end());
  double diam = polygon_diameter(all);
  double z = rng.log_uniform(rel_lo, rel_hi) * diam;
  return Prismatoid::build(A, B, z);
}

Prismatoid drumlike_instance(Rng& rng, const GeneratorConfig& cfg) {
  int n = rng.uniform_int(std::max(3, cfg.min_vertices), cfg.max_vertices);
  double twist = rng.uniform(0.08, 2 * std::numbers::pi / n - 0.08);
  double RA = rng.uniform(0.75, 1.15);
  std::vector<Vec2> A(n), B(n);
  for (int k = 0; k < n; ++k) {
    double ja = rng.uniform(0.92, 1.08), jb = rng.uniform(0.92, 1.08);
    double aa = twist + 2 * std::numbers::pi * k / n;
    double ab = 2 * std::numbers::pi * k / n;
    A[k] = {RA * ja * std::cos(aa), RA * ja * std::sin(aa)};
    B[k] = {jb * std::cos(ab), jb * std::sin(ab)};
  }
  std::vector<Vec2> all = A;
  all.insert(all.end(), B.begin(), B.end());
  double z = rng.log_uniform(0.02, 0.5) * polygon_diameter(all);
  return Prismatoid::build(A, B, z);
}

Prismatoid thin_instance(Rng& rng, const GeneratorConfig& cfg) {
  int n = rng.uniform_int(cfg.min_vertices, cfg.max_vertices);
  auto B = random_convex_polygon(rng, n, 1.0, 0.45);
  double s = rng.uniform(0.9, 0.98);
  double th = rng.uniform(0.5, 3.0) * std::numbers::pi / 180.0;
  if (rng.uniform() < 0.5) th = -th;
  Vec2 c = polygon_centroid(B);
  std::vector<Vec2> A(n);
  double co = std::cos(th), si = std::sin(th);
  for (int k = 0; k < n; ++k) {
    Vec2 d = B[k] - c;
    A[k] = c + s * Vec2{co * d.x - si * d.y, si * d.x + co * d.y};
  }
  std::vector<Vec2> all = A;
  all.insert(all.end(), B.begin(), B.end());
  double z = rng.log_uniform(1e-3, 0.05) * polygon_diameter(all);
  return Prismatoid::build(A, B, z);
}

}  // namespace

Prismatoid random_prismatoid(const GeneratorConfig& cfg, long index) {
  Rng rng = instance_rng(cfg.seed, index);
  ShapeBias bias = cfg.bias;
  if (bias == ShapeBias::Mixed) {
    switch (index % 4) {
      case 0: bias = ShapeBias::Generic; break;
      case 1: bias = ShapeBias::NearFlat; break;
      case 2: bias = ShapeBias::DrumLike; break;
      default: bias = ShapeBias::Thin; break;
    }
  }
  for (int attempt = 0; attempt < cfg.retry_cap; ++attempt) {
    try {
      switch (bias) {
        case ShapeBias::Generic:
          return generic_instance(rng, cfg, 1e-3, 10.0);
        case ShapeBias::NearFlat:
          return generic_instance(rng, cfg, 1e-3, 0.01);
        case ShapeBias::DrumLike:
          return drumlike_instance(rng, cfg);
        default:
          return thin_instance(rng, cfg);
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::GenerationExhausted) throw;
      // Degenerate draw (support tie, collinear polygon, ...): redraw.
    }
  }
  fail(ErrorCode::GenerationExhausted,
       "no valid prismatoid within the retry budget");
}

Prismatoid random_nonobtuse_prismatoid(uint64_t seed, long index) {
  Rng rng = instance_rng(seed ^ 0xA5A5A5A5A5A5A5A5ULL, index);
  constexpr double deg = std::numbers::pi / 180.0;
  for (int attempt = 0; attempt < 2000; ++attempt) {
    std::vector<Vec2> A(3), B(3);
    double rA = rng.uniform(0.65, 1.0);
    bool bad = false;
    for (int k = 0; k < 3; ++k) {
      double tb = (120.0 * k + rng.uniform(-22.0, 22.0)) * deg;
      double ta = (60.0 + 120.0 * k + rng.uniform(-22.0, 22.0)) * deg;
      B[k] = {std::cos(tb), std::sin(tb)};
      A[k] = {rA * std::cos(ta), rA * std::sin(ta)};
    }
    double z = rng.uniform(0.9, 1.5);
    try {
      Prismatoid P = Prismatoid::build(A, B, z);
      for (int i = 0; i < 3 && !bad; ++i)
        if (P.fan_at(i).size() != 1) bad = true;
      if (bad) continue;
      double ea = P.tol().eps_ang;
      for (int k = 0; k < 3 && !bad; ++k) {
        if (angle_at(A[k], A[(k + 1) % 3], A[(k + 2) % 3]) >
            std::numbers::pi / 2 + 1e-12)
          bad = true;
        if (angle_at(B[k], B[(k + 1) % 3], B[(k + 2) % 3]) >
            std::numbers::pi / 2 + 1e-12)
          bad = true;
      }
      (void)ea;
      for (const auto& f : P.band())
        if (!bad && !face_angles_nonobtuse(P.face_vertices(f), 1e-12))
          bad = true;
      if (!bad) return P;
    } catch (const Error&) {
      continue;
    }
  }
  fail(ErrorCode::GenerationExhausted,
       "no nonobtuse triangular prismatoid within the retry budget");
}

namespace {

std::string bias_name(ShapeBias b) {
  switch (b) {
    case ShapeBias::Generic: return "generic";
    case ShapeBias::NearFlat: return "near-flat";
    case ShapeBias::DrumLike: return "drum";
    case ShapeBias::Thin: return "thin";
    default: return "mixed";
  }
}

std::string mode_name(SearchMode m) {
  switch (m) {
    case SearchMode::Constructive: return "constructive";
    case SearchMode::Exhaustive: return "exhaustive";
    default: return "turn-heuristic";
  }
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  out << body;
}

}  // namespace

SearchSummary conjecture_scan(const SearchOptions& opt) {
  SearchSummary sum;
  bool artifacts = !opt.out_dir.empty();
  if (artifacts) std::filesystem::create_directories(opt.out_dir);

  std::string replay_base =
      "patchfold search --seed " + std::to_string(opt.gen.seed) + " --bias " +
      bias_name(opt.gen.bias) + " --mode " + mode_name(opt.mode);

  for (long k = opt.start; k < opt.start + opt.count; ++k) {
    std::optional<Prismatoid> Pm;
    try {
      Pm.emplace(random_prismatoid(opt.gen, k));
    } catch (const Error&) {
      ++sum.skipped;
      continue;
    }
    const Prismatoid& P = *Pm;
    ++sum.tried;

    if (opt.mode == SearchMode::Constructive) {
      std::vector<std::string> cases;
      try {
        Layout L = petal_unfold_topless(P, &cases);
        (void)L;
        ++sum.clean;
        for (const auto& c : cases) ++sum.case_stats[c];
      } catch (const Error& e) {
        if (e.code() == ErrorCode::OverlapDetected ||
            e.code() == ErrorCode::ContainmentFailure ||
            e.code() == ErrorCode::NoSafeFlip ||
            e.code() == ErrorCode::UnhandledCase) {
          SearchFailure f;
          f.index = k;
          f.reason = e.what();
          f.replay = replay_base + " --count 1 --index " + std::to_string(k);
          sum.failures.push_back(f);
          if (artifacts) {
            write_file(opt.out_dir + "/instance_" + std::to_string(k) + ".json",
                       prismatoid_to_json(P));
            try {
              auto splits = choose_topless_splits(P);
              Layout L = petal_layout(P, splits, std::nullopt);
              write_file(opt.out_dir + "/layout_" + std::to_string(k) +
                             "_constructive.svg",
                         render_svg(L));
            } catch (const Error&) {
            }
          }
        } else {
          ++sum.skipped;
          --sum.tried;
        }
      }
    } else if (opt.mode == SearchMode::TurnHeuristic) {
      auto splits = obtuse_avoiding_splits(P);
      if (!splits) {
        ++sum.skipped;
        --sum.tried;
        ++sum.case_stats["non-singleton-fan"];
        continue;
      }
      try {
        Layout L = petal_layout(P, *splits, std::nullopt);
        if (layout_overlaps(L).overlapping) {
          ++sum.counterexamples;
          SearchFailure f;
          f.index = k;
          f.reason = "obtuse turn rule overlaps";
          f.replay = replay_base + " --count 1 --index " + std::to_string(k);
          sum.failures.push_back(f);
          if (artifacts) {
            write_file(opt.out_dir + "/instance_" + std::to_string(k) + ".json",
                       prismatoid_to_json(P));
            write_file(opt.out_dir + "/layout_" + std::to_string(k) +
                           "_turnrule.svg",
                       render_svg(L));
          }
        } else {
          ++sum.clean;
        }
      } catch (const Error&) {
        ++sum.skipped;
        --sum.tried;
      }
    } else {
      try {
        bool any_clean = false;
        long shown = 0;
        enumerate_petal_layouts(
            P, false, opt.cap,
            [&](const Layout& L, const std::vector<int>& splits, int) {
              (void)splits;
              ++shown;
              if (!any_clean && !layout_overlaps(L).overlapping)
                any_clean = true;
            });
        if (!any_clean && shown > 0) {
          ++sum.counterexamples;
          SearchFailure f;
          f.index = k;
          f.reason = "every petal layout overlaps";
          f.replay = replay_base + " --count 1 --index " + std::to_string(k);
          sum.failures.push_back(f);
          if (artifacts) {
            write_file(opt.out_dir + "/instance_" + std::to_string(k) + ".json",
                       prismatoid_to_json(P));
            auto splits = std::vector<int>(P.nB(), 0);
            write_file(opt.out_dir + "/layout_" + std::to_string(k) +
                           "_allright.svg",
                       render_svg(petal_layout(P, splits, std::nullopt)));
          }
        } else {
          ++sum.clean;
        }
      } catch (const Error&) {
        ++sum.skipped;
        --sum.tried;
      }
    }
  }

  if (artifacts) {
    std::string j = "{\"seed\":" + std::to_string(opt.gen.seed) +
                    ",\"bias\":\"" + bias_name(opt.gen.bias) + "\",\"mode\":\"" +
                    mode_name(opt.mode) +
                    "\",\"start\":" + std::to_string(opt.start) +
                    ",\"count\":" + std::to_string(opt.count) +
                    ",\"tried\":" + std::to_string(sum.tried) +
                    ",\"skipped\":" + std::to_string(sum.skipped) +
                    ",\"clean\":" + std::to_string(sum.clean) +
                    ",\"counterexamples\":" + std::to_string(sum.counterexamples) +
                    ",\"failures\":[";
    for (size_t i = 0; i < sum.failures.size(); ++i) {
      if (i) j += ",";
      j += "{\"index\":" + std::to_string(sum.failures[i].index) +
           ",\"reason\":\"" + sum.failures[i].reason + "\",\"replay\":\"" +
           sum.failures[i].replay + "\"}";
    }
    j += "],\"case_stats\":{";
    bool first = true;
    for (const auto& [name, c] : sum.case_stats) {
      if (!first) j += ",";
      first = false;
      j += "\"" + name + "\":" + std::to_string(c);
    }
    j += "}}\n";
    write_file(opt.out_dir + "/summary.json", j);
  }
  return sum;
}

}  // namespace patchfold
