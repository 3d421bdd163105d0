#pragma once
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "patchfold/prismatoid.hpp"

namespace patchfold {

uint64_t splitmix64(uint64_t& state);

// Deterministic across platforms: the engine is the standard-specified
// mt19937_64 and doubles are drawn by an explicit 53-bit construction
// instead of the library distributions, whose output is unspecified.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}
  double uniform();
  double uniform(double a, double b);
  int uniform_int(int a, int b);  // inclusive bounds
  double log_uniform(double a, double b);

 private:
  std::mt19937_64 eng_;
};

Rng instance_rng(uint64_t seed, long index);

enum class ShapeBias { Generic, NearFlat, DrumLike, Thin, Mixed };

struct GeneratorConfig {
  uint64_t seed = 1;
  int min_vertices = 3;
  int max_vertices = 12;
  ShapeBias bias = ShapeBias::Mixed;
  int retry_cap = 200;
};

std::vector<Vec2> random_convex_polygon(Rng& rng, int n, double rbase,
                                        double jitter);

// Instance `index` of the stream defined by cfg.seed; identical calls give
// identical prismatoids.  Mixed bias cycles through the four shapes.
Prismatoid random_prismatoid(const GeneratorConfig& cfg, long index);

// Triangular prismatoid with nonobtuse top, base, and lateral faces and one
// fan triangle per base vertex.
Prismatoid random_nonobtuse_prismatoid(uint64_t seed, long index);

enum class SearchMode { Constructive, Exhaustive, TurnHeuristic };

struct SearchOptions {
  GeneratorConfig gen;
  SearchMode mode = SearchMode::Constructive;
  long start = 0;          // first instance index of the stream
  long count = 100;
  long cap = 1000000;      // per-instance layout cap in exhaustive mode
  std::string out_dir;     // when nonempty, artifacts land here
};

struct SearchFailure {
  long index = 0;
  std::string reason;
  std::string replay;
};

struct SearchSummary {
  long tried = 0;
  long skipped = 0;
  long clean = 0;
  long counterexamples = 0;
  std::vector<SearchFailure> failures;
  std::map<std::string, long> case_stats;
};

// Constructive mode runs the guaranteed petal construction on every
// instance and records any certification failure.  Exhaustive mode
// enumerates all petal layouts and flags instances where every single one
// overlaps.  Turn-heuristic mode applies the singleton-fan obtuse turn rule
// and records instances where its layout overlaps; instances with a
// non-singleton fan are skipped.
SearchSummary conjecture_scan(const SearchOptions& opt);

}  // namespace patchfold
