#pragma once
// Randomized instance sampling, lemma sweeps over input pairs, and the
// micro-benchmarks behind the bench subcommand.

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "congestlab/gadgets.hpp"
#include "congestlab/graph.hpp"

namespace congestlab {

// Independent deterministic stream per (seed, purpose label).
std::mt19937_64 substream(std::uint64_t seed, std::string_view label);

// Connected graph on n nodes: a random spanning tree plus up to extra_edges
// additional random edges; weights uniform in [0, w_max].
Graph random_connected_graph(int n, int extra_edges, std::int64_t w_max,
                             std::mt19937_64& rng);
// Uniform side per node, then patched so both sides are nonempty.
Partition random_partition(int n, std::mt19937_64& rng);
// Uniform block per node, then patched so every block 0..t-1 is nonempty.
std::vector<int> random_blocks(int n, int t, std::mt19937_64& rng);

struct SweepOptions {
  bool exhaustive = true;
  int samples = 0;            // pair count when !exhaustive
  int max_ones_per_side = -1; // cap on ones per input side, -1 = no cap
  bool check_witnesses = true;
  std::uint64_t seed = 0;
  // Optional per-pair tap (JSONL streaming); called for every checked pair.
  std::function<void(const struct SweepItem&)> on_item;
};

struct SweepItem {
  std::string x_hex;
  std::string y_hex;
  bool f = false;         // communication function on the pair
  bool property = false;  // exact oracle on the built graph
  bool witness_ok = true;
  bool ok = false;
};

struct SweepResult {
  Kind kind = Kind::Mvc;
  InstanceParams params;
  long long pairs_checked = 0;
  long long pairs_skipped = 0;  // inputs the builder rejects by contract
  std::vector<SweepItem> failures;

  bool passed() const { return failures.empty() && pairs_checked > 0; }
};

// Sweeps input pairs for one family and checks property <-> function on each,
// plus the explicit witnesses (cover / coloring / cycle shape) where the
// family defines one. Identical and star families are sampled only.
SweepResult check_lemma(Kind kind, const InstanceParams& params, const SweepOptions& opt);

struct BenchRow {
  std::string name;
  int n = 0;
  std::int64_t rounds = -1;  // -1 where not applicable
  std::int64_t bits = -1;
  std::int64_t bound = -1;
  bool ok = true;
  double millis = 0.0;
};

std::vector<BenchRow> run_bench(std::uint64_t seed);

}  // namespace congestlab
