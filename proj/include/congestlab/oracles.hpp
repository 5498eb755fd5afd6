#pragma once
// Exact desk-scale oracles: vertex cover size with a budget, c-colorability,
// fixed-length weighted cycle search, and the subgraph equality predicate.
// Empty optional results mean "exceeds the stated budget", never "unknown".

#include <cstdint>
#include <optional>
#include <vector>

#include "congestlab/gadgets.hpp"
#include "congestlab/graph.hpp"

namespace congestlab {

bool verify_vertex_cover(const Graph& g, const std::vector<NodeId>& cover);

// Exact minimum vertex cover size when it is <= budget; empty otherwise.
// Branch and bound with a greedy clique-cover lower bound.
std::optional<int> min_vc_size(const Graph& g, int budget);

// Exact c-colorability decision; backtracking over color masks with a greedy
// clique pre-assignment and most-constrained-first ordering (c <= 62).
bool is_c_colorable(const Graph& g, int c);

// Least c <= c_max with a proper c-coloring; empty when none exists.
std::optional<int> chromatic_number(const Graph& g, int c_max);

// Rejects partial colorings (any value outside [0, n) color range or -1).
bool verify_coloring(const Graph& g, const std::vector<int>& color);

struct CycleWitness {
  std::vector<NodeId> nodes;  // 8 nodes in traversal order
  std::int64_t weight = 0;
};

// All simple cycles of length exactly 8 and total weight `w`, each reported
// once (smallest node first, smaller second endpoint fixes the direction).
// limit = 0 enumerates everything.
std::vector<CycleWitness> find_cycles_len8_weight(const Graph& g, std::int64_t w,
                                                  std::size_t limit = 0);
std::optional<CycleWitness> has_cycle_len8_weight(const Graph& g, std::int64_t w);

// True iff the two cliques of an identical-subgraphs instance carry equal
// weights on every corresponding pair.
bool check_identical(const LowerBoundInstance& inst);

}  // namespace congestlab
