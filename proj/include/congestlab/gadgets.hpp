#pragma once
// Generators for the reduction instance families. Every builder returns a
// connected graph, a two-side partition whose A side depends only on x and
// whose B side depends only on y, and enough metadata to re-derive the input
// strings. Index layouts are fixed so tests and node programs can address
// gadget roles arithmetically.

#include <cstdint>
#include <string>
#include <vector>

#include "congestlab/bits.hpp"
#include "congestlab/graph.hpp"

namespace congestlab {

enum class Kind {
  Mvc,
  Coloring3,
  ColoringC,
  ColoringApprox,
  Cycle8,
  Identical,
  ApspStar,
};

std::string kind_name(Kind k);
Kind kind_from_name(const std::string& s);

struct InstanceParams {
  int k = 0;            // base set size (clique size for the identical family)
  int c = 0;            // color / copy count where applicable
  int n = 0;            // node count for the star family
  std::int64_t w_max = 0;  // declared weight bound

  bool operator==(const InstanceParams&) const = default;
};

struct LowerBoundInstance {
  Kind kind = Kind::Mvc;
  Graph graph;
  Partition partition;
  InstanceParams params;
  BitString x;                      // empty when the family has no x string
  BitString y;                      // empty when the family has no y string
  std::vector<std::int64_t> wx;     // identical-subgraphs weight vectors
  std::vector<std::int64_t> wy;
};

bool is_power_of_two(int v);
int ilog2_exact(int v);  // v must be a power of two

// Shared index layout of the four-set families. Sets are numbered
// 0=A1, 1=A2, 2=B1, 3=B2; bases first, then per-set F/T bit nodes.
struct SetLayout {
  int k = 0;
  int logk = 0;

  NodeId base(int set, int i) const { return set * k + i; }
  NodeId f(int set, int h) const { return 4 * k + set * 2 * logk + h; }
  NodeId t(int set, int h) const { return 4 * k + set * 2 * logk + logk + h; }
  int bit_end() const { return 4 * k + 8 * logk; }
  int set_of_base(NodeId v) const { return v / k; }  // valid for v < 4*k
};

// Coloring family appends, per set, a bar row and a doublebar row, then the
// two color triangles (and, when extended, the extra C nodes).
struct ColoringLayout {
  SetLayout sets;
  int c = 3;

  NodeId bar(int set, int i) const { return sets.bit_end() + set * 2 * sets.k + i; }
  NodeId dbar(int set, int i) const {
    return sets.bit_end() + set * 2 * sets.k + sets.k + i;
  }
  int bars_end() const { return sets.bit_end() + 8 * sets.k; }
  NodeId c_a(int m) const { return m < 3 ? bars_end() + m : bars_end() + 6 + (m - 3); }
  NodeId c_b(int m) const {
    return m < 3 ? bars_end() + 3 + m : bars_end() + 6 + (c - 3) + (m - 3);
  }
  int node_count() const { return bars_end() + 6 + 2 * (c - 3); }
};

struct CycleLayout {
  int k = 0;
  NodeId base(int set, int i) const { return set * k + i; }
  NodeId center(int set) const {  // same set numbering
    static constexpr int order[4] = {0, 1, 2, 3};
    return 4 * k + order[set];
  }
  int node_count() const { return 4 * k + 4; }
};

struct IdentLayout {
  int k = 0;
  NodeId a(int i) const { return i; }
  NodeId b(int i) const { return k + i; }
};

struct StarLayout {
  int n = 0;
  NodeId spoke(int i) const { return i; }
  NodeId hub() const { return n - 2; }
  NodeId b() const { return n - 1; }
};

// For index i, selects one bit node per position h: t when bit h of i is 1,
// f otherwise. Returned as the flag vector (1 = t node).
std::vector<int> bin_selector(int i, int logk);
std::vector<NodeId> bin_nodes(const SetLayout& lay, int set, int i);

// ---- vertex cover family -------------------------------------------------

LowerBoundInstance build_mvc(int k, const BitString& x, const BitString& y);
// 4(k-1) + 4 log k: the size the cover lemma pivots on.
int mvc_cover_target(int k);
// Explicit cover witness for an index pair with x_{i,j} = y_{i,j} = 1.
std::vector<NodeId> construct_mvc_cover(const LowerBoundInstance& inst, int i, int j);

// ---- coloring family -----------------------------------------------------

LowerBoundInstance build_coloring3(int k, const BitString& x, const BitString& y);
// Explicit proper 3-coloring witness for x_{i,j} = y_{i,j} = 1.
std::vector<int> construct_3coloring(const LowerBoundInstance& inst, int i, int j);
// Adds C nodes so the graph is c-colorable iff the base is 3-colorable.
LowerBoundInstance extend_coloring_c(const LowerBoundInstance& inst, int c);
// c interconnected copies; chromatic number 3c or at least 3c+1.
LowerBoundInstance build_approx_coloring(int k, int c, const BitString& x,
                                         const BitString& y);

// ---- weighted cycle family -------------------------------------------------

LowerBoundInstance build_weighted_cycle(int k, const BitString& x, const BitString& y);
std::int64_t cycle_target_weight(int k);  // 2k^3
// True when (u, v) is an input edge (A1-A2 or B1-B2 pair edge).
bool is_cycle_input_edge(const LowerBoundInstance& inst, NodeId u, NodeId v);

// ---- identical subgraphs family --------------------------------------------

// wx, wy list pair weights in lexicographic (i, j), i < j order; weights lie
// in [0, w-1]. w = 0 selects the default bound (2k)^2.
LowerBoundInstance build_identical_subgraphs(int k, const std::vector<std::int64_t>& wx,
                                             const std::vector<std::int64_t>& wy,
                                             std::int64_t w = 0);
int pair_rank(int k, int i, int j);
int subgraph_field_bits(std::int64_t w);  // per-pair existence bit + weight bits
// K-bit encoding: per pair, weight bits (low) then an existence bit (high).
BitString encode_subgraph_weights(int k, std::int64_t w,
                                  const std::vector<std::int64_t>& weights);

// ---- distance star family ---------------------------------------------------

// |x| = (n-2) * ceil(log2 n); batch i, most-significant-first, is the weight
// of the spoke edge (a_i, a).
LowerBoundInstance build_apsp_star(int n, const BitString& x);
// Inverse of the batch encoding, reading b's distance row.
BitString decode_star_row(const LowerBoundInstance& inst, const DistanceMatrix& d);

}  // namespace congestlab
