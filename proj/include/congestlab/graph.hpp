#pragma once
// Undirected weighted graph substrate: construction, cuts against a two-side
// partition, connectivity, and exact all-pairs distances.

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace congestlab {

using NodeId = int;

// Distances use this sentinel for "unreachable"; edge weights are always
// finite and non-negative.
constexpr std::int64_t kInfDist = std::numeric_limits<std::int64_t>::max();

inline std::int64_t dist_add(std::int64_t a, std::int64_t b) {
  if (a == kInfDist || b == kInfDist) return kInfDist;
  return a + b;
}

struct Edge {
  NodeId u = 0;  // u < v always
  NodeId v = 0;
  std::int64_t w = 1;

  bool operator==(const Edge&) const = default;
};

class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);

  int n() const { return n_; }
  int m() const { return static_cast<int>(edges_.size()); }

  // Rejects self-loops, parallel edges and negative weights.
  void add_edge(NodeId u, NodeId v, std::int64_t w = 1);

  bool has_edge(NodeId u, NodeId v) const;
  std::int64_t weight(NodeId u, NodeId v) const;  // requires has_edge

  const std::vector<Edge>& edges() const { return edges_; }
  // Sorted (neighbor, weight) pairs.
  const std::vector<std::pair<NodeId, std::int64_t>>& neighbors(NodeId u) const;
  int degree(NodeId u) const;

  const std::string& label(NodeId u) const;
  void set_label(NodeId u, std::string s);
  const std::vector<std::string>& labels() const { return labels_; }

  std::int64_t max_weight() const;  // 0 on an edgeless graph

  // Structural equality: same n, same edge set with equal weights.
  bool same_structure(const Graph& other) const;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::pair<NodeId, std::int64_t>>> adj_;
  std::unordered_map<std::uint64_t, std::int64_t> weight_by_key_;
  std::vector<std::string> labels_;

  void check_node(NodeId u) const;
  std::uint64_t key(NodeId u, NodeId v) const;
};

enum class Side { A, B };

struct Partition {
  std::vector<Side> side;  // indexed by node id

  int count(Side s) const;
  bool valid_for(const Graph& g) const;  // size matches, both sides nonempty
};

struct Cut {
  std::vector<Edge> edges;       // endpoints ordered (A endpoint, B endpoint)
  std::vector<NodeId> nodes;     // V(C): every cut-edge endpoint, sorted
  std::vector<NodeId> a_nodes;   // C_A, sorted
  std::vector<NodeId> b_nodes;   // C_B, sorted
};

Cut cut_edges(const Graph& g, const Partition& p);

bool is_connected(const Graph& g);

// Largest hop count between reachable pairs; requires a connected graph.
int hop_diameter(const Graph& g);

class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(int n) : n_(n), d_(static_cast<std::size_t>(n) * n, kInfDist) {
    for (int i = 0; i < n; ++i) set(i, i, 0);
  }

  int n() const { return n_; }
  std::int64_t at(NodeId u, NodeId v) const {
    return d_[static_cast<std::size_t>(u) * n_ + static_cast<std::size_t>(v)];
  }
  void set(NodeId u, NodeId v, std::int64_t x) {
    d_[static_cast<std::size_t>(u) * n_ + static_cast<std::size_t>(v)] = x;
  }

  bool operator==(const DistanceMatrix&) const = default;

 private:
  int n_ = 0;
  std::vector<std::int64_t> d_;
};

// Floyd-Warshall; exact, deterministic. Unreachable pairs are kInfDist.
DistanceMatrix apsp_exact(const Graph& g);

// All-pairs distances of the subgraph induced by `nodes` (positions index the
// result). `nodes` must be sorted and duplicate-free.
DistanceMatrix apsp_induced(const Graph& g, const std::vector<NodeId>& nodes);

}  // namespace congestlab
