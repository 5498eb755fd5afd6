#include "congestlab/graph.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace congestlab {

Graph::Graph(int n) : n_(n) {
  if (n < 0) throw std::invalid_argument("negative node count");
  adj_.resize(static_cast<std::size_t>(n));
  labels_.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) labels_[static_cast<std::size_t>(i)] = "v" + std::to_string(i);
}

void Graph::check_node(NodeId u) const {
  if (u < 0 || u >= n_) throw std::out_of_range("node id out of range");
}

std::uint64_t Graph::key(NodeId u, NodeId v) const {
  if (u > v) std::swap(u, v);
  return static_cast<std::uint64_t>(u) * static_cast<std::uint64_t>(n_) +
         static_cast<std::uint64_t>(v);
}

void Graph::add_edge(NodeId u, NodeId v, std::int64_t w) {
  check_node(u);
  check_node(v);
  if (u == v) throw std::invalid_argument("self-loop rejected");
  if (w < 0) throw std::invalid_argument("negative edge weight rejected");
  if (has_edge(u, v)) throw std::invalid_argument("parallel edge rejected");
  if (u > v) std::swap(u, v);
  edges_.push_back({u, v, w});
  weight_by_key_[key(u, v)] = w;
  auto& au = adj_[static_cast<std::size_t>(u)];
  auto& av = adj_[static_cast<std::size_t>(v)];
  au.insert(std::lower_bound(au.begin(), au.end(), std::make_pair(v, std::int64_t{0})),
            {v, w});
  av.insert(std::lower_bound(av.begin(), av.end(), std::make_pair(u, std::int64_t{0})),
            {u, w});
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  check_node(u);
  check_node(v);
  if (u == v) return false;
  return weight_by_key_.count(key(u, v)) > 0;
}

std::int64_t Graph::weight(NodeId u, NodeId v) const {
  check_node(u);
  check_node(v);
  auto it = weight_by_key_.find(key(u, v));
  if (it == weight_by_key_.end()) throw std::invalid_argument("no such edge");
  return it->second;
}

const std::vector<std::pair<NodeId, std::int64_t>>& Graph::neighbors(NodeId u) const {
  check_node(u);
  return adj_[static_cast<std::size_t>(u)];
}

int Graph::degree(NodeId u) const {
  return static_cast<int>(neighbors(u).size());
}

const std::string& Graph::label(NodeId u) const {
  check_node(u);
  return labels_[static_cast<std::size_t>(u)];
}

void Graph::set_label(NodeId u, std::string s) {
  check_node(u);
  labels_[static_cast<std::size_t>(u)] = std::move(s);
}

std::int64_t Graph::max_weight() const {
  std::int64_t w = 0;
  for (const auto& e : edges_) w = std::max(w, e.w);
  return w;
}

bool Graph::same_structure(const Graph& other) const {
  if (n_ != other.n_ || edges_.size() != other.edges_.size()) return false;
  auto a = edges_;
  auto b = other.edges_;
  auto lt = [](const Edge& x, const Edge& y) {
    return std::tie(x.u, x.v, x.w) < std::tie(y.u, y.v, y.w);
  };
  std::sort(a.begin(), a.end(), lt);
  std::sort(b.begin(), b.end(), lt);
  return a == b;
}

int Partition::count(Side s) const {
  int c = 0;
  for (auto x : side) {
    if (x == s) ++c;
  }
  return c;
}

bool Partition::valid_for(const Graph& g) const {
  return static_cast<int>(side.size()) == g.n() && count(Side::A) > 0 &&
         count(Side::B) > 0;
}

Cut cut_edges(const Graph& g, const Partition& p) {
  if (static_cast<int>(p.side.size()) != g.n()) {
    throw std::invalid_argument("partition size does not match graph");
  }
  Cut cut;
  std::vector<bool> in_cut(static_cast<std::size_t>(g.n()), false);
  for (const auto& e : g.edges()) {
    auto su = p.side[static_cast<std::size_t>(e.u)];
    auto sv = p.side[static_cast<std::size_t>(e.v)];
    if (su == sv) continue;
    Edge ordered = e;
    if (su == Side::B) std::swap(ordered.u, ordered.v);
    cut.edges.push_back(ordered);
    in_cut[static_cast<std::size_t>(e.u)] = true;
    in_cut[static_cast<std::size_t>(e.v)] = true;
  }
  for (NodeId v = 0; v < g.n(); ++v) {
    if (!in_cut[static_cast<std::size_t>(v)]) continue;
    cut.nodes.push_back(v);
    if (p.side[static_cast<std::size_t>(v)] == Side::A) {
      cut.a_nodes.push_back(v);
    } else {
      cut.b_nodes.push_back(v);
    }
  }
  return cut;
}

bool is_connected(const Graph& g) {
  if (g.n() == 0) return true;
  std::vector<bool> seen(static_cast<std::size_t>(g.n()), false);
  std::queue<NodeId> q;
  q.push(0);
  seen[0] = true;
  int reached = 1;
  while (!q.empty()) {
    NodeId u = q.front();
    q.pop();
    for (auto [v, w] : g.neighbors(u)) {
      (void)w;
      if (seen[static_cast<std::size_t>(v)]) continue;
      seen[static_cast<std::size_t>(v)] = true;
      ++reached;
      q.push(v);
    }
  }
  return reached == g.n();
}

int hop_diameter(const Graph& g) {
  if (!is_connected(g)) throw std::invalid_argument("hop_diameter requires a connected graph");
  int best = 0;
  std::vector<int> depth(static_cast<std::size_t>(g.n()));
  for (NodeId s = 0; s < g.n(); ++s) {
    std::fill(depth.begin(), depth.end(), -1);
    std::queue<NodeId> q;
    q.push(s);
    depth[static_cast<std::size_t>(s)] = 0;
    while (!q.empty()) {
      NodeId u = q.front();
      q.pop();
      best = std::max(best, depth[static_cast<std::size_t>(u)]);
      for (auto [v, w] : g.neighbors(u)) {
        (void)w;
        if (depth[static_cast<std::size_t>(v)] >= 0) continue;
        depth[static_cast<std::size_t>(v)] = depth[static_cast<std::size_t>(u)] + 1;
        q.push(v);
      }
    }
  }
  return best;
}

DistanceMatrix apsp_exact(const Graph& g) {
  DistanceMatrix d(g.n());
  for (const auto& e : g.edges()) {
    if (e.w < d.at(e.u, e.v)) {
      d.set(e.u, e.v, e.w);
      d.set(e.v, e.u, e.w);
    }
  }
  for (int k = 0; k < g.n(); ++k) {
    for (int i = 0; i < g.n(); ++i) {
      std::int64_t dik = d.at(i, k);
      if (dik == kInfDist) continue;
      for (int j = 0; j < g.n(); ++j) {
        std::int64_t alt = dist_add(dik, d.at(k, j));
        if (alt < d.at(i, j)) d.set(i, j, alt);
      }
    }
  }
  return d;
}

DistanceMatrix apsp_induced(const Graph& g, const std::vector<NodeId>& nodes) {
  int m = static_cast<int>(nodes.size());
  std::vector<int> pos(static_cast<std::size_t>(g.n()), -1);
  for (int i = 0; i < m; ++i) {
    if (i > 0 && nodes[static_cast<std::size_t>(i)] <= nodes[static_cast<std::size_t>(i - 1)]) {
      throw std::invalid_argument("node list must be sorted and duplicate-free");
    }
    pos[static_cast<std::size_t>(nodes[static_cast<std::size_t>(i)])] = i;
  }
  DistanceMatrix d(m);
  for (const auto& e : g.edges()) {
    int pu = pos[static_cast<std::size_t>(e.u)];
    int pv = pos[static_cast<std::size_t>(e.v)];
    if (pu < 0 || pv < 0) continue;
    if (e.w < d.at(pu, pv)) {
      d.set(pu, pv, e.w);
      d.set(pv, pu, e.w);
    }
  }
  for (int k = 0; k < m; ++k) {
    for (int i = 0; i < m; ++i) {
      std::int64_t dik = d.at(i, k);
      if (dik == kInfDist) continue;
      for (int j = 0; j < m; ++j) {
        std::int64_t alt = dist_add(dik, d.at(k, j));
        if (alt < d.at(i, j)) d.set(i, j, alt);
      }
    }
  }
  return d;
}

}  // namespace congestlab
