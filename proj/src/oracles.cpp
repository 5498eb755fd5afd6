#include "congestlab/oracles.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace congestlab {

bool verify_vertex_cover(const Graph& g, const std::vector<NodeId>& cover) {
  std::vector<bool> in(static_cast<std::size_t>(g.n()), false);
  for (NodeId v : cover) {
    if (v < 0 || v >= g.n()) throw std::invalid_argument("cover node out of range");
    in[static_cast<std::size_t>(v)] = true;
  }
  for (const auto& e : g.edges()) {
    if (!in[static_cast<std::size_t>(e.u)] && !in[static_cast<std::size_t>(e.v)]) {
      return false;
    }
  }
  return true;
}

namespace {

// Adjacency as bitsets over words; all solvers below work on node counts in
// the low hundreds.
struct BitGraph {
  int n = 0;
  int words = 0;
  std::vector<std::uint64_t> adj;  // n rows of `words` words

  explicit BitGraph(const Graph& g)
      : n(g.n()), words((g.n() + 63) / 64), adj(static_cast<std::size_t>(g.n()) * words, 0) {
    for (const auto& e : g.edges()) {
      set(e.u, e.v);
      set(e.v, e.u);
    }
  }

  void set(int u, int v) {
    adj[static_cast<std::size_t>(u) * words + static_cast<std::size_t>(v / 64)] |=
        std::uint64_t{1} << (v % 64);
  }
  bool get(int u, int v) const {
    return (adj[static_cast<std::size_t>(u) * words + static_cast<std::size_t>(v / 64)] >>
            (v % 64)) &
           1;
  }
  const std::uint64_t* row(int u) const {
    return &adj[static_cast<std::size_t>(u) * words];
  }
};

struct Mask {
  std::vector<std::uint64_t> w;

  explicit Mask(int words) : w(static_cast<std::size_t>(words), 0) {}
  void set(int v) { w[static_cast<std::size_t>(v / 64)] |= std::uint64_t{1} << (v % 64); }
  void clear(int v) { w[static_cast<std::size_t>(v / 64)] &= ~(std::uint64_t{1} << (v % 64)); }
  bool get(int v) const { return (w[static_cast<std::size_t>(v / 64)] >> (v % 64)) & 1; }
};

int active_degree(const BitGraph& bg, const Mask& alive, int u) {
  int d = 0;
  const std::uint64_t* row = bg.row(u);
  for (int i = 0; i < bg.words; ++i) {
    d += std::popcount(row[static_cast<std::size_t>(i)] & alive.w[static_cast<std::size_t>(i)]);
  }
  return d;
}

// Greedy clique partition of the alive nodes; each clique of size s certifies
// s-1 cover nodes.
int clique_cover_lb(const BitGraph& bg, const Mask& alive) {
  Mask left = alive;
  int lb = 0;
  std::vector<int> order;
  for (int v = 0; v < bg.n; ++v) {
    if (left.get(v)) order.push_back(v);
  }
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return active_degree(bg, alive, a) > active_degree(bg, alive, b);
  });
  for (int v : order) {
    if (!left.get(v)) continue;
    left.clear(v);
    std::vector<int> clique{v};
    for (int u = 0; u < bg.n; ++u) {
      if (!left.get(u)) continue;
      bool joins = true;
      for (int c : clique) {
        if (!bg.get(u, c)) {
          joins = false;
          break;
        }
      }
      if (joins) {
        clique.push_back(u);
        left.clear(u);
      }
    }
    lb += static_cast<int>(clique.size()) - 1;
  }
  return lb;
}

struct VcSolver {
  const BitGraph& bg;
  int best;  // strictly better covers only

  VcSolver(const BitGraph& g, int budget) : bg(g), best(budget + 1) {}

  void solve(Mask alive, int taken) {
    // Reductions: drop isolated nodes, resolve degree-1 nodes by taking the
    // neighbor.
    for (bool changed = true; changed;) {
      changed = false;
      for (int v = 0; v < bg.n && taken < best; ++v) {
        if (!alive.get(v)) continue;
        int d = active_degree(bg, alive, v);
        if (d == 0) {
          alive.clear(v);
          changed = true;
        } else if (d == 1) {
          int u = -1;
          for (int t = 0; t < bg.n; ++t) {
            if (t != v && alive.get(t) && bg.get(v, t)) {
              u = t;
              break;
            }
          }
          alive.clear(v);
          alive.clear(u);
          ++taken;
          changed = true;
        }
      }
    }
    if (taken >= best) return;
    int pick = -1;
    int pick_deg = 0;
    for (int v = 0; v < bg.n; ++v) {
      if (!alive.get(v)) continue;
      int d = active_degree(bg, alive, v);
      if (d > pick_deg) {
        pick_deg = d;
        pick = v;
      }
    }
    if (pick < 0) {  // no edges remain
      best = taken;
      return;
    }
    if (taken + clique_cover_lb(bg, alive) >= best) return;

    // Either pick joins the cover, or all of its neighbors do.
    Mask with_pick = alive;
    with_pick.clear(pick);
    solve(with_pick, taken + 1);

    Mask without = alive;
    without.clear(pick);
    int added = 0;
    for (int u = 0; u < bg.n; ++u) {
      if (u != pick && alive.get(u) && bg.get(pick, u)) {
        without.clear(u);
        ++added;
      }
    }
    solve(without, taken + added);
  }
};

}  // namespace

std::optional<int> min_vc_size(const Graph& g, int budget) {
  if (budget < 0) throw std::invalid_argument("negative budget");
  BitGraph bg(g);
  Mask alive(bg.words);
  for (int v = 0; v < g.n(); ++v) alive.set(v);
  VcSolver solver(bg, budget);
  solver.solve(alive, 0);
  if (solver.best > budget) return std::nullopt;
  return solver.best;
}

namespace {

std::vector<int> greedy_clique(const BitGraph& bg) {
  std::vector<int> order(static_cast<std::size_t>(bg.n));
  for (int v = 0; v < bg.n; ++v) order[static_cast<std::size_t>(v)] = v;
  Mask all(bg.words);
  for (int v = 0; v < bg.n; ++v) all.set(v);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    int da = active_degree(bg, all, a);
    int db = active_degree(bg, all, b);
    return da != db ? da > db : a < b;
  });
  std::vector<int> clique;
  for (int v : order) {
    bool joins = true;
    for (int c : clique) {
      if (!bg.get(v, c)) {
        joins = false;
        break;
      }
    }
    if (joins) clique.push_back(v);
  }
  return clique;
}

struct ColorSolver {
  const BitGraph& bg;
  int c;
  std::vector<std::uint64_t> domain;  // allowed colors per node
  std::vector<int> color;
  int uncolored;

  ColorSolver(const BitGraph& g, int colors)
      : bg(g),
        c(colors),
        domain(static_cast<std::size_t>(g.n), (colors >= 64) ? ~std::uint64_t{0}
                                                             : ((std::uint64_t{1} << colors) - 1)),
        color(static_cast<std::size_t>(g.n), -1),
        uncolored(g.n) {}

  bool assign(int v, int col, std::vector<std::pair<int, std::uint64_t>>& trail) {
    color[static_cast<std::size_t>(v)] = col;
    --uncolored;
    std::uint64_t bit = std::uint64_t{1} << col;
    for (int u = 0; u < bg.n; ++u) {
      if (color[static_cast<std::size_t>(u)] >= 0 || !bg.get(v, u)) continue;
      if (domain[static_cast<std::size_t>(u)] & bit) {
        trail.push_back({u, domain[static_cast<std::size_t>(u)]});
        domain[static_cast<std::size_t>(u)] &= ~bit;
        if (domain[static_cast<std::size_t>(u)] == 0) return false;
      }
    }
    return true;
  }

  void undo(int v, const std::vector<std::pair<int, std::uint64_t>>& trail) {
    for (auto it = trail.rbegin(); it != trail.rend(); ++it) {
      domain[static_cast<std::size_t>(it->first)] = it->second;
    }
    color[static_cast<std::size_t>(v)] = -1;
    ++uncolored;
  }

  bool search(int used) {
    if (uncolored == 0) return true;
    int pick = -1;
    int pick_size = 65;
    for (int v = 0; v < bg.n; ++v) {
      if (color[static_cast<std::size_t>(v)] >= 0) continue;
      int size = std::popcount(domain[static_cast<std::size_t>(v)]);
      if (size < pick_size) {
        pick_size = size;
        pick = v;
        if (size <= 1) break;
      }
    }
    // New colors are interchangeable: allow at most one unused color index.
    std::uint64_t allowed = domain[static_cast<std::size_t>(pick)];
    std::uint64_t used_mask =
        (used >= 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << used) - 1);
    std::uint64_t next_new = (used < c) ? (std::uint64_t{1} << used) : 0;
    allowed &= used_mask | next_new;
    while (allowed) {
      int col = std::countr_zero(allowed);
      allowed &= allowed - 1;
      std::vector<std::pair<int, std::uint64_t>> trail;
      if (assign(pick, col, trail)) {
        if (search(std::max(used, col + 1))) return true;
      }
      undo(pick, trail);
    }
    return false;
  }
};

}  // namespace

bool is_c_colorable(const Graph& g, int c) {
  if (c < 0 || c > 62) throw std::invalid_argument("color count out of range");
  if (g.n() == 0) return true;
  if (c == 0) return g.n() == 0;
  BitGraph bg(g);
  auto clique = greedy_clique(bg);
  if (static_cast<int>(clique.size()) > c) return false;
  ColorSolver solver(bg, c);
  std::vector<std::pair<int, std::uint64_t>> trail;
  int used = 0;
  for (int v : clique) {
    if (!solver.assign(v, used, trail)) return false;
    ++used;
  }
  return solver.search(used);
}

std::optional<int> chromatic_number(const Graph& g, int c_max) {
  if (c_max < 0) throw std::invalid_argument("negative color budget");
  if (g.n() == 0) return 0;
  BitGraph bg(g);
  int lb = static_cast<int>(greedy_clique(bg).size());
  for (int c = std::max(1, lb); c <= c_max; ++c) {
    if (is_c_colorable(g, c)) return c;
  }
  return std::nullopt;
}

bool verify_coloring(const Graph& g, const std::vector<int>& color) {
  if (static_cast<int>(color.size()) != g.n()) {
    throw std::invalid_argument("coloring size does not match graph");
  }
  for (int v = 0; v < g.n(); ++v) {
    int c = color[static_cast<std::size_t>(v)];
    if (c < 0 || c >= g.n()) {
      throw std::invalid_argument("color value out of range");
    }
  }
  for (const auto& e : g.edges()) {
    if (color[static_cast<std::size_t>(e.u)] == color[static_cast<std::size_t>(e.v)]) {
      return false;
    }
  }
  return true;
}

std::vector<CycleWitness> find_cycles_len8_weight(const Graph& g, std::int64_t w,
                                                  std::size_t limit) {
  std::vector<CycleWitness> out;
  int n = g.n();
  std::vector<bool> on_path(static_cast<std::size_t>(n), false);
  std::vector<NodeId> path;
  path.reserve(8);

  // Canonical form: the path starts at the cycle's smallest node, every other
  // node is larger, and the second node is smaller than the last. Returns
  // true when the requested limit is reached.
  auto extend = [&](auto&& self, NodeId start, std::int64_t acc) -> bool {
    NodeId u = path.back();
    for (auto [v, ew] : g.neighbors(u)) {
      std::int64_t acc2 = acc + ew;
      if (acc2 > w) continue;  // weights are non-negative
      if (path.size() == 8) {
        if (v == start && acc2 == w && path[1] < path[7]) {
          out.push_back({path, acc2});
          if (limit != 0 && out.size() >= limit) return true;
        }
      } else {
        if (v <= start || on_path[static_cast<std::size_t>(v)]) continue;
        on_path[static_cast<std::size_t>(v)] = true;
        path.push_back(v);
        bool stop = self(self, start, acc2);
        path.pop_back();
        on_path[static_cast<std::size_t>(v)] = false;
        if (stop) return true;
      }
    }
    return false;
  };

  for (NodeId s = 0; s + 7 < n; ++s) {
    path.assign(1, s);
    std::fill(on_path.begin(), on_path.end(), false);
    on_path[static_cast<std::size_t>(s)] = true;
    if (extend(extend, s, 0)) break;
  }
  return out;
}

std::optional<CycleWitness> has_cycle_len8_weight(const Graph& g, std::int64_t w) {
  auto found = find_cycles_len8_weight(g, w, 1);
  if (found.empty()) return std::nullopt;
  return found.front();
}

bool check_identical(const LowerBoundInstance& inst) {
  if (inst.kind != Kind::Identical) {
    throw std::invalid_argument("equality check needs an identical-subgraphs instance");
  }
  IdentLayout lay{inst.params.k};
  for (int i = 0; i < lay.k; ++i) {
    for (int j = i + 1; j < lay.k; ++j) {
      bool ea = inst.graph.has_edge(lay.a(i), lay.a(j));
      bool eb = inst.graph.has_edge(lay.b(i), lay.b(j));
      if (ea != eb) return false;
      if (ea && inst.graph.weight(lay.a(i), lay.a(j)) !=
                    inst.graph.weight(lay.b(i), lay.b(j))) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace congestlab
