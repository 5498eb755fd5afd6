#include "congestlab/gadgets.hpp"

#include <algorithm>
#include <stdexcept>

#include "congestlab/comm.hpp"

namespace congestlab {

namespace {

const char* kSetNames[4] = {"A1", "A2", "B1", "B2"};

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

void check_disj_strings(int k, const BitString& x, const BitString& y) {
  std::size_t want = static_cast<std::size_t>(k) * static_cast<std::size_t>(k);
  require(x.size() == want && y.size() == want,
          "input strings must have length k*k");
  if (x.all_ones()) throw std::invalid_argument("all-ones x rejected");
  if (y.all_ones()) throw std::invalid_argument("all-ones y rejected");
}

void label_sets(Graph& g, const SetLayout& lay) {
  for (int set = 0; set < 4; ++set) {
    for (int i = 0; i < lay.k; ++i) {
      g.set_label(lay.base(set, i),
                  std::string(kSetNames[set]) + "[" + std::to_string(i) + "]");
    }
    for (int h = 0; h < lay.logk; ++h) {
      g.set_label(lay.f(set, h),
                  std::string("F_{") + kSetNames[set] + "}[" + std::to_string(h) + "]");
      g.set_label(lay.t(set, h),
                  std::string("T_{") + kSetNames[set] + "}[" + std::to_string(h) + "]");
    }
  }
}

// The per-set bit gadgets: one 4-cycle per (h, column) crossing the partition,
// and each base node attached to its selector nodes.
void add_bit_gadgets(Graph& g, const SetLayout& lay) {
  for (int col = 0; col < 2; ++col) {  // column 0 pairs A1/B1, column 1 pairs A2/B2
    int sa = col;      // A1 or A2
    int sb = col + 2;  // B1 or B2
    for (int h = 0; h < lay.logk; ++h) {
      g.add_edge(lay.f(sa, h), lay.t(sa, h));
      g.add_edge(lay.t(sa, h), lay.f(sb, h));
      g.add_edge(lay.f(sb, h), lay.t(sb, h));
      g.add_edge(lay.t(sb, h), lay.f(sa, h));
    }
  }
  for (int set = 0; set < 4; ++set) {
    for (int i = 0; i < lay.k; ++i) {
      for (NodeId v : bin_nodes(lay, set, i)) {
        g.add_edge(lay.base(set, i), v);
      }
    }
  }
}

void add_input_edges_zero_bits(Graph& g, const SetLayout& lay, const BitString& x,
                               const BitString& y) {
  for (int i = 0; i < lay.k; ++i) {
    for (int j = 0; j < lay.k; ++j) {
      if (!pair_bit(x, lay.k, i, j)) g.add_edge(lay.base(0, i), lay.base(1, j));
      if (!pair_bit(y, lay.k, i, j)) g.add_edge(lay.base(2, i), lay.base(3, j));
    }
  }
}

Partition four_set_partition(const SetLayout& lay, int total_nodes) {
  Partition p;
  p.side.assign(static_cast<std::size_t>(total_nodes), Side::B);
  for (int set = 0; set < 2; ++set) {
    for (int i = 0; i < lay.k; ++i) p.side[static_cast<std::size_t>(lay.base(set, i))] = Side::A;
    for (int h = 0; h < lay.logk; ++h) {
      p.side[static_cast<std::size_t>(lay.f(set, h))] = Side::A;
      p.side[static_cast<std::size_t>(lay.t(set, h))] = Side::A;
    }
  }
  return p;
}

}  // namespace

std::string kind_name(Kind k) {
  switch (k) {
    case Kind::Mvc: return "mvc";
    case Kind::Coloring3: return "col3";
    case Kind::ColoringC: return "colc";
    case Kind::ColoringApprox: return "colapprox";
    case Kind::Cycle8: return "cycle8";
    case Kind::Identical: return "ident";
    case Kind::ApspStar: return "star";
  }
  throw std::logic_error("unknown kind");
}

Kind kind_from_name(const std::string& s) {
  if (s == "mvc") return Kind::Mvc;
  if (s == "col3") return Kind::Coloring3;
  if (s == "colc") return Kind::ColoringC;
  if (s == "colapprox") return Kind::ColoringApprox;
  if (s == "cycle8") return Kind::Cycle8;
  if (s == "ident") return Kind::Identical;
  if (s == "star") return Kind::ApspStar;
  throw std::invalid_argument("unknown instance kind: " + s);
}

bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

int ilog2_exact(int v) {
  if (!is_power_of_two(v)) throw std::invalid_argument("not a power of two");
  int r = 0;
  while (v > 1) {
    v >>= 1;
    ++r;
  }
  return r;
}

std::vector<int> bin_selector(int i, int logk) {
  if (logk < 0 || i < 0 || i >= (1 << logk)) {
    throw std::invalid_argument("bin selector index out of range");
  }
  std::vector<int> out(static_cast<std::size_t>(logk));
  for (int h = 0; h < logk; ++h) out[static_cast<std::size_t>(h)] = (i >> h) & 1;
  return out;
}

std::vector<NodeId> bin_nodes(const SetLayout& lay, int set, int i) {
  auto sel = bin_selector(i, lay.logk);
  std::vector<NodeId> out;
  out.reserve(static_cast<std::size_t>(lay.logk));
  for (int h = 0; h < lay.logk; ++h) {
    out.push_back(sel[static_cast<std::size_t>(h)] ? lay.t(set, h) : lay.f(set, h));
  }
  return out;
}

// ---- vertex cover family ---------------------------------------------------

LowerBoundInstance build_mvc(int k, const BitString& x, const BitString& y) {
  require(is_power_of_two(k) && k >= 2, "k must be a power of two, at least 2");
  check_disj_strings(k, x, y);
  SetLayout lay{k, ilog2_exact(k)};

  Graph g(lay.bit_end());
  for (int set = 0; set < 4; ++set) {
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j) g.add_edge(lay.base(set, i), lay.base(set, j));
    }
  }
  add_bit_gadgets(g, lay);
  add_input_edges_zero_bits(g, lay, x, y);
  label_sets(g, lay);

  LowerBoundInstance inst;
  inst.kind = Kind::Mvc;
  inst.graph = std::move(g);
  inst.partition = four_set_partition(lay, lay.bit_end());
  inst.params.k = k;
  inst.x = x;
  inst.y = y;
  return inst;
}

int mvc_cover_target(int k) { return 4 * (k - 1) + 4 * ilog2_exact(k); }

std::vector<NodeId> construct_mvc_cover(const LowerBoundInstance& inst, int i, int j) {
  require(inst.kind == Kind::Mvc, "cover witness needs a vertex cover instance");
  int k = inst.params.k;
  require(i >= 0 && i < k && j >= 0 && j < k, "witness index out of range");
  require(pair_bit(inst.x, k, i, j) && pair_bit(inst.y, k, i, j),
          "witness indexes must select a set bit on both sides");
  SetLayout lay{k, ilog2_exact(k)};
  std::vector<NodeId> cover;
  int excluded[4] = {i, j, i, j};
  for (int set = 0; set < 4; ++set) {
    for (int v = 0; v < k; ++v) {
      if (v != excluded[set]) cover.push_back(lay.base(set, v));
    }
    for (NodeId b : bin_nodes(lay, set, excluded[set])) cover.push_back(b);
  }
  std::sort(cover.begin(), cover.end());
  return cover;
}

// ---- coloring family -------------------------------------------------------

LowerBoundInstance build_coloring3(int k, const BitString& x, const BitString& y) {
  require(is_power_of_two(k) && k >= 2, "k must be a power of two, at least 2");
  check_disj_strings(k, x, y);
  ColoringLayout lay{{k, ilog2_exact(k)}, 3};

  Graph g(lay.node_count());
  add_bit_gadgets(g, lay.sets);
  add_input_edges_zero_bits(g, lay.sets, x, y);

  // Color triangles and their cross edges.
  for (int m = 0; m < 3; ++m) {
    g.add_edge(lay.c_a(m), lay.c_a((m + 1) % 3));
    g.add_edge(lay.c_b(m), lay.c_b((m + 1) % 3));
  }
  for (int ma = 0; ma < 3; ++ma) {
    for (int mb = 0; mb < 3; ++mb) {
      if (ma != mb) g.add_edge(lay.c_a(ma), lay.c_b(mb));
    }
  }

  // Bit nodes attach to the C node matching their column.
  for (int set = 0; set < 4; ++set) {
    NodeId c = (set % 2 == 0) ? (set < 2 ? lay.c_a(1) : lay.c_b(1))
                              : (set < 2 ? lay.c_a(2) : lay.c_b(2));
    for (int h = 0; h < lay.sets.logk; ++h) {
      g.add_edge(lay.sets.f(set, h), c);
      g.add_edge(lay.sets.t(set, h), c);
    }
  }

  // Bar rows: a path (s_i, bar_i, dbar_i) per index plus the row links.
  for (int set = 0; set < 4; ++set) {
    for (int i = 0; i < k; ++i) {
      g.add_edge(lay.sets.base(set, i), lay.bar(set, i));
      g.add_edge(lay.bar(set, i), lay.dbar(set, i));
      if (i + 1 < k) g.add_edge(lay.dbar(set, i), lay.bar(set, i + 1));
    }
  }

  // Per-set C wiring: first columns pin to C^2, second columns to C^1, with
  // the roles of the two C nodes swapped between the base and doublebar rows.
  for (int set = 0; set < 4; ++set) {
    bool a_side = set < 2;
    int col = set % 2;
    NodeId c_base = a_side ? lay.c_a(col == 0 ? 2 : 1) : lay.c_b(col == 0 ? 2 : 1);
    NodeId c_dbar = a_side ? lay.c_a(col == 0 ? 1 : 2) : lay.c_b(col == 0 ? 1 : 2);
    for (int i = 0; i < k; ++i) {
      g.add_edge(c_base, lay.sets.base(set, i));
      g.add_edge(c_dbar, lay.dbar(set, i));
    }
    g.add_edge(c_base, lay.bar(set, 0));
    g.add_edge(c_base, lay.dbar(set, k - 1));
  }

  label_sets(g, lay.sets);
  for (int set = 0; set < 4; ++set) {
    for (int i = 0; i < k; ++i) {
      g.set_label(lay.bar(set, i),
                  std::string("bar{") + kSetNames[set] + "}[" + std::to_string(i) + "]");
      g.set_label(lay.dbar(set, i),
                  std::string("dbar{") + kSetNames[set] + "}[" + std::to_string(i) + "]");
    }
  }
  for (int m = 0; m < 3; ++m) {
    g.set_label(lay.c_a(m), "C_a[" + std::to_string(m) + "]");
    g.set_label(lay.c_b(m), "C_b[" + std::to_string(m) + "]");
  }

  Partition p = four_set_partition(lay.sets, lay.node_count());
  for (int set = 0; set < 2; ++set) {
    for (int i = 0; i < k; ++i) {
      p.side[static_cast<std::size_t>(lay.bar(set, i))] = Side::A;
      p.side[static_cast<std::size_t>(lay.dbar(set, i))] = Side::A;
    }
  }
  for (int m = 0; m < 3; ++m) p.side[static_cast<std::size_t>(lay.c_a(m))] = Side::A;

  LowerBoundInstance inst;
  inst.kind = Kind::Coloring3;
  inst.graph = std::move(g);
  inst.partition = std::move(p);
  inst.params.k = k;
  inst.params.c = 3;
  inst.x = x;
  inst.y = y;
  return inst;
}

std::vector<int> construct_3coloring(const LowerBoundInstance& inst, int i, int j) {
  require(inst.kind == Kind::Coloring3, "coloring witness needs a 3-coloring instance");
  int k = inst.params.k;
  require(i >= 0 && i < k && j >= 0 && j < k, "witness index out of range");
  require(pair_bit(inst.x, k, i, j) && pair_bit(inst.y, k, i, j),
          "witness indexes must select a set bit on both sides");
  ColoringLayout lay{{k, ilog2_exact(k)}, 3};
  std::vector<int> color(static_cast<std::size_t>(lay.node_count()), -1);
  auto put = [&](NodeId v, int c) { color[static_cast<std::size_t>(v)] = c; };

  for (int m = 0; m < 3; ++m) {
    put(lay.c_a(m), m);
    put(lay.c_b(m), m);
  }

  // Base rows: the selected index is color 0; the rest of the first columns
  // take color 1 and the rest of the second columns color 2.
  for (int set = 0; set < 4; ++set) {
    int sel = (set % 2 == 0) ? i : j;
    int other = (set % 2 == 0) ? 1 : 2;
    for (int v = 0; v < k; ++v) put(lay.sets.base(set, v), v == sel ? 0 : other);
  }

  // Bit nodes: the selected bin set takes the color its column's C node
  // forbids the base row (2 for first columns, 1 for second columns); the
  // complement takes color 0.
  for (int set = 0; set < 4; ++set) {
    int sel = (set % 2 == 0) ? i : j;
    int bin_color = (set % 2 == 0) ? 2 : 1;
    auto flags = bin_selector(sel, lay.sets.logk);
    for (int h = 0; h < lay.sets.logk; ++h) {
      NodeId chosen = flags[static_cast<std::size_t>(h)] ? lay.sets.t(set, h)
                                                         : lay.sets.f(set, h);
      NodeId rest = flags[static_cast<std::size_t>(h)] ? lay.sets.f(set, h)
                                                       : lay.sets.t(set, h);
      put(chosen, bin_color);
      put(rest, 0);
    }
  }

  // Bar rows split around the selected index; doublebar rows shift by one.
  for (int set = 0; set < 4; ++set) {
    int sel = (set % 2 == 0) ? i : j;
    int hi = (set % 2 == 0) ? 2 : 1;  // color above the selected bar index
    for (int v = 0; v < k; ++v) {
      if (v == sel) {
        put(lay.bar(set, v), set % 2 == 0 ? 1 : 2);
      } else {
        put(lay.bar(set, v), v < sel ? 0 : hi);
      }
      put(lay.dbar(set, v), v < sel ? hi : 0);
    }
  }

  return color;
}

LowerBoundInstance extend_coloring_c(const LowerBoundInstance& inst, int c) {
  require(inst.kind == Kind::Coloring3, "extension starts from a 3-coloring instance");
  require(c >= 3, "color count must be at least 3");
  int k = inst.params.k;
  ColoringLayout lay{{k, ilog2_exact(k)}, c};

  LowerBoundInstance out;
  out.kind = Kind::ColoringC;
  out.params = inst.params;
  out.params.c = c;
  out.x = inst.x;
  out.y = inst.y;

  Graph g(lay.node_count());
  for (const auto& e : inst.graph.edges()) g.add_edge(e.u, e.v, e.w);
  for (NodeId v = 0; v < inst.graph.n(); ++v) g.set_label(v, inst.graph.label(v));

  Partition p = inst.partition;
  p.side.resize(static_cast<std::size_t>(lay.node_count()), Side::B);

  // Each extra C_a node joins every A-side node (earlier extras included);
  // each extra C_b node joins every B-side node plus the base C_a triangle.
  for (int m = 3; m < c; ++m) {
    NodeId ca = lay.c_a(m);
    p.side[static_cast<std::size_t>(ca)] = Side::A;
    g.set_label(ca, "C_a[" + std::to_string(m) + "]");
    for (NodeId v = 0; v < ca; ++v) {
      if (v != ca && p.side[static_cast<std::size_t>(v)] == Side::A) g.add_edge(ca, v);
    }
  }
  for (int m = 3; m < c; ++m) {
    NodeId cb = lay.c_b(m);
    p.side[static_cast<std::size_t>(cb)] = Side::B;
    g.set_label(cb, "C_b[" + std::to_string(m) + "]");
    for (NodeId v = 0; v < cb; ++v) {
      if (p.side[static_cast<std::size_t>(v)] == Side::B) g.add_edge(cb, v);
    }
    for (int mm = 0; mm < 3; ++mm) g.add_edge(cb, lay.c_a(mm));
  }

  out.graph = std::move(g);
  out.partition = std::move(p);
  return out;
}

LowerBoundInstance build_approx_coloring(int k, int c, const BitString& x,
                                         const BitString& y) {
  require(c >= 1, "copy count must be positive");
  LowerBoundInstance base = build_coloring3(k, x, y);
  int nb = base.graph.n();

  LowerBoundInstance out;
  out.kind = Kind::ColoringApprox;
  out.params.k = k;
  out.params.c = c;
  out.x = x;
  out.y = y;

  Graph g(nb * c);
  Partition p;
  p.side.assign(static_cast<std::size_t>(nb * c), Side::B);
  for (int copy = 0; copy < c; ++copy) {
    int off = copy * nb;
    for (const auto& e : base.graph.edges()) g.add_edge(off + e.u, off + e.v, e.w);
    for (NodeId v = 0; v < nb; ++v) {
      p.side[static_cast<std::size_t>(off + v)] = base.partition.side[static_cast<std::size_t>(v)];
      g.set_label(off + v, "g" + std::to_string(copy) + ":" + base.graph.label(v));
    }
  }
  // Same-side node sets of distinct copies are fully interconnected, which
  // makes the per-side palettes of the copies pairwise disjoint.
  for (int ca = 0; ca < c; ++ca) {
    for (int cb = ca + 1; cb < c; ++cb) {
      for (NodeId u = 0; u < nb; ++u) {
        for (NodeId v = 0; v < nb; ++v) {
          if (base.partition.side[static_cast<std::size_t>(u)] !=
              base.partition.side[static_cast<std::size_t>(v)]) {
            continue;
          }
          g.add_edge(ca * nb + u, cb * nb + v);
        }
      }
    }
  }
  // Side joins alone leave a loophole: a copy may take one 3-color palette
  // on its A side and a different one on its B side, so a non-3-colorable
  // copy could still be colored inside a 3c budget.  Joining each copy's
  // C_a triangle to every other copy's C_b triangle removes it: the B
  // palette of a copy then avoids all other A palettes, so it must equal
  // the copy's own A palette, and a 3c-coloring 3-colors every copy.
  ColoringLayout lay{{k, ilog2_exact(k)}, 3};
  for (int ca = 0; ca < c; ++ca) {
    for (int cb = 0; cb < c; ++cb) {
      if (ca == cb) continue;
      for (int ma = 0; ma < 3; ++ma) {
        for (int mb = 0; mb < 3; ++mb) {
          g.add_edge(ca * nb + lay.c_a(ma), cb * nb + lay.c_b(mb));
        }
      }
    }
  }

  out.graph = std::move(g);
  out.partition = std::move(p);
  return out;
}

// ---- weighted cycle family ---------------------------------------------------

std::int64_t cycle_target_weight(int k) {
  return 2 * static_cast<std::int64_t>(k) * k * k;
}

LowerBoundInstance build_weighted_cycle(int k, const BitString& x, const BitString& y) {
  require(k >= 3, "k must be at least 3");
  check_disj_strings(k, x, y);
  if (!x.any() && !y.any()) {
    throw std::invalid_argument(
        "both input strings all-zeros rejected: the two star components would be disconnected");
  }
  CycleLayout lay{k};
  std::int64_t k3 = static_cast<std::int64_t>(k) * k * k;

  Graph g(lay.node_count());
  for (int set = 0; set < 4; ++set) {
    for (int i = 0; i < k; ++i) g.add_edge(lay.center(set), lay.base(set, i), 0);
  }
  g.add_edge(lay.center(0), lay.center(2), 0);  // c_{A1} - c_{B1}
  g.add_edge(lay.center(1), lay.center(3), 0);  // c_{A2} - c_{B2}
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      std::int64_t idx = static_cast<std::int64_t>(k) * i + j;
      if (pair_bit(x, k, i, j)) g.add_edge(lay.base(0, i), lay.base(1, j), k3 + idx);
      if (pair_bit(y, k, i, j)) g.add_edge(lay.base(2, i), lay.base(3, j), k3 - idx);
    }
  }

  for (int set = 0; set < 4; ++set) {
    for (int i = 0; i < k; ++i) {
      g.set_label(lay.base(set, i),
                  std::string(kSetNames[set]) + "[" + std::to_string(i) + "]");
    }
    g.set_label(lay.center(set), std::string("c_{") + kSetNames[set] + "}");
  }

  Partition p;
  p.side.assign(static_cast<std::size_t>(lay.node_count()), Side::B);
  for (int set = 0; set < 2; ++set) {
    for (int i = 0; i < k; ++i) p.side[static_cast<std::size_t>(lay.base(set, i))] = Side::A;
    p.side[static_cast<std::size_t>(lay.center(set))] = Side::A;
  }

  LowerBoundInstance inst;
  inst.kind = Kind::Cycle8;
  inst.graph = std::move(g);
  inst.partition = std::move(p);
  inst.params.k = k;
  inst.params.w_max = k3 + static_cast<std::int64_t>(k) * k - 1;
  inst.x = x;
  inst.y = y;
  return inst;
}

bool is_cycle_input_edge(const LowerBoundInstance& inst, NodeId u, NodeId v) {
  require(inst.kind == Kind::Cycle8, "input-edge test needs a cycle instance");
  int k = inst.params.k;
  if (u >= 4 * k || v >= 4 * k) return false;
  int su = u / k;
  int sv = v / k;
  return (su == 0 && sv == 1) || (su == 1 && sv == 0) || (su == 2 && sv == 3) ||
         (su == 3 && sv == 2);
}

// ---- identical subgraphs family ----------------------------------------------

int pair_rank(int k, int i, int j) {
  if (i < 0 || j <= i || j >= k) throw std::invalid_argument("pair index out of range");
  return i * (2 * k - i - 1) / 2 + (j - i - 1);
}

int subgraph_field_bits(std::int64_t w) {
  if (w < 2) throw std::invalid_argument("weight bound must be at least 2");
  int bits = 0;
  std::int64_t top = w - 1;
  while (top > 0) {
    ++bits;
    top >>= 1;
  }
  return bits + 1;  // existence bit
}

BitString encode_subgraph_weights(int k, std::int64_t w,
                                  const std::vector<std::int64_t>& weights) {
  int pairs = k * (k - 1) / 2;
  require(static_cast<int>(weights.size()) == pairs,
          "weight vector must list every i<j pair");
  int field = subgraph_field_bits(w);
  BitString out(static_cast<std::size_t>(pairs) * static_cast<std::size_t>(field));
  for (int r = 0; r < pairs; ++r) {
    std::int64_t value = weights[static_cast<std::size_t>(r)];
    require(value >= 0 && value < w, "pair weight outside [0, w-1]");
    std::size_t off = static_cast<std::size_t>(r) * static_cast<std::size_t>(field);
    for (int t = 0; t < field - 1; ++t) {
      out.set(off + static_cast<std::size_t>(t), (value >> t) & 1);
    }
    out.set(off + static_cast<std::size_t>(field - 1), true);  // edge exists
  }
  return out;
}

LowerBoundInstance build_identical_subgraphs(int k, const std::vector<std::int64_t>& wx,
                                             const std::vector<std::int64_t>& wy,
                                             std::int64_t w) {
  require(k >= 2, "clique size must be at least 2");
  if (w == 0) w = static_cast<std::int64_t>(2 * k) * (2 * k);
  IdentLayout lay{k};

  Graph g(2 * k);
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      int r = pair_rank(k, i, j);
      g.add_edge(lay.a(i), lay.a(j), wx.at(static_cast<std::size_t>(r)));
      g.add_edge(lay.b(i), lay.b(j), wy.at(static_cast<std::size_t>(r)));
    }
  }
  g.add_edge(lay.a(0), lay.b(0), 0);
  for (int i = 0; i < k; ++i) {
    g.set_label(lay.a(i), "a[" + std::to_string(i) + "]");
    g.set_label(lay.b(i), "b[" + std::to_string(i) + "]");
  }

  // encode_subgraph_weights validates the weight ranges.
  BitString ex = encode_subgraph_weights(k, w, wx);
  BitString ey = encode_subgraph_weights(k, w, wy);

  Partition p;
  p.side.assign(static_cast<std::size_t>(2 * k), Side::B);
  for (int i = 0; i < k; ++i) p.side[static_cast<std::size_t>(lay.a(i))] = Side::A;

  LowerBoundInstance inst;
  inst.kind = Kind::Identical;
  inst.graph = std::move(g);
  inst.partition = std::move(p);
  inst.params.k = k;
  inst.params.w_max = w;
  inst.x = std::move(ex);
  inst.y = std::move(ey);
  inst.wx = wx;
  inst.wy = wy;
  return inst;
}

// ---- distance star family ------------------------------------------------------

namespace {

int star_batch_bits(int n) {
  int bits = 0;
  int top = n - 1;
  while (top > 0) {
    ++bits;
    top >>= 1;
  }
  return bits;
}

}  // namespace

LowerBoundInstance build_apsp_star(int n, const BitString& x) {
  require(n >= 3, "star needs at least 3 nodes");
  StarLayout lay{n};
  int batch = star_batch_bits(n);
  require(x.size() == static_cast<std::size_t>(n - 2) * static_cast<std::size_t>(batch),
          "input length must be (n-2) * ceil(log2 n)");

  Graph g(n);
  for (int i = 0; i < n - 2; ++i) {
    auto w = static_cast<std::int64_t>(
        x.slice_msb_first(static_cast<std::size_t>(i) * static_cast<std::size_t>(batch),
                          static_cast<std::size_t>(batch)));
    g.add_edge(lay.spoke(i), lay.hub(), w);
    g.set_label(lay.spoke(i), "A[" + std::to_string(i) + "]");
  }
  g.add_edge(lay.hub(), lay.b(), 0);
  g.set_label(lay.hub(), "a");
  g.set_label(lay.b(), "b");

  Partition p;
  p.side.assign(static_cast<std::size_t>(n), Side::A);
  p.side[static_cast<std::size_t>(lay.b())] = Side::B;

  LowerBoundInstance inst;
  inst.kind = Kind::ApspStar;
  inst.graph = std::move(g);
  inst.partition = std::move(p);
  inst.params.n = n;
  inst.params.w_max = (std::int64_t{1} << batch) - 1;
  inst.x = x;
  return inst;
}

BitString decode_star_row(const LowerBoundInstance& inst, const DistanceMatrix& d) {
  require(inst.kind == Kind::ApspStar, "star decoding needs a star instance");
  int n = inst.params.n;
  StarLayout lay{n};
  int batch = star_batch_bits(n);
  BitString out(static_cast<std::size_t>(n - 2) * static_cast<std::size_t>(batch));
  for (int i = 0; i < n - 2; ++i) {
    std::int64_t dist = d.at(lay.b(), lay.spoke(i));
    require(dist >= 0 && dist < (std::int64_t{1} << batch),
            "distance row does not decode to a weight batch");
    out.set_slice_msb_first(static_cast<std::size_t>(i) * static_cast<std::size_t>(batch),
                            static_cast<std::size_t>(batch),
                            static_cast<std::uint64_t>(dist));
  }
  return out;
}

}  // namespace congestlab
