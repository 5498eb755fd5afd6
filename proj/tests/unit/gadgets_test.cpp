#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>
#include <tuple>

#include "congestlab/comm.hpp"
#include "congestlab/gadgets.hpp"
#include "congestlab/oracles.hpp"
#include "doctest.h"

using namespace congestlab;

namespace {

BitString rand_disj_side(int k, std::mt19937_64& rng) {
  for (;;) {
    BitString s = BitString::random(static_cast<std::size_t>(k) * k, rng);
    if (!s.all_ones()) return s;
  }
}

// Edge set of the subgraph induced by one partition side, as (u, v, w) tuples
// on original ids. Used to pin down which side each input string shapes.
std::set<std::tuple<NodeId, NodeId, std::int64_t>> side_edges(const LowerBoundInstance& inst,
                                                              Side s) {
  std::set<std::tuple<NodeId, NodeId, std::int64_t>> out;
  for (const Edge& e : inst.graph.edges()) {
    if (inst.partition.side[static_cast<std::size_t>(e.u)] == s &&
        inst.partition.side[static_cast<std::size_t>(e.v)] == s) {
      out.insert({e.u, e.v, e.w});
    }
  }
  return out;
}

std::set<std::pair<NodeId, NodeId>> cut_pairs(const LowerBoundInstance& inst) {
  std::set<std::pair<NodeId, NodeId>> out;
  for (const Edge& e : cut_edges(inst.graph, inst.partition).edges) out.insert({e.u, e.v});
  return out;
}

}  // namespace

TEST_CASE("kind names round trip") {
  for (Kind k : {Kind::Mvc, Kind::Coloring3, Kind::ColoringC, Kind::ColoringApprox,
                 Kind::Cycle8, Kind::Identical, Kind::ApspStar}) {
    CHECK(kind_from_name(kind_name(k)) == k);
  }
  CHECK_THROWS_AS(kind_from_name("nope"), std::invalid_argument);
}

TEST_CASE("power-of-two helpers") {
  CHECK(is_power_of_two(1));
  CHECK(is_power_of_two(8));
  CHECK_FALSE(is_power_of_two(0));
  CHECK_FALSE(is_power_of_two(6));
  CHECK(ilog2_exact(16) == 4);
  CHECK_THROWS_AS(ilog2_exact(12), std::invalid_argument);
}

TEST_CASE("bin selector picks t nodes on one bits") {
  SetLayout lay{4, 2};
  auto sel = bin_selector(2, 2);  // binary 10
  CHECK(sel == std::vector<int>{0, 1});
  auto nodes = bin_nodes(lay, 1, 2);
  REQUIRE(nodes.size() == 2);
  CHECK(nodes[0] == lay.f(1, 0));
  CHECK(nodes[1] == lay.t(1, 1));
  CHECK_THROWS_AS(bin_selector(4, 2), std::invalid_argument);
}

TEST_CASE("vertex cover instance shape") {
  std::mt19937_64 rng(1);
  for (int k : {2, 4}) {
    int logk = ilog2_exact(k);
    BitString x = rand_disj_side(k, rng);
    BitString y = rand_disj_side(k, rng);
    LowerBoundInstance inst = build_mvc(k, x, y);
    CHECK(inst.graph.n() == 4 * k + 8 * logk);
    int want_m = 2 * k * (k - 1)                     // four cliques
                 + 8 * logk                          // bit-gadget 4-cycles
                 + 4 * k * logk                      // base-to-selector edges
                 + 2 * k * k                         // input slots...
                 - static_cast<int>(x.popcount())    // ...minus set bits
                 - static_cast<int>(y.popcount());
    CHECK(inst.graph.m() == want_m);
    CHECK(inst.partition.valid_for(inst.graph));
    CHECK(inst.partition.count(Side::A) == 2 * k + 4 * logk);
    CHECK(cut_edges(inst.graph, inst.partition).edges.size() ==
          static_cast<std::size_t>(4 * logk));
    CHECK(is_connected(inst.graph));
    CHECK(mvc_cover_target(k) == 4 * (k - 1) + 4 * logk);
  }
}

TEST_CASE("vertex cover builder rejections") {
  BitString ok(4), ones = BitString::from_bits01("1111");
  CHECK_THROWS_AS(build_mvc(3, BitString(9), BitString(9)), std::invalid_argument);
  CHECK_THROWS_AS(build_mvc(2, BitString(3), ok), std::invalid_argument);
  CHECK_THROWS_AS(build_mvc(2, ones, ok), std::invalid_argument);
  CHECK_THROWS_AS(build_mvc(2, ok, ones), std::invalid_argument);
}

TEST_CASE("vertex cover witness is a cover of the target size") {
  std::mt19937_64 rng(2);
  for (int k : {2, 4}) {
    for (int t = 0; t < 10; ++t) {
      BitString x = rand_disj_side(k, rng);
      BitString y = rand_disj_side(k, rng);
      int i = static_cast<int>(rng() % k), j = static_cast<int>(rng() % k);
      x.set(static_cast<std::size_t>(k * i + j), true);
      y.set(static_cast<std::size_t>(k * i + j), true);
      if (x.all_ones() || y.all_ones()) continue;
      LowerBoundInstance inst = build_mvc(k, x, y);
      auto cover = construct_mvc_cover(inst, i, j);
      CHECK(static_cast<int>(cover.size()) == mvc_cover_target(k));
      CHECK(verify_vertex_cover(inst.graph, cover));
    }
  }
}

TEST_CASE("vertex cover witness rejects non-intersecting indexes") {
  BitString x(4), y(4);
  x.set(1, true);
  y.set(2, true);
  LowerBoundInstance inst = build_mvc(2, x, y);
  CHECK_THROWS_AS(construct_mvc_cover(inst, 0, 1), std::invalid_argument);
}

TEST_CASE("coloring instance shape") {
  std::mt19937_64 rng(3);
  for (int k : {2, 4}) {
    int logk = ilog2_exact(k);
    BitString x = rand_disj_side(k, rng);
    BitString y = rand_disj_side(k, rng);
    LowerBoundInstance inst = build_coloring3(k, x, y);
    CHECK(inst.graph.n() == 12 * k + 8 * logk + 6);
    CHECK(inst.partition.valid_for(inst.graph));
    CHECK(cut_edges(inst.graph, inst.partition).edges.size() ==
          static_cast<std::size_t>(6 + 4 * logk));
    CHECK(is_connected(inst.graph));
    CHECK(inst.params.c == 3);
  }
}

TEST_CASE("coloring witness is proper") {
  std::mt19937_64 rng(4);
  for (int k : {2, 4}) {
    for (int t = 0; t < 10; ++t) {
      BitString x = rand_disj_side(k, rng);
      BitString y = rand_disj_side(k, rng);
      int i = static_cast<int>(rng() % k), j = static_cast<int>(rng() % k);
      x.set(static_cast<std::size_t>(k * i + j), true);
      y.set(static_cast<std::size_t>(k * i + j), true);
      if (x.all_ones() || y.all_ones()) continue;
      LowerBoundInstance inst = build_coloring3(k, x, y);
      auto color = construct_3coloring(inst, i, j);
      CHECK(verify_coloring(inst.graph, color));
      CHECK(*std::max_element(color.begin(), color.end()) <= 2);
    }
  }
}

TEST_CASE("c-coloring extension shape") {
  std::mt19937_64 rng(5);
  int k = 2;
  BitString x = rand_disj_side(k, rng);
  BitString y = rand_disj_side(k, rng);
  LowerBoundInstance base = build_coloring3(k, x, y);
  for (int c : {3, 4, 6}) {
    LowerBoundInstance ext = extend_coloring_c(base, c);
    CHECK(ext.kind == (c == 3 ? Kind::ColoringC : Kind::ColoringC));
    CHECK(ext.params.c == c);
    CHECK(ext.graph.n() == base.graph.n() + 2 * (c - 3));
    CHECK(cut_edges(ext.graph, ext.partition).edges.size() ==
          cut_edges(base.graph, base.partition).edges.size() + 3 * (c - 3));
    CHECK(is_connected(ext.graph));
    // The base graph survives unchanged as a prefix.
    for (const Edge& e : base.graph.edges()) CHECK(ext.graph.has_edge(e.u, e.v));
  }
  CHECK_THROWS_AS(extend_coloring_c(base, 2), std::invalid_argument);
}

TEST_CASE("approximate coloring copies interconnect same sides") {
  std::mt19937_64 rng(6);
  int k = 2, c = 2;
  BitString x = rand_disj_side(k, rng);
  BitString y = rand_disj_side(k, rng);
  LowerBoundInstance base = build_coloring3(k, x, y);
  LowerBoundInstance inst = build_approx_coloring(k, c, x, y);
  int nb = base.graph.n();
  CHECK(inst.graph.n() == nb * c);
  int na = base.partition.count(Side::A);
  int nbs = nb - na;
  // Per unordered copy pair: full joins inside each side plus the 18
  // triangle links that pin both palettes of a copy together.
  int want_m = c * base.graph.m() + (c * (c - 1) / 2) * (na * na + nbs * nbs + 18);
  CHECK(inst.graph.m() == want_m);
  // Side joins stay inside the partition; only the triangle links cross it.
  CHECK(cut_edges(inst.graph, inst.partition).edges.size() ==
        c * cut_edges(base.graph, base.partition).edges.size() + 9 * c * (c - 1));
  CHECK(is_connected(inst.graph));

  // The triangle links are present in both directions between copies.
  ColoringLayout lay{{k, ilog2_exact(k)}, 3};
  for (int ma = 0; ma < 3; ++ma) {
    for (int mb = 0; mb < 3; ++mb) {
      CHECK(inst.graph.has_edge(lay.c_a(ma), nb + lay.c_b(mb)));
      CHECK(inst.graph.has_edge(lay.c_b(mb), nb + lay.c_a(ma)));
    }
  }
}

TEST_CASE("weighted cycle instance shape") {
  std::mt19937_64 rng(7);
  int k = 3;
  BitString x = rand_disj_side(k, rng);
  BitString y = rand_disj_side(k, rng);
  if (!x.any() && !y.any()) x.set(0, true);
  LowerBoundInstance inst = build_weighted_cycle(k, x, y);
  CHECK(inst.graph.n() == 4 * k + 4);
  CHECK(inst.graph.m() ==
        4 * k + 2 + static_cast<int>(x.popcount()) + static_cast<int>(y.popcount()));
  CHECK(cut_edges(inst.graph, inst.partition).edges.size() == 2);
  CHECK(is_connected(inst.graph));
  CHECK(cycle_target_weight(k) == 54);
  CHECK(inst.params.w_max == 27 + 9 - 1);

  // Input edge weights encode the pair index around k^3.
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      std::int64_t idx = 3 * i + j;
      if (pair_bit(x, k, i, j)) {
        CHECK(inst.graph.weight(i, k + j) == 27 + idx);
        CHECK(is_cycle_input_edge(inst, i, k + j));
      }
      if (pair_bit(y, k, i, j)) {
        CHECK(inst.graph.weight(2 * k + i, 3 * k + j) == 27 - idx);
        CHECK(is_cycle_input_edge(inst, 2 * k + i, 3 * k + j));
      }
    }
  }
  CHECK_FALSE(is_cycle_input_edge(inst, 0, 4 * k));  // spoke, not input
}

TEST_CASE("weighted cycle rejects the disconnected all-zeros pair") {
  CHECK_THROWS_AS(build_weighted_cycle(3, BitString(9), BitString(9)),
                  std::invalid_argument);
  BitString x(9);
  x.set(0, true);
  CHECK_NOTHROW(build_weighted_cycle(3, x, BitString(9)));
  CHECK_THROWS_AS(build_weighted_cycle(2, BitString(4), BitString(4)),
                  std::invalid_argument);
}

TEST_CASE("intersecting cycle pair yields a target-weight witness") {
  int k = 3;
  BitString x(9), y(9);
  x.set(4, true);  // (1, 1)
  y.set(4, true);
  y.set(2, true);
  LowerBoundInstance inst = build_weighted_cycle(k, x, y);
  auto wit = has_cycle_len8_weight(inst.graph, cycle_target_weight(k));
  REQUIRE(wit.has_value());
  CHECK(wit->weight == 54);
  int input_edges = 0;
  for (std::size_t s = 0; s < wit->nodes.size(); ++s) {
    NodeId u = wit->nodes[s];
    NodeId v = wit->nodes[(s + 1) % wit->nodes.size()];
    if (is_cycle_input_edge(inst, u, v)) ++input_edges;
  }
  CHECK(input_edges == 2);
}

TEST_CASE("pair rank is the lexicographic i<j enumeration") {
  int k = 5;
  int r = 0;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) CHECK(pair_rank(k, i, j) == r++);
  CHECK(r == k * (k - 1) / 2);
  CHECK_THROWS_AS(pair_rank(5, 2, 2), std::invalid_argument);
  CHECK_THROWS_AS(pair_rank(5, 3, 1), std::invalid_argument);
}

TEST_CASE("identical subgraphs encoding layout") {
  // k = 2, w = 16: one pair, field = 4 weight bits + existence bit.
  CHECK(subgraph_field_bits(16) == 5);
  BitString e = encode_subgraph_weights(2, 16, {5});
  REQUIRE(e.size() == 5);
  CHECK(e.get(0));        // 5 = 101 binary, bit 0
  CHECK_FALSE(e.get(1));
  CHECK(e.get(2));
  CHECK_FALSE(e.get(3));
  CHECK(e.get(4));        // existence bit
  CHECK_THROWS_AS(encode_subgraph_weights(2, 16, {16}), std::invalid_argument);
  CHECK_THROWS_AS(encode_subgraph_weights(2, 16, {-1}), std::invalid_argument);
  CHECK_THROWS_AS(encode_subgraph_weights(3, 16, {1}), std::invalid_argument);
  CHECK_THROWS_AS(subgraph_field_bits(1), std::invalid_argument);
}

TEST_CASE("identical subgraphs instance shape") {
  std::vector<std::int64_t> wx = {3, 1, 4}, wy = {3, 1, 5};
  LowerBoundInstance inst = build_identical_subgraphs(3, wx, wy);
  CHECK(inst.params.w_max == 36);
  CHECK(inst.graph.n() == 6);
  CHECK(inst.graph.m() == 7);
  CHECK(inst.graph.weight(0, 3) == 0);  // the bridge
  CHECK(inst.graph.weight(0, 1) == 3);
  CHECK(inst.graph.weight(1, 2) == 4);
  CHECK(inst.graph.weight(3, 4) == 3);
  CHECK(inst.graph.weight(4, 5) == 5);
  auto cut = cut_edges(inst.graph, inst.partition);
  REQUIRE(cut.edges.size() == 1);
  CHECK(cut.edges[0].u == 0);
  CHECK(cut.edges[0].v == 3);
  CHECK(inst.x.size() == 3 * subgraph_field_bits(36));
  CHECK_FALSE(check_identical(inst));
  LowerBoundInstance same = build_identical_subgraphs(3, wx, wx);
  CHECK(check_identical(same));
  CHECK(eq(same.x, same.y));
  CHECK_FALSE(eq(inst.x, inst.y));
}

TEST_CASE("star instance encodes batches as spoke weights") {
  int n = 8;  // batch = 3 bits, 6 spokes
  BitString x(18);
  x.set_slice_msb_first(0, 3, 5);
  x.set_slice_msb_first(3, 3, 0);
  x.set_slice_msb_first(6, 3, 7);
  x.set_slice_msb_first(15, 3, 2);
  LowerBoundInstance inst = build_apsp_star(n, x);
  CHECK(inst.graph.n() == 8);
  CHECK(inst.graph.m() == 7);
  CHECK(inst.graph.weight(0, 6) == 5);
  CHECK(inst.graph.weight(1, 6) == 0);
  CHECK(inst.graph.weight(2, 6) == 7);
  CHECK(inst.graph.weight(5, 6) == 2);
  CHECK(inst.graph.weight(6, 7) == 0);
  CHECK(inst.params.w_max == 7);
  auto cut = cut_edges(inst.graph, inst.partition);
  REQUIRE(cut.edges.size() == 1);
  CHECK(cut.edges[0].u == 6);

  BitString back = decode_star_row(inst, apsp_exact(inst.graph));
  CHECK(back == x);
  CHECK_THROWS_AS(build_apsp_star(8, BitString(17)), std::invalid_argument);
  CHECK_THROWS_AS(build_apsp_star(2, BitString(0)), std::invalid_argument);
}

TEST_CASE("input strings shape only their own side") {
  std::mt19937_64 rng(8);
  struct Case {
    Kind kind;
    int k;
    int c;
  };
  for (Case cs : {Case{Kind::Mvc, 4, 0}, Case{Kind::Coloring3, 2, 0},
                  Case{Kind::ColoringC, 2, 5}, Case{Kind::Cycle8, 3, 0}}) {
    auto build = [&](const BitString& x, const BitString& y) {
      switch (cs.kind) {
        case Kind::Mvc: return build_mvc(cs.k, x, y);
        case Kind::Coloring3: return build_coloring3(cs.k, x, y);
        case Kind::ColoringC:
          return extend_coloring_c(build_coloring3(cs.k, x, y), cs.c);
        default: return build_weighted_cycle(cs.k, x, y);
      }
    };
    for (int t = 0; t < 8; ++t) {
      BitString x1 = rand_disj_side(cs.k, rng), x2 = rand_disj_side(cs.k, rng);
      BitString y1 = rand_disj_side(cs.k, rng), y2 = rand_disj_side(cs.k, rng);
      if (cs.kind == Kind::Cycle8) {
        if (!x1.any()) x1.set(0, true);
        if (!x2.any()) x2.set(0, true);
        if (!y1.any()) y1.set(0, true);
        if (!y2.any()) y2.set(0, true);
      }
      LowerBoundInstance base = build(x1, y1);
      LowerBoundInstance vary_y = build(x1, y2);
      LowerBoundInstance vary_x = build(x2, y1);
      CHECK(side_edges(base, Side::A) == side_edges(vary_y, Side::A));
      CHECK(side_edges(base, Side::B) == side_edges(vary_x, Side::B));
      CHECK(cut_pairs(base) == cut_pairs(vary_y));
      CHECK(cut_pairs(base) == cut_pairs(vary_x));
    }
  }
}
