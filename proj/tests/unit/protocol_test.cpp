#include <random>
#include <stdexcept>

#include "congestlab/drivers.hpp"
#include "congestlab/protocol.hpp"
#include "doctest.h"

using namespace congestlab;

namespace {

bool record_crosses(const Partition& p, const TranscriptRecord& r) {
  if (r.from < 0 || r.to < 0) return true;  // bundled party message
  return p.side[static_cast<std::size_t>(r.from)] != p.side[static_cast<std::size_t>(r.to)];
}

}  // namespace

TEST_CASE("party split is an observer, not a different engine") {
  std::mt19937_64 rng = substream(11, "proto-fid");
  for (int t = 0; t < 10; ++t) {
    int n = 4 + static_cast<int>(rng() % 12);
    Graph g = random_connected_graph(n, static_cast<int>(rng() % 12), 5, rng);
    Partition part = random_partition(n, rng);
    std::vector<std::int64_t> vals(static_cast<std::size_t>(n), 3);
    SimConfig cfg;
    cfg.seed = 400 + static_cast<std::uint64_t>(t);

    SimResult plain = run(g, bfs_convergecast_program(0, vals, 97), cfg);
    TwoPartyResult split = simulate_two_party(g, part, bfs_convergecast_program(0, vals, 97), cfg);

    CHECK(split.sim.outputs == plain.outputs);
    CHECK(split.sim.trace.records == plain.trace.records);
    CHECK(split.sim.trace.rounds_used == plain.trace.rounds_used);

    // The transcript is exactly the cut-crossing slice of the trace.
    std::int64_t cross_bits = 0;
    for (const TraceRecord& r : plain.trace.records) {
      if (part.side[static_cast<std::size_t>(r.from)] != part.side[static_cast<std::size_t>(r.to)])
        cross_bits += r.bits;
    }
    CHECK(split.transcript.total_bits() == cross_bits);
    for (const TranscriptRecord& r : split.transcript.records) {
      CHECK(record_crosses(part, r));
      bool a_to_b = part.side[static_cast<std::size_t>(r.from)] == Side::A;
      CHECK(r.dir == (a_to_b ? Direction::AtoB : Direction::BtoA));
    }
    CHECK(split.transcript.total_bits() ==
          split.transcript.bits(Direction::AtoB) + split.transcript.bits(Direction::BtoA));
  }
}

TEST_CASE("transcript payloads are the wire bits") {
  Graph g(4);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(2, 3);
  Partition part{{Side::A, Side::A, Side::B, Side::B}};
  TwoPartyResult r = simulate_two_party(g, part, flood_program(0), {});
  // Exactly one flood token crosses 1->2.
  REQUIRE(r.transcript.records.size() == 1);
  CHECK(r.transcript.records[0].from == 1);
  CHECK(r.transcript.records[0].to == 2);
  CHECK(r.transcript.records[0].payload.size() == 1);
  CHECK(r.transcript.records[0].payload.get(0));
  CHECK(r.transcript.records[0].dir == Direction::AtoB);
}

TEST_CASE("distance field width reserves an infinity codeword") {
  CHECK(distance_field_bits(10, 0) == 1);
  CHECK(distance_field_bits(2, 1) == 3);   // max finite 2, so 2 value bits
  CHECK(distance_field_bits(4, 2) == 5);   // max finite 8
  CHECK(distance_field_bits(40, 8) == 10); // max finite 320 < 2^9
  CHECK_THROWS_AS(distance_field_bits(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(distance_field_bits(4, -1), std::invalid_argument);
}

TEST_CASE("two-party distance exchange is exact") {
  std::mt19937_64 rng = substream(13, "proto-apsp");
  for (int t = 0; t < 40; ++t) {
    int n = 4 + static_cast<int>(rng() % 21);
    Graph g = random_connected_graph(n, static_cast<int>(rng() % (2 * n)), 8, rng);
    Partition part = random_partition(n, rng);
    ApspTwoPartyResult r = apsp_two_party(g, part, 8);
    CHECK(r.distances == apsp_exact(g));
    CHECK(r.transcript.total_bits() <= r.bits_bound);
    CHECK(r.field_bits == distance_field_bits(n, 8));
    std::size_t vc = cut_edges(g, part).nodes.size();
    CHECK(r.bits_bound ==
          static_cast<std::int64_t>(vc) * n * r.field_bits);
  }
}

TEST_CASE("two-party exchange with an empty cut keeps sides apart") {
  Graph g(6);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(3, 4);
  g.add_edge(4, 5, 7);
  Partition part{{Side::A, Side::A, Side::A, Side::B, Side::B, Side::B}};
  ApspTwoPartyResult r = apsp_two_party(g, part, 7);
  CHECK(r.distances == apsp_exact(g));
  CHECK(r.distances.at(0, 3) == kInfDist);
  CHECK(r.distances.at(4, 5) == 7);
  CHECK(r.transcript.total_bits() == 0);
}

TEST_CASE("two-party exchange validates its inputs") {
  Graph g(4);
  g.add_edge(0, 1, 5);
  g.add_edge(1, 2);
  g.add_edge(2, 3);
  Partition all_a{std::vector<Side>(4, Side::A)};
  CHECK_THROWS_AS(apsp_two_party(g, all_a, 5), std::invalid_argument);
  Partition part{{Side::A, Side::A, Side::B, Side::B}};
  CHECK_THROWS_AS(apsp_two_party(g, part, 4), std::invalid_argument);  // w_max too small
  CHECK_NOTHROW(apsp_two_party(g, part, 5));
}

TEST_CASE("blackboard with two players mirrors the two-party exchange") {
  std::mt19937_64 rng = substream(17, "proto-board2");
  for (int t = 0; t < 10; ++t) {
    int n = 6 + static_cast<int>(rng() % 14);
    Graph g = random_connected_graph(n, n, 6, rng);
    Partition part = random_partition(n, rng);
    std::vector<int> blocks(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v)
      blocks[static_cast<std::size_t>(v)] = part.side[static_cast<std::size_t>(v)] == Side::A ? 0 : 1;
    ApspTwoPartyResult two = apsp_two_party(g, part, 6);
    ApspBlackboardResult board = apsp_blackboard(g, blocks, 6);
    CHECK(board.distances == two.distances);
    CHECK(board.distances == apsp_exact(g));
    CHECK(board.field_bits == two.field_bits);
    CHECK(board.row_post_bits.size() == 2);
    CHECK(board.total_bits() <= board.bits_bound);
  }
}

TEST_CASE("blackboard is exact for more players") {
  std::mt19937_64 rng = substream(19, "proto-boardt");
  for (int t : {3, 4, 5}) {
    for (int rep = 0; rep < 8; ++rep) {
      int n = t + 4 + static_cast<int>(rng() % 16);
      Graph g = random_connected_graph(n, 2 * n, 9, rng);
      auto blocks = random_blocks(n, t, rng);
      ApspBlackboardResult r = apsp_blackboard(g, blocks, 9);
      CHECK(r.distances == apsp_exact(g));
      CHECK(r.row_post_bits.size() == static_cast<std::size_t>(t));
      CHECK(r.total_bits() <= r.bits_bound);
      CHECK(r.total_bits() == r.cut_post_bits + std::accumulate(r.row_post_bits.begin(),
                                                                r.row_post_bits.end(),
                                                                std::int64_t{0}));
    }
  }
}

TEST_CASE("blackboard validates the block map") {
  Graph g(4);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(2, 3);
  CHECK_THROWS_AS(apsp_blackboard(g, {0, 0, 0, 2}, 1), std::invalid_argument);  // block 1 empty
  CHECK_THROWS_AS(apsp_blackboard(g, {0, 0, 0}, 1), std::invalid_argument);     // wrong size
  CHECK_THROWS_AS(apsp_blackboard(g, {0, -1, 0, 1}, 1), std::invalid_argument);
  CHECK_NOTHROW(apsp_blackboard(g, {0, 1, 1, 0}, 1));
}

TEST_CASE("communication values per family") {
  BitString x(4), y(4);
  x.set(1, true);
  y.set(1, true);
  LowerBoundInstance meet = build_mvc(2, x, y);
  CHECK(comm_function_value(meet));
  CHECK(graph_property_holds(meet));

  BitString y2(4);
  y2.set(2, true);
  LowerBoundInstance miss = build_mvc(2, x, y2);
  CHECK_FALSE(comm_function_value(miss));
  CHECK_FALSE(graph_property_holds(miss));

  LowerBoundInstance same = build_identical_subgraphs(3, {1, 2, 3}, {1, 2, 3});
  LowerBoundInstance diff = build_identical_subgraphs(3, {1, 2, 3}, {1, 2, 4});
  CHECK(comm_function_value(same));
  CHECK_FALSE(comm_function_value(diff));
  CHECK(graph_property_holds(same));
  CHECK_FALSE(graph_property_holds(diff));

  LowerBoundInstance star = build_apsp_star(8, BitString(18));
  CHECK_THROWS_AS(comm_function_value(star), std::invalid_argument);
  CHECK_THROWS_AS(graph_property_holds(star), std::invalid_argument);
}

TEST_CASE("reduction reports tie function, oracle and protocol together") {
  SimConfig cfg;
  cfg.seed = 77;

  BitString x(4), y(4);
  x.set(3, true);
  y.set(3, true);
  ReductionReport meet = reduction_report(build_mvc(2, x, y), cfg);
  CHECK(meet.f_value);
  CHECK(meet.graph_property);
  CHECK(meet.protocol_verdict);
  CHECK(meet.oracle_matches_f);
  CHECK(meet.protocol_matches_f);
  CHECK(meet.cut_bits <= meet.cut_bits_bound);
  CHECK(meet.cut_edge_count == 4);  // 4 log k with k = 2
  CHECK(meet.rounds > 0);

  BitString y2(4);
  y2.set(0, true);
  ReductionReport miss = reduction_report(build_mvc(2, x, y2), cfg);
  CHECK_FALSE(miss.f_value);
  CHECK_FALSE(miss.graph_property);
  CHECK_FALSE(miss.protocol_verdict);
  CHECK(miss.oracle_matches_f);
  CHECK(miss.protocol_matches_f);

  ReductionReport same = reduction_report(build_identical_subgraphs(3, {5, 0, 2}, {5, 0, 2}), cfg);
  CHECK(same.f_value);
  CHECK(same.protocol_verdict);
  CHECK(same.cut_edge_count == 1);
  CHECK(same.cut_bits <= same.cut_bits_bound);

  ReductionReport diff = reduction_report(build_identical_subgraphs(3, {5, 0, 2}, {5, 1, 2}), cfg);
  CHECK_FALSE(diff.f_value);
  CHECK_FALSE(diff.protocol_verdict);

  CHECK_THROWS_AS(reduction_report(build_apsp_star(8, BitString(18)), cfg),
                  std::invalid_argument);
}

TEST_CASE("cycle reduction report covers both verdicts") {
  SimConfig cfg;
  BitString x(9), y(9), y2(9);
  x.set(5, true);
  y.set(5, true);
  y2.set(6, true);
  ReductionReport meet = reduction_report(build_weighted_cycle(3, x, y), cfg);
  CHECK(meet.f_value);
  CHECK(meet.protocol_matches_f);
  CHECK(meet.oracle_matches_f);
  ReductionReport miss = reduction_report(build_weighted_cycle(3, x, y2), cfg);
  CHECK_FALSE(miss.f_value);
  CHECK(miss.protocol_matches_f);
  CHECK(miss.oracle_matches_f);
}
