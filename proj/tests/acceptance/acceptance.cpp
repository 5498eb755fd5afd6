// End-to-end acceptance checks, one line of output per criterion. Exit code 0
// only if every criterion passes. Workloads are seeded constants so reruns are
// bit-identical.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "congestlab/comm.hpp"
#include "congestlab/drivers.hpp"
#include "congestlab/gadgets.hpp"
#include "congestlab/graph.hpp"
#include "congestlab/numtheory.hpp"
#include "congestlab/oracles.hpp"
#include "congestlab/protocol.hpp"
#include "congestlab/sim.hpp"

using namespace congestlab;

namespace {

struct Failure {
  std::string detail;
};

using CheckFn = std::function<bool(std::string&)>;

bool expect(bool cond, const std::string& what, std::string& detail) {
  if (!cond && detail.empty()) detail = what;
  return cond;
}

// ---- C1..C6: lemma sweeps ----------------------------------------------------

bool c1_cover_exhaustive(std::string& detail) {
  InstanceParams params;
  params.k = 2;
  SweepOptions opt;
  SweepResult res = check_lemma(Kind::Mvc, params, opt);
  bool ok = expect(res.pairs_checked == 225, "expected 225 pairs", detail);
  ok &= expect(res.passed(), "sweep failed", detail);
  ok &= expect(mvc_cover_target(2) == 8, "cover target is 8 at k=2", detail);
  if (!res.failures.empty())
    detail = "first failing pair x=" + res.failures[0].x_hex + " y=" + res.failures[0].y_hex;
  return ok;
}

bool c2_cover_sampled(std::string& detail) {
  InstanceParams params;
  params.k = 4;
  SweepOptions opt;
  opt.exhaustive = false;
  opt.samples = 200;
  opt.seed = 20260201;
  SweepResult res = check_lemma(Kind::Mvc, params, opt);
  bool ok = expect(res.passed() && res.pairs_checked == 200, "sampled sweep failed", detail);

  // One explicit witness: both strings hold (2, 3).
  BitString x(16), y(16);
  x.set(4 * 2 + 3, true);
  y.set(4 * 2 + 3, true);
  y.set(1, true);
  LowerBoundInstance inst = build_mvc(4, x, y);
  auto cover = construct_mvc_cover(inst, 2, 3);
  ok &= expect(static_cast<int>(cover.size()) == mvc_cover_target(4),
               "witness cover size", detail);
  ok &= expect(verify_vertex_cover(inst.graph, cover), "witness cover validity", detail);
  ok &= expect(min_vc_size(inst.graph, mvc_cover_target(4)).has_value(),
               "cover target reachable", detail);
  return ok;
}

bool c3_coloring_exhaustive(std::string& detail) {
  InstanceParams params;
  params.k = 2;
  SweepOptions opt;
  SweepResult res = check_lemma(Kind::Coloring3, params, opt);
  bool ok = expect(res.pairs_checked == 225, "expected 225 pairs", detail);
  ok &= expect(res.passed(), "sweep failed", detail);

  BitString x(4), y(4);
  x.set(2, true);
  y.set(2, true);
  LowerBoundInstance inst = build_coloring3(2, x, y);
  auto color = construct_3coloring(inst, 1, 0);
  ok &= expect(verify_coloring(inst.graph, color), "witness coloring validity", detail);
  return ok;
}

bool c4_coloring_extended(std::string& detail) {
  for (int c : {4, 5}) {
    InstanceParams params;
    params.k = 2;
    params.c = c;
    SweepOptions opt;
    opt.exhaustive = false;
    opt.samples = 50;
    opt.seed = 77000 + static_cast<std::uint64_t>(c);
    SweepResult res = check_lemma(Kind::ColoringC, params, opt);
    if (!expect(res.passed() && res.pairs_checked == 50,
                "sweep failed at c=" + std::to_string(c), detail))
      return false;
  }
  return true;
}

bool c5_coloring_approx(std::string& detail) {
  InstanceParams params;
  params.k = 2;
  params.c = 2;
  SweepOptions opt;
  opt.exhaustive = false;
  opt.samples = 20;
  opt.seed = 555;
  SweepResult res = check_lemma(Kind::ColoringApprox, params, opt);
  bool ok = expect(res.passed() && res.pairs_checked == 20, "sweep failed", detail);

  // Pinned chromatic gap: 6 versus at least 7 at c = 2.
  BitString x(4), y(4), y2(4);
  x.set(1, true);
  y.set(1, true);
  y2.set(2, true);
  LowerBoundInstance meet = build_approx_coloring(2, 2, x, y);
  ok &= expect(is_c_colorable(meet.graph, 6), "intersecting copy 6-colorable", detail);
  ok &= expect(!is_c_colorable(meet.graph, 5), "chromatic number below 6", detail);
  LowerBoundInstance miss = build_approx_coloring(2, 2, x, y2);
  ok &= expect(!is_c_colorable(miss.graph, 6), "disjoint copy 6-colorable", detail);
  return ok;
}

bool c6_cycle_exhaustive(std::string& detail) {
  InstanceParams params;
  params.k = 3;
  SweepOptions opt;
  opt.max_ones_per_side = 3;
  SweepResult res = check_lemma(Kind::Cycle8, params, opt);
  bool ok = expect(res.pairs_checked == 16899, "expected 16899 pairs", detail);
  ok &= expect(res.pairs_skipped == 1, "only the all-zero pair is skipped", detail);
  ok &= expect(res.passed(), "sweep failed", detail);

  // Every target-weight cycle of a pinned instance uses exactly two input edges.
  BitString x(9), y(9);
  x.set(4, true);
  x.set(7, true);
  y.set(4, true);
  LowerBoundInstance inst = build_weighted_cycle(3, x, y);
  auto wits = find_cycles_len8_weight(inst.graph, cycle_target_weight(3));
  ok &= expect(!wits.empty(), "no target-weight cycle on an intersecting pair", detail);
  for (const CycleWitness& w : wits) {
    int input = 0;
    for (std::size_t s = 0; s < w.nodes.size(); ++s) {
      if (is_cycle_input_edge(inst, w.nodes[s], w.nodes[(s + 1) % w.nodes.size()])) ++input;
    }
    ok &= expect(input == 2, "witness cycle must carry exactly two input edges", detail);
  }
  return ok;
}

// ---- C7: fingerprint detection statistics ------------------------------------

bool c7_detect_statistics(std::string& detail) {
  const int k = 8;
  const std::int64_t w = static_cast<std::int64_t>(2 * k) * (2 * k);
  const int pairs = k * (k - 1) / 2;
  const int K = ident_fingerprint_bits(k, w);
  if (!expect(K == 252, "fingerprint width at k=8", detail)) return false;

  std::mt19937_64 rng = substream(20260815, "acceptance-ident");
  std::uniform_int_distribution<std::int64_t> wdist(0, w - 1);
  auto draw = [&] {
    std::vector<std::int64_t> v(static_cast<std::size_t>(pairs));
    for (auto& e : v) e = wdist(rng);
    return v;
  };

  int max_rounds_seen = 0;
  int diameter = 0;
  const int trials = 1000;

  // Equal cliques: the verdict must be 1 regardless of the sampled prime.
  for (int t = 0; t < trials; ++t) {
    auto wx = draw();
    LowerBoundInstance inst = build_identical_subgraphs(k, wx, wx, w);
    if (t == 0) diameter = hop_diameter(inst.graph);
    SimConfig cfg;
    cfg.seed = static_cast<std::uint64_t>(t) + 1;
    DetectResult d = identical_subgraphs_detect(inst, cfg);
    max_rounds_seen = std::max(max_rounds_seen, d.trace.rounds_used);
    if (d.verdicts.front() != 1 ||
        !std::all_of(d.verdicts.begin(), d.verdicts.end(), [](auto v) { return v == 1; })) {
      detail = "equality trial " + std::to_string(t) + " rejected equal cliques";
      return false;
    }
  }

  // Unequal cliques: the false-equal rate stays within three sigma of 1/K.
  int false_equal = 0;
  for (int t = 0; t < trials; ++t) {
    auto wx = draw();
    auto wy = wx;
    std::size_t cell = static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(pairs));
    wy[cell] = (wy[cell] + 1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(w - 1))) % w;
    LowerBoundInstance inst = build_identical_subgraphs(k, wx, wy, w);
    SimConfig cfg;
    cfg.seed = 100000 + static_cast<std::uint64_t>(t);
    DetectResult d = identical_subgraphs_detect(inst, cfg);
    max_rounds_seen = std::max(max_rounds_seen, d.trace.rounds_used);
    if (d.verdicts.front() == 1) ++false_equal;
    if (!std::all_of(d.verdicts.begin(), d.verdicts.end(),
                     [&](auto v) { return v == d.verdicts.front(); })) {
      detail = "verdict disagreement between nodes";
      return false;
    }
  }
  const double p = 1.0 / K;
  const int allowed = static_cast<int>(trials * (p + 3.0 * std::sqrt(p / trials)));
  if (false_equal > allowed) {
    detail = "false-equal count " + std::to_string(false_equal) + " exceeds " +
             std::to_string(allowed);
    return false;
  }

  // Bad-prime census: primes confusing a fixed unequal pair are at most the
  // bit length of the encoding difference, which is at most K.
  const auto pool = nth_primes(static_cast<std::size_t>(K) * static_cast<std::size_t>(K));
  for (int t = 0; t < 20; ++t) {
    auto wx = draw();
    auto wy = wx;
    wy[static_cast<std::size_t>(t % pairs)] = (wy[static_cast<std::size_t>(t % pairs)] + 1) % w;
    LowerBoundInstance inst = build_identical_subgraphs(k, wx, wy, w);
    BigUint X = BigUint::from_bits(inst.x);
    BigUint Y = BigUint::from_bits(inst.y);
    BigUint D = BigUint::abs_diff(X, Y);
    if (D.is_zero()) {
      detail = "unequal pair encoded identically";
      return false;
    }
    std::size_t census = 0;
    for (std::uint64_t prime : pool) {
      if (D.mod_u64(prime) == 0) ++census;
    }
    if (census > D.bit_length() || D.bit_length() > static_cast<std::size_t>(K)) {
      detail = "census " + std::to_string(census) + " exceeds log2 of the difference";
      return false;
    }
  }

  const int bound = kDetectRoundFactor * diameter + kDetectRoundOffset;
  if (max_rounds_seen > bound) {
    detail = "rounds " + std::to_string(max_rounds_seen) + " exceed bound " +
             std::to_string(bound);
    return false;
  }
  return true;
}

// ---- C8: two-party fidelity ---------------------------------------------------

bool c8_two_party_fidelity(std::string& detail) {
  std::mt19937_64 rng = substream(8, "acceptance-fidelity");
  for (int t = 0; t < 50; ++t) {
    int n = 4 + static_cast<int>(rng() % 11);
    Graph g = random_connected_graph(n, static_cast<int>(rng() % (2 * n)), 6, rng);
    Partition part = random_partition(n, rng);
    SimConfig cfg;
    cfg.seed = 900 + static_cast<std::uint64_t>(t);

    ProgramFactory factory;
    switch (t % 3) {
      case 0:
        factory = flood_program(static_cast<NodeId>(rng() % n));
        break;
      case 1: {
        std::vector<std::int64_t> vals(static_cast<std::size_t>(n));
        for (auto& v : vals) v = static_cast<std::int64_t>(rng() % 512);
        factory = bfs_convergecast_program(static_cast<NodeId>(rng() % n), vals, 65521);
        break;
      }
      default:
        factory = collect_decide_program(static_cast<NodeId>(rng() % n), 6,
                                         [](const Graph& got) { return got.m() % 2 == 0; });
    }

    SimResult plain = run(g, factory, cfg);
    TwoPartyResult split = simulate_two_party(g, part, factory, cfg);
    if (split.sim.outputs != plain.outputs) {
      detail = "outputs diverge on case " + std::to_string(t);
      return false;
    }
    if (!(split.sim.trace.records == plain.trace.records)) {
      detail = "traces diverge on case " + std::to_string(t);
      return false;
    }

    Cut cut = cut_edges(g, part);
    std::int64_t cross = 0;
    for (const TraceRecord& r : plain.trace.records) {
      if (part.side[static_cast<std::size_t>(r.from)] !=
          part.side[static_cast<std::size_t>(r.to)])
        cross += r.bits;
    }
    if (split.transcript.total_bits() != cross) {
      detail = "transcript misses cut traffic on case " + std::to_string(t);
      return false;
    }
    int bw = default_bandwidth_bits(n);
    std::int64_t bound = static_cast<std::int64_t>(plain.trace.rounds_used) *
                         static_cast<std::int64_t>(cut.edges.size()) * 2 * bw;
    if (split.transcript.total_bits() > bound) {
      detail = "transcript exceeds the cut capacity bound on case " + std::to_string(t);
      return false;
    }
    for (const TranscriptRecord& r : split.transcript.records) {
      if (part.side[static_cast<std::size_t>(r.from)] ==
          part.side[static_cast<std::size_t>(r.to)]) {
        detail = "transcript records an internal message";
        return false;
      }
    }
  }
  return true;
}

// ---- C9..C11: distance protocols ----------------------------------------------

bool c9_two_party_distances(std::string& detail) {
  std::mt19937_64 rng = substream(9, "acceptance-apsp2");
  for (int t = 0; t < 100; ++t) {
    int n = 4 + static_cast<int>(rng() % 37);
    Graph g = random_connected_graph(n, static_cast<int>(rng() % (2 * n)), 8, rng);
    Partition part = random_partition(n, rng);
    ApspTwoPartyResult r = apsp_two_party(g, part, 8);
    if (!(r.distances == apsp_exact(g))) {
      detail = "distances wrong on case " + std::to_string(t) + " (n=" + std::to_string(n) + ")";
      return false;
    }
    if (r.transcript.total_bits() > r.bits_bound) {
      detail = "transcript exceeds the row bound on case " + std::to_string(t);
      return false;
    }
  }
  return true;
}

bool c10_blackboard_distances(std::string& detail) {
  std::mt19937_64 rng = substream(10, "acceptance-board");
  const int n = 24;
  for (int t : {2, 3, 4}) {
    for (int rep = 0; rep < 5; ++rep) {
      Graph g = random_connected_graph(n, n + static_cast<int>(rng() % n), 8, rng);
      auto blocks = random_blocks(n, t, rng);
      ApspBlackboardResult board = apsp_blackboard(g, blocks, 8);
      if (!(board.distances == apsp_exact(g))) {
        detail = "distances wrong at t=" + std::to_string(t);
        return false;
      }
      if (board.total_bits() > board.bits_bound) {
        detail = "posted bits exceed the bound at t=" + std::to_string(t);
        return false;
      }
      if (t == 2) {
        Partition part;
        part.side.resize(static_cast<std::size_t>(n));
        for (int v = 0; v < n; ++v)
          part.side[static_cast<std::size_t>(v)] =
              blocks[static_cast<std::size_t>(v)] == 0 ? Side::A : Side::B;
        ApspTwoPartyResult two = apsp_two_party(g, part, 8);
        if (!(two.distances == board.distances)) {
          detail = "two-player blackboard disagrees with the two-party protocol";
          return false;
        }
      }
    }
  }
  return true;
}

bool c11_star_decoding(std::string& detail) {
  std::mt19937_64 rng = substream(11, "acceptance-star");
  for (int n : {8, 16, 32}) {
    int batch = 0;
    for (int top = n - 1; top > 0; top >>= 1) ++batch;
    for (int rep = 0; rep < 10; ++rep) {
      BitString x = BitString::random(static_cast<std::size_t>(n - 2) * batch, rng);
      LowerBoundInstance inst = build_apsp_star(n, x);
      BitString back = decode_star_row(inst, apsp_exact(inst.graph));
      if (!(back == x)) {
        detail = "decode mismatch at n=" + std::to_string(n);
        return false;
      }
    }
  }
  return true;
}

// ---- C12: structural invariants -------------------------------------------------

struct Shape {
  int nodes = 0;
  int cut = 0;
};

std::set<std::tuple<NodeId, NodeId, std::int64_t>> side_edge_set(const LowerBoundInstance& inst,
                                                                 Side s) {
  std::set<std::tuple<NodeId, NodeId, std::int64_t>> out;
  for (const Edge& e : inst.graph.edges()) {
    if (inst.partition.side[static_cast<std::size_t>(e.u)] == s &&
        inst.partition.side[static_cast<std::size_t>(e.v)] == s)
      out.insert({e.u, e.v, e.w});
  }
  return out;
}

std::set<std::pair<NodeId, NodeId>> cut_edge_set(const LowerBoundInstance& inst) {
  std::set<std::pair<NodeId, NodeId>> out;
  for (const Edge& e : cut_edges(inst.graph, inst.partition).edges) out.insert({e.u, e.v});
  return out;
}

bool c12_structure(std::string& detail) {
  std::mt19937_64 rng = substream(12, "acceptance-structure");

  struct Family {
    Kind kind;
    int k;
    int c;
    Shape shape;
  };
  const int logk2 = 1, logk4 = 2;
  std::vector<Family> families = {
      {Kind::Mvc, 4, 0, {4 * 4 + 8 * logk4, 4 * logk4}},
      {Kind::Coloring3, 2, 0, {12 * 2 + 8 * logk2 + 6, 6 + 4 * logk2}},
      {Kind::ColoringC, 2, 5, {12 * 2 + 8 * logk2 + 6 + 4, 6 + 4 * logk2 + 6}},
      {Kind::ColoringApprox, 2, 2, {2 * (12 * 2 + 8 * logk2 + 6), 2 * (6 + 4 * logk2) + 9 * 2 * 1}},
      {Kind::Cycle8, 3, 0, {4 * 3 + 4, 2}},
      {Kind::Identical, 4, 0, {8, 1}},
  };

  for (const Family& fam : families) {
    auto build = [&](std::mt19937_64& r) {
      if (fam.kind == Kind::Identical) {
        std::int64_t w = 64;
        std::vector<std::int64_t> wx(6), wy(6);
        for (auto& e : wx) e = static_cast<std::int64_t>(r() % static_cast<std::uint64_t>(w));
        for (auto& e : wy) e = static_cast<std::int64_t>(r() % static_cast<std::uint64_t>(w));
        return build_identical_subgraphs(fam.k, wx, wy, w);
      }
      std::size_t nbits = static_cast<std::size_t>(fam.k) * static_cast<std::size_t>(fam.k);
      BitString x, y;
      do {
        x = BitString::random(nbits, r);
      } while (x.all_ones());
      do {
        y = BitString::random(nbits, r);
      } while (y.all_ones());
      if (fam.kind == Kind::Cycle8 && !x.any() && !y.any()) x.set(0, true);
      switch (fam.kind) {
        case Kind::Mvc: return build_mvc(fam.k, x, y);
        case Kind::Coloring3: return build_coloring3(fam.k, x, y);
        case Kind::ColoringC: return extend_coloring_c(build_coloring3(fam.k, x, y), fam.c);
        case Kind::ColoringApprox: return build_approx_coloring(fam.k, fam.c, x, y);
        default: return build_weighted_cycle(fam.k, x, y);
      }
    };

    for (int t = 0; t < 100; ++t) {
      LowerBoundInstance a = build(rng);
      if (a.graph.n() != fam.shape.nodes) {
        detail = kind_name(fam.kind) + ": node count " + std::to_string(a.graph.n());
        return false;
      }
      if (static_cast<int>(cut_edge_set(a).size()) != fam.shape.cut) {
        detail = kind_name(fam.kind) + ": cut size " +
                 std::to_string(cut_edge_set(a).size());
        return false;
      }
      if (!a.partition.valid_for(a.graph) || !is_connected(a.graph)) {
        detail = kind_name(fam.kind) + ": malformed instance";
        return false;
      }
    }

    // Side dependence: the A-side subgraph is a function of x alone, the
    // B-side subgraph of y alone, and the cut is input-independent.
    for (int t = 0; t < 100; ++t) {
      LowerBoundInstance base = build(rng);
      LowerBoundInstance other = build(rng);
      LowerBoundInstance hybrid;
      if (fam.kind == Kind::Identical) {
        hybrid = build_identical_subgraphs(fam.k, base.wx, other.wy, 64);
      } else {
        switch (fam.kind) {
          case Kind::Mvc: hybrid = build_mvc(fam.k, base.x, other.y); break;
          case Kind::Coloring3: hybrid = build_coloring3(fam.k, base.x, other.y); break;
          case Kind::ColoringC:
            hybrid = extend_coloring_c(build_coloring3(fam.k, base.x, other.y), fam.c);
            break;
          case Kind::ColoringApprox:
            hybrid = build_approx_coloring(fam.k, fam.c, base.x, other.y);
            break;
          default:
            if (!base.x.any() && !other.y.any()) continue;
            hybrid = build_weighted_cycle(fam.k, base.x, other.y);
        }
      }
      if (side_edge_set(hybrid, Side::A) != side_edge_set(base, Side::A)) {
        detail = kind_name(fam.kind) + ": A side depends on y";
        return false;
      }
      if (side_edge_set(hybrid, Side::B) != side_edge_set(other, Side::B)) {
        detail = kind_name(fam.kind) + ": B side depends on x";
        return false;
      }
      if (cut_edge_set(hybrid) != cut_edge_set(base)) {
        detail = kind_name(fam.kind) + ": cut depends on the inputs";
        return false;
      }
    }
  }

  // Star family: node count, single cut edge, decodability.
  for (int t = 0; t < 100; ++t) {
    int n = 8;
    BitString x = BitString::random(18, rng);
    LowerBoundInstance inst = build_apsp_star(n, x);
    if (inst.graph.n() != n || cut_edge_set(inst).size() != 1 ||
        !is_connected(inst.graph)) {
      detail = "star: malformed instance";
      return false;
    }
  }
  return true;
}

}  // namespace

int main() {
  struct Criterion {
    const char* id;
    const char* what;
    CheckFn fn;
  };
  std::vector<Criterion> criteria = {
      {"C1", "exhaustive cover sweep at k=2 (225 pairs, target 8)", c1_cover_exhaustive},
      {"C2", "sampled cover sweep at k=4 (200 pairs) with explicit witness", c2_cover_sampled},
      {"C3", "exhaustive 3-coloring sweep at k=2 with witness colorings", c3_coloring_exhaustive},
      {"C4", "extended coloring sweeps at c=4 and c=5 (50 pairs each)", c4_coloring_extended},
      {"C5", "approximate coloring gap 6 versus 7 at k=2, two copies", c5_coloring_approx},
      {"C6", "exhaustive sparse cycle sweep at k=3 (16899 pairs)", c6_cycle_exhaustive},
      {"C7", "fingerprint detection statistics at k=8", c7_detect_statistics},
      {"C8", "two-party simulation fidelity and transcript bounds (50 cases)", c8_two_party_fidelity},
      {"C9", "two-party distance exchange exact on 100 graphs up to n=40", c9_two_party_distances},
      {"C10", "blackboard distance protocol exact for 2..4 players at n=24", c10_blackboard_distances},
      {"C11", "star weight rows decode from distance rows at n=8,16,32", c11_star_decoding},
      {"C12", "gadget structure and one-sided input dependence (100 pairs each)", c12_structure},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    std::string detail;
    bool ok = false;
    try {
      ok = c.fn(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    if (ok) {
      std::cout << "[PASS] " << c.id << " " << c.what << "\n";
    } else {
      ++failures;
      std::cout << "[FAIL] " << c.id << " " << c.what;
      if (!detail.empty()) std::cout << " :: " << detail;
      std::cout << "\n";
    }
    std::cout.flush();
  }
  if (failures != 0) std::cout << failures << " criteria failed\n";
  return failures == 0 ? 0 : 1;
}
