#include "congestlab/protocol.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

#include "congestlab/comm.hpp"
#include "congestlab/oracles.hpp"

namespace congestlab {

namespace {

int bit_length_u64(std::uint64_t v) {
  return v == 0 ? 1 : 64 - std::countl_zero(v);
}

// Dense symmetric distance table over an explicit node subset.
struct MiniMatrix {
  std::size_t h = 0;
  std::vector<std::int64_t> d;

  explicit MiniMatrix(std::size_t n) : h(n), d(n * n, kInfDist) {
    for (std::size_t i = 0; i < n; ++i) d[i * n + i] = 0;
  }
  std::int64_t& at(std::size_t i, std::size_t j) { return d[i * h + j]; }
  std::int64_t get(std::size_t i, std::size_t j) const { return d[i * h + j]; }
  void relax(std::size_t i, std::size_t j, std::int64_t w) {
    if (w < d[i * h + j]) {
      d[i * h + j] = w;
      d[j * h + i] = w;
    }
  }
  void close() {  // Floyd-Warshall
    for (std::size_t k = 0; k < h; ++k)
      for (std::size_t i = 0; i < h; ++i) {
        const std::int64_t dik = d[i * h + k];
        if (dik == kInfDist) continue;
        for (std::size_t j = 0; j < h; ++j) {
          const std::int64_t v = dist_add(dik, d[k * h + j]);
          if (v < d[i * h + j]) d[i * h + j] = v;
        }
      }
  }
};

std::uint64_t inf_code(int field_bits) { return (1ULL << field_bits) - 1; }

void append_distance(BitVec& out, std::int64_t d, int field_bits) {
  const std::uint64_t inf = inf_code(field_bits);
  if (d == kInfDist) {
    out.append_bits(inf, field_bits);
    return;
  }
  if (d < 0 || static_cast<std::uint64_t>(d) >= inf)
    throw std::logic_error("distance field overflow");
  out.append_bits(static_cast<std::uint64_t>(d), field_bits);
}

// Distance rows for src_pos x (all positions) of an induced-subgraph matrix.
BitVec encode_rows(const DistanceMatrix& dm, const std::vector<int>& src_pos,
                   int field_bits) {
  BitVec out;
  for (int sp : src_pos)
    for (int tp = 0; tp < dm.n(); ++tp) append_distance(out, dm.at(sp, tp), field_bits);
  return out;
}

std::vector<std::int64_t> decode_rows(const BitVec& v, std::size_t nsrc, std::size_t ntgt,
                                      int field_bits) {
  if (v.size() != nsrc * ntgt * static_cast<std::size_t>(field_bits))
    throw std::invalid_argument("distance row bundle has the wrong size");
  std::vector<std::int64_t> rows(nsrc * ntgt, kInfDist);
  BitReader r(v);
  for (auto& cell : rows) {
    const std::uint64_t raw = r.read_bits(field_bits);
    cell = raw == inf_code(field_bits) ? kInfDist : static_cast<std::int64_t>(raw);
  }
  return rows;
}

// What one party knows about another: that block's cut endpoints, its node
// set, and the decoded distance rows cut_nodes x nodes inside that block.
struct RemoteBlock {
  std::vector<NodeId> cut_nodes;
  std::vector<NodeId> nodes;
  std::vector<std::int64_t> rows;
};

std::size_t index_in(const std::vector<NodeId>& sorted, NodeId v) {
  const auto it = std::lower_bound(sorted.begin(), sorted.end(), v);
  if (it == sorted.end() || *it != v) throw std::logic_error("node not in block");
  return static_cast<std::size_t>(it - sorted.begin());
}

// Exact rows for every source in `own`, using only: edges inside `own`, the
// cut edges, and the posted remote rows. Shortest paths decompose into
// own-side segments, cut edges, and remote segments between cut endpoints;
// the latter are replaced by shortcut edges, and targets strictly inside a
// remote block are answered by a final min over that block's cut endpoints.
void solve_side(const Graph& g, const std::vector<NodeId>& own,
                const std::vector<Edge>& cut, const std::vector<RemoteBlock>& remotes,
                DistanceMatrix& out) {
  const int n = g.n();
  std::vector<NodeId> hn = own;
  for (const auto& r : remotes) hn.insert(hn.end(), r.cut_nodes.begin(), r.cut_nodes.end());
  std::sort(hn.begin(), hn.end());
  std::vector<int> pos(static_cast<std::size_t>(n), -1);
  for (std::size_t i = 0; i < hn.size(); ++i) pos[static_cast<std::size_t>(hn[i])] =
      static_cast<int>(i);

  MiniMatrix d(hn.size());
  std::vector<char> in_own(static_cast<std::size_t>(n), 0);
  for (NodeId v : own) in_own[static_cast<std::size_t>(v)] = 1;
  for (const Edge& e : g.edges())
    if (in_own[static_cast<std::size_t>(e.u)] && in_own[static_cast<std::size_t>(e.v)])
      d.relax(static_cast<std::size_t>(pos[static_cast<std::size_t>(e.u)]),
              static_cast<std::size_t>(pos[static_cast<std::size_t>(e.v)]), e.w);
  for (const Edge& e : cut) {
    const int pu = pos[static_cast<std::size_t>(e.u)];
    const int pv = pos[static_cast<std::size_t>(e.v)];
    if (pu < 0 || pv < 0) throw std::logic_error("cut endpoint outside virtual graph");
    d.relax(static_cast<std::size_t>(pu), static_cast<std::size_t>(pv), e.w);
  }
  for (const auto& r : remotes) {
    std::vector<std::size_t> cut_tgt(r.cut_nodes.size());
    for (std::size_t i = 0; i < r.cut_nodes.size(); ++i)
      cut_tgt[i] = index_in(r.nodes, r.cut_nodes[i]);
    for (std::size_t i = 0; i < r.cut_nodes.size(); ++i)
      for (std::size_t j = i + 1; j < r.cut_nodes.size(); ++j) {
        const std::int64_t w = r.rows[i * r.nodes.size() + cut_tgt[j]];
        if (w == kInfDist) continue;
        d.relax(static_cast<std::size_t>(pos[static_cast<std::size_t>(r.cut_nodes[i])]),
                static_cast<std::size_t>(pos[static_cast<std::size_t>(r.cut_nodes[j])]), w);
      }
  }
  d.close();

  for (NodeId s : own) {
    const std::size_t ps = static_cast<std::size_t>(pos[static_cast<std::size_t>(s)]);
    for (NodeId t = 0; t < n; ++t)
      if (pos[static_cast<std::size_t>(t)] >= 0)
        out.set(s, t, d.get(ps, static_cast<std::size_t>(pos[static_cast<std::size_t>(t)])));
    for (const auto& r : remotes)
      for (std::size_t ti = 0; ti < r.nodes.size(); ++ti) {
        const NodeId t = r.nodes[ti];
        if (pos[static_cast<std::size_t>(t)] >= 0) continue;  // cut endpoint, done
        std::int64_t best = kInfDist;
        for (std::size_t ci = 0; ci < r.cut_nodes.size(); ++ci) {
          const std::size_t pc =
              static_cast<std::size_t>(pos[static_cast<std::size_t>(r.cut_nodes[ci])]);
          best = std::min(best, dist_add(d.get(ps, pc), r.rows[ci * r.nodes.size() + ti]));
        }
        out.set(s, t, best);
      }
  }
}

std::vector<int> positions_of(const std::vector<NodeId>& members,
                              const std::vector<NodeId>& subset) {
  std::vector<int> out;
  out.reserve(subset.size());
  for (NodeId v : subset) out.push_back(static_cast<int>(index_in(members, v)));
  return out;
}

}  // namespace

std::int64_t Transcript::total_bits() const {
  std::int64_t s = 0;
  for (const auto& r : records) s += static_cast<std::int64_t>(r.payload.size());
  return s;
}

std::int64_t Transcript::bits(Direction d) const {
  std::int64_t s = 0;
  for (const auto& r : records)
    if (r.dir == d) s += static_cast<std::int64_t>(r.payload.size());
  return s;
}

TwoPartyResult simulate_two_party(const Graph& g, const Partition& part,
                                  const ProgramFactory& factory, const SimConfig& cfg) {
  if (!part.valid_for(g))
    throw std::invalid_argument("simulate_two_party: partition does not fit the graph");
  TwoPartyResult out;
  const auto observer = [&](int round, NodeId from, NodeId to, const BitVec& payload) {
    const Side sf = part.side[static_cast<std::size_t>(from)];
    const Side st = part.side[static_cast<std::size_t>(to)];
    if (sf == st) return;
    out.transcript.records.push_back(
        {round, sf == Side::A ? Direction::AtoB : Direction::BtoA, from, to, payload});
  };
  out.sim = detail::run_observed(g, factory, cfg, observer);
  return out;
}

int distance_field_bits(int n, std::int64_t w_max) {
  if (n < 1) throw std::invalid_argument("distance_field_bits: empty graph");
  if (w_max < 0) throw std::invalid_argument("distance_field_bits: negative weight bound");
  const std::uint64_t un = static_cast<std::uint64_t>(n);
  const std::uint64_t uw = static_cast<std::uint64_t>(w_max);
  if (uw != 0 && un > ~0ULL / uw)
    throw std::invalid_argument("distance_field_bits: bound too large");
  const std::uint64_t cap = un * uw;  // largest finite distance
  const int f = (cap == 0 ? 0 : bit_length_u64(cap)) + 1;
  if (f > 62) throw std::invalid_argument("distance_field_bits: bound too large");
  return f;
}

ApspTwoPartyResult apsp_two_party(const Graph& g, const Partition& part,
                                  std::int64_t w_max) {
  if (!part.valid_for(g))
    throw std::invalid_argument("apsp_two_party: partition does not fit the graph");
  if (g.max_weight() > w_max)
    throw std::invalid_argument("apsp_two_party: w_max below an edge weight");
  const int n = g.n();
  const int field = distance_field_bits(n, w_max);
  const Cut cut = cut_edges(g, part);

  std::vector<NodeId> va, vb;
  for (NodeId v = 0; v < n; ++v)
    (part.side[static_cast<std::size_t>(v)] == Side::A ? va : vb).push_back(v);

  const DistanceMatrix da = apsp_induced(g, va);
  const DistanceMatrix db = apsp_induced(g, vb);
  const BitVec msg_b = encode_rows(db, positions_of(vb, cut.b_nodes), field);
  const BitVec msg_a = encode_rows(da, positions_of(va, cut.a_nodes), field);

  ApspTwoPartyResult res;
  res.field_bits = field;
  res.bits_bound = static_cast<std::int64_t>(cut.nodes.size()) * n * field;
  res.transcript.records.push_back({1, Direction::BtoA, -1, -1, msg_b});
  res.transcript.records.push_back({1, Direction::AtoB, -1, -1, msg_a});

  res.distances = DistanceMatrix(n);
  solve_side(g, va, cut.edges,
             {{cut.b_nodes, vb, decode_rows(msg_b, cut.b_nodes.size(), vb.size(), field)}},
             res.distances);
  solve_side(g, vb, cut.edges,
             {{cut.a_nodes, va, decode_rows(msg_a, cut.a_nodes.size(), va.size(), field)}},
             res.distances);
  return res;
}

std::int64_t ApspBlackboardResult::total_bits() const {
  std::int64_t s = cut_post_bits;
  for (std::int64_t b : row_post_bits) s += b;
  return s;
}

ApspBlackboardResult apsp_blackboard(const Graph& g, const std::vector<int>& block_of,
                                     std::int64_t w_max) {
  const int n = g.n();
  if (static_cast<int>(block_of.size()) != n)
    throw std::invalid_argument("apsp_blackboard: block map does not fit the graph");
  int t = 0;
  for (int b : block_of) {
    if (b < 0) throw std::invalid_argument("apsp_blackboard: negative block id");
    t = std::max(t, b + 1);
  }
  if (t < 2) throw std::invalid_argument("apsp_blackboard: need at least two players");
  std::vector<std::vector<NodeId>> nodes(static_cast<std::size_t>(t));
  for (NodeId v = 0; v < n; ++v)
    nodes[static_cast<std::size_t>(block_of[static_cast<std::size_t>(v)])].push_back(v);
  for (int i = 0; i < t; ++i)
    if (nodes[static_cast<std::size_t>(i)].empty())
      throw std::invalid_argument("apsp_blackboard: every player needs at least one node");
  if (g.max_weight() > w_max)
    throw std::invalid_argument("apsp_blackboard: w_max below an edge weight");

  const int field = distance_field_bits(n, w_max);
  const int idb = bit_length_u64(static_cast<std::uint64_t>(n - 1));

  std::vector<Edge> cut;
  for (const Edge& e : g.edges())
    if (block_of[static_cast<std::size_t>(e.u)] != block_of[static_cast<std::size_t>(e.v)])
      cut.push_back(e);

  // post 0: the cut itself
  BitVec cut_post;
  for (const Edge& e : cut) {
    cut_post.append_bits(static_cast<std::uint64_t>(e.u), idb);
    cut_post.append_bits(static_cast<std::uint64_t>(e.v), idb);
    append_distance(cut_post, e.w, field);
  }

  // per-player cut endpoints and distance-row posts
  std::vector<std::vector<NodeId>> vc(static_cast<std::size_t>(t));
  {
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (const Edge& e : cut)
      for (NodeId v : {e.u, e.v})
        if (!seen[static_cast<std::size_t>(v)]) {
          seen[static_cast<std::size_t>(v)] = 1;
          vc[static_cast<std::size_t>(block_of[static_cast<std::size_t>(v)])].push_back(v);
        }
    for (auto& c : vc) std::sort(c.begin(), c.end());
  }
  std::vector<BitVec> posts(static_cast<std::size_t>(t));
  for (int i = 0; i < t; ++i) {
    const auto& own = nodes[static_cast<std::size_t>(i)];
    const DistanceMatrix di = apsp_induced(g, own);
    posts[static_cast<std::size_t>(i)] =
        encode_rows(di, positions_of(own, vc[static_cast<std::size_t>(i)]), field);
  }

  ApspBlackboardResult res;
  res.field_bits = field;
  res.cut_post_bits = static_cast<std::int64_t>(cut_post.size());
  for (int i = 0; i < t; ++i)
    res.row_post_bits.push_back(
        static_cast<std::int64_t>(posts[static_cast<std::size_t>(i)].size()));
  std::size_t vc_total = 0;
  for (const auto& c : vc) vc_total += c.size();
  res.bits_bound = static_cast<std::int64_t>(cut.size()) * (2 * idb + field) +
                   static_cast<std::int64_t>(vc_total) * n * field;

  // every player reads the board back and answers its own sources
  std::vector<Edge> board_cut;
  {
    BitReader r(cut_post);
    for (std::size_t e = 0; e < cut.size(); ++e) {
      Edge be;
      be.u = static_cast<NodeId>(r.read_bits(idb));
      be.v = static_cast<NodeId>(r.read_bits(idb));
      const std::uint64_t raw = r.read_bits(field);
      if (raw == inf_code(field)) throw std::logic_error("cut edge with infinite weight");
      be.w = static_cast<std::int64_t>(raw);
      board_cut.push_back(be);
    }
  }
  res.distances = DistanceMatrix(n);
  for (int i = 0; i < t; ++i) {
    std::vector<RemoteBlock> remotes;
    for (int j = 0; j < t; ++j) {
      if (j == i) continue;
      const auto& cj = vc[static_cast<std::size_t>(j)];
      const auto& nj = nodes[static_cast<std::size_t>(j)];
      remotes.push_back({cj, nj,
                         decode_rows(posts[static_cast<std::size_t>(j)], cj.size(),
                                     nj.size(), field)});
    }
    solve_side(g, nodes[static_cast<std::size_t>(i)], board_cut, remotes, res.distances);
  }
  return res;
}

bool comm_function_value(const LowerBoundInstance& inst) {
  switch (inst.kind) {
    case Kind::Mvc:
    case Kind::Coloring3:
    case Kind::ColoringC:
    case Kind::ColoringApprox:
    case Kind::Cycle8:
      return !disj(inst.x, inst.y);
    case Kind::Identical: {
      const BitString ex =
          encode_subgraph_weights(inst.params.k, inst.params.w_max, inst.wx);
      const BitString ey =
          encode_subgraph_weights(inst.params.k, inst.params.w_max, inst.wy);
      return eq(ex, ey);
    }
    case Kind::ApspStar:
      break;
  }
  throw std::invalid_argument("comm_function_value: instance encodes no decision");
}

bool graph_property_holds(const LowerBoundInstance& inst) {
  switch (inst.kind) {
    case Kind::Mvc:
      return min_vc_size(inst.graph, mvc_cover_target(inst.params.k)).has_value();
    case Kind::Coloring3:
      return is_c_colorable(inst.graph, 3);
    case Kind::ColoringC:
      return is_c_colorable(inst.graph, inst.params.c);
    case Kind::ColoringApprox:
      return is_c_colorable(inst.graph, 3 * inst.params.c);
    case Kind::Cycle8:
      return has_cycle_len8_weight(inst.graph, cycle_target_weight(inst.params.k))
          .has_value();
    case Kind::Identical:
      return check_identical(inst);
    case Kind::ApspStar:
      break;
  }
  throw std::invalid_argument("graph_property_holds: instance encodes no decision");
}

ReductionReport reduction_report(const LowerBoundInstance& inst, const SimConfig& cfg) {
  if (inst.kind == Kind::ApspStar)
    throw std::invalid_argument("reduction_report: star instances are not decisions");
  ReductionReport rep;
  rep.kind = inst.kind;
  rep.f_value = comm_function_value(inst);
  rep.graph_property = graph_property_holds(inst);

  ProgramFactory prog;
  if (inst.kind == Kind::Identical) {
    prog = ident_detect_program(inst.params.k, inst.params.w_max);
  } else {
    const Kind kind = inst.kind;
    const InstanceParams params = inst.params;
    prog = collect_decide_program(
        0, inst.graph.max_weight(), [kind, params](const Graph& g) {
          switch (kind) {
            case Kind::Mvc:
              return min_vc_size(g, mvc_cover_target(params.k)).has_value();
            case Kind::Coloring3:
              return is_c_colorable(g, 3);
            case Kind::ColoringC:
              return is_c_colorable(g, params.c);
            case Kind::ColoringApprox:
              return is_c_colorable(g, 3 * params.c);
            case Kind::Cycle8:
              return has_cycle_len8_weight(g, cycle_target_weight(params.k)).has_value();
            default:
              throw std::logic_error("reduction_report: unexpected kind");
          }
        });
  }

  const TwoPartyResult two = simulate_two_party(inst.graph, inst.partition, prog, cfg);
  rep.protocol_verdict = two.sim.outputs.front() != 0;
  rep.rounds = two.sim.trace.rounds_used;
  rep.cut_edge_count = static_cast<int>(cut_edges(inst.graph, inst.partition).edges.size());
  rep.bandwidth_bits =
      cfg.bandwidth_bits > 0 ? cfg.bandwidth_bits : default_bandwidth_bits(inst.graph.n());
  rep.cut_bits = two.transcript.total_bits();
  rep.cut_bits_bound = static_cast<std::int64_t>(rep.rounds) * rep.cut_edge_count * 2 *
                       rep.bandwidth_bits;
  rep.oracle_matches_f = rep.graph_property == rep.f_value;
  rep.protocol_matches_f = rep.protocol_verdict == rep.f_value;
  return rep;
}

}  // namespace congestlab
