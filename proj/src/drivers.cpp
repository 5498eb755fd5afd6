#include "congestlab/drivers.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <stdexcept>

#include "congestlab/comm.hpp"
#include "congestlab/oracles.hpp"
#include "congestlab/protocol.hpp"
#include "congestlab/sim.hpp"

namespace congestlab {

namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

int input_side_bits(Kind kind, const InstanceParams& p) {
  switch (kind) {
    case Kind::Mvc:
    case Kind::Coloring3:
    case Kind::ColoringC:
    case Kind::ColoringApprox:
    case Kind::Cycle8:
      return p.k * p.k;
    default:
      throw std::logic_error("input_side_bits: family has no pair inputs");
  }
}

LowerBoundInstance build_pair_instance(Kind kind, const InstanceParams& p,
                                       const BitString& x, const BitString& y) {
  switch (kind) {
    case Kind::Mvc:
      return build_mvc(p.k, x, y);
    case Kind::Coloring3:
      return build_coloring3(p.k, x, y);
    case Kind::ColoringC:
      return extend_coloring_c(build_coloring3(p.k, x, y), p.c);
    case Kind::ColoringApprox:
      return build_approx_coloring(p.k, p.c, x, y);
    case Kind::Cycle8:
      return build_weighted_cycle(p.k, x, y);
    default:
      throw std::logic_error("build_pair_instance: family has no pair inputs");
  }
}

// Which (x, y) the family's builder accepts.
bool pair_valid(Kind kind, const BitString& x, const BitString& y) {
  if (!validate_disj_input(x, y)) return false;
  if (kind == Kind::Cycle8 && !x.any() && !y.any()) return false;  // disconnected
  return true;
}

bool check_pair_witness(Kind kind, const LowerBoundInstance& inst) {
  switch (kind) {
    case Kind::Mvc: {
      const int k = inst.params.k;
      for (int l = 0; l < k * k; ++l) {
        if (!(inst.x.get(static_cast<std::size_t>(l)) &&
              inst.y.get(static_cast<std::size_t>(l))))
          continue;
        const auto cover = construct_mvc_cover(inst, l / k, l % k);
        return static_cast<int>(cover.size()) == mvc_cover_target(k) &&
               verify_vertex_cover(inst.graph, cover);
      }
      return false;  // no common index despite f being true
    }
    case Kind::Coloring3: {
      const int k = inst.params.k;
      for (int l = 0; l < k * k; ++l) {
        if (!(inst.x.get(static_cast<std::size_t>(l)) &&
              inst.y.get(static_cast<std::size_t>(l))))
          continue;
        return verify_coloring(inst.graph, construct_3coloring(inst, l / k, l % k));
      }
      return false;
    }
    case Kind::Cycle8: {
      // every witness cycle must use exactly two input edges
      const auto cycles =
          find_cycles_len8_weight(inst.graph, cycle_target_weight(inst.params.k), 0);
      if (cycles.empty()) return false;
      for (const auto& c : cycles) {
        int input_edges = 0;
        for (std::size_t i = 0; i < c.nodes.size(); ++i) {
          const NodeId u = c.nodes[i];
          const NodeId v = c.nodes[(i + 1) % c.nodes.size()];
          if (is_cycle_input_edge(inst, u, v)) ++input_edges;
        }
        if (input_edges != 2) return false;
      }
      return true;
    }
    default:
      return true;  // no explicit witness defined for this family
  }
}

BitString bits_of_mask(std::uint64_t mask, int nbits) {
  BitString s(static_cast<std::size_t>(nbits));
  for (int i = 0; i < nbits; ++i)
    if ((mask >> i) & 1) s.set(static_cast<std::size_t>(i), true);
  return s;
}

BitString random_valid_side(int nbits, std::mt19937_64& rng) {
  for (;;) {
    BitString s = BitString::random(static_cast<std::size_t>(nbits), rng);
    if (!s.all_ones()) return s;
  }
}

void record_pair(SweepResult& res, const SweepOptions& opt, const LowerBoundInstance& inst,
                 bool f, bool property, bool witness_ok) {
  SweepItem item;
  item.x_hex = inst.x.to_hex();
  item.y_hex = inst.y.to_hex();
  item.f = f;
  item.property = property;
  item.witness_ok = witness_ok;
  item.ok = (f == property) && witness_ok;
  ++res.pairs_checked;
  if (!item.ok) res.failures.push_back(item);
  if (opt.on_item) opt.on_item(item);
}

SweepResult sweep_pairs(Kind kind, const InstanceParams& params, const SweepOptions& opt) {
  SweepResult res;
  res.kind = kind;
  res.params = params;
  const int nbits = input_side_bits(kind, params);

  const auto check_one = [&](const BitString& x, const BitString& y) {
    const LowerBoundInstance inst = build_pair_instance(kind, params, x, y);
    const bool f = !disj(x, y);
    const bool property = graph_property_holds(inst);
    const bool witness_ok =
        (f && opt.check_witnesses) ? check_pair_witness(kind, inst) : true;
    record_pair(res, opt, inst, f, property, witness_ok);
  };

  if (opt.exhaustive) {
    if (nbits > 20) throw std::invalid_argument("check_lemma: side too wide to enumerate");
    std::vector<BitString> sides;
    for (std::uint64_t m = 0; m < (1ULL << nbits); ++m) {
      BitString s = bits_of_mask(m, nbits);
      if (opt.max_ones_per_side >= 0 &&
          s.popcount() > static_cast<std::size_t>(opt.max_ones_per_side))
        continue;
      sides.push_back(std::move(s));
    }
    for (const auto& x : sides)
      for (const auto& y : sides) {
        if (!pair_valid(kind, x, y)) {
          ++res.pairs_skipped;
          continue;
        }
        check_one(x, y);
      }
  } else {
    auto rng = substream(opt.seed, kind_name(kind));
    for (int s = 0; s < opt.samples; ++s) {
      BitString x = random_valid_side(nbits, rng);
      BitString y = random_valid_side(nbits, rng);
      while (!pair_valid(kind, x, y)) {
        x = random_valid_side(nbits, rng);
        y = random_valid_side(nbits, rng);
      }
      check_one(x, y);
    }
  }
  return res;
}

SweepResult sweep_identical(const InstanceParams& params, const SweepOptions& opt) {
  if (opt.exhaustive)
    throw std::invalid_argument("check_lemma: the identical family is sampled only");
  SweepResult res;
  res.kind = Kind::Identical;
  res.params = params;
  const int k = params.k;
  const std::int64_t w =
      params.w_max > 0 ? params.w_max : static_cast<std::int64_t>(2 * k) * (2 * k);
  res.params.w_max = w;
  const int pairs = k * (k - 1) / 2;
  auto rng = substream(opt.seed, "ident");
  std::uniform_int_distribution<std::int64_t> wdist(0, w - 1);
  for (int s = 0; s < opt.samples; ++s) {
    std::vector<std::int64_t> wx(static_cast<std::size_t>(pairs));
    for (auto& v : wx) v = wdist(rng);
    std::vector<std::int64_t> wy = wx;
    const bool make_equal = (s % 2 == 0);
    if (!make_equal) {
      if (w < 2) {
        ++res.pairs_skipped;  // w == 1 leaves no unequal value to pick
        continue;
      }
      auto& cell = wy[static_cast<std::size_t>(
          std::uniform_int_distribution<int>(0, pairs - 1)(rng))];
      cell = (cell + 1 + std::uniform_int_distribution<std::int64_t>(0, w - 2)(rng)) % w;
    }
    const LowerBoundInstance inst = build_identical_subgraphs(k, wx, wy, w);
    const bool f = comm_function_value(inst);
    const bool property = check_identical(inst);
    record_pair(res, opt, inst, f, property, true);
  }
  return res;
}

SweepResult sweep_star(const InstanceParams& params, const SweepOptions& opt) {
  if (opt.exhaustive)
    throw std::invalid_argument("check_lemma: the star family is sampled only");
  SweepResult res;
  res.kind = Kind::ApspStar;
  res.params = params;
  const int n = params.n;
  if (n < 3) throw std::invalid_argument("check_lemma: star needs n >= 3");
  int batch = 0;
  for (int top = n - 1; top > 0; top >>= 1) ++batch;
  const std::size_t len = static_cast<std::size_t>(n - 2) * static_cast<std::size_t>(batch);
  auto rng = substream(opt.seed, "star");
  for (int s = 0; s < opt.samples; ++s) {
    const BitString x = BitString::random(len, rng);
    const LowerBoundInstance inst = build_apsp_star(n, x);
    const bool ok = decode_star_row(inst, apsp_exact(inst.graph)) == x;
    SweepItem item;
    item.x_hex = x.to_hex();
    item.f = true;
    item.property = ok;
    item.ok = ok;
    ++res.pairs_checked;
    if (!ok) res.failures.push_back(item);
    if (opt.on_item) opt.on_item(item);
  }
  return res;
}

}  // namespace

std::mt19937_64 substream(std::uint64_t seed, std::string_view label) {
  return std::mt19937_64(derive_seed(seed, fnv1a(label)));
}

Graph random_connected_graph(int n, int extra_edges, std::int64_t w_max,
                             std::mt19937_64& rng) {
  if (n < 1) throw std::invalid_argument("random_connected_graph: empty graph");
  if (w_max < 0) throw std::invalid_argument("random_connected_graph: negative weights");
  std::vector<NodeId> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::uniform_int_distribution<std::int64_t> wdist(0, w_max);
  Graph g(n);
  for (int v = 1; v < n; ++v) {
    const int u = std::uniform_int_distribution<int>(0, v - 1)(rng);
    g.add_edge(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)],
               wdist(rng));
  }
  std::uniform_int_distribution<int> node(0, n - 1);
  int attempts = 8 * extra_edges + 32;
  for (int added = 0; added < extra_edges && attempts > 0; --attempts) {
    const NodeId u = node(rng);
    const NodeId v = node(rng);
    if (u == v || g.has_edge(u, v)) continue;
    g.add_edge(u, v, wdist(rng));
    ++added;
  }
  return g;
}

Partition random_partition(int n, std::mt19937_64& rng) {
  if (n < 2) throw std::invalid_argument("random_partition: need two nodes");
  Partition p;
  p.side.resize(static_cast<std::size_t>(n));
  std::uniform_int_distribution<int> coin(0, 1);
  for (auto& s : p.side) s = coin(rng) ? Side::A : Side::B;
  std::uniform_int_distribution<int> node(0, n - 1);
  if (p.count(Side::A) == 0) p.side[static_cast<std::size_t>(node(rng))] = Side::A;
  if (p.count(Side::B) == 0) {
    NodeId v = node(rng);
    while (p.count(Side::A) == 1 && p.side[static_cast<std::size_t>(v)] == Side::A)
      v = node(rng);
    p.side[static_cast<std::size_t>(v)] = Side::B;
  }
  return p;
}

std::vector<int> random_blocks(int n, int t, std::mt19937_64& rng) {
  if (t < 2 || n < t) throw std::invalid_argument("random_blocks: need n >= t >= 2");
  std::vector<int> block(static_cast<std::size_t>(n));
  std::uniform_int_distribution<int> pick(0, t - 1);
  for (auto& b : block) b = pick(rng);
  std::vector<int> count(static_cast<std::size_t>(t), 0);
  for (int b : block) ++count[static_cast<std::size_t>(b)];
  for (int missing = 0; missing < t; ++missing) {
    if (count[static_cast<std::size_t>(missing)] > 0) continue;
    for (std::size_t v = 0; v < block.size(); ++v) {
      if (count[static_cast<std::size_t>(block[v])] < 2) continue;
      --count[static_cast<std::size_t>(block[v])];
      block[v] = missing;
      ++count[static_cast<std::size_t>(missing)];
      break;
    }
  }
  return block;
}

SweepResult check_lemma(Kind kind, const InstanceParams& params, const SweepOptions& opt) {
  switch (kind) {
    case Kind::Mvc:
    case Kind::Coloring3:
    case Kind::ColoringC:
    case Kind::ColoringApprox:
    case Kind::Cycle8:
      return sweep_pairs(kind, params, opt);
    case Kind::Identical:
      return sweep_identical(params, opt);
    case Kind::ApspStar:
      return sweep_star(params, opt);
  }
  throw std::invalid_argument("check_lemma: unknown family");
}

std::vector<BenchRow> run_bench(std::uint64_t seed) {
  using clock = std::chrono::steady_clock;
  std::vector<BenchRow> rows;

  for (int k : {4, 8, 16}) {
    auto rng = substream(seed, "bench-ident");
    const std::int64_t w = static_cast<std::int64_t>(2 * k) * (2 * k);
    const int pairs = k * (k - 1) / 2;
    std::uniform_int_distribution<std::int64_t> wdist(0, w - 1);
    std::vector<std::int64_t> wx(static_cast<std::size_t>(pairs));
    for (auto& v : wx) v = wdist(rng);
    const auto inst = build_identical_subgraphs(k, wx, wx, w);
    const auto t0 = clock::now();
    const auto det = identical_subgraphs_detect(inst, SimConfig{0, 100000, seed});
    const auto t1 = clock::now();
    BenchRow row;
    row.name = "ident-detect k=" + std::to_string(k);
    row.n = inst.graph.n();
    row.rounds = det.trace.rounds_used;
    row.bits = det.trace.total_bits();
    row.bound = static_cast<std::int64_t>(kDetectRoundFactor) * hop_diameter(inst.graph) +
                kDetectRoundOffset;
    row.ok = det.verdicts.front() == 1 && det.trace.rounds_used <= row.bound;
    row.millis = std::chrono::duration<double, std::milli>(t1 - t0).count();
    rows.push_back(row);
  }

  for (int n : {16, 24, 32, 40}) {
    auto rng = substream(seed, "bench-apsp2");
    const Graph g = random_connected_graph(n, n, 8, rng);
    const Partition part = random_partition(n, rng);
    const auto t0 = clock::now();
    const auto res = apsp_two_party(g, part, 8);
    const auto t1 = clock::now();
    BenchRow row;
    row.name = "apsp-two-party n=" + std::to_string(n);
    row.n = n;
    row.bits = res.transcript.total_bits();
    row.bound = res.bits_bound;
    row.ok = res.distances == apsp_exact(g) && row.bits <= row.bound;
    row.millis = std::chrono::duration<double, std::milli>(t1 - t0).count();
    rows.push_back(row);
  }

  for (int n : {8, 16, 32}) {
    auto rng = substream(seed, "bench-star");
    int batch = 0;
    for (int top = n - 1; top > 0; top >>= 1) ++batch;
    const BitString x = BitString::random(
        static_cast<std::size_t>(n - 2) * static_cast<std::size_t>(batch), rng);
    const auto t0 = clock::now();
    const auto inst = build_apsp_star(n, x);
    const bool ok = decode_star_row(inst, apsp_exact(inst.graph)) == x;
    const auto t1 = clock::now();
    BenchRow row;
    row.name = "star-decode n=" + std::to_string(n);
    row.n = n;
    row.bits = static_cast<std::int64_t>(x.size());
    row.ok = ok;
    row.millis = std::chrono::duration<double, std::milli>(t1 - t0).count();
    rows.push_back(row);
  }
  return rows;
}

}  // namespace congestlab
