#include "congestlab/congestlab.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "congestlab/comm.hpp"
#include "congestlab/drivers.hpp"
#include "congestlab/gadgets.hpp"
#include "congestlab/json_io.hpp"
#include "congestlab/oracles.hpp"
#include "congestlab/protocol.hpp"
#include "congestlab/sim.hpp"
#include "json.hpp"

using nlohmann::json;

struct clab_instance {
  congestlab::LowerBoundInstance inst;
};

namespace {

thread_local std::string g_last_error;

char* copy_out(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename Fn>
clab_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    fn();
    return CLAB_OK;
  } catch (const congestlab::MaxRoundsExceeded& e) {
    g_last_error = e.what();
    return CLAB_LIMIT_EXCEEDED;
  } catch (const congestlab::BandwidthViolation& e) {
    g_last_error = e.what();
    return CLAB_BANDWIDTH_VIOLATION;
  } catch (const json::exception& e) {
    g_last_error = e.what();
    return CLAB_PARSE_ERROR;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return CLAB_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CLAB_INTERNAL_ERROR;
  } catch (...) {
    g_last_error = "unknown error";
    return CLAB_INTERNAL_ERROR;
  }
}

clab_status require_args(bool ok) {
  if (!ok) {
    g_last_error = "null argument";
    return CLAB_INVALID_ARGUMENT;
  }
  return CLAB_OK;
}

// "bits" may be omitted; the caller supplies the family's natural width.
congestlab::BitString bitstring_arg(const json& j, std::size_t default_bits) {
  const auto bits = j.value("bits", std::int64_t{-1});
  return congestlab::BitString::from_hex(
      j.at("hex").get<std::string>(),
      bits < 0 ? default_bits : static_cast<std::size_t>(bits));
}

congestlab::LowerBoundInstance build_from_spec(const json& j) {
  using namespace congestlab;
  const Kind kind = kind_from_name(j.at("kind").get<std::string>());
  const bool random = j.value("random", false);
  const std::uint64_t seed = j.value("seed", std::uint64_t{0});
  auto rng = substream(seed, "gen");

  switch (kind) {
    case Kind::Mvc:
    case Kind::Coloring3:
    case Kind::ColoringC:
    case Kind::ColoringApprox:
    case Kind::Cycle8: {
      InstanceParams p;
      p.k = j.at("k").get<int>();
      if (kind == Kind::ColoringC || kind == Kind::ColoringApprox)
        p.c = j.at("c").get<int>();
      BitString x, y;
      if (random) {
        const int nbits = p.k * p.k;
        do {
          x = BitString::random(static_cast<std::size_t>(nbits), rng);
          y = BitString::random(static_cast<std::size_t>(nbits), rng);
        } while (!validate_disj_input(x, y) ||
                 (kind == Kind::Cycle8 && !x.any() && !y.any()));
      } else {
        const auto nbits = static_cast<std::size_t>(p.k) * static_cast<std::size_t>(p.k);
        x = bitstring_arg(j.at("x"), nbits);
        y = bitstring_arg(j.at("y"), nbits);
      }
      switch (kind) {
        case Kind::Mvc:
          return build_mvc(p.k, x, y);
        case Kind::Coloring3:
          return build_coloring3(p.k, x, y);
        case Kind::ColoringC:
          return extend_coloring_c(build_coloring3(p.k, x, y), p.c);
        case Kind::ColoringApprox:
          return build_approx_coloring(p.k, p.c, x, y);
        default:
          return build_weighted_cycle(p.k, x, y);
      }
    }
    case Kind::Identical: {
      const int k = j.at("k").get<int>();
      std::int64_t w = j.value("w_max", std::int64_t{0});
      if (w == 0) w = static_cast<std::int64_t>(2 * k) * (2 * k);
      std::vector<std::int64_t> wx, wy;
      if (random) {
        const int pairs = k * (k - 1) / 2;
        std::uniform_int_distribution<std::int64_t> wdist(0, w - 1);
        wx.resize(static_cast<std::size_t>(pairs));
        for (auto& v : wx) v = wdist(rng);
        wy = wx;
        if (!j.value("equal", true) && w > 1) {
          auto& cell = wy[static_cast<std::size_t>(
              std::uniform_int_distribution<int>(0, pairs - 1)(rng))];
          cell = (cell + 1 + std::uniform_int_distribution<std::int64_t>(0, w - 2)(rng)) % w;
        }
      } else {
        wx = j.at("wx").get<std::vector<std::int64_t>>();
        wy = j.at("wy").get<std::vector<std::int64_t>>();
      }
      return build_identical_subgraphs(k, wx, wy, w);
    }
    case Kind::ApspStar: {
      const int n = j.at("n").get<int>();
      int batch = 0;
      for (int top = n - 1; top > 0; top >>= 1) ++batch;
      const auto nbits =
          static_cast<std::size_t>(n > 2 ? n - 2 : 0) * static_cast<std::size_t>(batch);
      BitString x;
      if (random) {
        x = BitString::random(nbits, rng);
      } else {
        x = bitstring_arg(j.at("x"), nbits);
      }
      return build_apsp_star(n, x);
    }
  }
  throw std::invalid_argument("unknown kind");
}

json sweep_to_json(const congestlab::SweepResult& res) {
  json out;
  out["kind"] = congestlab::kind_name(res.kind);
  out["pairs_checked"] = res.pairs_checked;
  out["pairs_skipped"] = res.pairs_skipped;
  out["passed"] = res.passed();
  json fails = json::array();
  for (const auto& f : res.failures)
    fails.push_back({{"x", f.x_hex},
                     {"y", f.y_hex},
                     {"f", f.f},
                     {"property", f.property},
                     {"witness_ok", f.witness_ok}});
  out["failures"] = std::move(fails);
  return out;
}

}  // namespace

extern "C" {

const char* clab_version(void) { return "1.0.0"; }

const char* clab_last_error(void) { return g_last_error.c_str(); }

void clab_string_free(char* s) { std::free(s); }

void clab_instance_free(clab_instance* inst) { delete inst; }

clab_status clab_build(const char* spec_json, clab_instance** out) {
  if (auto st = require_args(spec_json != nullptr && out != nullptr); st != CLAB_OK)
    return st;
  return guarded([&] {
    auto holder = new clab_instance{build_from_spec(json::parse(spec_json))};
    *out = holder;
  });
}

clab_status clab_instance_from_json(const char* text, clab_instance** out) {
  if (auto st = require_args(text != nullptr && out != nullptr); st != CLAB_OK) return st;
  return guarded([&] { *out = new clab_instance{congestlab::instance_from_json(text)}; });
}

clab_status clab_instance_to_json(const clab_instance* inst, char** out) {
  if (auto st = require_args(inst != nullptr && out != nullptr); st != CLAB_OK) return st;
  return guarded([&] { *out = copy_out(congestlab::instance_to_json(inst->inst)); });
}

clab_status clab_instance_to_dot(const clab_instance* inst, char** out) {
  if (auto st = require_args(inst != nullptr && out != nullptr); st != CLAB_OK) return st;
  return guarded([&] {
    *out = copy_out(congestlab::graph_to_dot(inst->inst.graph, &inst->inst.partition));
  });
}

clab_status clab_instance_size(const clab_instance* inst, int32_t* nodes, int32_t* edges) {
  if (auto st = require_args(inst != nullptr); st != CLAB_OK) return st;
  return guarded([&] {
    if (nodes != nullptr) *nodes = inst->inst.graph.n();
    if (edges != nullptr) *edges = inst->inst.graph.m();
  });
}

clab_status clab_verify(const clab_instance* inst, int32_t* f_value, int32_t* property) {
  if (auto st = require_args(inst != nullptr); st != CLAB_OK) return st;
  return guarded([&] {
    const bool f = congestlab::comm_function_value(inst->inst);
    const bool p = congestlab::graph_property_holds(inst->inst);
    if (f_value != nullptr) *f_value = f ? 1 : 0;
    if (property != nullptr) *property = p ? 1 : 0;
  });
}

clab_status clab_simulate_ident(const clab_instance* inst, uint64_t seed,
                                int32_t bandwidth_bits, int32_t max_rounds,
                                int32_t* verdict, int32_t* rounds, int64_t* total_bits,
                                uint64_t* prime) {
  if (auto st = require_args(inst != nullptr); st != CLAB_OK) return st;
  return guarded([&] {
    congestlab::SimConfig cfg;
    cfg.bandwidth_bits = bandwidth_bits;
    if (max_rounds > 0) cfg.max_rounds = max_rounds;
    cfg.seed = seed;
    const auto res = congestlab::identical_subgraphs_detect(inst->inst, cfg);
    if (verdict != nullptr) *verdict = static_cast<int32_t>(res.verdicts.front());
    if (rounds != nullptr) *rounds = res.trace.rounds_used;
    if (total_bits != nullptr) *total_bits = res.trace.total_bits();
    if (prime != nullptr) *prime = res.prime;
  });
}

clab_status clab_reduction_report(const clab_instance* inst, uint64_t seed,
                                  int32_t bandwidth_bits, int32_t max_rounds,
                                  char** report_json) {
  if (auto st = require_args(inst != nullptr && report_json != nullptr); st != CLAB_OK)
    return st;
  return guarded([&] {
    congestlab::SimConfig cfg;
    cfg.bandwidth_bits = bandwidth_bits;
    if (max_rounds > 0) cfg.max_rounds = max_rounds;
    cfg.seed = seed;
    const auto rep = congestlab::reduction_report(inst->inst, cfg);
    json j;
    j["kind"] = congestlab::kind_name(rep.kind);
    j["f_value"] = rep.f_value;
    j["graph_property"] = rep.graph_property;
    j["protocol_verdict"] = rep.protocol_verdict;
    j["oracle_matches_f"] = rep.oracle_matches_f;
    j["protocol_matches_f"] = rep.protocol_matches_f;
    j["rounds"] = rep.rounds;
    j["cut_edges"] = rep.cut_edge_count;
    j["bandwidth_bits"] = rep.bandwidth_bits;
    j["cut_bits"] = rep.cut_bits;
    j["cut_bits_bound"] = rep.cut_bits_bound;
    *report_json = copy_out(j.dump(2));
  });
}

clab_status clab_apsp_two_party(const clab_instance* inst, int64_t w_max,
                                char** report_json) {
  if (auto st = require_args(inst != nullptr && report_json != nullptr); st != CLAB_OK)
    return st;
  return guarded([&] {
    const auto& lb = inst->inst;
    const std::int64_t w = w_max > 0 ? w_max : lb.graph.max_weight();
    const auto res = congestlab::apsp_two_party(lb.graph, lb.partition, w);
    json j;
    j["field_bits"] = res.field_bits;
    j["bits_b_to_a"] = res.transcript.bits(congestlab::Direction::BtoA);
    j["bits_a_to_b"] = res.transcript.bits(congestlab::Direction::AtoB);
    j["bits_total"] = res.transcript.total_bits();
    j["bits_bound"] = res.bits_bound;
    j["exact"] = res.distances == congestlab::apsp_exact(lb.graph);
    *report_json = copy_out(j.dump(2));
  });
}

clab_status clab_apsp_blackboard_random(int32_t n, int32_t t, int32_t extra_edges,
                                        int64_t w_max, uint64_t seed,
                                        char** report_json) {
  if (auto st = require_args(report_json != nullptr); st != CLAB_OK) return st;
  return guarded([&] {
    auto rng = congestlab::substream(seed, "blackboard");
    const auto g = congestlab::random_connected_graph(n, extra_edges, w_max, rng);
    const auto blocks = congestlab::random_blocks(n, t, rng);
    const auto res = congestlab::apsp_blackboard(g, blocks, w_max);
    json j;
    j["players"] = t;
    j["field_bits"] = res.field_bits;
    j["cut_post_bits"] = res.cut_post_bits;
    j["row_post_bits"] = res.row_post_bits;
    j["bits_total"] = res.total_bits();
    j["bits_bound"] = res.bits_bound;
    j["exact"] = res.distances == congestlab::apsp_exact(g);
    *report_json = copy_out(j.dump(2));
  });
}

clab_status clab_check_lemma(const char* spec_json, char** report_json) {
  if (auto st = require_args(spec_json != nullptr && report_json != nullptr);
      st != CLAB_OK)
    return st;
  return guarded([&] {
    const json spec = json::parse(spec_json);
    const auto kind = congestlab::kind_from_name(spec.at("kind").get<std::string>());
    congestlab::InstanceParams params;
    params.k = spec.value("k", 0);
    params.c = spec.value("c", 0);
    params.n = spec.value("n", 0);
    params.w_max = spec.value("w_max", std::int64_t{0});
    congestlab::SweepOptions opt;
    opt.exhaustive = spec.value("exhaustive", !spec.contains("samples"));
    opt.samples = spec.value("samples", 0);
    opt.max_ones_per_side = spec.value("max_ones_per_side", -1);
    opt.check_witnesses = spec.value("check_witnesses", true);
    opt.seed = spec.value("seed", std::uint64_t{0});
    const auto res = congestlab::check_lemma(kind, params, opt);
    *report_json = copy_out(sweep_to_json(res).dump(2));
  });
}

clab_status clab_bench(uint64_t seed, char** report_json) {
  if (auto st = require_args(report_json != nullptr); st != CLAB_OK) return st;
  return guarded([&] {
    json rows = json::array();
    for (const auto& r : congestlab::run_bench(seed)) {
      json j;
      j["name"] = r.name;
      j["n"] = r.n;
      if (r.rounds >= 0) j["rounds"] = r.rounds;
      if (r.bits >= 0) j["bits"] = r.bits;
      if (r.bound >= 0) j["bound"] = r.bound;
      j["ok"] = r.ok;
      j["millis"] = r.millis;
      rows.push_back(std::move(j));
    }
    *report_json = copy_out(rows.dump(2));
  });
}

}  // extern "C"
