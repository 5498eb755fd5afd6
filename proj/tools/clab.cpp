// Command-line front end over the congestlab C API.
//
// Exit codes: 0 = pass, 1 = usage or input error, 2 = counterexample or
// mismatch found, 3 = internal invariant violation.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "congestlab/congestlab.h"
#include "json.hpp"

namespace {

using nlohmann::json;

int fail_status(clab_status st) {
  std::cerr << "error: " << clab_last_error() << "\n";
  switch (st) {
    case CLAB_INVALID_ARGUMENT:
    case CLAB_PARSE_ERROR:
      return 1;
    default:
      return 3;
  }
}

struct StringOut {
  char* s = nullptr;
  ~StringOut() { clab_string_free(s); }
};

struct InstanceOut {
  clab_instance* inst = nullptr;
  ~InstanceOut() { clab_instance_free(inst); }
};

struct BuildFlags {
  std::string in_file;
  std::string kind;
  int k = 0;
  int c = 0;
  int n = 0;
  std::int64_t w_max = 0;
  std::string x_hex, y_hex;
  int x_bits = -1, y_bits = -1;
  std::vector<std::int64_t> wx, wy;
  bool random = false;
  bool unequal = false;
  std::uint64_t seed = 0;
};

void add_build_flags(CLI::App* cmd, BuildFlags& f) {
  cmd->add_option("--in", f.in_file, "instance JSON file (skips building)");
  cmd->add_option("--kind", f.kind,
                  "family: mvc, col3, colc, colapprox, cycle8, ident, star");
  cmd->add_option("--k", f.k, "base set / clique size");
  cmd->add_option("--c", f.c, "color or copy count");
  cmd->add_option("--n", f.n, "node count (star family)");
  cmd->add_option("--w-max", f.w_max, "weight bound");
  cmd->add_option("--x", f.x_hex, "x input as hex");
  cmd->add_option("--x-bits", f.x_bits, "x bit length");
  cmd->add_option("--y", f.y_hex, "y input as hex");
  cmd->add_option("--y-bits", f.y_bits, "y bit length");
  cmd->add_option("--wx", f.wx, "pair weights of clique A (ident)")->delimiter(',');
  cmd->add_option("--wy", f.wy, "pair weights of clique B (ident)")->delimiter(',');
  cmd->add_flag("--random", f.random, "draw inputs from --seed");
  cmd->add_flag("--unequal", f.unequal, "random ident weights differ");
  cmd->add_option("--seed", f.seed, "random seed");
}

json spec_from_flags(const BuildFlags& f) {
  json spec;
  spec["kind"] = f.kind;
  if (f.k > 0) spec["k"] = f.k;
  if (f.c > 0) spec["c"] = f.c;
  if (f.n > 0) spec["n"] = f.n;
  if (f.w_max > 0) spec["w_max"] = f.w_max;
  if (f.random) {
    spec["random"] = true;
    spec["seed"] = f.seed;
    if (f.unequal) spec["equal"] = false;
  } else {
    if (!f.x_hex.empty()) {
      spec["x"] = {{"hex", f.x_hex}};
      if (f.x_bits >= 0) spec["x"]["bits"] = f.x_bits;
    }
    if (!f.y_hex.empty()) {
      spec["y"] = {{"hex", f.y_hex}};
      if (f.y_bits >= 0) spec["y"]["bits"] = f.y_bits;
    }
    if (!f.wx.empty()) spec["wx"] = f.wx;
    if (!f.wy.empty()) spec["wy"] = f.wy;
  }
  return spec;
}

int get_instance(const BuildFlags& f, InstanceOut& out) {
  if (!f.in_file.empty()) {
    std::ifstream in(f.in_file);
    if (!in) {
      std::cerr << "error: cannot open " << f.in_file << "\n";
      return 1;
    }
    std::ostringstream text;
    text << in.rdbuf();
    if (auto st = clab_instance_from_json(text.str().c_str(), &out.inst); st != CLAB_OK)
      return fail_status(st);
    return 0;
  }
  if (f.kind.empty()) {
    std::cerr << "error: either --in or --kind is required\n";
    return 1;
  }
  const std::string spec = spec_from_flags(f).dump();
  if (auto st = clab_build(spec.c_str(), &out.inst); st != CLAB_OK)
    return fail_status(st);
  return 0;
}

int write_out(const std::string& text, const std::string& out_file) {
  if (out_file.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << "\n";
    return 0;
  }
  std::ofstream out(out_file);
  if (!out) {
    std::cerr << "error: cannot write " << out_file << "\n";
    return 1;
  }
  out << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"congestlab: gadget graphs, exact oracles, bandwidth-limited "
               "simulation and split-graph distance protocols"};
  app.require_subcommand(1);

  BuildFlags gen_f, verify_f, sim_f, proto_f;
  std::string out_file, gen_format = "json";
  std::string algo = "reduction";
  int bandwidth = 0, max_rounds = 0;
  std::uint64_t run_seed = 0;
  int bb_players = 2, bb_extra = 8;
  std::int64_t proto_w_max = 0;

  auto* gen = app.add_subcommand("gen", "build an instance and print it");
  add_build_flags(gen, gen_f);
  gen->add_option("--format", gen_format, "json or dot");
  gen->add_option("--out", out_file, "output file (default stdout)");

  auto* verify = app.add_subcommand(
      "verify", "compare the communication value with the exact graph property");
  add_build_flags(verify, verify_f);

  auto* sim = app.add_subcommand(
      "simulate", "run fingerprint detection on an identical-subgraphs instance");
  add_build_flags(sim, sim_f);
  sim->add_option("--bandwidth", bandwidth, "bits per edge per round (0 = default)");
  sim->add_option("--max-rounds", max_rounds, "round budget");
  sim->add_option("--run-seed", run_seed, "seed of the run itself");

  auto* proto = app.add_subcommand("protocol", "run a split-graph protocol");
  add_build_flags(proto, proto_f);
  proto->add_option("--algo", algo, "reduction, apsp2 or blackboard");
  proto->add_option("--bandwidth", bandwidth, "bits per edge per round (0 = default)");
  proto->add_option("--max-rounds", max_rounds, "round budget");
  proto->add_option("--run-seed", run_seed, "seed of the run itself");
  proto->add_option("--players", bb_players, "player count (blackboard)");
  proto->add_option("--extra-edges", bb_extra, "extra random edges (blackboard)");
  proto->add_option("--protocol-w-max", proto_w_max, "declared weight bound");

  std::string lemma_kind;
  int lemma_k = 0, lemma_c = 0, lemma_n = 0, lemma_samples = 0, lemma_max_ones = -1;
  bool lemma_exhaustive = false;
  std::uint64_t lemma_seed = 0;
  auto* lemma = app.add_subcommand("check-lemma", "sweep input pairs for one family");
  lemma->add_option("--kind", lemma_kind, "family")->required();
  lemma->add_option("--k", lemma_k, "base set / clique size");
  lemma->add_option("--c", lemma_c, "color or copy count");
  lemma->add_option("--n", lemma_n, "node count (star)");
  lemma->add_option("--samples", lemma_samples, "sampled pair count");
  lemma->add_flag("--exhaustive", lemma_exhaustive, "enumerate every valid pair");
  lemma->add_option("--max-ones", lemma_max_ones, "cap on ones per input side");
  lemma->add_option("--seed", lemma_seed, "sampling seed");
  lemma->add_option("--out", out_file, "output file (default stdout)");

  std::uint64_t bench_seed = 0;
  auto* bench = app.add_subcommand("bench", "run the built-in micro-benchmarks");
  bench->add_option("--seed", bench_seed, "seed");
  bench->add_option("--out", out_file, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  if (gen->parsed()) {
    InstanceOut inst;
    if (int rc = get_instance(gen_f, inst); rc != 0) return rc;
    StringOut text;
    const clab_status st = gen_format == "dot"
                               ? clab_instance_to_dot(inst.inst, &text.s)
                               : clab_instance_to_json(inst.inst, &text.s);
    if (st != CLAB_OK) return fail_status(st);
    return write_out(text.s, out_file);
  }

  if (verify->parsed()) {
    InstanceOut inst;
    if (int rc = get_instance(verify_f, inst); rc != 0) return rc;
    int32_t f = 0, property = 0;
    if (auto st = clab_verify(inst.inst, &f, &property); st != CLAB_OK)
      return fail_status(st);
    std::cout << "f_value: " << f << "\nproperty: " << property << "\nmatch: "
              << (f == property ? "yes" : "NO") << "\n";
    return f == property ? 0 : 2;
  }

  if (sim->parsed()) {
    InstanceOut inst;
    if (int rc = get_instance(sim_f, inst); rc != 0) return rc;
    int32_t verdict = 0, rounds = 0;
    int64_t bits = 0;
    uint64_t prime = 0;
    if (auto st = clab_simulate_ident(inst.inst, run_seed, bandwidth, max_rounds,
                                      &verdict, &rounds, &bits, &prime);
        st != CLAB_OK)
      return fail_status(st);
    int32_t f = 0;
    if (auto st = clab_verify(inst.inst, &f, nullptr); st != CLAB_OK)
      return fail_status(st);
    std::cout << "verdict: " << verdict << "\ntruth: " << f << "\nrounds: " << rounds
              << "\ntotal_bits: " << bits << "\nprime: " << prime << "\n";
    return verdict == f ? 0 : 2;
  }

  if (proto->parsed()) {
    StringOut text;
    clab_status st = CLAB_OK;
    if (algo == "blackboard") {
      st = clab_apsp_blackboard_random(proto_f.n > 0 ? proto_f.n : 24, bb_players,
                                       bb_extra, proto_w_max > 0 ? proto_w_max : 8,
                                       proto_f.seed, &text.s);
    } else {
      InstanceOut inst;
      if (int rc = get_instance(proto_f, inst); rc != 0) return rc;
      st = algo == "apsp2" ? clab_apsp_two_party(inst.inst, proto_w_max, &text.s)
                           : clab_reduction_report(inst.inst, run_seed, bandwidth,
                                                   max_rounds, &text.s);
    }
    if (st != CLAB_OK) return fail_status(st);
    if (int rc = write_out(text.s, out_file); rc != 0) return rc;
    const json rep = json::parse(text.s);
    if (rep.contains("exact") && !rep.at("exact").get<bool>()) return 2;
    if (rep.contains("protocol_matches_f") &&
        !(rep.at("protocol_matches_f").get<bool>() &&
          rep.at("oracle_matches_f").get<bool>()))
      return 2;
    return 0;
  }

  if (lemma->parsed()) {
    json spec;
    spec["kind"] = lemma_kind;
    if (lemma_k > 0) spec["k"] = lemma_k;
    if (lemma_c > 0) spec["c"] = lemma_c;
    if (lemma_n > 0) spec["n"] = lemma_n;
    if (lemma_exhaustive) spec["exhaustive"] = true;
    if (lemma_samples > 0) spec["samples"] = lemma_samples;
    if (lemma_max_ones >= 0) spec["max_ones_per_side"] = lemma_max_ones;
    spec["seed"] = lemma_seed;
    StringOut text;
    if (auto st = clab_check_lemma(spec.dump().c_str(), &text.s); st != CLAB_OK)
      return fail_status(st);
    if (int rc = write_out(text.s, out_file); rc != 0) return rc;
    return json::parse(text.s).at("passed").get<bool>() ? 0 : 2;
  }

  if (bench->parsed()) {
    StringOut text;
    if (auto st = clab_bench(bench_seed, &text.s); st != CLAB_OK) return fail_status(st);
    if (int rc = write_out(text.s, out_file); rc != 0) return rc;
    for (const auto& row : json::parse(text.s))
      if (!row.at("ok").get<bool>()) return 2;
    return 0;
  }

  return 0;
}
