#pragma once
// Round-synchronous message-passing simulator with per-edge, per-direction
// bandwidth enforcement, plus the node programs that run on it. Lockstep
// semantics: a message emitted in round t is visible to its receiver in
// round t+1 and never earlier.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "congestlab/bits.hpp"
#include "congestlab/gadgets.hpp"
#include "congestlab/graph.hpp"

namespace congestlab {

// Default per-message budget: kBandwidthLogFactor * ceil(log2 n) bits.
constexpr int kBandwidthLogFactor = 4;
int default_bandwidth_bits(int n);

// Recorded round bounds of the fingerprint detection program, asserted by the
// acceptance suite: rounds_used <= kDetectRoundFactor * diameter +
// kDetectRoundOffset on every test instance.
constexpr int kDetectRoundFactor = 6;
constexpr int kDetectRoundOffset = 16;

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt);

struct SimConfig {
  int bandwidth_bits = 0;  // 0 selects default_bandwidth_bits(n)
  int max_rounds = 100000;
  std::uint64_t seed = 0;
};

struct LocalView {
  NodeId id = 0;
  int n = 0;
  int bandwidth_bits = 0;                  // model parameter, common knowledge
  std::vector<NodeId> neighbors;           // sorted ascending
  std::vector<std::int64_t> edge_weights;  // parallel to neighbors
};

using Inbox = std::vector<std::optional<BitVec>>;  // one slot per neighbor

class Outbox {
 public:
  explicit Outbox(std::size_t neighbor_count) : msgs_(neighbor_count) {}

  // At most one message per neighbor per round.
  void send(int neighbor_index, BitVec payload);
  const Inbox& messages() const { return msgs_; }

 private:
  Inbox msgs_;
};

// Per-node behavior. A node sees only its own id, its neighbor list with
// incident edge weights, the global node count, its private randomness and
// its received messages.
class NodeProgram {
 public:
  virtual ~NodeProgram() = default;
  virtual void init(const LocalView& view, std::mt19937_64& rng) = 0;
  virtual void round(int round_no, const Inbox& in, Outbox& out) = 0;
  virtual bool halted() const = 0;
  virtual std::int64_t output() const = 0;
};

using ProgramFactory = std::function<std::unique_ptr<NodeProgram>(NodeId)>;

struct TraceRecord {
  int round = 0;
  NodeId from = 0;
  NodeId to = 0;
  int bits = 0;

  bool operator==(const TraceRecord&) const = default;
};

struct SimTrace {
  std::vector<TraceRecord> records;
  int rounds_used = 0;      // last round that carried any message
  int rounds_executed = 0;  // rounds run before every node had halted

  std::int64_t total_bits() const;
  int max_message_bits() const;
};

struct SimResult {
  std::vector<std::int64_t> outputs;
  SimTrace trace;
  std::vector<std::unique_ptr<NodeProgram>> agents;  // final per-node states
};

class BandwidthViolation : public std::runtime_error {
  using std::runtime_error::runtime_error;
};
class MaxRoundsExceeded : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

SimResult run(const Graph& g, const ProgramFactory& factory, const SimConfig& cfg);

namespace detail {
// Internal: run() with a tap on every delivered message. The observer sees
// (round, from, to, payload) in delivery order and must not mutate anything.
using MessageObserver =
    std::function<void(int, NodeId, NodeId, const BitVec&)>;
SimResult run_observed(const Graph& g, const ProgramFactory& factory, const SimConfig& cfg,
                       const MessageObserver& observer);
}  // namespace detail

// ---- node programs ---------------------------------------------------------

// Token flood from `root`; each output is the round the token arrived (0 at
// the root). rounds_used equals the eccentricity of the root.
ProgramFactory flood_program(NodeId root);

// Test helper: sends `bits` bits on every incident edge each round, for
// `rounds` rounds. Probes bandwidth enforcement.
ProgramFactory blast_program(int bits, int rounds);

// Probe: `sender` emits one message in round 1; every node outputs the round
// its inbox first held a message (0 if never; everyone halts by round 3).
ProgramFactory arrival_probe_program(NodeId sender);

// Builds a BFS tree at `root` (parent = smallest-id neighbor at minimal
// depth), aggregates sum(summands) mod `modulus` up the tree and floods the
// total back down. Every node outputs the total.
ProgramFactory bfs_convergecast_program(NodeId root, std::vector<std::int64_t> summands,
                                        std::uint64_t modulus);

// Whole-graph gather: edge records stream up the BFS tree, the root evaluates
// `predicate` on the reconstructed graph and floods the 1-bit verdict.
ProgramFactory collect_decide_program(NodeId root, std::int64_t w_max,
                                      std::function<bool(const Graph&)> predicate);

// Fingerprint equality detection for an identical-subgraphs instance: node 0
// samples one of the first K^2 primes, broadcasts it over the BFS tree, and
// compares the two clique fingerprints mod p via two convergecasts.
ProgramFactory ident_detect_program(int k, std::int64_t w_bound);

// Root-side observables of the detection run, for trace-level tests.
class DetectRootInfo {
 public:
  virtual ~DetectRootInfo() = default;
  virtual std::uint64_t sampled_prime() const = 0;
  virtual std::uint64_t stream_total(int stream) const = 0;
};

struct DetectResult {
  std::vector<std::int64_t> verdicts;  // 0/1 per node
  SimTrace trace;
  std::uint64_t prime = 0;
  std::uint64_t x_fingerprint = 0;  // mod prime
  std::uint64_t y_fingerprint = 0;  // mod prime
  int fingerprint_bits = 0;         // K
};

DetectResult identical_subgraphs_detect(const LowerBoundInstance& inst,
                                        const SimConfig& cfg);

// K and the prime-pool size the detection uses for a given clique size and
// weight bound.
int ident_fingerprint_bits(int k, std::int64_t w_bound);

}  // namespace congestlab
