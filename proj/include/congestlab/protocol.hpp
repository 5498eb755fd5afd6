#pragma once
// Party-level protocols: cut transcripts over the round-synchronous engine,
// the distance-exchange protocols for split graphs, and reduction reports
// tying input strings, graph properties and distributed verdicts together.

#include <cstdint>
#include <vector>

#include "congestlab/bits.hpp"
#include "congestlab/gadgets.hpp"
#include "congestlab/graph.hpp"
#include "congestlab/sim.hpp"

namespace congestlab {

enum class Direction { AtoB, BtoA };

struct TranscriptRecord {
  int round = 0;
  Direction dir = Direction::AtoB;
  NodeId from = -1;  // -1 for a bundled party message
  NodeId to = -1;
  BitVec payload;
};

struct Transcript {
  std::vector<TranscriptRecord> records;

  std::int64_t total_bits() const;
  std::int64_t bits(Direction d) const;
};

struct TwoPartyResult {
  SimResult sim;
  Transcript transcript;  // every message that crossed the A|B cut
};

// Lockstep-identical to run(): same outputs, same trace. Additionally logs
// each cut-crossing message with its payload.
TwoPartyResult simulate_two_party(const Graph& g, const Partition& part,
                                  const ProgramFactory& factory, const SimConfig& cfg);

// Width of one distance field: every finite value up to n * w_max fits and
// the all-ones word is reserved as the infinity codeword.
int distance_field_bits(int n, std::int64_t w_max);

struct ApspTwoPartyResult {
  DistanceMatrix distances;     // exact all-pairs distances of the input
  Transcript transcript;        // one distance-row bundle each way
  int field_bits = 0;
  std::int64_t bits_bound = 0;  // |V(C)| * n * field_bits
};

// One-exchange protocol on a two-party split: each side sends the distance
// rows of its cut endpoints within its own induced subgraph; each side then
// answers every source on its side exactly via a shortcut graph.
ApspTwoPartyResult apsp_two_party(const Graph& g, const Partition& part,
                                  std::int64_t w_max);

struct ApspBlackboardResult {
  DistanceMatrix distances;
  std::int64_t cut_post_bits = 0;
  std::vector<std::int64_t> row_post_bits;  // per player
  int field_bits = 0;
  std::int64_t total_bits() const;
  std::int64_t bits_bound = 0;  // |C|*(2*ceil(log2 n)+F) + |V(C)|*n*F
};

// Shared-blackboard generalization: the cut edges are posted once, then each
// player posts the induced-distance rows of its cut endpoints. block_of maps
// node -> player in 0..t-1; every player must own at least one node.
ApspBlackboardResult apsp_blackboard(const Graph& g, const std::vector<int>& block_of,
                                     std::int64_t w_max);

// The communication value an instance encodes: intersection (not DISJ) for
// the cover / coloring / cycle families, equality of the weight encodings
// for the identical-subgraphs family.
bool comm_function_value(const LowerBoundInstance& inst);
// The matching graph property, decided by the exact oracles.
bool graph_property_holds(const LowerBoundInstance& inst);

struct ReductionReport {
  Kind kind = Kind::Mvc;
  bool f_value = false;          // communication function on the inputs
  bool graph_property = false;   // exact oracle on the built graph
  bool protocol_verdict = false; // distributed program's output
  bool oracle_matches_f = false;
  bool protocol_matches_f = false;
  int rounds = 0;
  int cut_edge_count = 0;
  int bandwidth_bits = 0;
  std::int64_t cut_bits = 0;        // transcript payload bits
  std::int64_t cut_bits_bound = 0;  // rounds * |C| * 2 * bandwidth
};

// Runs the three-way check on one instance: the communication function, the
// exact oracle, and a distributed decision (fingerprint detection for the
// identical family, gather-and-decide for the rest), with cut-bit accounting
// against the generic bound. Star instances are not decision reductions.
ReductionReport reduction_report(const LowerBoundInstance& inst, const SimConfig& cfg);

}  // namespace congestlab
