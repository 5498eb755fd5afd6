#include "congestlab/sim.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <memory>
#include <sstream>
#include <utility>

#include "congestlab/numtheory.hpp"

namespace congestlab {

namespace {

int bit_length_u64(std::uint64_t v) {
  return v == 0 ? 1 : 64 - std::countl_zero(v);
}

std::uint64_t low_mask(int width) {
  return width >= 64 ? ~0ULL : (1ULL << width) - 1;
}

BitVec subrange(const BitVec& v, std::size_t from, std::size_t len) {
  BitVec out;
  for (std::size_t i = 0; i < len; ++i) out.append_bit(v.get(from + i));
  return out;
}

std::uint64_t head_value(const BitVec& v, int width) {
  BitReader r(v);
  return r.read_bits(width);
}

// Wire tags, 3 bits each. The tree programs share TOKEN/CLAIM/RESULT; the
// middle tags differ per program.
constexpr int kTagBits = 3;
constexpr int kTagToken = 0;
constexpr int kTagClaim = 1;
constexpr int kTagBcast = 2;  // modulus broadcast (aggregation program)
constexpr int kTagData = 2;   // edge stream (collect program)
constexpr int kTagSum0 = 3;
constexpr int kTagSum1 = 4;
constexpr int kTagResult = 5;

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
  // splitmix64 finalizer over a salted seed
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

int default_bandwidth_bits(int n) {
  if (n < 2) throw std::invalid_argument("default_bandwidth_bits: need n >= 2");
  if (n > 55000) throw std::invalid_argument("default_bandwidth_bits: n too large");
  std::uint64_t p = static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n);
  p *= p;
  // smallest B with 2^B >= n^4, i.e. ceil(kBandwidthLogFactor * log2 n)
  static_assert(kBandwidthLogFactor == 4);
  return bit_length_u64(p - 1);
}

void Outbox::send(int neighbor_index, BitVec payload) {
  if (neighbor_index < 0 || static_cast<std::size_t>(neighbor_index) >= msgs_.size())
    throw std::logic_error("Outbox::send: neighbor index out of range");
  if (msgs_[static_cast<std::size_t>(neighbor_index)].has_value())
    throw std::logic_error("Outbox::send: one message per edge per round");
  msgs_[static_cast<std::size_t>(neighbor_index)] = std::move(payload);
}

std::int64_t SimTrace::total_bits() const {
  std::int64_t s = 0;
  for (const auto& r : records) s += r.bits;
  return s;
}

int SimTrace::max_message_bits() const {
  int m = 0;
  for (const auto& r : records) m = std::max(m, r.bits);
  return m;
}

SimResult run(const Graph& g, const ProgramFactory& factory, const SimConfig& cfg) {
  return detail::run_observed(g, factory, cfg, nullptr);
}

namespace detail {

SimResult run_observed(const Graph& g, const ProgramFactory& factory, const SimConfig& cfg,
                       const MessageObserver& observer) {
  const int n = g.n();
  if (n <= 0) throw std::invalid_argument("run: empty graph");
  const int bw = cfg.bandwidth_bits > 0 ? cfg.bandwidth_bits : default_bandwidth_bits(n);

  std::vector<LocalView> views(static_cast<std::size_t>(n));
  for (NodeId v = 0; v < n; ++v) {
    LocalView& lv = views[static_cast<std::size_t>(v)];
    lv.id = v;
    lv.n = n;
    lv.bandwidth_bits = bw;
    for (auto [nb, w] : g.neighbors(v)) {
      lv.neighbors.push_back(nb);
      lv.edge_weights.push_back(w);
    }
  }

  // back[v][slot]: index of v in the neighbor list of views[v].neighbors[slot]
  std::vector<std::vector<int>> back(static_cast<std::size_t>(n));
  for (NodeId v = 0; v < n; ++v) {
    const auto& nbs = views[static_cast<std::size_t>(v)].neighbors;
    back[static_cast<std::size_t>(v)].resize(nbs.size());
    for (std::size_t s = 0; s < nbs.size(); ++s) {
      const auto& other = views[static_cast<std::size_t>(nbs[s])].neighbors;
      auto it = std::lower_bound(other.begin(), other.end(), v);
      back[static_cast<std::size_t>(v)][s] = static_cast<int>(it - other.begin());
    }
  }

  SimResult res;
  res.agents.reserve(static_cast<std::size_t>(n));
  std::vector<std::mt19937_64> rngs;
  rngs.reserve(static_cast<std::size_t>(n));
  for (NodeId v = 0; v < n; ++v) {
    auto agent = factory(v);
    if (!agent) throw std::logic_error("run: factory returned null program");
    res.agents.push_back(std::move(agent));
    rngs.emplace_back(derive_seed(cfg.seed, static_cast<std::uint64_t>(v)));
  }
  for (NodeId v = 0; v < n; ++v)
    res.agents[static_cast<std::size_t>(v)]->init(views[static_cast<std::size_t>(v)],
                                                  rngs[static_cast<std::size_t>(v)]);

  std::vector<Inbox> cur(static_cast<std::size_t>(n)), nxt(static_cast<std::size_t>(n));
  for (NodeId v = 0; v < n; ++v) {
    cur[static_cast<std::size_t>(v)].resize(views[static_cast<std::size_t>(v)].neighbors.size());
    nxt[static_cast<std::size_t>(v)].resize(views[static_cast<std::size_t>(v)].neighbors.size());
  }

  bool quiescent = false;
  int executed = 0;
  for (int t = 1; t <= cfg.max_rounds; ++t) {
    bool all_halted = true;
    for (NodeId v = 0; v < n && all_halted; ++v)
      all_halted = res.agents[static_cast<std::size_t>(v)]->halted();
    if (all_halted) {
      quiescent = true;
      break;
    }
    executed = t;

    for (NodeId v = 0; v < n; ++v) {
      auto& agent = *res.agents[static_cast<std::size_t>(v)];
      if (agent.halted()) continue;  // messages to a halted node are dropped
      Outbox out(views[static_cast<std::size_t>(v)].neighbors.size());
      agent.round(t, cur[static_cast<std::size_t>(v)], out);
      const auto& msgs = out.messages();
      for (std::size_t slot = 0; slot < msgs.size(); ++slot) {
        if (!msgs[slot]) continue;
        const int sz = static_cast<int>(msgs[slot]->size());
        const NodeId to = views[static_cast<std::size_t>(v)].neighbors[slot];
        if (sz > bw) {
          std::ostringstream os;
          os << "round " << t << " edge " << v << "->" << to << ": " << sz
             << " bits exceeds budget " << bw;
          throw BandwidthViolation(os.str());
        }
        res.trace.records.push_back({t, v, to, sz});
        res.trace.rounds_used = t;
        if (observer) observer(t, v, to, *msgs[slot]);
        nxt[static_cast<std::size_t>(to)][static_cast<std::size_t>(
            back[static_cast<std::size_t>(v)][slot])] = *msgs[slot];
      }
    }

    for (NodeId v = 0; v < n; ++v) {
      cur[static_cast<std::size_t>(v)] = std::move(nxt[static_cast<std::size_t>(v)]);
      nxt[static_cast<std::size_t>(v)].assign(
          views[static_cast<std::size_t>(v)].neighbors.size(), std::nullopt);
    }
  }
  if (!quiescent) {
    std::ostringstream os;
    os << "no quiescence within " << cfg.max_rounds << " rounds";
    throw MaxRoundsExceeded(os.str());
  }
  res.trace.rounds_executed = executed;
  res.outputs.reserve(static_cast<std::size_t>(n));
  for (NodeId v = 0; v < n; ++v)
    res.outputs.push_back(res.agents[static_cast<std::size_t>(v)]->output());
  return res;
}

}  // namespace detail

// ---- simple programs --------------------------------------------------------

namespace {

class FloodAgent final : public NodeProgram {
 public:
  explicit FloodAgent(NodeId root) : root_(root) {}

  void init(const LocalView& view, std::mt19937_64&) override {
    view_ = view;
    if (view.id == root_) have_ = true;
  }

  void round(int t, const Inbox& in, Outbox& out) override {
    if (view_.id == root_ && t == 1) {
      for (std::size_t s = 0; s < view_.neighbors.size(); ++s) {
        BitVec m;
        m.append_bit(true);
        out.send(static_cast<int>(s), m);
      }
      halted_ = true;
      return;
    }
    if (have_) return;
    bool got = false;
    std::vector<char> from(view_.neighbors.size(), 0);
    for (std::size_t s = 0; s < in.size(); ++s)
      if (in[s]) {
        got = true;
        from[s] = 1;
      }
    if (!got) return;
    have_ = true;
    arrival_ = t;
    for (std::size_t s = 0; s < view_.neighbors.size(); ++s) {
      if (from[s]) continue;
      BitVec m;
      m.append_bit(true);
      out.send(static_cast<int>(s), m);
    }
    halted_ = true;
  }

  bool halted() const override { return halted_; }
  std::int64_t output() const override { return arrival_; }

 private:
  NodeId root_;
  LocalView view_;
  bool have_ = false;
  bool halted_ = false;
  int arrival_ = 0;
};

class BlastAgent final : public NodeProgram {
 public:
  BlastAgent(int bits, int rounds) : bits_(bits), rounds_(rounds) {}

  void init(const LocalView& view, std::mt19937_64&) override { view_ = view; }

  void round(int t, const Inbox&, Outbox& out) override {
    if (t <= rounds_) {
      for (std::size_t s = 0; s < view_.neighbors.size(); ++s) {
        BitVec m;
        for (int b = 0; b < bits_; b += 64)
          m.append_bits(0, std::min(64, bits_ - b));
        out.send(static_cast<int>(s), m);
      }
    }
    if (t >= rounds_) halted_ = true;
  }

  bool halted() const override { return halted_; }
  std::int64_t output() const override { return 0; }

 private:
  int bits_;
  int rounds_;
  LocalView view_;
  bool halted_ = false;
};

class ProbeAgent final : public NodeProgram {
 public:
  explicit ProbeAgent(NodeId sender) : sender_(sender) {}

  void init(const LocalView& view, std::mt19937_64&) override { view_ = view; }

  void round(int t, const Inbox& in, Outbox& out) override {
    if (first_ == 0)
      for (const auto& m : in)
        if (m) {
          first_ = t;
          break;
        }
    if (view_.id == sender_ && t == 1)
      for (std::size_t s = 0; s < view_.neighbors.size(); ++s) {
        BitVec m;
        m.append_bit(true);
        out.send(static_cast<int>(s), m);
      }
    if (t >= 3) halted_ = true;
  }

  bool halted() const override { return halted_; }
  std::int64_t output() const override { return first_; }

 private:
  NodeId sender_;
  LocalView view_;
  int first_ = 0;
  bool halted_ = false;
};

// ---- shared BFS-tree machinery ----------------------------------------------
//
// Rounds 1..: the root floods a TOKEN; a node joins the tree the first round
// its inbox holds a TOKEN or CLAIM, takes the smallest-id sender as parent
// (all candidates sit at minimal depth under lockstep delivery), CLAIMs to it
// and TOKENs everyone else. Each ordered edge carries exactly one TOKEN or
// CLAIM, so a node knows its children once it has heard from every neighbor.
// All later traffic is chunked into (3-bit tag, <= bandwidth-3 payload)
// messages placed on per-neighbor FIFO queues, one message per edge per round.
class TreeBase : public NodeProgram {
 public:
  bool halted() const override { return halted_; }

 protected:
  explicit TreeBase(NodeId root) : root_(root) {}

  void base_init(const LocalView& view) {
    view_ = view;
    payload_ = view.bandwidth_bits - kTagBits;
    if (payload_ < 1)
      throw std::invalid_argument("tree program: bandwidth below tag size");
    heard_.assign(view_.neighbors.size(), 0);
    outq_.assign(view_.neighbors.size(), {});
    if (view_.id == root_) {
      is_root_ = true;
      joined_ = true;
      depth_ = 0;
    }
    children_known_ = joined_ && heard_cnt_ == static_cast<int>(heard_.size());
  }

  // Handles TOKEN/CLAIM messages and the join step; returns per-slot
  // (tag, body) with tag -1 for empty slots.
  std::vector<std::pair<int, BitVec>> ingest(int t, const Inbox& in) {
    const std::size_t deg = view_.neighbors.size();
    std::vector<std::pair<int, BitVec>> parsed(deg, {-1, BitVec{}});
    for (std::size_t s = 0; s < deg; ++s) {
      if (!in[s]) continue;
      BitReader r(*in[s]);
      const int tag = static_cast<int>(r.read_bits(kTagBits));
      parsed[s].first = tag;
      parsed[s].second = subrange(*in[s], kTagBits, r.remaining());
    }
    if (is_root_ && t == 1)
      for (std::size_t s = 0; s < deg; ++s) enqueue_chunk(static_cast<int>(s), kTagToken, BitVec{});

    int first_candidate = -1;
    for (std::size_t s = 0; s < deg; ++s) {
      const int tag = parsed[s].first;
      if (tag != kTagToken && tag != kTagClaim) continue;
      if (!heard_[s]) {
        heard_[s] = 1;
        ++heard_cnt_;
      }
      if (tag == kTagClaim) children_.push_back(static_cast<int>(s));
      if (first_candidate < 0) first_candidate = static_cast<int>(s);
    }
    if (!joined_ && first_candidate >= 0) {
      joined_ = true;
      depth_ = t - 1;
      parent_ = first_candidate;  // neighbors sorted, so first = smallest id
      for (std::size_t s = 0; s < deg; ++s)
        enqueue_chunk(static_cast<int>(s),
                      static_cast<int>(s) == parent_ ? kTagClaim : kTagToken, BitVec{});
    }
    if (joined_ && heard_cnt_ == static_cast<int>(deg)) children_known_ = true;
    return parsed;
  }

  // One already-chunked message; body must fit the payload budget.
  void enqueue_chunk(int slot, int tag, const BitVec& body) {
    BitVec m;
    m.append_bits(static_cast<std::uint64_t>(tag), kTagBits);
    m.append(body);
    outq_[static_cast<std::size_t>(slot)].push_back(std::move(m));
  }

  void enqueue_blob(int slot, int tag, const BitVec& bits) {
    for (std::size_t off = 0; off < bits.size(); off += static_cast<std::size_t>(payload_)) {
      const std::size_t w =
          std::min<std::size_t>(static_cast<std::size_t>(payload_), bits.size() - off);
      enqueue_chunk(slot, tag, subrange(bits, off, w));
    }
    if (bits.size() == 0) enqueue_chunk(slot, tag, BitVec{});
  }

  void enqueue_value(int slot, int tag, std::uint64_t value, int width) {
    for (int off = 0; off < width; off += payload_) {
      const int w = std::min(payload_, width - off);
      BitVec body;
      body.append_bits((value >> off) & low_mask(w), w);
      enqueue_chunk(slot, tag, body);
    }
  }

  void drain(Outbox& out) {
    for (std::size_t s = 0; s < outq_.size(); ++s) {
      if (outq_[s].empty()) continue;
      out.send(static_cast<int>(s), outq_[s].front());
      outq_[s].pop_front();
    }
  }

  bool queues_empty() const {
    for (const auto& q : outq_)
      if (!q.empty()) return false;
    return true;
  }

  NodeId root_;
  LocalView view_;
  int payload_ = 0;
  bool is_root_ = false;
  bool joined_ = false;
  int depth_ = -1;
  int parent_ = -1;  // neighbor slot
  std::vector<char> heard_;
  int heard_cnt_ = 0;
  std::vector<int> children_;  // neighbor slots
  bool children_known_ = false;
  std::vector<std::deque<BitVec>> outq_;
  bool halted_ = false;
};

// Tree aggregation: optional root-sampled modulus broadcast, one or two
// convergecast streams of per-node terms summed mod the modulus, then a
// downcast of the total (or of the 1-bit equality verdict of two streams).
struct AggParams {
  NodeId root = 0;
  int streams = 1;
  bool compare = false;
  bool sample_prime = false;
  std::uint64_t fixed_modulus = 0;
  std::vector<std::uint64_t> primes;  // pool when sample_prime
  std::uint64_t modulus_max = 0;      // sizes every value field
  std::function<std::uint64_t(const LocalView&, std::uint64_t, int)> term;
};

class TreeAggAgent final : public TreeBase, public DetectRootInfo {
 public:
  explicit TreeAggAgent(std::shared_ptr<const AggParams> p)
      : TreeBase(p->root), P_(std::move(p)) {}

  void init(const LocalView& view, std::mt19937_64& rng) override {
    base_init(view);
    vbits_ = bit_length_u64(P_->modulus_max);
    rbits_ = P_->compare ? 1 : vbits_;
    const std::size_t deg = view_.neighbors.size();
    child_acc_.assign(deg * static_cast<std::size_t>(P_->streams), BitVec{});
    child_val_.assign(deg * static_cast<std::size_t>(P_->streams), 0);
    child_done_.assign(deg * static_cast<std::size_t>(P_->streams), 0);
    done_cnt_.assign(static_cast<std::size_t>(P_->streams), 0);
    sent_.assign(static_cast<std::size_t>(P_->streams), 0);
    totals_.assign(static_cast<std::size_t>(P_->streams), 0);
    if (P_->sample_prime) {
      if (is_root_) {
        std::uniform_int_distribution<std::size_t> d(0, P_->primes.size() - 1);
        modulus_ = P_->primes[d(rng)];
        have_mod_ = true;
      }
    } else {
      modulus_ = P_->fixed_modulus;
      have_mod_ = true;
    }
  }

  void round(int t, const Inbox& in, Outbox& out) override {
    auto parsed = ingest(t, in);
    for (std::size_t s = 0; s < parsed.size(); ++s) {
      const auto& [tag, body] = parsed[s];
      switch (tag) {
        case kTagBcast:
          pending_bcast_.push_back(body);
          if (!have_mod_) {
            mod_acc_.append(body);
            if (mod_acc_.size() >= static_cast<std::size_t>(vbits_)) {
              modulus_ = head_value(mod_acc_, vbits_);
              have_mod_ = true;
            }
          }
          break;
        case kTagSum0:
        case kTagSum1: {
          const int st = tag - kTagSum0;
          const std::size_t idx = s * static_cast<std::size_t>(P_->streams) +
                                  static_cast<std::size_t>(st);
          child_acc_[idx].append(body);
          if (!child_done_[idx] &&
              child_acc_[idx].size() >= static_cast<std::size_t>(vbits_)) {
            child_val_[idx] = head_value(child_acc_[idx], vbits_);
            child_done_[idx] = 1;
            ++done_cnt_[static_cast<std::size_t>(st)];
          }
          break;
        }
        case kTagResult:
          res_acc_.append(body);
          if (!have_result_ && res_acc_.size() >= static_cast<std::size_t>(rbits_)) {
            result_ = head_value(res_acc_, rbits_);
            have_result_ = true;
          }
          break;
        default:
          break;
      }
    }

    if (is_root_ && P_->sample_prime && !bcast_queued_ && children_known_) {
      for (int off = 0; off < vbits_; off += payload_) {
        const int w = std::min(payload_, vbits_ - off);
        BitVec body;
        body.append_bits((modulus_ >> off) & low_mask(w), w);
        pending_bcast_.push_back(body);
      }
      bcast_queued_ = true;
    }
    if (children_known_) {
      while (!pending_bcast_.empty()) {
        for (int c : children_) enqueue_chunk(c, kTagBcast, pending_bcast_.front());
        pending_bcast_.pop_front();
      }
    }

    if (have_mod_ && children_known_) {
      for (int st = 0; st < P_->streams; ++st) {
        if (sent_[static_cast<std::size_t>(st)] ||
            done_cnt_[static_cast<std::size_t>(st)] != static_cast<int>(children_.size()))
          continue;
        std::uint64_t total = P_->term(view_, modulus_, st) % modulus_;
        for (int c : children_) {
          const std::size_t idx = static_cast<std::size_t>(c) *
                                      static_cast<std::size_t>(P_->streams) +
                                  static_cast<std::size_t>(st);
          total = (total + child_val_[idx]) % modulus_;
        }
        if (is_root_) {
          totals_[static_cast<std::size_t>(st)] = total;
          ++totals_ready_;
        } else {
          enqueue_value(parent_, kTagSum0 + st, total, vbits_);
        }
        sent_[static_cast<std::size_t>(st)] = 1;
      }
    }

    if (is_root_ && !have_result_ && totals_ready_ == P_->streams) {
      result_ = P_->compare ? (totals_[0] == totals_[1] ? 1 : 0) : totals_[0];
      have_result_ = true;
    }
    if (have_result_ && !forwarded_result_) {
      for (int c : children_) enqueue_value(c, kTagResult, result_, rbits_);
      forwarded_result_ = true;
    }

    drain(out);
    if (have_result_ && forwarded_result_ && queues_empty()) halted_ = true;
  }

  std::int64_t output() const override { return static_cast<std::int64_t>(result_); }

  std::uint64_t sampled_prime() const override { return modulus_; }
  std::uint64_t stream_total(int stream) const override {
    return totals_[static_cast<std::size_t>(stream)];
  }

 private:
  std::shared_ptr<const AggParams> P_;
  int vbits_ = 0;
  int rbits_ = 0;
  std::uint64_t modulus_ = 0;
  bool have_mod_ = false;
  BitVec mod_acc_;
  bool bcast_queued_ = false;
  std::deque<BitVec> pending_bcast_;
  std::vector<BitVec> child_acc_;
  std::vector<std::uint64_t> child_val_;
  std::vector<char> child_done_;
  std::vector<int> done_cnt_;
  std::vector<char> sent_;
  std::vector<std::uint64_t> totals_;
  int totals_ready_ = 0;
  BitVec res_acc_;
  std::uint64_t result_ = 0;
  bool have_result_ = false;
  bool forwarded_result_ = false;
};

// Edge-stream gather: every node forwards (count, records) up the tree where
// a record is (u, v, w) with u < v owned by u; the root rebuilds the graph,
// applies the predicate and downcasts the verdict bit.
struct CollectParams {
  NodeId root = 0;
  std::int64_t w_max = 0;
  std::function<bool(const Graph&)> predicate;
};

class CollectAgent final : public TreeBase {
 public:
  explicit CollectAgent(std::shared_ptr<const CollectParams> p)
      : TreeBase(p->root), P_(std::move(p)) {}

  void init(const LocalView& view, std::mt19937_64&) override {
    base_init(view);
    idw_ = bit_length_u64(static_cast<std::uint64_t>(view.n - 1));
    wbits_ = bit_length_u64(static_cast<std::uint64_t>(P_->w_max));
    recbits_ = 2 * idw_ + wbits_;
    cntbits_ = 2 * idw_;
    const std::size_t deg = view_.neighbors.size();
    child_acc_.assign(deg, BitVec{});
    child_done_.assign(deg, 0);
  }

  void round(int t, const Inbox& in, Outbox& out) override {
    auto parsed = ingest(t, in);
    for (std::size_t s = 0; s < parsed.size(); ++s) {
      const auto& [tag, body] = parsed[s];
      if (tag == kTagData) {
        child_acc_[s].append(body);
      } else if (tag == kTagResult) {
        if (!have_result_) {
          result_ = body.get(0) ? 1 : 0;
          have_result_ = true;
        }
      }
    }
    for (std::size_t s = 0; s < child_acc_.size(); ++s) {
      if (child_done_[s] || child_acc_[s].size() < static_cast<std::size_t>(cntbits_))
        continue;
      const std::uint64_t cnt = head_value(child_acc_[s], cntbits_);
      const std::size_t want =
          static_cast<std::size_t>(cntbits_) + cnt * static_cast<std::size_t>(recbits_);
      if (child_acc_[s].size() >= want) child_done_[s] = 1;
    }

    if (children_known_ && !sent_) {
      bool ready = true;
      for (int c : children_)
        if (!child_done_[static_cast<std::size_t>(c)]) ready = false;
      if (ready) {
        BitVec records;
        std::uint64_t cnt = 0;
        for (std::size_t s = 0; s < view_.neighbors.size(); ++s) {
          if (view_.neighbors[s] <= view_.id) continue;
          records.append_bits(static_cast<std::uint64_t>(view_.id), idw_);
          records.append_bits(static_cast<std::uint64_t>(view_.neighbors[s]), idw_);
          records.append_bits(static_cast<std::uint64_t>(view_.edge_weights[s]), wbits_);
          ++cnt;
        }
        for (int c : children_) {
          const auto& acc = child_acc_[static_cast<std::size_t>(c)];
          const std::uint64_t ccnt = head_value(acc, cntbits_);
          records.append(subrange(acc, static_cast<std::size_t>(cntbits_),
                                  ccnt * static_cast<std::size_t>(recbits_)));
          cnt += ccnt;
        }
        if (is_root_) {
          Graph g(view_.n);
          BitReader r(records);
          for (std::uint64_t e = 0; e < cnt; ++e) {
            const NodeId u = static_cast<NodeId>(r.read_bits(idw_));
            const NodeId v = static_cast<NodeId>(r.read_bits(idw_));
            const std::int64_t w = static_cast<std::int64_t>(r.read_bits(wbits_));
            g.add_edge(u, v, w);
          }
          result_ = P_->predicate(g) ? 1 : 0;
          have_result_ = true;
        } else {
          BitVec stream;
          stream.append_bits(cnt, cntbits_);
          stream.append(records);
          enqueue_blob(parent_, kTagData, stream);
        }
        sent_ = true;
      }
    }

    if (have_result_ && !forwarded_result_) {
      for (int c : children_) {
        BitVec body;
        body.append_bit(result_ != 0);
        enqueue_chunk(c, kTagResult, body);
      }
      forwarded_result_ = true;
    }

    drain(out);
    if (have_result_ && forwarded_result_ && queues_empty()) halted_ = true;
  }

  std::int64_t output() const override { return result_; }

 private:
  std::shared_ptr<const CollectParams> P_;
  int idw_ = 0, wbits_ = 0, recbits_ = 0, cntbits_ = 0;
  std::vector<BitVec> child_acc_;
  std::vector<char> child_done_;
  bool sent_ = false;
  std::int64_t result_ = 0;
  bool have_result_ = false;
  bool forwarded_result_ = false;
};

}  // namespace

ProgramFactory flood_program(NodeId root) {
  return [root](NodeId) { return std::make_unique<FloodAgent>(root); };
}

ProgramFactory blast_program(int bits, int rounds) {
  return [bits, rounds](NodeId) { return std::make_unique<BlastAgent>(bits, rounds); };
}

ProgramFactory arrival_probe_program(NodeId sender) {
  return [sender](NodeId) { return std::make_unique<ProbeAgent>(sender); };
}

ProgramFactory bfs_convergecast_program(NodeId root, std::vector<std::int64_t> summands,
                                        std::uint64_t modulus) {
  if (modulus == 0)
    throw std::invalid_argument("bfs_convergecast_program: modulus must be positive");
  auto p = std::make_shared<AggParams>();
  p->root = root;
  p->streams = 1;
  p->compare = false;
  p->sample_prime = false;
  p->fixed_modulus = modulus;
  p->modulus_max = modulus;
  p->term = [s = std::move(summands), modulus](const LocalView& v, std::uint64_t,
                                               int) -> std::uint64_t {
    const std::int64_t raw = s.at(static_cast<std::size_t>(v.id));
    const std::int64_t m = static_cast<std::int64_t>(modulus);
    return static_cast<std::uint64_t>(((raw % m) + m) % m);
  };
  return [p](NodeId) { return std::make_unique<TreeAggAgent>(p); };
}

ProgramFactory collect_decide_program(NodeId root, std::int64_t w_max,
                                      std::function<bool(const Graph&)> predicate) {
  if (w_max < 0) throw std::invalid_argument("collect_decide_program: negative w_max");
  auto p = std::make_shared<CollectParams>();
  p->root = root;
  p->w_max = w_max;
  p->predicate = std::move(predicate);
  return [p](NodeId) { return std::make_unique<CollectAgent>(p); };
}

int ident_fingerprint_bits(int k, std::int64_t w_bound) {
  return k * (k - 1) / 2 * subgraph_field_bits(w_bound);
}

ProgramFactory ident_detect_program(int k, std::int64_t w_bound) {
  if (k < 2) throw std::invalid_argument("ident_detect_program: k >= 2 required");
  if (w_bound < 1) throw std::invalid_argument("ident_detect_program: w_bound >= 1 required");
  const int field_bits = subgraph_field_bits(w_bound);
  const std::size_t kbits = static_cast<std::size_t>(ident_fingerprint_bits(k, w_bound));
  auto p = std::make_shared<AggParams>();
  p->root = 0;
  p->streams = 2;
  p->compare = true;
  p->sample_prime = true;
  p->primes = nth_primes(kbits * kbits);
  p->modulus_max = p->primes.back();
  p->term = [k, field_bits](const LocalView& v, std::uint64_t mod, int st) -> std::uint64_t {
    const NodeId lo = st == 0 ? 0 : k;
    const NodeId hi = lo + k;
    if (v.id < lo || v.id >= hi) return 0;
    const int i = v.id - lo;
    std::uint64_t acc = 0;
    for (std::size_t e = 0; e < v.neighbors.size(); ++e) {
      const NodeId nb = v.neighbors[e];
      if (nb <= v.id || nb < lo || nb >= hi) continue;
      const int j = nb - lo;
      const std::uint64_t field =
          static_cast<std::uint64_t>(v.edge_weights[e]) | (1ULL << (field_bits - 1));
      const std::uint64_t pos = static_cast<std::uint64_t>(pair_rank(k, i, j)) *
                                static_cast<std::uint64_t>(field_bits);
      acc = (acc + mulmod_u64(field % mod, powmod_u64(2, pos, mod), mod)) % mod;
    }
    return acc;
  };
  return [p](NodeId) { return std::make_unique<TreeAggAgent>(p); };
}

DetectResult identical_subgraphs_detect(const LowerBoundInstance& inst,
                                        const SimConfig& cfg) {
  if (inst.kind != Kind::Identical)
    throw std::invalid_argument("identical_subgraphs_detect: wrong instance kind");
  const int k = inst.params.k;
  const std::int64_t w = inst.params.w_max;
  auto result = run(inst.graph, ident_detect_program(k, w), cfg);
  const auto* root = dynamic_cast<const DetectRootInfo*>(result.agents.front().get());
  if (root == nullptr)
    throw std::logic_error("identical_subgraphs_detect: root agent lacks observables");
  DetectResult out;
  out.verdicts = std::move(result.outputs);
  out.trace = std::move(result.trace);
  out.prime = root->sampled_prime();
  out.x_fingerprint = root->stream_total(0);
  out.y_fingerprint = root->stream_total(1);
  out.fingerprint_bits = ident_fingerprint_bits(k, w);
  return out;
}

}  // namespace congestlab
