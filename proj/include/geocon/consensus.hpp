#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace geocon {

using ProcessId = int;
using IdPath = std::vector<ProcessId>;

enum class Policy { Silent, Random, Equivocate, Scripted };

std::string policy_name(Policy p);
Policy policy_from_name(const std::string& name);

// A scripted message slot: what a faulty sender transmits to `receiver` in
// `round` for the relayed path `path` (empty path = round-1 input claim or
// the final broadcast). Missing slots mean silence.
struct ScriptSlot {
    int round = 1;
    ProcessId receiver = 0;
    IdPath path;

    auto operator<=>(const ScriptSlot&) const = default;
};

struct Behavior {
    Policy policy = Policy::Silent;
    std::uint64_t seed = 0;          // Random policy
    std::map<ScriptSlot, int> script;  // Scripted policy
};

// What a faulty sender emits for one slot; nullopt = silence (the receiver
// substitutes the default bit). Correct senders never pass through here.
std::optional<int> apply_behavior(const Behavior& b, int round, ProcessId sender, ProcessId receiver,
                                  const IdPath& path, int honest_bit);

struct ConsensusInstance {
    std::vector<ProcessId> participants;  // >= 3t+1 distinct ids
    int t = 1;                            // tolerated faults
    std::map<ProcessId, int> inputs;      // bit per participant
    std::set<ProcessId> faulty;
    std::map<ProcessId, Behavior> behaviors;  // per faulty id
    int default_bit = 0;
};

// One relayed value: receiver stores `bit` at tree node `path` (the path
// always ends with the sender).
struct TraceEntry {
    ProcessId sender = 0;
    ProcessId receiver = 0;
    IdPath path;
    int bit = 0;
};

struct RoundTrace {
    int round = 1;
    // Point-to-point transmissions this round (one per sender/receiver pair
    // that communicated); each carries a batch of path/bit entries.
    long bundles = 0;
    std::vector<TraceEntry> entries;
};

// Shared enumeration of all id-paths of distinct participants up to `depth`.
// Level-k paths are in lexicographic order; the children of path i at level
// k are the contiguous block [i*(n-k), (i+1)*(n-k)) at level k+1.
struct PathTable {
    int n = 0;
    int depth = 0;
    std::vector<ProcessId> ids;                     // sorted participant ids
    std::vector<std::vector<std::uint8_t>> paths;   // paths[k]: level-k paths, flat, k entries each
    std::vector<std::size_t> count;                 // count[k] = n!/(n-k)!

    static std::shared_ptr<const PathTable> build(const std::vector<ProcessId>& participants, int depth);
    static std::size_t node_count(std::size_t n, int depth);  // saturating
    std::size_t index_of(const IdPath& path) const;           // throws if absent
};

// Per-process exponential information gathering state. values[k][i] is the
// bit stored at the i-th level-k path; level 0 is the root (own input).
struct EigTree {
    ProcessId owner = 0;
    std::shared_ptr<const PathTable> table;
    std::vector<std::vector<std::int8_t>> values;

    int value(const IdPath& path) const;
    void set(const IdPath& path, int bit);
    static EigTree make(ProcessId owner, const std::vector<ProcessId>& participants, int depth);
};

// Bottom-up resolution: a leaf returns its stored bit, an internal node the
// strict majority of its resolved children, the default on a tie.
int resolve(const EigTree& tree, const IdPath& path, int default_bit);

struct ConsensusResult {
    std::map<ProcessId, int> decisions;  // correct participants only
    std::vector<RoundTrace> trace;       // always carries bundle counts
    bool trace_complete = false;         // per-entry trace present
    int rounds = 0;                      // gathering rounds executed (t+1)
    bool collapsed = false;              // evaluated via the correct-relay collapse
    std::vector<EigTree> trees;          // explicit mode + want_trees only
};

struct PslOptions {
    bool want_trace = true;
    bool want_trees = false;
    // Explicit trees are built when total node count fits this budget;
    // larger instances use the collapsed evaluator.
    std::size_t explicit_node_budget = 4'000'000;
    std::size_t max_trace_entries = 250'000;
};

// Synchronous oral-message consensus: t+1 gathering rounds of EIG exchange
// followed by bottom-up majority resolution. Guarantees agreement and
// validity for the correct participants whenever |faulty| <= t. Throws
// std::invalid_argument if |participants| < 3t+1.
ConsensusResult psl_run(const ConsensusInstance& inst, const PslOptions& opts = {});

// One JSON object per line: {round, sender, receiver, path, bit}.
std::string trace_to_jsonl(const std::vector<RoundTrace>& trace);

}  // namespace geocon
