#include "geocon/consensus.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "geocon/rng.hpp"

namespace geocon {

std::string policy_name(Policy p) {
    switch (p) {
        case Policy::Silent: return "silent";
        case Policy::Random: return "random";
        case Policy::Equivocate: return "equivocate";
        case Policy::Scripted: return "scripted";
    }
    throw std::logic_error("bad policy");
}

Policy policy_from_name(const std::string& name) {
    if (name == "silent") return Policy::Silent;
    if (name == "random") return Policy::Random;
    if (name == "equivocate") return Policy::Equivocate;
    if (name == "scripted") return Policy::Scripted;
    throw std::invalid_argument("unknown behavior policy: " + name);
}

namespace {

std::uint64_t path_hash(const IdPath& path) {
    std::uint64_t h = 0x243f6a8885a308d3ull;
    for (ProcessId id : path) h = mix64(h ^ static_cast<std::uint64_t>(id + 1));
    return h;
}

}  // namespace

std::optional<int> apply_behavior(const Behavior& b, int round, ProcessId sender, ProcessId receiver,
                                  const IdPath& path, int honest_bit) {
    (void)honest_bit;  // a faulty sender ignores what it should have said
    switch (b.policy) {
        case Policy::Silent:
            return std::nullopt;
        case Policy::Random:
            return static_cast<int>(
                hash_u64({b.seed, static_cast<std::uint64_t>(round), static_cast<std::uint64_t>(sender),
                          static_cast<std::uint64_t>(receiver), path_hash(path)}) &
                1u);
        case Policy::Equivocate:
            return receiver % 2;
        case Policy::Scripted: {
            const auto it = b.script.find(ScriptSlot{round, receiver, path});
            if (it == b.script.end()) return std::nullopt;
            return it->second;
        }
    }
    throw std::logic_error("bad policy");
}

std::size_t PathTable::node_count(std::size_t n, int depth) {
    std::size_t total = 1;  // root
    std::size_t level = 1;
    for (int k = 1; k <= depth; ++k) {
        if (n < static_cast<std::size_t>(k)) break;
        const std::size_t factor = n - static_cast<std::size_t>(k - 1);
        if (level > std::numeric_limits<std::size_t>::max() / factor / 2) return std::numeric_limits<std::size_t>::max();
        level *= factor;
        total += level;
        if (total > std::numeric_limits<std::size_t>::max() / 2) return std::numeric_limits<std::size_t>::max();
    }
    return total;
}

std::shared_ptr<const PathTable> PathTable::build(const std::vector<ProcessId>& participants, int depth) {
    auto table = std::make_shared<PathTable>();
    table->ids = participants;
    std::sort(table->ids.begin(), table->ids.end());
    table->n = static_cast<int>(table->ids.size());
    table->depth = depth;
    table->paths.resize(depth + 1);
    table->count.assign(depth + 1, 0);
    table->count[0] = 1;
    const int n = table->n;
    for (int k = 1; k <= depth; ++k) {
        const std::size_t prev = table->count[k - 1];
        const std::size_t cnt = prev * static_cast<std::size_t>(n - (k - 1));
        table->count[k] = cnt;
        table->paths[k].resize(cnt * k);
        const auto& prev_flat = table->paths[k - 1];
        std::size_t w = 0;
        for (std::size_t i = 0; i < prev; ++i) {
            const std::uint8_t* pi = k > 1 ? &prev_flat[i * (k - 1)] : nullptr;
            for (int q = 0; q < n; ++q) {
                bool used = false;
                for (int j = 0; j < k - 1; ++j)
                    if (pi[j] == q) { used = true; break; }
                if (used) continue;
                for (int j = 0; j < k - 1; ++j) table->paths[k][w * k + j] = pi[j];
                table->paths[k][w * k + (k - 1)] = static_cast<std::uint8_t>(q);
                ++w;
            }
        }
    }
    return table;
}

std::size_t PathTable::index_of(const IdPath& path) const {
    const int k = static_cast<int>(path.size());
    if (k == 0) return 0;
    if (k > depth) throw std::invalid_argument("path deeper than tree");
    std::vector<int> idx;
    for (ProcessId id : path) {
        const auto it = std::lower_bound(ids.begin(), ids.end(), id);
        if (it == ids.end() || *it != id) throw std::invalid_argument("path id not a participant");
        idx.push_back(static_cast<int>(it - ids.begin()));
    }
    std::size_t rank = 0;
    for (int j = 0; j < k; ++j) {
        int below = idx[j];
        for (int m = 0; m < j; ++m)
            if (idx[m] == idx[j]) throw std::invalid_argument("path repeats an id");
            else if (idx[m] < idx[j]) --below;
        rank = rank * static_cast<std::size_t>(n - j) + static_cast<std::size_t>(below);
    }
    return rank;
}

EigTree EigTree::make(ProcessId owner, const std::vector<ProcessId>& participants, int depth) {
    EigTree tree;
    tree.owner = owner;
    tree.table = PathTable::build(participants, depth);
    tree.values.resize(depth + 1);
    for (int k = 0; k <= depth; ++k) tree.values[k].assign(tree.table->count[k], -1);
    return tree;
}

int EigTree::value(const IdPath& path) const {
    return values[path.size()][table->index_of(path)];
}

void EigTree::set(const IdPath& path, int bit) {
    values[path.size()][table->index_of(path)] = static_cast<std::int8_t>(bit);
}

namespace {

int majority_or_default(int ones, int total, int default_bit) {
    if (2 * ones > total) return 1;
    if (2 * (total - ones) > total) return 0;
    return default_bit;
}

int resolve_index(const EigTree& tree, int level, std::size_t idx, int default_bit) {
    if (level == tree.table->depth) return tree.values[level][idx];
    const int children = tree.table->n - level;
    int ones = 0;
    for (int c = 0; c < children; ++c)
        ones += resolve_index(tree, level + 1, idx * children + c, default_bit);
    return majority_or_default(ones, children, default_bit);
}

}  // namespace

int resolve(const EigTree& tree, const IdPath& path, int default_bit) {
    return resolve_index(tree, static_cast<int>(path.size()), tree.table->index_of(path), default_bit);
}

namespace {

struct InstanceView {
    std::vector<ProcessId> ids;       // sorted participants
    std::vector<int> inputs;          // by index
    std::vector<char> faulty;         // by index
    std::vector<const Behavior*> behavior;  // by index, null for correct
    int n = 0;
    int t = 0;
    int default_bit = 0;
};

InstanceView make_view(const ConsensusInstance& inst) {
    InstanceView v;
    v.ids = inst.participants;
    std::sort(v.ids.begin(), v.ids.end());
    if (std::adjacent_find(v.ids.begin(), v.ids.end()) != v.ids.end())
        throw std::invalid_argument("psl_run: duplicate participant ids");
    v.n = static_cast<int>(v.ids.size());
    v.t = inst.t;
    v.default_bit = inst.default_bit;
    if (inst.t < 0) throw std::invalid_argument("psl_run: t must be >= 0");
    if (v.n < 3 * inst.t + 1)
        throw std::invalid_argument("psl_run: needs at least 3t+1 participants");
    v.inputs.resize(v.n);
    v.faulty.assign(v.n, 0);
    v.behavior.assign(v.n, nullptr);
    static const Behavior kSilent{};
    for (int i = 0; i < v.n; ++i) {
        const auto it = inst.inputs.find(v.ids[i]);
        if (it == inst.inputs.end()) throw std::invalid_argument("psl_run: missing input bit");
        if (it->second != 0 && it->second != 1) throw std::invalid_argument("psl_run: inputs are binary");
        v.inputs[i] = it->second;
    }
    for (ProcessId id : inst.faulty) {
        const auto it = std::lower_bound(v.ids.begin(), v.ids.end(), id);
        if (it == v.ids.end() || *it != id)
            throw std::invalid_argument("psl_run: faulty id is not a participant");
        const int i = static_cast<int>(it - v.ids.begin());
        v.faulty[i] = 1;
        const auto bit = inst.behaviors.find(id);
        v.behavior[i] = bit == inst.behaviors.end() ? &kSilent : &bit->second;
    }
    return v;
}

long round_bundles(const InstanceView& v) {
    long sending = 0;
    for (int i = 0; i < v.n; ++i)
        if (!v.faulty[i] || v.behavior[i]->policy != Policy::Silent) ++sending;
    return sending * (v.n - 1);
}

ConsensusResult run_explicit(const InstanceView& v, const PslOptions& opts) {
    const int depth = v.t + 1;
    ConsensusResult res;
    res.rounds = depth;
    auto table = PathTable::build(v.ids, depth);
    std::vector<EigTree> trees(v.n);
    for (int p = 0; p < v.n; ++p) {
        trees[p].owner = v.ids[p];
        trees[p].table = table;
        trees[p].values.resize(depth + 1);
        for (int k = 0; k <= depth; ++k) trees[p].values[k].assign(table->count[k], 0);
        trees[p].values[0][0] = static_cast<std::int8_t>(v.inputs[p]);
    }

    std::size_t trace_entries = 0;
    res.trace_complete = opts.want_trace;
    res.trace.resize(depth);
    for (int k = 1; k <= depth; ++k) {
        RoundTrace& rt = res.trace[k - 1];
        rt.round = k;
        rt.bundles = round_bundles(v);
        const std::size_t parents = table->count[k - 1];
        const int remaining = v.n - (k - 1);
        for (std::size_t i = 0; i < parents; ++i) {
            const std::uint8_t* pi = k > 1 ? &table->paths[k - 1][i * (k - 1)] : nullptr;
            for (int s = 0; s < v.n; ++s) {
                // offset of s among participants absent from the parent path
                int offset = s;
                bool in_path = false;
                for (int j = 0; j < k - 1; ++j) {
                    if (pi[j] == s) { in_path = true; break; }
                    if (pi[j] < s) --offset;
                }
                if (in_path) continue;
                const std::size_t child = i * static_cast<std::size_t>(remaining) + offset;
                const int honest = k == 1 ? v.inputs[s] : trees[s].values[k - 1][i];
                IdPath relayed;
                if (opts.want_trace || v.faulty[s]) {
                    relayed.reserve(k - 1);
                    for (int j = 0; j < k - 1; ++j) relayed.push_back(v.ids[pi[j]]);
                }
                for (int p = 0; p < v.n; ++p) {
                    int bit;
                    if (p == s || !v.faulty[s]) {
                        bit = honest;
                    } else {
                        const auto sent =
                            apply_behavior(*v.behavior[s], k, v.ids[s], v.ids[p], relayed, honest);
                        bit = sent.value_or(v.default_bit);
                    }
                    trees[p].values[k][child] = static_cast<std::int8_t>(bit);
                    if (opts.want_trace && p != s && res.trace_complete) {
                        if (++trace_entries > opts.max_trace_entries) {
                            res.trace_complete = false;
                            for (auto& r : res.trace) r.entries.clear();
                        } else {
                            IdPath stored = relayed;
                            stored.push_back(v.ids[s]);
                            rt.entries.push_back(TraceEntry{v.ids[s], v.ids[p], std::move(stored), bit});
                        }
                    }
                }
            }
        }
    }

    for (int p = 0; p < v.n; ++p) {
        if (v.faulty[p]) continue;
        std::vector<std::int8_t> resolved = trees[p].values[depth];
        for (int k = depth - 1; k >= 0; --k) {
            const int children = v.n - k;
            std::vector<std::int8_t> up(table->count[k]);
            for (std::size_t i = 0; i < table->count[k]; ++i) {
                int ones = 0;
                for (int c = 0; c < children; ++c) ones += resolved[i * children + c];
                up[i] = static_cast<std::int8_t>(majority_or_default(ones, children, v.default_bit));
            }
            resolved = std::move(up);
        }
        res.decisions[v.ids[p]] = resolved[0];
    }
    if (opts.want_trees) res.trees = std::move(trees);
    return res;
}

// Collapsed evaluation. Exact whenever |faulty| <= t: a path ending at a
// correct process resolves, at every correct process, to the value that
// process was sent, so the resolution recursion only has to branch through
// all-faulty path prefixes.
ConsensusResult run_collapsed(const InstanceView& v) {
    int c = 0;
    for (char f : v.faulty) c += f;
    if (c > v.t)
        throw std::runtime_error(
            "psl_run: instance too large for explicit gathering and faulty count exceeds t; "
            "the collapsed evaluator does not apply");
    // chains visited ~ e * c!, each scanning n participants
    double work = 0.0, perms = 1.0;
    for (int k = 1; k <= c; ++k) {
        perms *= c - (k - 1);
        work += perms * v.n;
    }
    if (work > 2e8) throw std::runtime_error("psl_run: faulty-chain recursion exceeds capacity");

    // what faulty sender s transmits to r in round |chain| about chain[:-1]
    const auto faulty_sent = [&](const std::vector<int>& chain, int r) -> int {
        const int s = chain.back();
        IdPath relayed;
        relayed.reserve(chain.size() - 1);
        for (std::size_t j = 0; j + 1 < chain.size(); ++j) relayed.push_back(v.ids[chain[j]]);
        const auto sent = apply_behavior(*v.behavior[s], static_cast<int>(chain.size()), v.ids[s],
                                         v.ids[r], relayed, v.default_bit);
        return sent.value_or(v.default_bit);
    };
    std::vector<char> in_chain(v.n, 0);
    const auto chain_resolve = [&](auto&& self, std::vector<int>& chain) -> int {
        int ones = 0, total = 0;
        for (int r = 0; r < v.n; ++r) {
            if (in_chain[r]) continue;
            int bit;
            if (v.faulty[r]) {
                chain.push_back(r);
                in_chain[r] = 1;
                bit = self(self, chain);
                in_chain[r] = 0;
                chain.pop_back();
            } else {
                bit = faulty_sent(chain, r);
            }
            ones += bit;
            ++total;
        }
        return majority_or_default(ones, total, v.default_bit);
    };

    int ones = 0;
    for (int q = 0; q < v.n; ++q) {
        if (v.faulty[q]) {
            std::vector<int> chain{q};
            in_chain[q] = 1;
            ones += chain_resolve(chain_resolve, chain);
            in_chain[q] = 0;
        } else {
            ones += v.inputs[q];
        }
    }
    const int decision = majority_or_default(ones, v.n, v.default_bit);

    ConsensusResult res;
    res.collapsed = true;
    res.rounds = v.t + 1;
    res.trace.resize(res.rounds);
    for (int k = 1; k <= res.rounds; ++k) {
        res.trace[k - 1].round = k;
        res.trace[k - 1].bundles = round_bundles(v);
    }
    for (int p = 0; p < v.n; ++p)
        if (!v.faulty[p]) res.decisions[v.ids[p]] = decision;
    return res;
}

}  // namespace

ConsensusResult psl_run(const ConsensusInstance& inst, const PslOptions& opts) {
    const InstanceView v = make_view(inst);
    const int depth = v.t + 1;
    const std::size_t per_tree = PathTable::node_count(static_cast<std::size_t>(v.n), depth);
    const bool fits = per_tree != std::numeric_limits<std::size_t>::max() &&
                      per_tree <= opts.explicit_node_budget / static_cast<std::size_t>(v.n);
    if (fits) return run_explicit(v, opts);
    return run_collapsed(v);
}

std::string trace_to_jsonl(const std::vector<RoundTrace>& trace) {
    std::ostringstream os;
    for (const RoundTrace& rt : trace) {
        for (const TraceEntry& e : rt.entries) {
            os << "{\"round\":" << rt.round << ",\"sender\":" << e.sender << ",\"receiver\":" << e.receiver
               << ",\"path\":[";
            for (std::size_t i = 0; i < e.path.size(); ++i) {
                if (i) os << ',';
                os << e.path[i];
            }
            os << "],\"bit\":" << e.bit << "}\n";
        }
    }
    return os.str();
}

}  // namespace geocon
