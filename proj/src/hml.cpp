#include "hmldist/hml.hpp"

#include <algorithm>
#include <stdexcept>

namespace hmldist {

std::size_t FormulaStore::KeyHash::operator()(const Key& k) const {
    std::size_t h = static_cast<std::size_t>(k.kind) * 0x9e3779b97f4a7c15ull;
    h ^= k.action + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    for (NodeId c : k.children)
        h ^= c + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
}

FormulaStore::FormulaStore(std::shared_ptr<ActionTable> actions)
    : actions_(std::move(actions)) {
    nodes_.push_back(FormulaNode{});  // NodeId 0 is `true`
}

NodeId FormulaStore::intern(FormulaNode&& node) {
    Key key{node.kind, node.action, {}};
    if (node.kind == NodeKind::And)
        key.children = node.children;
    else if (node.kind != NodeKind::True)
        key.children = {node.child};
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    const NodeId id = static_cast<NodeId>(nodes_.size());
    nodes_.push_back(std::move(node));
    index_.emplace(std::move(key), id);
    return id;
}

NodeId FormulaStore::mk_diamond(ActionId a, NodeId child) {
    FormulaNode n;
    n.kind = NodeKind::Diamond;
    n.action = a;
    n.child = child;
    return intern(std::move(n));
}

NodeId FormulaStore::mk_neg(NodeId child) {
    FormulaNode n;
    n.kind = NodeKind::Neg;
    n.child = child;
    return intern(std::move(n));
}

NodeId FormulaStore::mk_and(std::span<const NodeId> children) {
    if (children.empty())
        throw std::invalid_argument("mk_and: empty conjunction, use mk_true");
    std::vector<NodeId> flat;
    flat.reserve(children.size());
    for (NodeId c : children) {
        const FormulaNode& n = nodes_[c];
        if (n.kind == NodeKind::And)
            flat.insert(flat.end(), n.children.begin(), n.children.end());
        else if (n.kind != NodeKind::True)
            flat.push_back(c);
    }
    std::sort(flat.begin(), flat.end());
    flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
    if (flat.empty()) return mk_true();
    if (flat.size() == 1) return flat[0];
    FormulaNode n;
    n.kind = NodeKind::And;
    n.children = std::move(flat);
    return intern(std::move(n));
}

const StateSet& FormulaStore::evaluate(NodeId id, const Lts& lts) {
    auto& cache = eval_[&lts];
    if (auto it = cache.find(id); it != cache.end()) return it->second;

    StateSet result;
    const FormulaNode& n = nodes_[id];
    switch (n.kind) {
        case NodeKind::True:
            result.resize(lts.num_states());
            result.set();
            break;
        case NodeKind::Diamond: {
            const StateSet& inner = evaluate(n.child, lts);
            result.resize(lts.num_states());
            for (StateId s = 0; s < lts.num_states(); ++s) {
                for (StateId t : lts.successors(s, n.action)) {
                    if (inner.test(t)) {
                        result.set(s);
                        break;
                    }
                }
            }
            break;
        }
        case NodeKind::Neg:
            result = evaluate(n.child, lts);
            result.flip();
            break;
        case NodeKind::And: {
            result = evaluate(n.children[0], lts);
            for (std::size_t i = 1; i < n.children.size(); ++i)
                result &= evaluate(n.children[i], lts);
            break;
        }
    }
    return eval_[&lts].emplace(id, std::move(result)).first->second;
}

const FormulaStore::MetricEntry& FormulaStore::metric_entry(NodeId id) {
    if (metric_memo_.size() < nodes_.size()) metric_memo_.resize(nodes_.size());
    if (metric_memo_[id].ready) return metric_memo_[id];
    MetricEntry e;
    const FormulaNode& n = nodes_[id];
    switch (n.kind) {
        case NodeKind::True:
            e.tree_nodes = 1;
            break;
        case NodeKind::Diamond: {
            const MetricEntry& c = metric_entry(n.child);
            e.size = c.size + 1;
            e.depth = c.depth + 1;
            e.negdepth = c.negdepth;
            e.tree_nodes = c.tree_nodes + 1;
            break;
        }
        case NodeKind::Neg: {
            const MetricEntry& c = metric_entry(n.child);
            e.size = c.size;
            e.depth = c.depth;
            e.negdepth = c.negdepth + 1;
            e.tree_nodes = c.tree_nodes + 1;
            break;
        }
        case NodeKind::And: {
            e.tree_nodes = 1;
            for (NodeId cid : n.children) {
                const MetricEntry& c = metric_entry(cid);
                e.size += c.size;
                e.depth = std::max(e.depth, c.depth);
                e.negdepth = std::max(e.negdepth, c.negdepth);
                e.tree_nodes += c.tree_nodes;
            }
            break;
        }
    }
    e.ready = true;
    metric_memo_[id] = std::move(e);
    return metric_memo_[id];
}

Metrics FormulaStore::metrics(NodeId id) {
    const MetricEntry& e = metric_entry(id);
    Metrics m;
    m.size = e.size;
    m.depth = e.depth;
    m.negdepth = e.negdepth;

    std::vector<NodeId> stack{id};
    std::set<NodeId> seen{id};
    std::uint64_t diamonds = 0;
    while (!stack.empty()) {
        const NodeId cur = stack.back();
        stack.pop_back();
        const FormulaNode& n = nodes_[cur];
        if (n.kind == NodeKind::Diamond) ++diamonds;
        if (n.kind == NodeKind::Diamond || n.kind == NodeKind::Neg) {
            if (seen.insert(n.child).second) stack.push_back(n.child);
        } else if (n.kind == NodeKind::And) {
            for (NodeId c : n.children)
                if (seen.insert(c).second) stack.push_back(c);
        }
    }
    m.dag_size = diamonds;
    return m;
}

boost::multiprecision::cpp_int FormulaStore::tree_nodes(NodeId id) {
    return metric_entry(id).tree_nodes;
}

NodeId trace_formula(FormulaStore& store, const TraceWord& w) {
    NodeId node = store.mk_true();
    for (auto it = w.rbegin(); it != w.rend(); ++it)
        node = store.mk_diamond(*it, node);
    return node;
}

namespace {

using WordSet = std::set<TraceWord>;

const WordSet& traces_rec(FormulaStore& store, NodeId id, std::size_t bound,
                          std::map<std::pair<NodeId, std::size_t>, WordSet>& memo) {
    const auto key = std::make_pair(id, bound);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    WordSet out;
    const FormulaNode& n = store.node(id);
    switch (n.kind) {
        case NodeKind::True:
            out.insert(TraceWord{});
            break;
        case NodeKind::Diamond:
            if (bound >= 1) {
                out.insert(TraceWord{n.action});
                for (const TraceWord& w :
                     traces_rec(store, n.child, bound - 1, memo)) {
                    TraceWord ext{n.action};
                    ext.insert(ext.end(), w.begin(), w.end());
                    out.insert(std::move(ext));
                }
            }
            break;
        case NodeKind::Neg:
            out = traces_rec(store, n.child, bound, memo);
            break;
        case NodeKind::And:
            for (NodeId c : n.children) {
                const WordSet& sub = traces_rec(store, c, bound, memo);
                out.insert(sub.begin(), sub.end());
            }
            break;
    }
    return memo.emplace(key, std::move(out)).first->second;
}

}  // namespace

std::set<TraceWord> formula_traces(FormulaStore& store, NodeId id,
                                   std::size_t length_bound) {
    std::map<std::pair<NodeId, std::size_t>, WordSet> memo;
    return traces_rec(store, id, length_bound, memo);
}

namespace {

NodeId collapse_rec(FormulaStore& store, NodeId id,
                    std::unordered_map<NodeId, NodeId>& memo) {
    if (auto it = memo.find(id); it != memo.end()) return it->second;
    const FormulaNode n = store.node(id);  // copy: store may grow below
    NodeId out = id;
    switch (n.kind) {
        case NodeKind::True:
            break;
        case NodeKind::Diamond:
            out = store.mk_diamond(n.action, collapse_rec(store, n.child, memo));
            break;
        case NodeKind::Neg: {
            const FormulaNode& c = store.node(n.child);
            if (c.kind == NodeKind::Neg)
                out = collapse_rec(store, c.child, memo);
            else
                out = store.mk_neg(collapse_rec(store, n.child, memo));
            break;
        }
        case NodeKind::And: {
            std::vector<NodeId> kids;
            kids.reserve(n.children.size());
            for (NodeId c : n.children)
                kids.push_back(collapse_rec(store, c, memo));
            out = store.mk_and(kids);
            break;
        }
    }
    memo.emplace(id, out);
    return out;
}

}  // namespace

NodeId normalize_double_negation(FormulaStore& store, NodeId id) {
    std::unordered_map<NodeId, NodeId> memo;
    return collapse_rec(store, id, memo);
}

namespace {

// Tree positions are child-index paths into the unfolded tree.
using Path = std::vector<std::uint32_t>;

void collect_positions(const FormulaStore& store, NodeId id, Path& prefix,
                       std::vector<Path>& out, std::size_t budget) {
    const FormulaNode& n = store.node(id);
    if (n.kind == NodeKind::True) return;
    if (out.size() > budget)
        throw std::runtime_error(
            "reduce_irreducible: unfolded tree exceeds occurrence budget");
    // children before the node itself: bottom-up, leftmost first
    if (n.kind == NodeKind::Diamond || n.kind == NodeKind::Neg) {
        prefix.push_back(0);
        collect_positions(store, n.child, prefix, out, budget);
        prefix.pop_back();
    } else if (n.kind == NodeKind::And) {
        for (std::uint32_t i = 0; i < n.children.size(); ++i) {
            prefix.push_back(i);
            collect_positions(store, n.children[i], prefix, out, budget);
            prefix.pop_back();
        }
    }
    out.push_back(prefix);
}

NodeId replace_at(FormulaStore& store, NodeId id, const Path& path,
                  std::size_t depth) {
    if (depth == path.size()) return store.mk_true();
    const FormulaNode n = store.node(id);  // copy: store may grow below
    switch (n.kind) {
        case NodeKind::Diamond:
            return store.mk_diamond(
                n.action, replace_at(store, n.child, path, depth + 1));
        case NodeKind::Neg:
            return store.mk_neg(replace_at(store, n.child, path, depth + 1));
        case NodeKind::And: {
            std::vector<NodeId> kids = n.children;
            kids[path[depth]] =
                replace_at(store, kids[path[depth]], path, depth + 1);
            return store.mk_and(kids);
        }
        case NodeKind::True:
            break;
    }
    return id;
}

}  // namespace

namespace {

// all reachable non-true nodes, children before parents
std::vector<NodeId> postorder_nodes(const FormulaStore& store, NodeId root) {
    std::vector<NodeId> order;
    std::set<NodeId> seen;
    std::vector<std::pair<NodeId, bool>> stack{{root, false}};
    while (!stack.empty()) {
        auto [cur, expanded] = stack.back();
        stack.pop_back();
        const FormulaNode& n = store.node(cur);
        if (n.kind == NodeKind::True) continue;
        if (expanded) {
            order.push_back(cur);
            continue;
        }
        if (!seen.insert(cur).second) continue;
        stack.emplace_back(cur, true);
        if (n.kind == NodeKind::And) {
            for (auto it = n.children.rbegin(); it != n.children.rend(); ++it)
                stack.emplace_back(*it, false);
        } else {
            stack.emplace_back(n.child, false);
        }
    }
    return order;
}

// rebuild with every occurrence of `victim` replaced by true
NodeId replace_node(FormulaStore& store, NodeId id, NodeId victim,
                    std::unordered_map<NodeId, NodeId>& memo) {
    if (id == victim) return store.mk_true();
    if (auto it = memo.find(id); it != memo.end()) return it->second;
    const FormulaNode n = store.node(id);  // copy: store may grow below
    NodeId out = id;
    switch (n.kind) {
        case NodeKind::True:
            break;
        case NodeKind::Diamond:
            out = store.mk_diamond(n.action,
                                   replace_node(store, n.child, victim, memo));
            break;
        case NodeKind::Neg:
            out = store.mk_neg(replace_node(store, n.child, victim, memo));
            break;
        case NodeKind::And: {
            std::vector<NodeId> kids;
            kids.reserve(n.children.size());
            for (NodeId c : n.children)
                kids.push_back(replace_node(store, c, victim, memo));
            out = store.mk_and(kids);
            break;
        }
    }
    memo.emplace(id, out);
    return out;
}

}  // namespace

NodeId reduce_irreducible(FormulaStore& store, NodeId id, const Lts& lts,
                          StateId s, StateId t,
                          std::size_t occurrence_budget) {
    if (!store.distinguishes(id, lts, s, t))
        throw std::invalid_argument(
            "reduce_irreducible: formula does not distinguish the states");

    // Phase 1, on the DAG: drop whole shared subterms (all occurrences at
    // once) while the distinction survives. This keeps the later
    // tree-occurrence pass tractable when sharing hides an enormous
    // unfolding, and cannot break the end property that phase 2 enforces.
    bool changed = true;
    while (changed) {
        changed = false;
        for (NodeId victim : postorder_nodes(store, id)) {
            if (victim == id) continue;
            std::unordered_map<NodeId, NodeId> memo;
            const NodeId candidate = replace_node(store, id, victim, memo);
            if (candidate != id && store.distinguishes(candidate, lts, s, t)) {
                id = candidate;
                changed = true;
                break;
            }
        }
    }

    // Phase 2, on the unfolded tree: single occurrences, bottom-up and
    // leftmost first, repeated to a fixpoint.
    changed = true;
    while (changed) {
        changed = false;
        std::vector<Path> positions;
        Path prefix;
        collect_positions(store, id, prefix, positions, occurrence_budget);
        for (const Path& pos : positions) {
            if (pos.empty()) continue;  // the whole formula never survives
            const NodeId candidate = replace_at(store, id, pos, 0);
            if (candidate != id && store.distinguishes(candidate, lts, s, t)) {
                id = candidate;
                changed = true;
                break;
            }
        }
    }
    return id;
}

}  // namespace hmldist
