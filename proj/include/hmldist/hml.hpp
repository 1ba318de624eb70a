// Hash-consed Hennessy-Milner formulas.
//
// Formulas live in a FormulaStore as a DAG of nodes; structurally equal
// constructions always return the same NodeId, which is what makes the
// shared-term representation of distinguishing formulas cheap. Conjunctions
// are n-ary with sorted, duplicate-free children and no directly nested
// conjunction; `true` conjuncts are dropped. Double negation is NOT
// collapsed at construction so the metrics of raw algorithm output stay
// faithful; use normalize_double_negation for the rewriting pass.
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <unordered_map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hmldist/lts.hpp"

namespace hmldist {

using NodeId = std::uint32_t;

enum class NodeKind : std::uint8_t { True, Diamond, Neg, And };

struct FormulaNode {
    NodeKind kind = NodeKind::True;
    ActionId action = 0;            // Diamond
    NodeId child = 0;               // Diamond, Neg
    std::vector<NodeId> children;   // And: sorted, distinct, size >= 2
};

struct Metrics {
    boost::multiprecision::cpp_int size;  // modalities in the unfolded tree
    std::uint64_t dag_size = 0;           // distinct diamond nodes reachable
    std::uint32_t depth = 0;
    std::uint32_t negdepth = 0;
};

class FormulaStore {
public:
    FormulaStore() : FormulaStore(std::make_shared<ActionTable>()) {}
    explicit FormulaStore(std::shared_ptr<ActionTable> actions);

    const ActionTable& actions() const { return *actions_; }
    ActionId action(std::string_view text) { return actions_->intern(text); }

    NodeId mk_true() const { return 0; }
    NodeId mk_diamond(ActionId a, NodeId child);
    NodeId mk_neg(NodeId child);
    /// Throws std::invalid_argument on an empty list; use mk_true instead.
    NodeId mk_and(std::span<const NodeId> children);
    NodeId mk_and(std::initializer_list<NodeId> children) {
        return mk_and(std::span<const NodeId>(children.begin(), children.size()));
    }

    const FormulaNode& node(NodeId id) const { return nodes_[id]; }
    std::size_t num_nodes() const { return nodes_.size(); }

    /// Set of states satisfying the formula, per the standard semantics.
    /// Memoized per (node, lts address); the Lts must stay alive as long as
    /// its cache entries are used. The Lts must share this store's
    /// ActionTable; actions the lts never transitions on denote the empty
    /// set under a diamond.
    const StateSet& evaluate(NodeId id, const Lts& lts);

    bool distinguishes(NodeId id, const Lts& lts, StateId s, StateId t) {
        const StateSet& sem = evaluate(id, lts);
        return sem.test(s) != sem.test(t);
    }

    /// size/depth/negdepth by the recursive equations over the unfolded
    /// tree (computed as memoized arithmetic on the DAG); dag_size counts
    /// distinct reachable diamond nodes.
    Metrics metrics(NodeId id);

    /// Number of nodes of the unfolded tree; can be astronomically larger
    /// than the DAG.
    boost::multiprecision::cpp_int tree_nodes(NodeId id);

private:
    struct Key {
        NodeKind kind;
        ActionId action;
        std::vector<NodeId> children;  // [child] for Diamond/Neg
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const;
    };

    NodeId intern(FormulaNode&& node);

    std::shared_ptr<ActionTable> actions_;
    std::vector<FormulaNode> nodes_;
    std::unordered_map<Key, NodeId, KeyHash> index_;

    struct MetricEntry {
        boost::multiprecision::cpp_int size;
        boost::multiprecision::cpp_int tree_nodes;
        std::uint32_t depth = 0;
        std::uint32_t negdepth = 0;
        bool ready = false;
    };
    std::vector<MetricEntry> metric_memo_;
    const MetricEntry& metric_entry(NodeId id);

    std::unordered_map<const Lts*, std::unordered_map<NodeId, StateSet>> eval_;
};

/// phi_w: phi_eps = true and phi_{aw} = <a>phi_w.
NodeId trace_formula(FormulaStore& store, const TraceWord& w);

/// { w in traces(phi) : |w| <= length_bound } per the defining equations.
/// Note eps is not a trace of <a>phi.
std::set<TraceWord> formula_traces(FormulaStore& store, NodeId id,
                                   std::size_t length_bound);

/// Rewrites !!phi -> phi everywhere.
NodeId normalize_double_negation(FormulaStore& store, NodeId id);

/// Greedily replaces subformula occurrences of the unfolded tree by `true`,
/// bottom-up and leftmost first, as long as the result still distinguishes
/// s and t; repeats to a fixpoint. The result distinguishes s and t and no
/// single remaining non-trivial occurrence can be replaced by `true`
/// without breaking that. Throws std::invalid_argument if the input does
/// not distinguish the pair, std::runtime_error if the unfolded tree
/// exceeds the occurrence budget.
NodeId reduce_irreducible(FormulaStore& store, NodeId id, const Lts& lts,
                          StateId s, StateId t,
                          std::size_t occurrence_budget = 1u << 20);

}  // namespace hmldist
