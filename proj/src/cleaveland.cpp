#include "hmldist/cleaveland.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace hmldist {

SplitTree cleaveland_refine(const Lts& lts, SplitterStrategy strategy) {
    SplitTree tree;
    const std::size_t n = lts.num_states();

    SplitTree::Node root;
    root.states.resize(n);
    for (StateId s = 0; s < n; ++s) root.states[s] = s;
    tree.nodes_.push_back(std::move(root));
    tree.leaves_ = {0};

    std::deque<std::uint32_t> worklist{0};
    StateSet splitter_set(n);
    while (!worklist.empty()) {
        std::uint32_t splitter;
        if (strategy == SplitterStrategy::LatestBlock) {
            splitter = worklist.back();
            worklist.pop_back();
        } else {
            splitter = worklist.front();
            worklist.pop_front();
        }
        splitter_set.reset();
        for (StateId s : tree.nodes_[splitter].states) splitter_set.set(s);

        for (ActionId a = 0; a < lts.num_actions(); ++a) {
            const std::vector<std::uint32_t> snapshot = tree.leaves_;
            for (std::uint32_t leaf : snapshot) {
                std::vector<StateId> in, out;
                for (StateId s : tree.nodes_[leaf].states) {
                    bool hit = false;
                    for (StateId succ : lts.successors(s, a)) {
                        if (splitter_set.test(succ)) {
                            hit = true;
                            break;
                        }
                    }
                    (hit ? in : out).push_back(s);
                }
                if (in.empty() || out.empty()) continue;

                const std::uint32_t in_id =
                    static_cast<std::uint32_t>(tree.nodes_.size());
                const std::uint32_t out_id = in_id + 1;
                SplitTree::Node child_in;
                child_in.states = std::move(in);
                child_in.parent = leaf;
                SplitTree::Node child_out;
                child_out.states = std::move(out);
                child_out.parent = leaf;
                tree.nodes_.push_back(std::move(child_in));
                tree.nodes_.push_back(std::move(child_out));

                SplitTree::Node& parent = tree.nodes_[leaf];
                parent.child_in = in_id;
                parent.child_out = out_id;
                parent.action = a;
                parent.splitter = splitter;
                parent.order = static_cast<std::uint32_t>(tree.splits_++);

                std::replace(tree.leaves_.begin(), tree.leaves_.end(), leaf,
                             in_id);
                tree.leaves_.push_back(out_id);
                worklist.push_back(in_id);
                worklist.push_back(out_id);
            }
        }
    }

    tree.leaf_of_.assign(n, SplitTree::kNone);
    for (std::uint32_t leaf : tree.leaves_)
        for (StateId s : tree.nodes_[leaf].states) tree.leaf_of_[s] = leaf;
    return tree;
}

NodeId CleavelandGenerator::split_formula(std::uint32_t id) {
    if (auto it = memo_.find(id); it != memo_.end()) return it->second;
    const SplitTree::Node& node = tree_.node(id);
    if (!node.is_split())
        throw std::logic_error("split_formula on an unsplit block");

    // ancestor chain of the splitter, bottom-up, for locating the deepest
    // tree node that still contains a stray successor
    std::vector<std::uint32_t> chain;
    for (std::uint32_t cur = node.splitter; cur != SplitTree::kNone;
         cur = tree_.node(cur).parent)
        chain.push_back(cur);

    // every a-successor of the out-side falls outside the splitter; each
    // one must be excluded by a conjunct that holds on the whole splitter
    std::set<std::pair<std::uint32_t, bool>> picked;  // (ancestor, negate)
    for (StateId s : tree_.node(node.child_out).states) {
        for (StateId succ : lts_.successors(s, node.action)) {
            std::size_t i = 1;
            while (i < chain.size()) {
                const auto& states = tree_.node(chain[i]).states;
                if (std::binary_search(states.begin(), states.end(), succ))
                    break;
                ++i;
            }
            // chain[i] contains succ, chain[i-1] is the splitter's side
            const SplitTree::Node& anc = tree_.node(chain[i]);
            picked.emplace(chain[i], anc.child_in != chain[i - 1]);
        }
    }

    std::vector<NodeId> conjuncts;
    for (const auto& [anc, negate] : picked) {
        const NodeId part = split_formula(anc);
        conjuncts.push_back(negate ? store_.mk_neg(part) : part);
    }
    const NodeId body =
        conjuncts.empty() ? store_.mk_true() : store_.mk_and(conjuncts);
    const NodeId result = store_.mk_diamond(node.action, body);
    memo_.emplace(id, result);
    return result;
}

NodeId CleavelandGenerator::formula(StateId s, StateId t) {
    if (tree_.leaf_of(s) == tree_.leaf_of(t))
        throw std::invalid_argument("cleaveland: states are bisimilar");
    // descend to the node where the pair separates
    std::uint32_t cur = tree_.root();
    while (true) {
        const SplitTree::Node& node = tree_.node(cur);
        if (!node.is_split())
            throw std::logic_error("cleaveland: pair never separates");
        const auto& in_states = tree_.node(node.child_in).states;
        const bool s_in =
            std::binary_search(in_states.begin(), in_states.end(), s);
        const bool t_in =
            std::binary_search(in_states.begin(), in_states.end(), t);
        if (s_in != t_in) {
            const NodeId f = split_formula(cur);
            return s_in ? f : store_.mk_neg(f);
        }
        cur = s_in ? node.child_in : node.child_out;
    }
}

NodeId cleaveland_formula(const Lts& lts, const SplitTree& tree,
                          FormulaStore& store, StateId s, StateId t) {
    CleavelandGenerator gen(lts, tree, store);
    const NodeId raw = gen.formula(s, t);
    return reduce_irreducible(store, raw, lts, s, t);
}

}  // namespace hmldist
