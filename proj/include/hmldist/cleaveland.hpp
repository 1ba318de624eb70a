// Baseline distinguishing-formula generator in the style of Cleaveland:
// partition refinement with a pluggable splitter-selection strategy
// (latest-created block by default), keeping the full splitting tree, then
// formula extraction by back-tracking the splits. Outputs are validated
// semantically and post-processed to be irreducible.
#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "hmldist/hml.hpp"
#include "hmldist/lts.hpp"

namespace hmldist {

enum class SplitterStrategy : std::uint8_t { LatestBlock, OldestBlock };

class SplitTree {
public:
    static constexpr std::uint32_t kNone = 0xffffffffu;

    struct Node {
        std::vector<StateId> states;    // frozen at creation, sorted
        std::uint32_t parent = kNone;
        // set on split:
        std::uint32_t child_in = kNone;   // members with an a-edge into the splitter
        std::uint32_t child_out = kNone;  // the rest
        ActionId action = 0;
        std::uint32_t splitter = kNone;   // node id of the splitter block
        std::uint32_t order = kNone;      // split sequence number
        bool is_split() const { return child_in != kNone; }
    };

    const Node& node(std::uint32_t id) const { return nodes_[id]; }
    std::size_t size() const { return nodes_.size(); }
    std::uint32_t root() const { return 0; }

    /// Number of splits performed; replaying them in order from {S}
    /// reproduces the final partition.
    std::size_t num_splits() const { return splits_; }

    /// Node ids of the final partition's blocks (the leaves).
    const std::vector<std::uint32_t>& leaves() const { return leaves_; }

    /// Final block (leaf node id) of a state.
    std::uint32_t leaf_of(StateId s) const { return leaf_of_[s]; }

private:
    friend SplitTree cleaveland_refine(const Lts&, SplitterStrategy);
    std::vector<Node> nodes_;
    std::vector<std::uint32_t> leaves_;
    std::vector<std::uint32_t> leaf_of_;
    std::size_t splits_ = 0;
};

SplitTree cleaveland_refine(const Lts& lts,
                            SplitterStrategy strategy =
                                SplitterStrategy::LatestBlock);

/// Formula extraction over one split tree. Block formulas are memoized, so
/// distinguishing many pairs over the same tree shares work and structure.
class CleavelandGenerator {
public:
    CleavelandGenerator(const Lts& lts, const SplitTree& tree,
                        FormulaStore& store)
        : lts_(lts), tree_(tree), store_(store) {}

    /// Distinguishing formula for s,t (irreducible, validated by the
    /// caller's evaluate if desired). Throws std::invalid_argument when
    /// the states share a leaf, i.e. are bisimilar.
    NodeId formula(StateId s, StateId t);

private:
    NodeId split_formula(std::uint32_t node);  // holds on child_in, fails on child_out

    const Lts& lts_;
    const SplitTree& tree_;
    FormulaStore& store_;
    std::unordered_map<std::uint32_t, NodeId> memo_;
};

/// One-shot convenience wrapper around CleavelandGenerator plus the
/// irreducibility post-pass.
NodeId cleaveland_formula(const Lts& lts, const SplitTree& tree,
                          FormulaStore& store, StateId s, StateId t);

}  // namespace hmldist
