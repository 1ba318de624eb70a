// Iterative partition refinement and the distance measures driving the
// distinguishing-formula algorithms.
//
// refine_sequence computes the chain pi_0 >= pi_1 >= ... >= pi_K where the
// i-th partition induces i-bisimilarity and pi_K is stable. dist(s,t) is
// the least level separating s and t; dirdist is the directed minimal
// negation-depth needed on top of a given observation budget.
#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "hmldist/lts.hpp"

namespace hmldist {

class PartitionSequence {
public:
    /// Stabilization level K; levels 0..K are stored and pi_K is a fixpoint
    /// of Refine.
    std::size_t depth() const { return block_of_.size() - 1; }

    std::size_t num_states() const {
        return block_of_.empty() ? 0 : block_of_[0].size();
    }

    std::uint32_t block_of(std::size_t level, StateId s) const {
        return block_of_[level][s];
    }
    std::size_t num_blocks(std::size_t level) const {
        return num_blocks_[level];
    }
    bool same_block(std::size_t level, StateId s, StateId t) const {
        return block_of_[level][s] == block_of_[level][t];
    }
    /// s ~_{pi_i} t with i clamped to the stable level, so it answers
    /// i-bisimilarity for every i.
    bool equivalent_at(std::uint64_t level, StateId s, StateId t) const {
        const std::size_t k = depth();
        return same_block(level < k ? static_cast<std::size_t>(level) : k, s, t);
    }

    /// Least i with s !~_{pi_i} t, kInf when bisimilar. O(log K) via the
    /// refinement chain; no quadratic table is kept.
    std::uint32_t dist(StateId s, StateId t) const;

    /// Blocks of one level as sorted state lists, ordered by smallest state.
    std::vector<std::vector<StateId>> blocks(std::size_t level) const;

private:
    friend PartitionSequence refine_sequence(const Lts& lts);
    std::vector<std::vector<std::uint32_t>> block_of_;  // per level
    std::vector<std::size_t> num_blocks_;
};

PartitionSequence refine_sequence(const Lts& lts);

/// spl_a(U, V): the members of U with an a-successor in V.
StateSet split_on(const Lts& lts, const StateSet& u, ActionId a,
                  const StateSet& v);

struct ObsPair {
    ActionId action;
    StateId target;

    friend auto operator<=>(const ObsPair&, const ObsPair&) = default;
};

/// splpairs_i(s,t): pairs (a,s') with s -a-> s' such that every a-successor
/// t' of t satisfies dist(s',t') <= i-1. Requires i >= 1.
std::vector<ObsPair> splpairs(const Lts& lts, const PartitionSequence& seq,
                              std::uint64_t level, StateId s, StateId t);

/// Lazily memoized dirdist_i(s,t) values plus the helpers layered on them.
/// Mutates under memoization: single-threaded access contract.
class DirDistTable {
public:
    DirDistTable(const Lts& lts, const PartitionSequence& seq)
        : lts_(lts), seq_(seq) {}

    /// Directed minimal negation-depth at observation bound `level`; kInf
    /// iff the states are level-bisimilar. Each (level,s,t) is computed
    /// once.
    std::uint32_t dirdist(std::uint64_t level, StateId s, StateId t);

    /// splpairs_i(s,t) narrowed to pairs whose every t-match needs at most
    /// `negbound` negations one level down.
    std::vector<ObsPair> hat_splpairs(std::uint64_t level,
                                      std::uint32_t negbound, StateId s,
                                      StateId t);

    /// s below t in m-nested level-similarity inclusion; decided via
    /// dirdist(level,s,t) > m.
    bool nested_sim_holds(std::uint64_t level, std::uint32_t m, StateId s,
                          StateId t);

    const Lts& lts() const { return lts_; }
    const PartitionSequence& sequence() const { return seq_; }

private:
    const Lts& lts_;
    const PartitionSequence& seq_;
    std::unordered_map<std::uint64_t, std::uint32_t> memo_;
};

}  // namespace hmldist
