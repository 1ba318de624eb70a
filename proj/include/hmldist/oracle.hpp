// Brute-force reference implementations. Deliberately literal and slow:
// they exist to cross-check the fast modules on tiny instances, both in the
// test suites and behind the CLI's --oracle flag.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hmldist/hml.hpp"
#include "hmldist/lts.hpp"

namespace hmldist::oracle {

/// Dense relation over S x S.
class Relation {
public:
    Relation(std::size_t n, bool fill) : n_(n), rows_(n, StateSet(n)) {
        if (fill)
            for (auto& row : rows_) row.set();
    }
    bool contains(StateId s, StateId t) const { return rows_[s].test(t); }
    void add(StateId s, StateId t) { rows_[s].set(t); }
    void remove(StateId s, StateId t) { rows_[s].reset(t); }
    std::size_t size() const { return n_; }
    bool operator==(const Relation&) const = default;

private:
    std::size_t n_;
    std::vector<StateSet> rows_;
};

/// Canonical class ids (first-occurrence numbering) for levels 0..k of the
/// inductive k-bisimilarity definition: level 0 relates everything, level
/// j+1 matches successors against level j in both directions.
std::vector<std::vector<std::uint32_t>> naive_kbisim(const Lts& lts,
                                                     std::size_t k);

/// Similarity as a greatest fixpoint by iterated removal from S x S.
Relation naive_similarity(const Lts& lts);

/// m-nested k-similarity inclusion, literally by the two clauses of its
/// inductive definition on (k, m).
Relation naive_nested_sim(const Lts& lts, std::size_t k, std::size_t m);

/// m-nested similarity inclusion without an observation bound: level 0 is
/// similarity, level m+1 the greatest relation inside the (m)-symmetric
/// core that is forward-closed.
Relation naive_nested_sim_unbounded(const Lts& lts, std::size_t m);

/// All denotations of formulas with depth <= depth_bound and negation
/// depth <= neg_bound, as bitmasks over states. Guarded to small systems
/// (|S| <= 16): the closure can reach 2^|S| sets.
std::vector<std::uint64_t> denotations(const Lts& lts, std::size_t depth_bound,
                                       std::size_t neg_bound);

/// Some formula in F_{depth}^{neg} tells s and t apart (either direction).
bool enumerate_formulas(const Lts& lts, StateId s, StateId t,
                        std::size_t depth_bound, std::size_t neg_bound);

/// Directed variant: some formula in the fragment holds at s but not t.
bool exists_directed(const Lts& lts, StateId s, StateId t,
                     std::size_t depth_bound, std::size_t neg_bound);

/// Some formula of depth <= depth_bound and arbitrary negation depth
/// distinguishes; negations are saturated to a fixpoint internally.
bool exists_at_depth(const Lts& lts, StateId s, StateId t,
                     std::size_t depth_bound);

/// All denotations reachable at the given depth with the negation budget
/// saturated (the full depth-bounded fragment).
std::vector<std::uint64_t> denotations_saturated(const Lts& lts,
                                                 std::size_t depth_bound);

/// A distinguishing formula of minimal tree size (number of modalities),
/// or nullopt if none within max_size. Exhausts all smaller sizes first,
/// enumerating canonical forms by denotation. Guarded to |S| <= 64 and
/// max_size <= 8.
std::optional<NodeId> enumerate_min_formula(const Lts& lts,
                                            FormulaStore& store, StateId s,
                                            StateId t, std::size_t max_size);

/// Reference evaluator: plain tree walk, no memo, recomputes shared
/// subterms per occurrence.
StateSet eval_reference(const FormulaStore& store, NodeId id, const Lts& lts);

}  // namespace hmldist::oracle
