// The CNF-SAT -> LTS construction: a satisfiable formula yields a short
// trace separating the two designated states, so deciding short
// distinguishing traces embeds SAT. This module builds those instances,
// reads DIMACS, and decides SAT through the trace search (exponential
// search by design; the decision problem is NP-complete).
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hmldist/lts.hpp"

namespace hmldist {

struct CnfInstance {
    std::uint32_t num_props = 0;  // propositions p_1..p_k, k >= 1
    // literals +i / -i with 1 <= i <= num_props; kept verbatim (duplicate
    // literals and tautological clauses included)
    std::vector<std::vector<std::int32_t>> clauses;
};

CnfInstance parse_dimacs(std::string_view text);
std::string write_dimacs(const CnfInstance& cnf);

using Assignment = std::vector<bool>;  // index i-1 holds the value of p_i

bool clause_satisfied(const std::vector<std::int32_t>& clause,
                      const Assignment& rho);
bool satisfies(const CnfInstance& cnf, const Assignment& rho);

/// The generated instance. State ids: sat_i at i, bot_i at (k+1)+i, the
/// i-th layer of clause c (1-based) at (c+1)(k+1)+i, then s, t, delta.
/// Actions: p_i at 2(i-1), its negation at 2(i-1)+1, then init, flag.
struct ReductionLts {
    Lts lts;
    std::uint32_t num_props = 0;
    std::uint32_t num_clauses = 0;
    StateId s = 0;
    StateId t = 0;
    StateId delta = 0;

    StateId sat_state(std::uint32_t layer) const {
        return static_cast<StateId>(layer);
    }
    StateId bot_state(std::uint32_t layer) const {
        return static_cast<StateId>((num_props + 1) + layer);
    }
    StateId unsat_state(std::uint32_t clause, std::uint32_t layer) const {
        return static_cast<StateId>((clause + 1) * (num_props + 1) + layer);
    }
    ActionId pos_action(std::uint32_t prop) const {
        return static_cast<ActionId>(2 * (prop - 1));
    }
    ActionId neg_action(std::uint32_t prop) const {
        return static_cast<ActionId>(2 * (prop - 1) + 1);
    }
    ActionId init_action() const {
        return static_cast<ActionId>(2 * num_props);
    }
    ActionId flag_action() const {
        return static_cast<ActionId>(2 * num_props + 1);
    }
};

ReductionLts build_lts(const CnfInstance& cnf);

/// The truth-assignment word: one action per proposition layer, in order.
TraceWord assignment_to_trace(const ReductionLts& red, const Assignment& rho);

/// Inverse of assignment_to_trace; throws std::invalid_argument on words
/// that are not truth-assignment words (wrong length, order, or action).
Assignment trace_to_assignment(const ReductionLts& red, const TraceWord& w);

/// Shortest word of length <= max_len that exactly one of s,t can trace,
/// by breadth-first search over the determinized pair; nullopt if none.
/// Worst-case exponential in max_len.
std::optional<TraceWord> trace_dist_search(const Lts& lts, StateId s,
                                           StateId t, std::size_t max_len);

struct SatResult {
    bool satisfiable = false;
    Assignment assignment;  // satisfying, when satisfiable
};

/// Decides SAT by building the reduction LTS and searching for a
/// distinguishing trace of length num_props + 2.
SatResult sat_via_traces(const CnfInstance& cnf);

}  // namespace hmldist
