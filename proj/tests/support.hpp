// Shared helpers for the test suites.
#pragma once

#include <cstdint>
#include <random>
#include <unordered_map>
#include <vector>

#include "hmldist/equivalences.hpp"
#include "hmldist/generators.hpp"
#include "hmldist/hml.hpp"
#include "hmldist/lts.hpp"

namespace hmldist::testing {

/// Deterministic small-instance corpus (2..8 states, 1..3 actions).
inline Lts corpus_lts(std::uint64_t i) {
    RandomLtsConfig cfg;
    cfg.states = 2 + i % 7;
    cfg.actions = 1 + i % 3;
    cfg.density = 1.0 + 0.5 * static_cast<double>(i % 5);
    cfg.seed = 0xC0FFEE00ull + i;
    return gen_random(cfg);
}

/// First-occurrence renumbering, so two class vectors describe the same
/// partition iff their canonical forms are equal. Class ids may come from
/// any range (block ids, split-tree node ids, ...).
inline std::vector<std::uint32_t> canon(const std::vector<std::uint32_t>& cls) {
    std::unordered_map<std::uint32_t, std::uint32_t> rename;
    std::vector<std::uint32_t> out(cls.size());
    std::uint32_t next = 0;
    for (std::size_t s = 0; s < cls.size(); ++s) {
        auto [it, fresh] = rename.emplace(cls[s], next);
        if (fresh) ++next;
        out[s] = it->second;
    }
    return out;
}

inline std::vector<std::uint32_t> level_classes(const PartitionSequence& seq,
                                                std::size_t level) {
    std::vector<std::uint32_t> out(seq.num_states());
    for (StateId s = 0; s < out.size(); ++s)
        out[s] = seq.block_of(level, s);
    return canon(out);
}

/// Random formula over the lts's actions; used to fuzz evaluation and the
/// text round trip.
inline NodeId random_formula(FormulaStore& store, const Lts& lts,
                             std::mt19937_64& rng, std::size_t depth) {
    const std::size_t shape = depth == 0 ? rng() % 2 : rng() % 5;
    switch (shape) {
        case 0:
            return store.mk_true();
        case 1:
            return store.mk_neg(random_formula(store, lts, rng, depth));
        case 2:
        case 3: {
            const ActionId a =
                static_cast<ActionId>(rng() % std::max<std::size_t>(
                                                  1, lts.num_actions()));
            return store.mk_diamond(a,
                                    random_formula(store, lts, rng, depth - 1));
        }
        default: {
            const NodeId l = random_formula(store, lts, rng, depth - 1);
            const NodeId r = random_formula(store, lts, rng, depth - 1);
            return store.mk_and({l, r});
        }
    }
}

}  // namespace hmldist::testing
