#include "hmldist/oracle.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace hmldist::oracle {

namespace {

// Does every a-successor of s have an R-partner among the a-successors of
// t? The one-sided transfer condition shared by all relations here.
bool transfers(const Lts& lts, const Relation& r, StateId s, StateId t) {
    for (ActionId a = 0; a < lts.num_actions(); ++a) {
        for (StateId sp : lts.successors(s, a)) {
            bool matched = false;
            for (StateId tp : lts.successors(t, a)) {
                if (r.contains(sp, tp)) {
                    matched = true;
                    break;
                }
            }
            if (!matched) return false;
        }
    }
    return true;
}

std::vector<std::uint32_t> canonical_classes(const Relation& r) {
    const std::size_t n = r.size();
    std::vector<std::uint32_t> cls(n, 0);
    std::uint32_t next = 0;
    for (StateId s = 0; s < n; ++s) {
        bool found = false;
        for (StateId t = 0; t < s; ++t) {
            if (r.contains(s, t)) {
                cls[s] = cls[t];
                found = true;
                break;
            }
        }
        if (!found) cls[s] = next++;
    }
    return cls;
}

}  // namespace

std::vector<std::vector<std::uint32_t>> naive_kbisim(const Lts& lts,
                                                     std::size_t k) {
    const std::size_t n = lts.num_states();
    std::vector<std::vector<std::uint32_t>> levels;
    Relation current(n, true);
    levels.push_back(canonical_classes(current));
    for (std::size_t round = 1; round <= k; ++round) {
        Relation next(n, false);
        for (StateId s = 0; s < n; ++s)
            for (StateId t = 0; t < n; ++t)
                if (transfers(lts, current, s, t) &&
                    transfers(lts, current, t, s))
                    next.add(s, t);
        levels.push_back(canonical_classes(next));
        current = std::move(next);
    }
    return levels;
}

Relation naive_similarity(const Lts& lts) {
    const std::size_t n = lts.num_states();
    Relation r(n, true);
    bool changed = true;
    while (changed) {
        changed = false;
        for (StateId s = 0; s < n; ++s) {
            for (StateId t = 0; t < n; ++t) {
                if (r.contains(s, t) && !transfers(lts, r, s, t)) {
                    r.remove(s, t);
                    changed = true;
                }
            }
        }
    }
    return r;
}

Relation naive_nested_sim(const Lts& lts, std::size_t k, std::size_t m) {
    const std::size_t n = lts.num_states();
    // grid over (observation budget, negation budget), built bottom-up
    std::vector<std::vector<Relation>> grid(
        k + 1, std::vector<Relation>(m + 1, Relation(n, true)));
    for (std::size_t kk = 1; kk <= k; ++kk) {
        for (std::size_t mm = 0; mm <= m; ++mm) {
            Relation rel(n, false);
            const Relation& fwd = grid[kk - 1][mm];
            for (StateId s = 0; s < n; ++s) {
                for (StateId t = 0; t < n; ++t) {
                    if (!transfers(lts, fwd, s, t)) continue;
                    if (mm > 0) {
                        const Relation& back = grid[kk - 1][mm - 1];
                        if (!transfers(lts, back, t, s)) continue;
                    }
                    rel.add(s, t);
                }
            }
            grid[kk][mm] = std::move(rel);
        }
    }
    return grid[k][m];
}

Relation naive_nested_sim_unbounded(const Lts& lts, std::size_t m) {
    const std::size_t n = lts.num_states();
    Relation level = naive_similarity(lts);
    for (std::size_t mm = 1; mm <= m; ++mm) {
        // greatest relation inside the symmetric core of the previous
        // level that is closed under forward transfer
        Relation next(n, false);
        for (StateId s = 0; s < n; ++s)
            for (StateId t = 0; t < n; ++t)
                if (level.contains(s, t) && level.contains(t, s))
                    next.add(s, t);
        bool changed = true;
        while (changed) {
            changed = false;
            for (StateId s = 0; s < n; ++s) {
                for (StateId t = 0; t < n; ++t) {
                    if (next.contains(s, t) && !transfers(lts, next, s, t)) {
                        next.remove(s, t);
                        changed = true;
                    }
                }
            }
        }
        level = std::move(next);
    }
    return level;
}

namespace {

constexpr std::size_t kMaxDenotationStates = 16;

struct MaskContext {
    std::size_t n;
    std::uint64_t full;
    // successor mask per (action, state)
    std::vector<std::vector<std::uint64_t>> succ;

    explicit MaskContext(const Lts& lts) : n(lts.num_states()) {
        full = n >= 64 ? ~0ull : ((1ull << n) - 1);
        succ.assign(lts.num_actions(), std::vector<std::uint64_t>(n, 0));
        for (ActionId a = 0; a < lts.num_actions(); ++a)
            for (StateId s = 0; s < n; ++s)
                for (StateId t : lts.successors(s, a))
                    succ[a][s] |= 1ull << t;
    }

    std::uint64_t dia(ActionId a, std::uint64_t x) const {
        std::uint64_t out = 0;
        for (StateId s = 0; s < n; ++s)
            if (succ[a][s] & x) out |= 1ull << s;
        return out;
    }
};

void close_under_intersection(std::set<std::uint64_t>& sets) {
    std::vector<std::uint64_t> items(sets.begin(), sets.end());
    for (std::size_t i = 1; i < items.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            const std::uint64_t z = items[i] & items[j];
            if (sets.insert(z).second) items.push_back(z);
        }
    }
}

// one negation-budget column of the (depth, negations) grid; cell k holds
// the denotations of formulas with depth <= k at that budget
using DenotationColumn = std::vector<std::set<std::uint64_t>>;

DenotationColumn next_column(const MaskContext& ctx, const Lts& lts,
                             std::size_t depth_bound,
                             const DenotationColumn* prev) {
    DenotationColumn col(depth_bound + 1);
    for (std::size_t k = 0; k <= depth_bound; ++k) {
        std::set<std::uint64_t> gen{ctx.full};
        if (k > 0) {
            for (std::uint64_t x : col[k - 1]) {
                gen.insert(x);
                for (ActionId a = 0; a < lts.num_actions(); ++a)
                    gen.insert(ctx.dia(a, x));
            }
        }
        if (prev)
            for (std::uint64_t x : (*prev)[k]) gen.insert(~x & ctx.full);
        close_under_intersection(gen);
        col[k] = std::move(gen);
    }
    return col;
}

std::set<std::uint64_t> denotation_set(const Lts& lts, std::size_t depth_bound,
                                       std::size_t neg_bound) {
    if (lts.num_states() > kMaxDenotationStates)
        throw std::invalid_argument(
            "formula enumeration is limited to 16 states");
    if (depth_bound > 8 || neg_bound > 10)
        throw std::invalid_argument("formula enumeration bounds exceeded");
    MaskContext ctx(lts);
    DenotationColumn col = next_column(ctx, lts, depth_bound, nullptr);
    for (std::size_t m = 1; m <= neg_bound; ++m)
        col = next_column(ctx, lts, depth_bound, &col);
    return col[depth_bound];
}

}  // namespace

std::vector<std::uint64_t> denotations(const Lts& lts,
                                       std::size_t depth_bound,
                                       std::size_t neg_bound) {
    const auto sets = denotation_set(lts, depth_bound, neg_bound);
    return {sets.begin(), sets.end()};
}

bool enumerate_formulas(const Lts& lts, StateId s, StateId t,
                        std::size_t depth_bound, std::size_t neg_bound) {
    for (std::uint64_t x : denotation_set(lts, depth_bound, neg_bound))
        if (((x >> s) & 1) != ((x >> t) & 1)) return true;
    return false;
}

bool exists_directed(const Lts& lts, StateId s, StateId t,
                     std::size_t depth_bound, std::size_t neg_bound) {
    for (std::uint64_t x : denotation_set(lts, depth_bound, neg_bound))
        if (((x >> s) & 1) && !((x >> t) & 1)) return true;
    return false;
}

std::vector<std::uint64_t> denotations_saturated(const Lts& lts,
                                                 std::size_t depth_bound) {
    if (lts.num_states() > kMaxDenotationStates)
        throw std::invalid_argument(
            "formula enumeration is limited to 16 states");
    // Saturate the negation budget: columns grow monotonically and are
    // finite, so once a column repeats, larger budgets change nothing.
    MaskContext ctx(lts);
    DenotationColumn col = next_column(ctx, lts, depth_bound, nullptr);
    while (true) {
        DenotationColumn next = next_column(ctx, lts, depth_bound, &col);
        if (next == col) break;
        col = std::move(next);
    }
    return {col[depth_bound].begin(), col[depth_bound].end()};
}

bool exists_at_depth(const Lts& lts, StateId s, StateId t,
                     std::size_t depth_bound) {
    for (std::uint64_t x : denotations_saturated(lts, depth_bound))
        if (((x >> s) & 1) != ((x >> t) & 1)) return true;
    return false;
}

std::optional<NodeId> enumerate_min_formula(const Lts& lts,
                                            FormulaStore& store, StateId s,
                                            StateId t, std::size_t max_size) {
    if (lts.num_states() > 64)
        throw std::invalid_argument(
            "minimal-size search is limited to 64 states");
    if (max_size > 8)
        throw std::invalid_argument("minimal-size bound is limited to 8");

    MaskContext ctx(lts);

    struct Gen {
        enum Kind { True, Dia, Neg, And } kind = True;
        ActionId action = 0;
        std::uint64_t left = 0;
        std::uint64_t right = 0;
    };
    std::unordered_map<std::uint64_t, std::pair<std::size_t, Gen>> best;
    std::vector<std::vector<std::uint64_t>> by_cost(max_size + 1);

    auto settle = [&](std::uint64_t mask, std::size_t cost, Gen gen) {
        if (best.emplace(mask, std::make_pair(cost, gen)).second)
            by_cost[cost].push_back(mask);
    };

    std::optional<std::uint64_t> winner;
    for (std::size_t cost = 0; cost <= max_size && !winner; ++cost) {
        if (cost == 0) {
            settle(ctx.full, 0, Gen{Gen::True, 0, 0, 0});
        } else {
            for (std::uint64_t x : by_cost[cost - 1])
                for (ActionId a = 0; a < lts.num_actions(); ++a)
                    settle(ctx.dia(a, x), cost, Gen{Gen::Dia, a, x, 0});
            for (std::size_t c1 = 1; c1 + 1 <= cost; ++c1)
                for (std::uint64_t x : by_cost[c1])
                    for (std::uint64_t y : by_cost[cost - c1])
                        settle(x & y, cost, Gen{Gen::And, 0, x, y});
        }
        // close under complement within the level (negation is free)
        for (std::size_t i = 0; i < by_cost[cost].size(); ++i) {
            const std::uint64_t x = by_cost[cost][i];
            settle(~x & ctx.full, cost, Gen{Gen::Neg, 0, x, 0});
        }
        for (std::uint64_t x : by_cost[cost]) {
            if ((((x >> s) & 1) != ((x >> t) & 1))) {
                winner = x;
                break;
            }
        }
    }
    if (!winner) return std::nullopt;

    // rebuild the formula from the generation records
    std::unordered_map<std::uint64_t, NodeId> built;
    auto build = [&](auto&& self, std::uint64_t mask) -> NodeId {
        if (auto it = built.find(mask); it != built.end()) return it->second;
        const Gen& g = best.at(mask).second;
        NodeId id = store.mk_true();
        switch (g.kind) {
            case Gen::True:
                break;
            case Gen::Dia:
                id = store.mk_diamond(g.action, self(self, g.left));
                break;
            case Gen::Neg:
                id = store.mk_neg(self(self, g.left));
                break;
            case Gen::And:
                id = store.mk_and({self(self, g.left), self(self, g.right)});
                break;
        }
        built.emplace(mask, id);
        return id;
    };
    return build(build, *winner);
}

StateSet eval_reference(const FormulaStore& store, NodeId id, const Lts& lts) {
    const FormulaNode& n = store.node(id);
    switch (n.kind) {
        case NodeKind::True: {
            StateSet all(lts.num_states());
            all.set();
            return all;
        }
        case NodeKind::Diamond: {
            const StateSet inner = eval_reference(store, n.child, lts);
            StateSet out(lts.num_states());
            for (StateId s = 0; s < lts.num_states(); ++s)
                for (StateId t : lts.successors(s, n.action))
                    if (inner.test(t)) {
                        out.set(s);
                        break;
                    }
            return out;
        }
        case NodeKind::Neg: {
            StateSet out = eval_reference(store, n.child, lts);
            out.flip();
            return out;
        }
        case NodeKind::And: {
            StateSet out = eval_reference(store, n.children[0], lts);
            for (std::size_t i = 1; i < n.children.size(); ++i)
                out &= eval_reference(store, n.children[i], lts);
            return out;
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace hmldist::oracle
