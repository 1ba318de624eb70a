#include "hmldist/equivalences.hpp"

#include <algorithm>
#include <stdexcept>

namespace hmldist {

std::uint32_t PartitionSequence::dist(StateId s, StateId t) const {
    const std::size_t k = depth();
    if (same_block(k, s, t)) return kInf;
    // same_block is monotone along the chain: find the first level apart.
    std::size_t lo = 1, hi = k;
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (same_block(mid, s, t))
            lo = mid + 1;
        else
            hi = mid;
    }
    return static_cast<std::uint32_t>(lo);
}

std::vector<std::vector<StateId>> PartitionSequence::blocks(
    std::size_t level) const {
    const auto& ids = block_of_[level];
    std::vector<std::vector<StateId>> out(num_blocks_[level]);
    for (StateId s = 0; s < ids.size(); ++s) out[ids[s]].push_back(s);
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

struct WorkingPartition {
    std::vector<std::vector<StateId>> blocks;
    std::vector<std::uint32_t> block_of;
};

// One pass of Refine(pi): split every current block against each
// (action, block-of-pi) pair. Actions ascend, splitter blocks and split
// candidates go in creation order; fresh halves keep their parent's slot
// subset, so iteration stays deterministic.
bool refine_once(const Lts& lts, const WorkingPartition& prev,
                 WorkingPartition& next) {
    next.blocks = prev.blocks;
    bool changed = false;
    std::vector<StateId> in, out;
    for (ActionId a = 0; a < lts.num_actions(); ++a) {
        for (std::uint32_t bp = 0; bp < prev.blocks.size(); ++bp) {
            const std::size_t snapshot = next.blocks.size();
            for (std::size_t b = 0; b < snapshot; ++b) {
                in.clear();
                out.clear();
                for (StateId s : next.blocks[b]) {
                    bool hit = false;
                    for (StateId succ : lts.successors(s, a)) {
                        if (prev.block_of[succ] == bp) {
                            hit = true;
                            break;
                        }
                    }
                    (hit ? in : out).push_back(s);
                }
                if (!in.empty() && !out.empty()) {
                    next.blocks[b] = in;
                    next.blocks.push_back(out);
                    changed = true;
                }
            }
        }
    }
    next.block_of.assign(prev.block_of.size(), 0);
    for (std::uint32_t b = 0; b < next.blocks.size(); ++b)
        for (StateId s : next.blocks[b]) next.block_of[s] = b;
    return changed;
}

}  // namespace

PartitionSequence refine_sequence(const Lts& lts) {
    PartitionSequence seq;
    const std::size_t n = lts.num_states();

    WorkingPartition current;
    if (n > 0) current.blocks.push_back({});
    for (StateId s = 0; s < n; ++s) current.blocks[0].push_back(s);
    current.block_of.assign(n, 0);

    seq.block_of_.push_back(current.block_of);
    seq.num_blocks_.push_back(current.blocks.size());

    while (true) {
        WorkingPartition next;
        if (!refine_once(lts, current, next)) break;
        seq.block_of_.push_back(next.block_of);
        seq.num_blocks_.push_back(next.blocks.size());
        current = std::move(next);
    }
    return seq;
}

StateSet split_on(const Lts& lts, const StateSet& u, ActionId a,
                  const StateSet& v) {
    StateSet out(lts.num_states());
    for (std::size_t s = u.find_first(); s != StateSet::npos;
         s = u.find_next(s)) {
        for (StateId succ : lts.successors(static_cast<StateId>(s), a)) {
            if (v.test(succ)) {
                out.set(s);
                break;
            }
        }
    }
    return out;
}

std::vector<ObsPair> splpairs(const Lts& lts, const PartitionSequence& seq,
                              std::uint64_t level, StateId s, StateId t) {
    if (level == 0)
        throw std::invalid_argument("splpairs requires level >= 1");
    std::vector<ObsPair> out;
    for (ActionId a = 0; a < lts.num_actions(); ++a) {
        const auto t_succ = lts.successors(t, a);
        for (StateId sp : lts.successors(s, a)) {
            bool all_apart = true;
            for (StateId tp : t_succ) {
                // dist(sp,tp) <= level-1 iff they are not (level-1)-bisimilar
                if (seq.equivalent_at(level - 1, sp, tp)) {
                    all_apart = false;
                    break;
                }
            }
            if (all_apart) out.push_back({a, sp});
        }
    }
    return out;
}

std::uint32_t DirDistTable::dirdist(std::uint64_t level, StateId s, StateId t) {
    if (seq_.equivalent_at(level, s, t)) return kInf;

    if (level > 0xffff || lts_.num_states() > (1u << 23))
        throw std::invalid_argument("dirdist: level or state space too large");
    const std::uint64_t key = (level << 46) |
                              (std::uint64_t{s} << 23) | std::uint64_t{t};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    // min(X u Xbar) per the dist/dirdist computation: X ranges over
    // observations of s that work without a flip, Xbar over observations of
    // t that cost one leading negation. Every recursive value is finite
    // because splpairs guarantees the pairs are apart one level down.
    std::uint32_t best = kInf;
    for (const ObsPair& p : splpairs(lts_, seq_, level, s, t)) {
        std::uint32_t worst = 0;
        for (StateId tp : lts_.successors(t, p.action))
            worst = std::max(worst, dirdist(level - 1, p.target, tp));
        best = std::min(best, worst);
    }
    for (const ObsPair& p : splpairs(lts_, seq_, level, t, s)) {
        std::uint32_t worst = 1;
        for (StateId sp : lts_.successors(s, p.action))
            worst = std::max(worst, dirdist(level - 1, p.target, sp) + 1);
        best = std::min(best, worst);
    }
    memo_.emplace(key, best);
    return best;
}

std::vector<ObsPair> DirDistTable::hat_splpairs(std::uint64_t level,
                                                std::uint32_t negbound,
                                                StateId s, StateId t) {
    std::vector<ObsPair> out;
    for (const ObsPair& p : splpairs(lts_, seq_, level, s, t)) {
        bool ok = true;
        for (StateId tp : lts_.successors(t, p.action)) {
            if (dirdist(level - 1, p.target, tp) > negbound) {
                ok = false;
                break;
            }
        }
        if (ok) out.push_back(p);
    }
    return out;
}

bool DirDistTable::nested_sim_holds(std::uint64_t level, std::uint32_t m,
                                    StateId s, StateId t) {
    const std::uint32_t j = dirdist(level, s, t);
    return j == kInf || j > m;
}

}  // namespace hmldist
