#include "hmldist/distinguish.hpp"

#include <algorithm>
#include <stdexcept>

namespace hmldist {

namespace {

std::uint64_t pair_key(StateId s, StateId t) {
    return (std::uint64_t{s} << 32) | t;
}

std::uint64_t level_key(std::uint64_t level, StateId s, StateId t) {
    return (level << 46) | (std::uint64_t{s} << 23) | t;
}

}  // namespace

WitnessBuilder::WitnessBuilder(const Lts& lts, const PartitionSequence& seq,
                               DirDistTable& dd, FormulaStore& store,
                               const DistinguishOptions& opts)
    : lts_(lts), seq_(seq), dd_(dd), store_(store), opts_(opts),
      rng_(opts.seed) {}

ObsPair WitnessBuilder::pick(const std::vector<ObsPair>& candidates,
                             StateId t) {
    if (candidates.size() == 1) return candidates[0];
    if (opts_.pick == PickStrategy::SeededRandom)
        return candidates[rng_() % candidates.size()];
    // Candidates arrive sorted by (action, target). Keep the smallest
    // action, then minimize the dist-sum over the a-successors of t; ties
    // fall to the smallest target id since the scan is in order.
    const ActionId action = candidates[0].action;
    const ObsPair* best = nullptr;
    std::uint64_t best_sum = 0;
    for (const ObsPair& p : candidates) {
        if (p.action != action) break;
        std::uint64_t sum = 0;
        for (StateId tp : lts_.successors(t, p.action))
            sum += seq_.dist(p.target, tp);  // finite: splpairs keeps pairs apart
        if (best == nullptr || sum < best_sum) {
            best = &p;
            best_sum = sum;
        }
    }
    return *best;
}

NodeId WitnessBuilder::phi(StateId s, StateId t) {
    ++calls_;
    const std::uint32_t level = seq_.dist(s, t);
    if (level == kInf)
        throw std::invalid_argument("phi: states are bisimilar");
    const std::uint64_t key = pair_key(s, t);
    if (auto it = phi_memo_.find(key); it != phi_memo_.end())
        return it->second;

    NodeId result;
    const std::vector<ObsPair> obs = splpairs(lts_, seq_, level, s, t);
    if (obs.empty()) {
        result = store_.mk_neg(phi(t, s));
    } else {
        const ObsPair chosen = pick(obs, t);
        std::vector<NodeId> conjuncts;
        for (StateId tp : lts_.successors(t, chosen.action))
            conjuncts.push_back(phi(chosen.target, tp));
        const NodeId body =
            conjuncts.empty() ? store_.mk_true() : store_.mk_and(conjuncts);
        result = store_.mk_diamond(chosen.action, body);
    }
    phi_memo_.emplace(key, result);
    return result;
}

NodeId WitnessBuilder::psi(std::uint64_t level, StateId s, StateId t) {
    ++calls_;
    if (seq_.equivalent_at(level, s, t))
        throw std::invalid_argument("psi: states are level-bisimilar");
    const std::uint64_t key = level_key(level, s, t);
    if (auto it = psi_memo_.find(key); it != psi_memo_.end())
        return it->second;

    const std::uint32_t negbound = dd_.dirdist(level, s, t);
    NodeId result;
    const std::vector<ObsPair> obs = dd_.hat_splpairs(level, negbound, s, t);
    if (obs.empty()) {
        result = store_.mk_neg(psi(level, t, s));
    } else {
        const ObsPair chosen = pick(obs, t);
        std::vector<StateId> pending(lts_.successors(t, chosen.action).begin(),
                                     lts_.successors(t, chosen.action).end());
        std::vector<NodeId> conjuncts;
        while (!pending.empty()) {
            // the remaining target with the hardest negation requirement
            StateId worst = pending[0];
            std::uint32_t worst_dd = dd_.dirdist(level - 1, chosen.target, worst);
            for (std::size_t i = 1; i < pending.size(); ++i) {
                const std::uint32_t d =
                    dd_.dirdist(level - 1, chosen.target, pending[i]);
                if (d > worst_dd) {
                    worst_dd = d;
                    worst = pending[i];
                }
            }
            const NodeId part = psi(level - 1, chosen.target, worst);
            conjuncts.push_back(part);
            const StateSet& sem = store_.evaluate(part, lts_);
            std::vector<StateId> still;
            for (StateId tp : pending)
                if (sem.test(tp)) still.push_back(tp);
            pending = std::move(still);
        }
        const NodeId body =
            conjuncts.empty() ? store_.mk_true() : store_.mk_and(conjuncts);
        result = store_.mk_diamond(chosen.action, body);
    }
    psi_memo_.emplace(key, result);
    return result;
}

WitnessResult distinguish(const Lts& lts, const PartitionSequence& seq,
                          DirDistTable& dd, FormulaStore& store, StateId s,
                          StateId t, const DistinguishOptions& opts) {
    WitnessResult res;
    res.dist = seq.dist(s, t);
    if (res.dist == kInf) return res;

    res.distinguishable = true;
    res.dirdist = dd.dirdist(res.dist, s, t);
    WitnessBuilder builder(lts, seq, dd, store, opts);
    res.formula = opts.mode == WitnessMode::DepthOnly
                      ? builder.phi(s, t)
                      : builder.psi(res.dist, s, t);
    res.metrics = store.metrics(res.formula);
    res.calls = builder.calls();
    return res;
}

}  // namespace hmldist
