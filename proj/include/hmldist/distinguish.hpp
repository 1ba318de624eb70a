// Algorithm 1 (phi: minimal observation-depth witness) and Algorithm 2
// (psi: minimal observation- and negation-depth witness), with
// cross-call memoization so the produced formulas share structure.
#pragma once

#include <cstdint>
#include <random>
#include <unordered_map>

#include "hmldist/equivalences.hpp"
#include "hmldist/hml.hpp"
#include "hmldist/lts.hpp"

namespace hmldist {

enum class WitnessMode : std::uint8_t {
    DepthOnly,         ///< Algorithm 1
    DepthAndNegation,  ///< Algorithm 2 (lexicographic minimality)
};

enum class PickStrategy : std::uint8_t {
    Deterministic,  ///< smallest action, then dist-sum over T, then state id
    SeededRandom,   ///< uniform choice, reproducible from the seed
};

struct DistinguishOptions {
    WitnessMode mode = WitnessMode::DepthAndNegation;
    PickStrategy pick = PickStrategy::Deterministic;
    std::uint64_t seed = 0;
};

/// Builds distinguishing formulas over one (lts, partition sequence). Keeps
/// the phi memo keyed by (s,t) and the psi memo by (s,t,level); memoized
/// entries always satisfy s in [[f]], t not in [[f]]. Single-threaded.
class WitnessBuilder {
public:
    WitnessBuilder(const Lts& lts, const PartitionSequence& seq,
                   DirDistTable& dd, FormulaStore& store,
                   const DistinguishOptions& opts = {});

    /// Minimal observation-depth witness; requires s !~ t.
    NodeId phi(StateId s, StateId t);

    /// Witness with observation depth at most `level` and minimal
    /// negation-depth; requires s !~_level t.
    NodeId psi(std::uint64_t level, StateId s, StateId t);

    /// Recursive invocations of phi/psi so far (memo hits included).
    std::uint64_t calls() const { return calls_; }

    FormulaStore& store() { return store_; }

private:
    ObsPair pick(const std::vector<ObsPair>& candidates, StateId t);

    const Lts& lts_;
    const PartitionSequence& seq_;
    DirDistTable& dd_;
    FormulaStore& store_;
    DistinguishOptions opts_;
    std::mt19937_64 rng_;
    std::uint64_t calls_ = 0;
    std::unordered_map<std::uint64_t, NodeId> phi_memo_;
    std::unordered_map<std::uint64_t, NodeId> psi_memo_;
};

struct WitnessResult {
    bool distinguishable = false;
    NodeId formula = 0;            // meaningful iff distinguishable
    std::uint32_t dist = kInf;     // kInf when bisimilar
    std::uint32_t dirdist = kInf;  // dirdist at level dist
    Metrics metrics;
    std::uint64_t calls = 0;
};

/// Top-level driver: verdict plus witness and metrics. Equivalence is a
/// verdict, not an error.
WitnessResult distinguish(const Lts& lts, const PartitionSequence& seq,
                          DirDistTable& dd, FormulaStore& store, StateId s,
                          StateId t, const DistinguishOptions& opts = {});

}  // namespace hmldist
