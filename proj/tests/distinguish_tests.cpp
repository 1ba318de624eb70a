#include <doctest.h>

#include "hmldist/distinguish.hpp"
#include "hmldist/generators.hpp"
#include "hmldist/oracle.hpp"
#include "hmldist/reduction.hpp"
#include "support.hpp"

using namespace hmldist;
using hmldist::testing::corpus_lts;

namespace {

struct Session {
    Lts lts;
    PartitionSequence seq;
    DirDistTable dd;
    FormulaStore store;

    explicit Session(Lts l)
        : lts(std::move(l)),
          seq(refine_sequence(lts)),
          dd(lts, seq),
          store(lts.actions_ptr()) {}

    WitnessBuilder builder(DistinguishOptions opts = {}) {
        return WitnessBuilder(lts, seq, dd, store, opts);
    }
};

}  // namespace

TEST_SUITE("distinguish") {

TEST_CASE("phi on the chain is the trace formula") {
    Session s(gen_chain_a(3));
    auto b = s.builder();
    const NodeId f = b.phi(3, 2);
    CHECK(f == trace_formula(s.store, TraceWord(3, *s.lts.actions().find("a"))));
    CHECK(s.store.metrics(f).depth == 3);
    CHECK_THROWS_AS(b.phi(1, 1), std::invalid_argument);
}

TEST_CASE("phi takes the negated branch on figure m") {
    Session s(gen_figure_m());
    auto b = s.builder();
    const NodeId f = b.phi(0, 1);
    const NodeId bt =
        s.store.mk_diamond(*s.lts.actions().find("b"), s.store.mk_true());
    CHECK(f == s.store.mk_neg(bt));
    CHECK(s.store.distinguishes(f, s.lts, 0, 1));
}

TEST_CASE("psi on the ladder reaches the minimal negation depth") {
    Session s(gen_ladder_b(3));
    const StateId x3 = ladder_x(3, 3), y3 = ladder_y(3, 3);
    const std::uint32_t k = s.seq.dist(x3, y3);
    REQUIRE(k == 4);
    auto b = s.builder();
    const NodeId f = b.psi(k, x3, y3);
    const Metrics m = s.store.metrics(f);
    CHECK(m.depth == 4);
    CHECK(m.negdepth == 3);
    const StateSet& sem = s.store.evaluate(f, s.lts);
    CHECK(sem.test(x3));
    CHECK_FALSE(sem.test(y3));
}

TEST_CASE("psi on the chain needs no negations and single conjuncts") {
    for (std::size_t n = 1; n <= 12; ++n) {
        Session s(gen_chain_a(n));
        const StateId hi = static_cast<StateId>(n);
        const StateId lo = hi - 1;
        auto b = s.builder();
        const std::uint32_t k = s.seq.dist(hi, lo);
        CHECK(k == n);
        const NodeId f = b.psi(k, hi, lo);
        CHECK(f == trace_formula(s.store,
                                 TraceWord(n, *s.lts.actions().find("a"))));
        const Metrics m = s.store.metrics(f);
        CHECK(m.depth == n);
        CHECK(m.negdepth == 0);
        // deterministic system: the shrink loop emits one conjunct per level
        NodeId cur = f;
        while (s.store.node(cur).kind != NodeKind::True) {
            CHECK(s.store.node(cur).kind != NodeKind::And);
            cur = s.store.node(cur).child;
        }
    }
}

TEST_CASE("distinguish driver verdicts") {
    Session s(gen_figure_m());
    const WitnessResult same = distinguish(s.lts, s.seq, s.dd, s.store, 1, 1);
    CHECK_FALSE(same.distinguishable);
    CHECK(same.dist == kInf);

    const WitnessResult r = distinguish(s.lts, s.seq, s.dd, s.store, 0, 1);
    REQUIRE(r.distinguishable);
    CHECK(r.dist == 1);
    CHECK(r.metrics.depth == 1);
    CHECK(s.store.distinguishes(r.formula, s.lts, 0, 1));
}

TEST_CASE("distinguish on the reduction instance") {
    const CnfInstance cnf{3, {{-1, -2}, {2, 3}}};
    const ReductionLts red = build_lts(cnf);
    Session s(red.lts);
    const WitnessResult r =
        distinguish(s.lts, s.seq, s.dd, s.store, red.s, red.t);
    REQUIRE(r.distinguishable);
    CHECK(r.metrics.depth >= 2);  // both states share all depth-1 behaviour
    CHECK(s.store.distinguishes(r.formula, s.lts, red.s, red.t));
}

TEST_CASE("soundness and minimality across the corpus") {
    for (std::uint64_t i = 0; i < 120; ++i) {
        Session s(corpus_lts(i));
        for (StateId a = 0; a < s.lts.num_states(); ++a) {
            for (StateId b = a + 1; b < s.lts.num_states(); ++b) {
                const std::uint32_t d = s.seq.dist(a, b);
                if (d == kInf) continue;
                auto builder = s.builder();
                const NodeId fphi = builder.phi(a, b);
                const NodeId fpsi = builder.psi(d, a, b);
                for (NodeId f : {fphi, fpsi}) {
                    const StateSet& sem = s.store.evaluate(f, s.lts);
                    CHECK(sem.test(a));
                    CHECK_FALSE(sem.test(b));
                }
                CHECK(s.store.metrics(fphi).depth == d);
                CHECK(s.store.metrics(fpsi).depth == d);
                CHECK(s.store.metrics(fpsi).negdepth == s.dd.dirdist(d, a, b));
            }
        }
    }
}

TEST_CASE("no distinguishing formula below the reported depth") {
    for (std::uint64_t i = 0; i < 60; ++i) {
        Session s(corpus_lts(i));
        for (StateId a = 0; a < s.lts.num_states(); ++a) {
            for (StateId b = a + 1; b < s.lts.num_states(); ++b) {
                const std::uint32_t d = s.seq.dist(a, b);
                if (d == kInf || d > 3) continue;
                CHECK_FALSE(oracle::exists_at_depth(s.lts, a, b, d - 1));
            }
        }
    }
}

TEST_CASE("no smaller negation depth fits within the same depth") {
    for (std::uint64_t i = 0; i < 60; ++i) {
        Session s(corpus_lts(i));
        if (s.lts.num_states() > 7) continue;
        for (StateId a = 0; a < s.lts.num_states(); ++a) {
            for (StateId b = a + 1; b < s.lts.num_states(); ++b) {
                const std::uint32_t d = s.seq.dist(a, b);
                if (d == kInf || d > 3) continue;
                auto builder = s.builder();
                const NodeId f = builder.psi(d, a, b);
                const std::uint32_t nd = s.store.metrics(f).negdepth;
                if (nd == 0) continue;
                // no formula with fewer nested negations holds at a but
                // not at b within the same observation depth
                CHECK_FALSE(oracle::exists_directed(s.lts, a, b, d, nd - 1));
            }
        }
    }
}

TEST_CASE("every witness carries a long shared trace") {
    // distinguishing formulas contain a trace of length >= dist that one
    // of the two states can perform
    for (std::uint64_t i = 0; i < 60; ++i) {
        Session s(corpus_lts(i));
        for (StateId a = 0; a < s.lts.num_states(); ++a) {
            for (StateId b = a + 1; b < s.lts.num_states(); ++b) {
                const std::uint32_t d = s.seq.dist(a, b);
                if (d == kInf) continue;
                auto builder = s.builder();
                for (NodeId f : {builder.phi(a, b), builder.psi(d, a, b)}) {
                    const std::uint32_t depth = s.store.metrics(f).depth;
                    bool found = false;
                    for (const TraceWord& w :
                         formula_traces(s.store, f, depth)) {
                        if (w.size() >= d && (has_trace(s.lts, a, w) ||
                                              has_trace(s.lts, b, w))) {
                            found = true;
                            break;
                        }
                    }
                    CHECK(found);
                }
            }
        }
    }
}

TEST_CASE("memoization transparency") {
    for (std::uint64_t i = 0; i < 30; ++i) {
        Session shared(corpus_lts(i));
        auto builder = shared.builder();
        for (StateId a = 0; a < shared.lts.num_states(); ++a) {
            for (StateId b = a + 1; b < shared.lts.num_states(); ++b) {
                const std::uint32_t d = shared.seq.dist(a, b);
                if (d == kInf) continue;
                // a shared builder and a fresh one agree semantically
                Session fresh(corpus_lts(i));
                auto solo = fresh.builder();
                const NodeId f1 = builder.psi(d, a, b);
                const NodeId f2 = solo.psi(d, a, b);
                CHECK(shared.store.evaluate(f1, shared.lts) ==
                      fresh.store.evaluate(f2, fresh.lts));
            }
        }
    }
}

TEST_CASE("call counter stays cubic") {
    for (std::uint64_t i = 0; i < 40; ++i) {
        Session s(corpus_lts(i));
        auto builder = s.builder();
        const std::uint64_t n = s.lts.num_states();
        for (StateId a = 0; a < s.lts.num_states(); ++a)
            for (StateId b = a + 1; b < s.lts.num_states(); ++b)
                if (s.seq.dist(a, b) != kInf)
                    builder.psi(s.seq.dist(a, b), a, b);
        CHECK(builder.calls() <= 8 * n * n * n);
    }
}

TEST_CASE("seeded random pick still yields sound minimal witnesses") {
    for (std::uint64_t i = 0; i < 20; ++i) {
        Session s(corpus_lts(i));
        DistinguishOptions opts;
        opts.pick = PickStrategy::SeededRandom;
        opts.seed = 1234 + i;
        for (StateId a = 0; a < s.lts.num_states(); ++a) {
            for (StateId b = a + 1; b < s.lts.num_states(); ++b) {
                const std::uint32_t d = s.seq.dist(a, b);
                if (d == kInf) continue;
                auto builder = s.builder(opts);
                const NodeId f = builder.psi(d, a, b);
                const StateSet& sem = s.store.evaluate(f, s.lts);
                CHECK(sem.test(a));
                CHECK_FALSE(sem.test(b));
                CHECK(s.store.metrics(f).depth == d);
            }
        }
    }
}

}  // TEST_SUITE
