#include <doctest.h>

#include <algorithm>
#include <set>
#include <tuple>

#include "hmldist/aut.hpp"
#include "hmldist/generators.hpp"
#include "hmldist/lts.hpp"
#include "support.hpp"

using namespace hmldist;

namespace {

// transitions as (src, label text, dst), comparable across action tables
std::set<std::tuple<StateId, std::string, StateId>> labeled_triples(
    const Lts& lts) {
    std::set<std::tuple<StateId, std::string, StateId>> out;
    for (const auto& tr : lts.transitions())
        out.insert({tr.src, lts.actions().text(tr.act), tr.dst});
    return out;
}

TraceWord word(const Lts& lts, std::initializer_list<const char*> actions) {
    TraceWord w;
    for (const char* a : actions) w.push_back(*lts.actions().find(a));
    return w;
}

}  // namespace

TEST_SUITE("lts") {

TEST_CASE("parse minimal aut file") {
    const Lts lts = parse_aut("des (0,1,2)\n(0,\"a\",1)\n");
    CHECK(lts.num_states() == 2);
    CHECK(lts.num_transitions() == 1);
    CHECK(lts.initial_state() == 0);
    const auto a = lts.actions().find("a");
    REQUIRE(a.has_value());
    REQUIRE(lts.successors(0, *a).size() == 1);
    CHECK(lts.successors(0, *a)[0] == 1);
}

TEST_CASE("parse empty relation") {
    const Lts lts = parse_aut("des (0,0,1)\n");
    CHECK(lts.num_states() == 1);
    CHECK(lts.num_transitions() == 0);
}

TEST_CASE("parse accepts unquoted labels and spacing") {
    const Lts lts = parse_aut("des (1, 2, 3)\n(0, tau, 1)\n(1,\"a b\",2)\n");
    CHECK(lts.initial_state() == 1);
    CHECK(lts.actions().find("tau").has_value());
    CHECK(lts.actions().find("a b").has_value());
}

TEST_CASE("parse errors carry line numbers") {
    CHECK_THROWS_AS(parse_aut("hello\n"), ParseError);
    CHECK_THROWS_AS(parse_aut("des (0,1,1)\n(0,a,5)\n"), ParseError);
    try {
        parse_aut("des (0,2,2)\n(0,a,1)\n");
        FAIL("expected a transition count mismatch");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("mismatch") != std::string::npos);
    }
    try {
        parse_aut("des (0,1,2)\n(0,a,1)\n(9,a,1)\n");
        FAIL("expected an out-of-range state");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
    // initial state must exist
    CHECK_THROWS_AS(parse_aut("des (4,0,2)\n"), ParseError);
}

TEST_CASE("write_aut of the 1-state empty lts") {
    Lts::Builder b;
    b.ensure_states(1);
    CHECK(write_aut(b.build()) == "des (0,0,1)\n");
}

TEST_CASE("chain family") {
    const Lts a3 = gen_chain_a(3);
    CHECK(a3.num_states() == 4);
    CHECK(a3.num_transitions() == 3);

    const Lts a0 = gen_chain_a(0);
    CHECK(a0.num_states() == 1);
    CHECK(a0.num_transitions() == 0);

    const Lts a10 = gen_chain_a(10);
    const ActionId act = *a10.actions().find("a");
    REQUIRE(a10.successors(10, act).size() == 1);
    CHECK(a10.successors(10, act)[0] == 9);

    const std::string text = write_aut(a3);
    CHECK(text.substr(0, text.find('\n')) == "des (3,3,4)");
    CHECK(labeled_triples(parse_aut(text)) == labeled_triples(a3));
}

TEST_CASE("ladder family") {
    const Lts b3 = gen_ladder_b(3);
    CHECK(b3.num_states() == 8);
    CHECK(b3.num_transitions() == 10);
    const ActionId a = *b3.actions().find("a");
    // x_1 -a-> {x_0, y_0}
    const auto succ = b3.successors(ladder_x(3, 1), a);
    REQUIRE(succ.size() == 2);
    CHECK(succ[0] == ladder_x(3, 0));
    CHECK(succ[1] == ladder_y(3, 0));

    const Lts b0 = gen_ladder_b(0);
    CHECK(b0.num_states() == 2);
    CHECK(b0.num_transitions() == 1);
    CHECK(b0.has_edge(ladder_y(0, 0), *b0.actions().find("a"), ladder_y(0, 0)));
}

TEST_CASE("figure m") {
    const Lts m = gen_figure_m();
    CHECK(m.num_states() == 3);
    CHECK(m.num_transitions() == 3);
    const ActionId a = *m.actions().find("a");
    const ActionId b = *m.actions().find("b");
    CHECK(m.successors(0, b).empty());
    CHECK(m.successors(1, a).size() == 1);
    CHECK(m.successors(1, b).size() == 1);
}

TEST_CASE("traces_up_to") {
    const Lts m = gen_figure_m();
    CHECK(traces_up_to(m, 2, 5) == std::set<TraceWord>{TraceWord{}});

    const Lts a3 = gen_chain_a(3);
    const std::set<TraceWord> expected{
        word(a3, {}), word(a3, {"a"}), word(a3, {"a", "a"}),
        word(a3, {"a", "a", "a"})};
    CHECK(traces_up_to(a3, 3, 3) == expected);

    const Lts b1 = gen_ladder_b(1);
    const std::set<TraceWord> loops{word(b1, {}), word(b1, {"a"}),
                                    word(b1, {"a", "a"})};
    CHECK(traces_up_to(b1, ladder_y(1, 0), 2) == loops);
}

TEST_CASE("has_trace") {
    const Lts a3 = gen_chain_a(3);
    CHECK(has_trace(a3, 0, {}));
    CHECK(has_trace(a3, 2, word(a3, {"a", "a"})));
    CHECK_FALSE(has_trace(a3, 2, word(a3, {"a", "a", "a"})));
}

TEST_CASE("has_trace agrees with enumeration, traces are prefix-closed") {
    for (std::uint64_t i = 0; i < 40; ++i) {
        RandomLtsConfig cfg;
        cfg.states = 6;
        cfg.actions = 2;
        cfg.density = 2.0;
        cfg.seed = 7000 + i;
        const Lts lts = gen_random(cfg);
        for (StateId s = 0; s < lts.num_states(); ++s) {
            const auto traced = traces_up_to(lts, s, 4);
            for (const TraceWord& w : traced) {
                CHECK(has_trace(lts, s, w));
                if (!w.empty()) {
                    TraceWord prefix(w.begin(), w.end() - 1);
                    CHECK(traced.count(prefix) == 1);
                }
            }
            // every length-<=4 word not in the set is not a trace
            std::uint64_t misses = 0;
            for (ActionId a = 0; a < lts.num_actions(); ++a)
                for (ActionId b = 0; b < lts.num_actions(); ++b) {
                    const TraceWord w{a, b};
                    if (!traced.count(w) && has_trace(lts, s, w)) ++misses;
                }
            CHECK(misses == 0);
        }
    }
}

TEST_CASE("aut round trip preserves the triple set") {
    for (std::uint64_t i = 0; i < 60; ++i) {
        const Lts lts = hmldist::testing::corpus_lts(i);
        const Lts back = parse_aut(write_aut(lts));
        CHECK(back.num_states() == lts.num_states());
        CHECK(labeled_triples(back) == labeled_triples(lts));
    }
}

}  // TEST_SUITE
