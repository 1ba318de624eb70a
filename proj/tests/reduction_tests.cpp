#include <doctest.h>

#include "hmldist/aut.hpp"
#include "hmldist/oracle.hpp"
#include "hmldist/reduction.hpp"
#include "support.hpp"

using namespace hmldist;

namespace {

const char* kFig4 = "p cnf 3 2\n-1 -2 0\n2 3 0\n";

CnfInstance random_cnf(std::uint64_t seed, std::uint32_t max_props,
                       std::uint32_t max_clauses) {
    std::mt19937_64 rng(seed);
    CnfInstance cnf;
    cnf.num_props = 1 + static_cast<std::uint32_t>(rng() % max_props);
    const std::uint32_t clauses =
        1 + static_cast<std::uint32_t>(rng() % max_clauses);
    for (std::uint32_t c = 0; c < clauses; ++c) {
        std::vector<std::int32_t> clause;
        const std::uint32_t width = 1 + rng() % 3;
        for (std::uint32_t l = 0; l < width; ++l) {
            const std::int32_t var =
                1 + static_cast<std::int32_t>(rng() % cnf.num_props);
            clause.push_back(rng() % 2 ? var : -var);
        }
        cnf.clauses.push_back(std::move(clause));
    }
    return cnf;
}

bool brute_force_sat(const CnfInstance& cnf, Assignment* model = nullptr) {
    const std::uint32_t k = cnf.num_props;
    for (std::uint64_t bits = 0; bits < (1ull << k); ++bits) {
        Assignment rho(k);
        for (std::uint32_t i = 0; i < k; ++i) rho[i] = (bits >> i) & 1;
        if (satisfies(cnf, rho)) {
            if (model) *model = rho;
            return true;
        }
    }
    return false;
}

}  // namespace

TEST_SUITE("reduction") {

TEST_CASE("parse_dimacs") {
    const CnfInstance cnf = parse_dimacs(kFig4);
    CHECK(cnf.num_props == 3);
    REQUIRE(cnf.clauses.size() == 2);
    CHECK(cnf.clauses[0] == std::vector<std::int32_t>{-1, -2});
    CHECK(cnf.clauses[1] == std::vector<std::int32_t>{2, 3});

    const CnfInstance unit = parse_dimacs("p cnf 1 1\n1 0\n");
    CHECK(unit.num_props == 1);
    CHECK(unit.clauses == std::vector<std::vector<std::int32_t>>{{1}});

    // comments, clause spanning lines, several per line
    const CnfInstance multi =
        parse_dimacs("c a comment\np cnf 2 3\n1\n2 0\n-1 0 -2 0\n");
    CHECK(multi.clauses.size() == 3);

    CHECK_THROWS_AS(parse_dimacs("p cnf 0 1\n1 0\n"), ParseError);
    CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n3 0\n"), ParseError);
    CHECK_THROWS_AS(parse_dimacs("p cnf 2 2\n1 0\n"), ParseError);
    CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 2\n"), ParseError);
    CHECK_THROWS_AS(parse_dimacs("1 0\n"), ParseError);
}

TEST_CASE("dimacs round trip") {
    for (std::uint64_t i = 0; i < 50; ++i) {
        const CnfInstance cnf = random_cnf(100 + i, 6, 5);
        const CnfInstance back = parse_dimacs(write_dimacs(cnf));
        CHECK(back.num_props == cnf.num_props);
        CHECK(back.clauses == cnf.clauses);
    }
}

TEST_CASE("build_lts matches the counting formulas") {
    const ReductionLts red = build_lts(parse_dimacs(kFig4));
    CHECK(red.lts.num_states() == 19);
    CHECK(red.lts.num_transitions() == 32);

    for (std::uint64_t i = 0; i < 100; ++i) {
        const CnfInstance cnf = random_cnf(300 + i, 6, 5);
        const ReductionLts r = build_lts(cnf);
        const std::uint64_t k = cnf.num_props;
        const std::uint64_t n = cnf.clauses.size();
        CHECK(r.lts.num_states() == (n + 2) * (k + 1) + 3);
        CHECK(r.lts.num_transitions() == 2 * k * (n + 2) + 2 * n + 4);
    }
}

TEST_CASE("layer transitions follow the clause membership") {
    const CnfInstance cnf{1, {{1}}};
    const ReductionLts red = build_lts(cnf);
    CHECK(red.lts.has_edge(red.unsat_state(1, 0), red.pos_action(1),
                           red.sat_state(1)));
    CHECK(red.lts.has_edge(red.unsat_state(1, 0), red.neg_action(1),
                           red.unsat_state(1, 1)));
}

TEST_CASE("trace sets of the components") {
    for (std::uint64_t i = 0; i < 25; ++i) {
        const CnfInstance cnf = random_cnf(700 + i, 4, 3);
        const ReductionLts red = build_lts(cnf);
        const std::uint32_t k = cnf.num_props;

        // enumerate all truth words
        std::vector<Assignment> assignments;
        for (std::uint64_t bits = 0; bits < (1ull << k); ++bits) {
            Assignment rho(k);
            for (std::uint32_t p = 0; p < k; ++p) rho[p] = (bits >> p) & 1;
            assignments.push_back(rho);
        }

        std::set<TraceWord> prefixes;  // traces(sat_0)
        for (const Assignment& rho : assignments) {
            const TraceWord w = assignment_to_trace(red, rho);
            for (std::size_t len = 0; len <= w.size(); ++len)
                prefixes.insert(TraceWord(w.begin(), w.begin() + len));
        }
        CHECK(traces_up_to(red.lts, red.sat_state(0), k + 1) == prefixes);

        std::set<TraceWord> bot = prefixes;  // traces(bot_0)
        for (const Assignment& rho : assignments) {
            TraceWord w = assignment_to_trace(red, rho);
            w.push_back(red.flag_action());
            bot.insert(w);
        }
        CHECK(traces_up_to(red.lts, red.bot_state(0), k + 1) == bot);

        for (std::uint32_t c = 1; c <= cnf.clauses.size(); ++c) {
            std::set<TraceWord> expect = prefixes;
            for (const Assignment& rho : assignments) {
                if (clause_satisfied(cnf.clauses[c - 1], rho)) continue;
                TraceWord w = assignment_to_trace(red, rho);
                w.push_back(red.flag_action());
                expect.insert(w);
            }
            CHECK(traces_up_to(red.lts, red.unsat_state(c, 0), k + 1) ==
                  expect);
        }
    }
}

TEST_CASE("flagged words of a clause component are its falsifiers") {
    for (std::uint64_t i = 0; i < 20; ++i) {
        const CnfInstance cnf = random_cnf(900 + i, 6, 4);
        const ReductionLts red = build_lts(cnf);
        for (std::uint64_t bits = 0; bits < (1ull << cnf.num_props); ++bits) {
            Assignment rho(cnf.num_props);
            for (std::uint32_t p = 0; p < cnf.num_props; ++p)
                rho[p] = (bits >> p) & 1;
            TraceWord w = assignment_to_trace(red, rho);
            w.push_back(red.flag_action());
            for (std::uint32_t c = 1; c <= cnf.clauses.size(); ++c) {
                CHECK(has_trace(red.lts, red.unsat_state(c, 0), w) ==
                      !clause_satisfied(cnf.clauses[c - 1], rho));
            }
        }
    }
}

TEST_CASE("assignment and trace are mutually inverse") {
    const ReductionLts red = build_lts(parse_dimacs(kFig4));
    const Assignment all_true{true, true, true};
    CHECK(assignment_to_trace(red, all_true) ==
          TraceWord{red.pos_action(1), red.pos_action(2), red.pos_action(3)});
    const Assignment fft{false, false, true};
    CHECK(assignment_to_trace(red, fft) ==
          TraceWord{red.neg_action(1), red.neg_action(2), red.pos_action(3)});

    for (std::uint64_t bits = 0; bits < 8; ++bits) {
        Assignment rho(3);
        for (std::uint32_t p = 0; p < 3; ++p) rho[p] = (bits >> p) & 1;
        CHECK(trace_to_assignment(red, assignment_to_trace(red, rho)) == rho);
    }
    CHECK_THROWS_AS(trace_to_assignment(red, TraceWord{red.init_action()}),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        trace_to_assignment(red, TraceWord{red.pos_action(2),
                                           red.pos_action(1),
                                           red.pos_action(3)}),
        std::invalid_argument);
}

TEST_CASE("trace_dist_search") {
    const ReductionLts red = build_lts(parse_dimacs(kFig4));
    CHECK_FALSE(trace_dist_search(red.lts, red.s, red.s, 6).has_value());

    const auto w = trace_dist_search(red.lts, red.s, red.t, 5);
    REQUIRE(w.has_value());
    CHECK(w->size() == 5);
    CHECK(has_trace(red.lts, red.s, *w) != has_trace(red.lts, red.t, *w));

    // an unsatisfiable instance yields nothing within the bound
    const CnfInstance contra{1, {{1}, {-1}}};
    const ReductionLts r2 = build_lts(contra);
    CHECK_FALSE(trace_dist_search(r2.lts, r2.s, r2.t, 3).has_value());

    CHECK_THROWS_AS(
        trace_dist_search(red.lts, red.s, red.t, red.lts.num_states() + 1),
        std::invalid_argument);
}

TEST_CASE("sat_via_traces agrees with the truth table") {
    {
        const SatResult res = sat_via_traces(parse_dimacs(kFig4));
        REQUIRE(res.satisfiable);
        CHECK(satisfies(parse_dimacs(kFig4), res.assignment));
    }
    {
        const CnfInstance contra{1, {{1}, {-1}}};
        CHECK_FALSE(sat_via_traces(contra).satisfiable);
    }
    for (std::uint64_t i = 0; i < 200; ++i) {
        const CnfInstance cnf = random_cnf(1300 + i, 6, 5);
        const SatResult res = sat_via_traces(cnf);
        CHECK(res.satisfiable == brute_force_sat(cnf));
        if (res.satisfiable) CHECK(satisfies(cnf, res.assignment));
    }
}

TEST_CASE("minimal distinguishing formulas embed satisfiability") {
    // satisfiable: the minimal formula has exactly k+2 modalities and is a
    // modal chain whose word decodes to a satisfying assignment;
    // unsatisfiable: nothing of size k+2 exists at all
    for (std::uint64_t i = 0; i < 25; ++i) {
        const CnfInstance cnf = random_cnf(1700 + i, 3, 3);
        const ReductionLts red = build_lts(cnf);
        FormulaStore store(red.lts.actions_ptr());
        const std::uint32_t k = cnf.num_props;
        const auto found = oracle::enumerate_min_formula(red.lts, store, red.s,
                                                         red.t, k + 2);
        if (!brute_force_sat(cnf)) {
            CHECK_FALSE(found.has_value());
            continue;
        }
        REQUIRE(found.has_value());
        CHECK(store.metrics(*found).size == k + 2);

        // walk the chain, collecting the modal word
        TraceWord word;
        NodeId cur = *found;
        bool chain = true;
        while (store.node(cur).kind != NodeKind::True) {
            const FormulaNode& n = store.node(cur);
            if (n.kind == NodeKind::And) {
                chain = false;
                break;
            }
            if (n.kind == NodeKind::Diamond) word.push_back(n.action);
            cur = n.child;
        }
        CHECK(chain);
        REQUIRE(word.size() == k + 2);
        CHECK(word.front() == red.init_action());
        CHECK(word.back() == red.flag_action());
        const Assignment rho = trace_to_assignment(
            red, TraceWord(word.begin() + 1, word.end() - 1));
        CHECK(satisfies(cnf, rho));
    }
}

}  // TEST_SUITE
