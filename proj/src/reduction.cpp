#include "hmldist/reduction.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <map>
#include <stdexcept>

#include "hmldist/aut.hpp"

namespace hmldist {

CnfInstance parse_dimacs(std::string_view text) {
    CnfInstance cnf;
    std::size_t line_no = 0;
    bool header_seen = false;
    std::uint64_t declared_clauses = 0;
    std::vector<std::int32_t> current;
    bool clause_open = false;

    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;

        std::size_t i = 0;
        auto skip_ws = [&] {
            while (i < line.size() &&
                   (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
                ++i;
        };
        skip_ws();
        if (i >= line.size()) continue;
        if (line[i] == 'c') continue;  // comment
        if (line[i] == 'p') {
            if (header_seen)
                throw ParseError(line_no, "duplicate DIMACS header");
            ++i;
            skip_ws();
            if (line.substr(i, 3) != "cnf")
                throw ParseError(line_no, "expected 'p cnf k n' header");
            i += 3;
            std::uint64_t nums[2];
            for (std::uint64_t& out : nums) {
                skip_ws();
                const std::size_t start = i;
                while (i < line.size() &&
                       std::isdigit(static_cast<unsigned char>(line[i])))
                    ++i;
                auto res = std::from_chars(line.data() + start,
                                           line.data() + i, out);
                if (start == i || res.ec != std::errc{})
                    throw ParseError(line_no, "malformed DIMACS header");
            }
            skip_ws();
            if (i != line.size())
                throw ParseError(line_no, "trailing input after header");
            if (nums[0] == 0)
                throw ParseError(line_no,
                                 "at least one proposition is required");
            if (nums[0] > 100000 || nums[1] > 1000000)
                throw ParseError(line_no, "instance too large");
            cnf.num_props = static_cast<std::uint32_t>(nums[0]);
            declared_clauses = nums[1];
            header_seen = true;
            continue;
        }
        if (!header_seen)
            throw ParseError(line_no, "clause before 'p cnf' header");
        while (i < line.size()) {
            skip_ws();
            if (i >= line.size()) break;
            bool neg = false;
            if (line[i] == '-') {
                neg = true;
                ++i;
            }
            const std::size_t start = i;
            while (i < line.size() &&
                   std::isdigit(static_cast<unsigned char>(line[i])))
                ++i;
            if (start == i)
                throw ParseError(line_no, "expected a literal");
            std::uint64_t value = 0;
            std::from_chars(line.data() + start, line.data() + i, value);
            if (value == 0) {
                if (neg) throw ParseError(line_no, "'-0' is not a literal");
                cnf.clauses.push_back(current);
                current.clear();
                clause_open = false;
            } else {
                if (value > cnf.num_props)
                    throw ParseError(line_no,
                                     "literal " + std::to_string(value) +
                                         " out of range");
                current.push_back(neg ? -static_cast<std::int32_t>(value)
                                      : static_cast<std::int32_t>(value));
                clause_open = true;
            }
        }
    }
    if (clause_open)
        throw ParseError(line_no, "unterminated clause (missing 0)");
    if (!header_seen) throw ParseError(line_no ? line_no : 1, "missing header");
    if (cnf.clauses.size() != declared_clauses)
        throw ParseError(line_no,
                         "clause count mismatch: header declares " +
                             std::to_string(declared_clauses) + ", found " +
                             std::to_string(cnf.clauses.size()));
    return cnf;
}

std::string write_dimacs(const CnfInstance& cnf) {
    std::string out = "p cnf " + std::to_string(cnf.num_props) + ' ' +
                      std::to_string(cnf.clauses.size()) + '\n';
    for (const auto& clause : cnf.clauses) {
        for (std::int32_t lit : clause) {
            out += std::to_string(lit);
            out += ' ';
        }
        out += "0\n";
    }
    return out;
}

bool clause_satisfied(const std::vector<std::int32_t>& clause,
                      const Assignment& rho) {
    for (std::int32_t lit : clause) {
        const std::size_t idx = static_cast<std::size_t>(std::abs(lit)) - 1;
        if (rho[idx] == (lit > 0)) return true;
    }
    return false;
}

bool satisfies(const CnfInstance& cnf, const Assignment& rho) {
    for (const auto& clause : cnf.clauses)
        if (!clause_satisfied(clause, rho)) return false;
    return true;
}

ReductionLts build_lts(const CnfInstance& cnf) {
    if (cnf.num_props == 0)
        throw std::invalid_argument("reduction needs at least one proposition");
    ReductionLts red;
    red.num_props = cnf.num_props;
    red.num_clauses = static_cast<std::uint32_t>(cnf.clauses.size());
    const std::uint32_t k = red.num_props;
    const std::uint32_t n = red.num_clauses;

    Lts::Builder b;
    b.ensure_states(std::size_t{n + 2} * (k + 1) + 3);
    red.s = static_cast<StateId>((n + 2) * (k + 1));
    red.t = red.s + 1;
    red.delta = red.s + 2;

    // interning order fixes the documented action ids
    for (std::uint32_t i = 1; i <= k; ++i) {
        b.action("p" + std::to_string(i));
        b.action("!p" + std::to_string(i));
    }
    const ActionId init = b.action("init");
    const ActionId flag = b.action("flag");

    auto has_literal = [&](const std::vector<std::int32_t>& clause,
                           std::int32_t lit) {
        return std::find(clause.begin(), clause.end(), lit) != clause.end();
    };

    for (std::uint32_t i = 1; i <= k; ++i) {
        const ActionId pos = red.pos_action(i);
        const ActionId neg = red.neg_action(i);
        b.add(red.sat_state(i - 1), pos, red.sat_state(i));
        b.add(red.sat_state(i - 1), neg, red.sat_state(i));
        b.add(red.bot_state(i - 1), pos, red.bot_state(i));
        b.add(red.bot_state(i - 1), neg, red.bot_state(i));
        for (std::uint32_t c = 1; c <= n; ++c) {
            const auto& clause = cnf.clauses[c - 1];
            const std::int32_t p = static_cast<std::int32_t>(i);
            b.add(red.unsat_state(c, i - 1), pos,
                  has_literal(clause, p) ? red.sat_state(i)
                                         : red.unsat_state(c, i));
            b.add(red.unsat_state(c, i - 1), neg,
                  has_literal(clause, -p) ? red.sat_state(i)
                                          : red.unsat_state(c, i));
        }
    }
    for (std::uint32_t c = 1; c <= n; ++c) {
        b.add(red.unsat_state(c, k), flag, red.delta);
        b.add(red.t, init, red.unsat_state(c, 0));
    }
    b.add(red.bot_state(k), flag, red.delta);
    b.add(red.t, init, red.sat_state(0));
    b.add(red.s, init, red.sat_state(0));
    b.add(red.s, init, red.bot_state(0));
    b.set_initial(red.s);

    red.lts = b.build();
    return red;
}

TraceWord assignment_to_trace(const ReductionLts& red, const Assignment& rho) {
    if (rho.size() != red.num_props)
        throw std::invalid_argument("assignment arity mismatch");
    TraceWord w;
    w.reserve(red.num_props);
    for (std::uint32_t i = 1; i <= red.num_props; ++i)
        w.push_back(rho[i - 1] ? red.pos_action(i) : red.neg_action(i));
    return w;
}

Assignment trace_to_assignment(const ReductionLts& red, const TraceWord& w) {
    if (w.size() != red.num_props)
        throw std::invalid_argument("truth word has wrong length");
    Assignment rho(red.num_props);
    for (std::uint32_t i = 1; i <= red.num_props; ++i) {
        if (w[i - 1] == red.pos_action(i))
            rho[i - 1] = true;
        else if (w[i - 1] == red.neg_action(i))
            rho[i - 1] = false;
        else
            throw std::invalid_argument(
                "position " + std::to_string(i) +
                " does not decide proposition p" + std::to_string(i));
    }
    return rho;
}

std::optional<TraceWord> trace_dist_search(const Lts& lts, StateId s,
                                           StateId t, std::size_t max_len) {
    if (max_len > lts.num_states())
        throw std::invalid_argument(
            "trace_dist_search: bound exceeds the state count");

    using Config = std::pair<std::vector<StateId>, std::vector<StateId>>;
    std::map<Config, bool> visited;
    std::deque<std::pair<Config, TraceWord>> queue;
    Config start{{s}, {t}};
    visited[start] = true;
    queue.emplace_back(std::move(start), TraceWord{});

    auto step = [&](const std::vector<StateId>& states, ActionId a) {
        StateSet next(lts.num_states());
        for (StateId x : states)
            for (StateId y : lts.successors(x, a)) next.set(y);
        std::vector<StateId> out;
        for (std::size_t i = next.find_first(); i != StateSet::npos;
             i = next.find_next(i))
            out.push_back(static_cast<StateId>(i));
        return out;
    };

    while (!queue.empty()) {
        auto [config, word] = std::move(queue.front());
        queue.pop_front();
        if (word.size() >= max_len) continue;
        for (ActionId a = 0; a < lts.num_actions(); ++a) {
            Config next{step(config.first, a), step(config.second, a)};
            if (next.first.empty() && next.second.empty()) continue;
            TraceWord extended = word;
            extended.push_back(a);
            if (next.first.empty() != next.second.empty()) return extended;
            if (visited.emplace(next, true).second)
                queue.emplace_back(std::move(next), std::move(extended));
        }
    }
    return std::nullopt;
}

SatResult sat_via_traces(const CnfInstance& cnf) {
    const ReductionLts red = build_lts(cnf);
    const auto witness =
        trace_dist_search(red.lts, red.s, red.t, cnf.num_props + 2u);
    SatResult res;
    if (!witness) return res;
    // the only distinguishing traces are init . truth-word . flag
    const TraceWord& w = *witness;
    if (w.size() != cnf.num_props + 2u || w.front() != red.init_action() ||
        w.back() != red.flag_action())
        throw std::logic_error("unexpected distinguishing trace shape");
    TraceWord truth(w.begin() + 1, w.end() - 1);
    res.satisfiable = true;
    res.assignment = trace_to_assignment(red, truth);
    return res;
}

}  // namespace hmldist
