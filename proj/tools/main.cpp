// hmldist: decide behavioural inequivalence of LTS states and emit minimal
// distinguishing HML formulas, with a Cleaveland-style baseline, brute-force
// oracles for tiny inputs, and the CNF-SAT instance generator.
//
// Exit codes: 0 distinguishable / satisfiable / ok, 1 bisimilar /
// unsatisfiable, 2 error.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "hmldist/aut.hpp"
#include "hmldist/cleaveland.hpp"
#include "hmldist/distinguish.hpp"
#include "hmldist/equivalences.hpp"
#include "hmldist/generators.hpp"
#include "hmldist/hml.hpp"
#include "hmldist/hml_text.hpp"
#include "hmldist/oracle.hpp"
#include "hmldist/reduction.hpp"

using json = nlohmann::ordered_json;
using namespace hmldist;

namespace {

constexpr const char* kSchemaResult = "hmldist.result/1";
constexpr const char* kSchemaRefine = "hmldist.refine/1";
constexpr const char* kSchemaMetrics = "hmldist.metrics/1";
constexpr const char* kSchemaRoles = "hmldist.roles/1";

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spill(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << content;
}

StateId parse_state(const Lts& lts, const std::string& text) {
    std::size_t used = 0;
    unsigned long value = 0;
    try {
        value = std::stoul(text, &used);
    } catch (const std::exception&) {
        throw std::runtime_error("'" + text + "' is not a state id");
    }
    if (used != text.size())
        throw std::runtime_error("'" + text + "' is not a state id");
    if (value >= lts.num_states())
        throw std::runtime_error("state " + text + " out of range (" +
                                 std::to_string(lts.num_states()) + " states)");
    return static_cast<StateId>(value);
}

struct MethodReport {
    std::string method;
    NodeId formula = 0;
    Metrics metrics;
    std::uint32_t dist = kInf;
    std::uint32_t dirdist = kInf;
    std::optional<std::uint64_t> calls;
};

json report_json(FormulaStore& store, const MethodReport& r) {
    json j;
    j["method"] = r.method;
    j["dist"] = r.dist;
    j["dirdist"] = r.dirdist;
    if (store.tree_nodes(r.formula) <= 10000)
        j["formula_inline"] = render(store, r.formula, RenderStyle::Inline);
    j["formula_equations"] = render(store, r.formula, RenderStyle::Equations);
    j["size"] = r.metrics.size.str();
    j["dag_size"] = r.metrics.dag_size;
    j["depth"] = r.metrics.depth;
    j["negdepth"] = r.metrics.negdepth;
    if (r.calls) j["calls"] = *r.calls;
    return j;
}

void report_text(FormulaStore& store, const MethodReport& r) {
    std::cout << "method: " << r.method << "\n";
    std::cout << "dist: " << r.dist << "\n";
    std::cout << "dirdist: " << r.dirdist << "\n";
    // prefer the shared form as soon as sharing buys anything
    if (r.metrics.size > r.metrics.dag_size) {
        std::cout << "formula:\n"
                  << render(store, r.formula, RenderStyle::Equations);
    } else {
        std::cout << "formula: "
                  << render(store, r.formula, RenderStyle::Inline) << "\n";
    }
    std::cout << "size: " << r.metrics.size.str() << "\n";
    std::cout << "dag_size: " << r.metrics.dag_size << "\n";
    std::cout << "depth: " << r.metrics.depth << "\n";
    std::cout << "negdepth: " << r.metrics.negdepth << "\n";
    if (r.calls) std::cout << "calls: " << *r.calls << "\n";
}

json roles_json(const ReductionLts& red) {
    json roles;
    roles["schema"] = kSchemaRoles;
    roles["num_props"] = red.num_props;
    roles["num_clauses"] = red.num_clauses;
    json states = json::array();
    for (std::uint32_t layer = 0; layer <= red.num_props; ++layer)
        states.push_back(
            {{"id", red.sat_state(layer)}, {"role", "sat"}, {"layer", layer}});
    for (std::uint32_t layer = 0; layer <= red.num_props; ++layer)
        states.push_back(
            {{"id", red.bot_state(layer)}, {"role", "bot"}, {"layer", layer}});
    for (std::uint32_t c = 1; c <= red.num_clauses; ++c)
        for (std::uint32_t layer = 0; layer <= red.num_props; ++layer)
            states.push_back({{"id", red.unsat_state(c, layer)},
                              {"role", "unsat"},
                              {"clause", c},
                              {"layer", layer}});
    states.push_back({{"id", red.s}, {"role", "s"}});
    states.push_back({{"id", red.t}, {"role", "t"}});
    states.push_back({{"id", red.delta}, {"role", "delta"}});
    roles["states"] = std::move(states);
    json actions = json::array();
    for (ActionId a = 0; a < red.lts.num_actions(); ++a)
        actions.push_back(red.lts.actions().text(a));
    roles["actions"] = std::move(actions);
    return roles;
}

int cmd_distinguish(const std::string& file, const std::string& s_text,
                    const std::string& t_text, const std::string& mode,
                    const std::string& method, const std::string& format,
                    std::optional<std::uint64_t> seed, bool oracle_search,
                    std::size_t oracle_max_size) {
    const Lts lts = parse_aut(slurp(file));
    const StateId s = parse_state(lts, s_text);
    const StateId t = parse_state(lts, t_text);

    const PartitionSequence seq = refine_sequence(lts);
    DirDistTable dd(lts, seq);
    FormulaStore store(lts.actions_ptr());

    const std::uint32_t d = seq.dist(s, t);
    if (d == kInf) {
        if (format == "json") {
            json j;
            j["schema"] = kSchemaResult;
            j["verdict"] = "equivalent";
            j["states"] = {s, t};
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "verdict: bisimilar\n";
        }
        return 1;
    }

    DistinguishOptions opts;
    opts.mode = mode == "depth" ? WitnessMode::DepthOnly
                                : WitnessMode::DepthAndNegation;
    if (seed) {
        opts.pick = PickStrategy::SeededRandom;
        opts.seed = *seed;
    }

    std::vector<MethodReport> reports;
    if (method == "ours" || method == "both") {
        const WitnessResult r = distinguish(lts, seq, dd, store, s, t, opts);
        MethodReport rep;
        rep.method = "ours";
        rep.formula = r.formula;
        rep.metrics = r.metrics;
        rep.dist = r.dist;
        rep.dirdist = r.dirdist;
        rep.calls = r.calls;
        reports.push_back(std::move(rep));
    }
    if (method == "cleaveland" || method == "both") {
        const SplitTree tree = cleaveland_refine(lts);
        MethodReport rep;
        rep.method = "cleaveland";
        rep.formula = cleaveland_formula(lts, tree, store, s, t);
        rep.metrics = store.metrics(rep.formula);
        rep.dist = d;
        rep.dirdist = dd.dirdist(d, s, t);
        reports.push_back(std::move(rep));
    }

    std::optional<MethodReport> oracle_rep;
    if (oracle_search) {
        const auto found =
            oracle::enumerate_min_formula(lts, store, s, t, oracle_max_size);
        if (found) {
            MethodReport rep;
            rep.method = "oracle-min-size";
            rep.formula = *found;
            rep.metrics = store.metrics(*found);
            rep.dist = d;
            rep.dirdist = dd.dirdist(d, s, t);
            oracle_rep = std::move(rep);
        }
    }

    if (format == "json") {
        json j;
        j["schema"] = kSchemaResult;
        j["verdict"] = "distinguishable";
        j["states"] = {s, t};
        j["mode"] = mode;
        for (MethodReport& rep : reports)
            j[rep.method] = report_json(store, rep);
        if (oracle_rep)
            j["oracle_min_size"] = report_json(store, *oracle_rep);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "verdict: distinguishable\n";
        if (reports.size() == 2) {
            // a Table-1-style metric comparison
            const Metrics& a = reports[0].metrics;
            const Metrics& b = reports[1].metrics;
            std::printf("%-10s %14s %14s\n", "metric", "ours", "cleaveland");
            std::printf("%-10s %14u %14u\n", "depth", a.depth, b.depth);
            std::printf("%-10s %14s %14s\n", "size", a.size.str().c_str(),
                        b.size.str().c_str());
            std::printf("%-10s %14u %14u\n", "negdepth", a.negdepth,
                        b.negdepth);
            std::cout << "\n";
        }
        for (MethodReport& rep : reports) {
            report_text(store, rep);
            std::cout << "\n";
        }
        if (oracle_rep) report_text(store, *oracle_rep);
    }
    return 0;
}

int cmd_refine(const std::string& file, bool dump_levels) {
    const Lts lts = parse_aut(slurp(file));
    const PartitionSequence seq = refine_sequence(lts);
    if (!dump_levels) {
        std::cout << "states: " << lts.num_states() << "\n";
        std::cout << "stable at level: " << seq.depth() << "\n";
        for (std::size_t level = 0; level <= seq.depth(); ++level)
            std::cout << "level " << level << ": " << seq.num_blocks(level)
                      << " blocks\n";
        return 0;
    }
    json j;
    j["schema"] = kSchemaRefine;
    j["states"] = lts.num_states();
    j["stable_level"] = seq.depth();
    json levels = json::array();
    for (std::size_t level = 0; level <= seq.depth(); ++level)
        levels.push_back(seq.blocks(level));
    j["levels"] = std::move(levels);
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_gen(const std::string& family, std::optional<std::uint64_t> n,
            const std::string& cnf_path, const std::string& out,
            const std::string& roles_path) {
    Lts lts;
    std::optional<ReductionLts> red;
    if (family == "a" || family == "b") {
        if (!n)
            throw std::runtime_error("family '" + family +
                                     "' needs the chain length argument");
        lts = family == "a" ? gen_chain_a(*n) : gen_ladder_b(*n);
    } else if (family == "m") {
        lts = gen_figure_m();
    } else if (family == "reduction") {
        if (cnf_path.empty())
            throw std::runtime_error("family 'reduction' needs --cnf FILE");
        red = build_lts(parse_dimacs(slurp(cnf_path)));
        lts = red->lts;
    } else {
        throw std::runtime_error("unknown family '" + family +
                                 "' (expected a, b, m or reduction)");
    }
    spill(out, write_aut(lts));
    if (!roles_path.empty()) {
        if (!red)
            throw std::runtime_error("--roles only applies to 'reduction'");
        spill(roles_path, roles_json(*red).dump(2) + "\n");
    }
    return 0;
}

int cmd_reduce(const std::string& file, bool decide,
               const std::string& emit_aut, const std::string& roles_path,
               const std::string& format) {
    const CnfInstance cnf = parse_dimacs(slurp(file));
    const ReductionLts red = build_lts(cnf);
    if (!emit_aut.empty()) spill(emit_aut, write_aut(red.lts));
    if (!roles_path.empty()) spill(roles_path, roles_json(red).dump(2) + "\n");
    if (!decide) return 0;

    const SatResult res = sat_via_traces(cnf);
    if (format == "json") {
        json j;
        j["schema"] = kSchemaResult;
        j["verdict"] = res.satisfiable ? "satisfiable" : "unsatisfiable";
        if (res.satisfiable) {
            json model = json::array();
            for (std::uint32_t i = 1; i <= cnf.num_props; ++i)
                model.push_back(res.assignment[i - 1]
                                    ? static_cast<std::int32_t>(i)
                                    : -static_cast<std::int32_t>(i));
            j["assignment"] = std::move(model);
            TraceWord w = assignment_to_trace(red, res.assignment);
            w.insert(w.begin(), red.init_action());
            w.push_back(red.flag_action());
            j["distinguishing_trace"] = word_text(red.lts.actions(), w);
        }
        std::cout << j.dump(2) << "\n";
    } else if (res.satisfiable) {
        std::cout << "satisfiable:";
        for (std::uint32_t i = 1; i <= cnf.num_props; ++i)
            std::cout << ' ' << (res.assignment[i - 1] ? "" : "-") << i;
        std::cout << "\n";
    } else {
        std::cout << "unsatisfiable\n";
    }
    return res.satisfiable ? 0 : 1;
}

int cmd_metrics(const std::string& file, const std::string& format) {
    FormulaStore store;
    const NodeId id = parse_formula(store, slurp(file));
    const Metrics m = store.metrics(id);
    if (format == "json") {
        json j;
        j["schema"] = kSchemaMetrics;
        j["size"] = m.size.str();
        j["dag_size"] = m.dag_size;
        j["depth"] = m.depth;
        j["negdepth"] = m.negdepth;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "size: " << m.size.str() << "\n";
        std::cout << "dag_size: " << m.dag_size << "\n";
        std::cout << "depth: " << m.depth << "\n";
        std::cout << "negdepth: " << m.negdepth << "\n";
    }
    return 0;
}

struct BenchAccumulator {
    std::uint32_t max_depth = 0;
    boost::multiprecision::cpp_int max_size = 0;
    std::uint32_t max_negdepth = 0;
    std::uint64_t sum_depth = 0;
    boost::multiprecision::cpp_int sum_size = 0;
    std::uint64_t sum_negdepth = 0;
    std::uint64_t count = 0;

    void add(const Metrics& m) {
        max_depth = std::max(max_depth, m.depth);
        if (m.size > max_size) max_size = m.size;
        max_negdepth = std::max(max_negdepth, m.negdepth);
        sum_depth += m.depth;
        sum_size += m.size;
        sum_negdepth += m.negdepth;
        ++count;
    }
    std::string avg(const boost::multiprecision::cpp_int& sum) const {
        if (count == 0) return "0.0";
        const double v =
            sum.convert_to<double>() / static_cast<double>(count);
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.1f", v);
        return buf;
    }
    std::string avg(std::uint64_t sum) const {
        return avg(boost::multiprecision::cpp_int(sum));
    }
};

int cmd_bench(std::uint64_t instances, std::uint64_t states_min,
              std::uint64_t states_max, std::uint64_t actions, double density,
              std::uint64_t seed, std::uint64_t pairs_per_instance,
              const std::string& out_path) {
    if (states_max < states_min) states_max = states_min;
    std::ostringstream csv;
    csv << "benchmark,states,transitions,pairs"
        << ",max_depth_ours,max_depth_cleaveland"
        << ",max_size_ours,max_size_cleaveland"
        << ",max_negdepth_ours,max_negdepth_cleaveland"
        << ",avg_depth_ours,avg_depth_cleaveland"
        << ",avg_size_ours,avg_size_cleaveland"
        << ",avg_negdepth_ours,avg_negdepth_cleaveland\n";

    std::mt19937_64 rng(seed);
    bool ever_deeper = false;
    for (std::uint64_t i = 0; i < instances; ++i) {
        RandomLtsConfig cfg;
        cfg.states = states_min + (states_max > states_min
                                       ? rng() % (states_max - states_min + 1)
                                       : 0);
        cfg.actions = actions;
        cfg.density = density;
        cfg.seed = rng();
        const Lts lts = gen_random(cfg);
        const PartitionSequence seq = refine_sequence(lts);
        DirDistTable dd(lts, seq);
        FormulaStore store(lts.actions_ptr());
        WitnessBuilder ours(lts, seq, dd, store);
        const SplitTree tree = cleaveland_refine(lts);
        CleavelandGenerator baseline(lts, tree, store);

        BenchAccumulator acc_ours, acc_base;
        std::uint64_t used = 0;
        for (StateId s = 0; s < lts.num_states() && used < pairs_per_instance;
             ++s) {
            for (StateId t = s + 1;
                 t < lts.num_states() && used < pairs_per_instance; ++t) {
                const std::uint32_t d = seq.dist(s, t);
                if (d == kInf) continue;
                const NodeId mine = ours.psi(d, s, t);
                const NodeId raw = baseline.formula(s, t);
                const NodeId theirs =
                    reduce_irreducible(store, raw, lts, s, t);
                const Metrics mm = store.metrics(mine);
                const Metrics mb = store.metrics(theirs);
                acc_ours.add(mm);
                acc_base.add(mb);
                if (mm.depth > mb.depth) ever_deeper = true;
                ++used;
            }
        }
        csv << "random-" << i << ',' << lts.num_states() << ','
            << lts.num_transitions() << ',' << used << ','
            << acc_ours.max_depth << ',' << acc_base.max_depth << ','
            << acc_ours.max_size.str() << ',' << acc_base.max_size.str()
            << ',' << acc_ours.max_negdepth << ',' << acc_base.max_negdepth
            << ',' << acc_ours.avg(acc_ours.sum_depth) << ','
            << acc_base.avg(acc_base.sum_depth) << ','
            << acc_ours.avg(acc_ours.sum_size) << ','
            << acc_base.avg(acc_base.sum_size) << ','
            << acc_ours.avg(acc_ours.sum_negdepth) << ','
            << acc_base.avg(acc_base.sum_negdepth) << '\n';
    }
    spill(out_path, csv.str());
    if (ever_deeper)
        throw std::runtime_error(
            "internal check failed: a witness exceeded the baseline depth");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "minimal distinguishing Hennessy-Milner formulas for LTS states"};
    app.require_subcommand(1);

    // distinguish
    std::string d_file, d_s, d_t;
    std::string d_mode = "lexicographic", d_method = "ours",
                d_format = "text";
    std::optional<std::uint64_t> d_seed;
    bool d_oracle = false;
    std::size_t d_oracle_max = 6;
    auto* dist =
        app.add_subcommand("distinguish",
                           "emit a minimal distinguishing formula for a pair");
    dist->add_option("file", d_file, "input .aut file")->required();
    dist->add_option("s", d_s, "first state id")->required();
    dist->add_option("t", d_t, "second state id")->required();
    dist->add_option("--mode", d_mode, "depth | lexicographic (default)")
        ->check(CLI::IsMember({"depth", "lexicographic"}));
    dist->add_option("--method", d_method, "ours | cleaveland | both")
        ->check(CLI::IsMember({"ours", "cleaveland", "both"}));
    dist->add_option("--format", d_format, "text | json")
        ->check(CLI::IsMember({"text", "json"}));
    dist->add_option("--seed", d_seed,
                     "pick observations pseudo-randomly from this seed "
                     "instead of the deterministic rule");
    dist->add_flag("--oracle", d_oracle,
                   "also run the brute-force minimal-size search "
                   "(tiny inputs only)");
    dist->add_option("--oracle-max-size", d_oracle_max,
                     "size bound for --oracle (default 6, max 8)");

    // refine
    std::string r_file;
    bool r_dump = false;
    auto* refine = app.add_subcommand(
        "refine", "run iterative partition refinement on an .aut file");
    refine->add_option("file", r_file, "input .aut file")->required();
    refine->add_flag("--dump-levels", r_dump,
                     "print every level's blocks as JSON");

    // gen
    std::string g_family, g_cnf, g_out, g_roles;
    std::optional<std::uint64_t> g_n;
    auto* gen = app.add_subcommand("gen", "generate an example LTS family");
    gen->add_option("family", g_family, "a | b | m | reduction")->required();
    gen->add_option("n", g_n, "chain length for families a and b");
    gen->add_option("--cnf", g_cnf, "DIMACS input for family 'reduction'");
    gen->add_option("-o,--output", g_out, "output .aut path (default stdout)");
    gen->add_option("--roles", g_roles,
                    "sidecar JSON role map (reduction only)");

    // reduce
    std::string c_file, c_emit, c_roles, c_format = "text";
    bool c_decide = false;
    auto* reduce = app.add_subcommand(
        "reduce", "CNF-SAT to LTS reduction; decide via trace search");
    reduce->add_option("file", c_file, "DIMACS .cnf file")->required();
    reduce->add_flag("--decide", c_decide,
                     "decide satisfiability (exit 0 sat / 1 unsat)");
    reduce->add_option("--emit-aut", c_emit, "write the reduction LTS here");
    reduce->add_option("--roles", c_roles, "write the JSON role map here");
    reduce->add_option("--format", c_format, "text | json")
        ->check(CLI::IsMember({"text", "json"}));

    // metrics
    std::string m_file, m_format = "text";
    auto* metrics = app.add_subcommand(
        "metrics", "metrics of a formula file (size/dag_size/depth/negdepth)");
    metrics->add_option("file", m_file, "formula text file")->required();
    metrics->add_option("--format", m_format, "text | json")
        ->check(CLI::IsMember({"text", "json"}));

    // bench
    std::uint64_t b_instances = 20, b_states = 50, b_states_max = 0,
                  b_actions = 2, b_pairs = 5, b_seed = 1;
    double b_density = 2.0;
    std::string b_out;
    auto* bench = app.add_subcommand(
        "bench", "compare both methods over seeded random LTSs (CSV)");
    bench->add_option("--random", b_instances, "number of random instances");
    bench->add_option("--states", b_states, "states per instance (minimum)");
    bench->add_option("--states-max", b_states_max,
                      "sample instance sizes up to this bound");
    bench->add_option("--actions", b_actions, "action alphabet size");
    bench->add_option("--density", b_density,
                      "transitions per state (default 2.0)");
    bench->add_option("--seed", b_seed, "master seed");
    bench->add_option("--pairs", b_pairs, "distinguishable pairs per instance");
    bench->add_option("--out", b_out, "CSV output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (dist->parsed())
            return cmd_distinguish(d_file, d_s, d_t, d_mode, d_method,
                                   d_format, d_seed, d_oracle, d_oracle_max);
        if (refine->parsed()) return cmd_refine(r_file, r_dump);
        if (gen->parsed())
            return cmd_gen(g_family, g_n, g_cnf, g_out, g_roles);
        if (reduce->parsed())
            return cmd_reduce(c_file, c_decide, c_emit, c_roles, c_format);
        if (metrics->parsed()) return cmd_metrics(m_file, m_format);
        if (bench->parsed())
            return cmd_bench(b_instances, b_states,
                             b_states_max ? b_states_max : b_states, b_actions,
                             b_density, b_seed, b_pairs, b_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
