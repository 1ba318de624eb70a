#include "hmldist/generators.hpp"

#include <random>
#include <set>

namespace hmldist {

Lts gen_chain_a(std::size_t n) {
    Lts::Builder b;
    b.ensure_states(n + 1);
    const ActionId a = b.action("a");
    for (std::size_t i = 1; i <= n; ++i)
        b.add(static_cast<StateId>(i), a, static_cast<StateId>(i - 1));
    b.set_initial(static_cast<StateId>(n));
    return b.build();
}

Lts gen_ladder_b(std::size_t n) {
    Lts::Builder b;
    b.ensure_states(2 * (n + 1));
    const ActionId a = b.action("a");
    b.add(ladder_y(n, 0), a, ladder_y(n, 0));
    for (std::size_t i = 1; i <= n; ++i) {
        b.add(ladder_x(n, i), a, ladder_x(n, i - 1));
        b.add(ladder_y(n, i), a, ladder_y(n, i - 1));
        if (i % 2 == 0)
            b.add(ladder_y(n, i), a, ladder_x(n, i - 1));
        else
            b.add(ladder_x(n, i), a, ladder_y(n, i - 1));
    }
    b.set_initial(ladder_x(n, n));
    return b.build();
}

Lts gen_figure_m() {
    Lts::Builder b;
    b.ensure_states(3);
    const ActionId a = b.action("a");
    const ActionId act_b = b.action("b");
    b.add(0, a, 1);
    b.add(1, a, 2);
    b.add(1, act_b, 0);
    b.set_initial(0);
    return b.build();
}

Lts gen_random(const RandomLtsConfig& cfg) {
    Lts::Builder b;
    b.ensure_states(cfg.states);
    for (std::size_t i = 0; i < cfg.actions; ++i)
        b.action("a" + std::to_string(i));

    std::mt19937_64 rng(cfg.seed);
    const std::uint64_t total =
        static_cast<std::uint64_t>(cfg.states) * cfg.actions * cfg.states;
    std::uint64_t want =
        static_cast<std::uint64_t>(cfg.density * static_cast<double>(cfg.states) + 0.5);
    if (want > total) want = total;

    // Modulo reduction instead of uniform_int_distribution: the latter is
    // implementation-defined, this keeps streams identical across toolchains.
    std::set<Transition> picked;
    std::uint64_t attempts = 0;
    const std::uint64_t attempt_cap = 64 * (want + 16);
    while (picked.size() < want && attempts < attempt_cap) {
        ++attempts;
        const StateId src = static_cast<StateId>(rng() % cfg.states);
        const ActionId act = static_cast<ActionId>(rng() % cfg.actions);
        const StateId dst = static_cast<StateId>(rng() % cfg.states);
        picked.insert({src, act, dst});
    }
    for (const auto& tr : picked) b.add(tr.src, tr.act, tr.dst);
    b.set_initial(0);
    return b.build();
}

}  // namespace hmldist
