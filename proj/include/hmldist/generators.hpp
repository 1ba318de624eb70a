// Example LTS families and the seeded random generator used by benchmarks.
#pragma once

#include <cstdint>

#include "hmldist/lts.hpp"

namespace hmldist {

/// Chain x_n -a-> x_{n-1} -a-> ... -a-> x_0. State x_i has id i.
Lts gen_chain_a(std::size_t n);

/// The two-rail family: x_i has id i, y_i has id n+1+i. Transitions
/// y_0 -a-> y_0, and for 1 <= i <= n: x_i -a-> x_{i-1}, y_i -a-> y_{i-1},
/// plus the crossing y_i -a-> x_{i-1} (i even) or x_i -a-> y_{i-1} (i odd).
Lts gen_ladder_b(std::size_t n);

inline StateId ladder_x(std::size_t /*n*/, std::size_t i) {
    return static_cast<StateId>(i);
}
inline StateId ladder_y(std::size_t n, std::size_t i) {
    return static_cast<StateId>(n + 1 + i);
}

/// Three states s_0, s_1, s_2 with s_0 -a-> s_1 -a-> s_2 and s_1 -b-> s_0.
Lts gen_figure_m();

struct RandomLtsConfig {
    std::size_t states = 8;
    std::size_t actions = 2;
    double density = 2.0;  // transitions = round(density * states)
    std::uint64_t seed = 0;
};

/// Uniform random transition relation, duplicate-free. Fully determined by
/// the config (mt19937_64 with fixed draw order), so benchmark runs are
/// reproducible across machines.
Lts gen_random(const RandomLtsConfig& cfg);

}  // namespace hmldist
