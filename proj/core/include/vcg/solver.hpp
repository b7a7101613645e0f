#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vcg/game.hpp"

namespace vcg {

struct SolveLimits {
    int max_n = 14;
    int max_k = 8;
    std::size_t table_limit = 1u << 24;  // past this the table stops growing
};

struct SolveStats {
    uint64_t nodes = 0;
    std::size_t table_size = 0;
};

// Exact game value under optimal play from st. Memoized on a canonical key
// that quotients out color-class permutations.
Player solve_position(const GameState& st, const SolveLimits& limits = {},
                      SolveStats* stats = nullptr);

// test support: plain recursion, no table, no canonicalization
Player solve_position_naive(const GameState& st, uint64_t* nodes = nullptr);

struct SolveReport {
    int n = 0;
    int kmax = 0;
    std::vector<Player> winner_per_k;       // index k-1
    std::optional<int> least_winning_k;     // least k with a Maker win
    uint64_t nodes = 0;
    std::size_t table_size = 0;             // max over the per-k solves
};

// Ascending scan over k = 1..kmax from the fresh position. The full win/lose
// vector is reported; Maker wins are not assumed monotone in k.
SolveReport game_chromatic_exact(const Graph& g, int kmax,
                                 const SolveLimits& limits = {},
                                 Player first = Player::Maker);

// Exact chromatic number by branch and bound, n <= max_n.
int chromatic_number_exact(const Graph& g, int max_n = 20);

std::string solve_report_to_json(const SolveReport& r);

}  // namespace vcg
