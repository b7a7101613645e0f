#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vcg/bitset.hpp"
#include "vcg/graph.hpp"

namespace vcg {

enum class Player : uint8_t { Maker, Breaker };

inline Player opponent(Player p) {
    return p == Player::Maker ? Player::Breaker : Player::Maker;
}
std::string player_name(Player p);

struct Move {
    int vertex = -1;
    int color = 0;  // colors are 1..k
};

// Partial proper coloring plus turn bookkeeping. One GameState belongs to one
// worker at a time; the referenced Graph is shared read-only.
class GameState {
public:
    struct HistEntry {
        Player mover;
        int vertex;
        int color;
    };

    GameState(const Graph& g, int k, Player first = Player::Maker);

    const Graph& graph() const { return *g_; }
    int k() const { return k_; }
    Player to_move() const { return to_move_; }
    const std::vector<HistEntry>& history() const { return history_; }

    bool is_colored(int v) const { return color_of_[std::size_t(v)] != 0; }
    int color_of(int v) const { return color_of_[std::size_t(v)]; }
    const Bitset& color_class(int c) const { return classes_[std::size_t(c - 1)]; }
    const Bitset& uncolored() const { return uncolored_; }
    int uncolored_count() const { return int(uncolored_.count()); }

    // A(v,C) as a bitset over colors (bit c-1 = color c available); v must be
    // uncolored.
    const Bitset& available_colors(int v) const;
    int availability(int v) const { return int(available_colors(v).count()); }

    bool is_legal(Move m, std::string* reason = nullptr) const;

    // Applies m for the player to move, or returns a rejection reason and
    // leaves the state unchanged.
    std::optional<std::string> try_apply(Move m);

    enum class Status { Ongoing, MakerWin, BreakerWin };
    struct Terminal {
        Status status = Status::Ongoing;
        int witness = -1;  // dead vertex on BreakerWin
    };
    Terminal terminal_status() const;

    // test support: recompute A(v,C) from neighbor colors, bypassing the cache
    Bitset recompute_available(int v) const;

private:
    const Graph* g_;
    int k_;
    std::vector<int> color_of_;
    std::vector<Bitset> classes_;
    std::vector<Bitset> avail_;
    Bitset uncolored_;
    Player to_move_;
    std::vector<HistEntry> history_;
};

class Strategy;

struct GameOutcome {
    Player winner = Player::Maker;
    int witness = -1;
    int moves_played = 0;
    std::vector<int> class_sizes;
    std::vector<GameState::HistEntry> transcript;
    std::map<std::string, std::string> diagnostics;
    bool forfeit = false;
    std::string forfeit_reason;
};

GameOutcome play_game(const Graph& g, int k, Strategy& maker, Strategy& breaker,
                      Player first = Player::Maker);

std::string outcome_to_json(const GameOutcome& o);

}  // namespace vcg
