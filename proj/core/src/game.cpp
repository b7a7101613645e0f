#include "vcg/game.hpp"

#include "vcg/errors.hpp"
#include "vcg/strategy.hpp"

#include <nlohmann/json.hpp>

namespace vcg {

std::string player_name(Player p) {
    return p == Player::Maker ? "maker" : "breaker";
}

GameState::GameState(const Graph& g, int k, Player first)
    : g_(&g),
      k_(k),
      color_of_(std::size_t(g.n()), 0),
      classes_(std::size_t(k), Bitset(std::size_t(g.n()))),
      avail_(std::size_t(g.n()), Bitset::all(std::size_t(k))),
      uncolored_(Bitset::all(std::size_t(g.n()))),
      to_move_(first) {
    if (k < 1) throw ParameterError("k must be >= 1");
}

const Bitset& GameState::available_colors(int v) const {
    if (is_colored(v)) throw ParameterError("available_colors on a colored vertex");
    return avail_[std::size_t(v)];
}

Bitset GameState::recompute_available(int v) const {
    Bitset a = Bitset::all(std::size_t(k_));
    g_->adj(v).for_each([&](std::size_t u) {
        int c = color_of_[u];
        if (c != 0) a.reset(std::size_t(c - 1));
    });
    return a;
}

bool GameState::is_legal(Move m, std::string* reason) const {
    auto fail = [&](const std::string& r) {
        if (reason) *reason = r;
        return false;
    };
    if (m.vertex < 0 || m.vertex >= g_->n()) return fail("vertex out of range");
    if (m.color < 1 || m.color > k_) return fail("color out of range");
    if (is_colored(m.vertex)) return fail("vertex already colored");
    if (!avail_[std::size_t(m.vertex)].test(std::size_t(m.color - 1)))
        return fail("color " + std::to_string(m.color) + " not available at vertex " +
                    std::to_string(m.vertex));
    return true;
}

std::optional<std::string> GameState::try_apply(Move m) {
    std::string reason;
    if (!is_legal(m, &reason)) return reason;
    color_of_[std::size_t(m.vertex)] = m.color;
    classes_[std::size_t(m.color - 1)].set(std::size_t(m.vertex));
    uncolored_.reset(std::size_t(m.vertex));
    g_->adj(m.vertex).for_each([&](std::size_t u) {
        if (color_of_[u] == 0) avail_[u].reset(std::size_t(m.color - 1));
    });
    history_.push_back({to_move_, m.vertex, m.color});
    to_move_ = opponent(to_move_);
    return std::nullopt;
}

GameState::Terminal GameState::terminal_status() const {
    int witness = -1;
    uncolored_.for_each([&](std::size_t v) {
        if (witness < 0 && avail_[v].none()) witness = int(v);
    });
    if (witness >= 0) return {Status::BreakerWin, witness};
    if (uncolored_.none()) return {Status::MakerWin, -1};
    return {Status::Ongoing, -1};
}

GameOutcome play_game(const Graph& g, int k, Strategy& maker, Strategy& breaker,
                      Player first) {
    GameState st(g, k, first);
    GameOutcome out;
    auto finish = [&](Player winner, int witness) {
        out.winner = winner;
        out.witness = witness;
        out.moves_played = int(st.history().size());
        out.transcript = st.history();
        out.class_sizes.resize(std::size_t(k));
        for (int c = 1; c <= k; ++c)
            out.class_sizes[std::size_t(c - 1)] = int(st.color_class(c).count());
        for (auto& [key, val] : maker.diagnostics()) out.diagnostics["maker." + key] = val;
        for (auto& [key, val] : breaker.diagnostics()) out.diagnostics["breaker." + key] = val;
        return out;
    };

    // a dead vertex can exist before any move when k is small relative to
    // structure only after coloring, but check anyway for uniform semantics
    auto t = st.terminal_status();
    while (t.status == GameState::Status::Ongoing) {
        Strategy& mover = st.to_move() == Player::Maker ? maker : breaker;
        std::optional<Move> m = mover.next_move(st);
        if (!m) {
            out.forfeit = true;
            out.forfeit_reason = player_name(st.to_move()) + " returned no move";
            return finish(opponent(st.to_move()), -1);
        }
        Player mover_role = st.to_move();
        if (auto err = st.try_apply(*m)) {
            out.forfeit = true;
            out.forfeit_reason = player_name(mover_role) + " illegal move: " + *err;
            return finish(opponent(mover_role), -1);
        }
        t = st.terminal_status();
    }
    return finish(t.status == GameState::Status::MakerWin ? Player::Maker : Player::Breaker,
                  t.witness);
}

std::string outcome_to_json(const GameOutcome& o) {
    nlohmann::json j;
    j["winner"] = player_name(o.winner);
    if (o.witness >= 0) j["witness"] = o.witness;
    j["moves_played"] = o.moves_played;
    j["class_sizes"] = o.class_sizes;
    j["forfeit"] = o.forfeit;
    if (o.forfeit) j["forfeit_reason"] = o.forfeit_reason;
    nlohmann::json moves = nlohmann::json::array();
    for (const auto& h : o.transcript)
        moves.push_back({{"mover", player_name(h.mover)},
                         {"vertex", h.vertex},
                         {"color", h.color}});
    j["transcript"] = moves;
    j["diagnostics"] = o.diagnostics;
    return j.dump(2);
}

}  // namespace vcg
