#include "vcg/solver.hpp"

#include <algorithm>
#include <unordered_map>

#include "vcg/errors.hpp"

#include <nlohmann/json.hpp>

namespace vcg {

namespace {

// Canonical position key: color classes sorted as vertex masks (quotienting
// out color permutations), 4 bits per vertex plus the mover bit. Requires
// n <= 14 and k <= 8 so everything fits in 64 bits.
uint64_t canonical_key(const GameState& st) {
    const int n = st.graph().n();
    const int k = st.k();
    std::vector<std::pair<uint32_t, int>> classes;  // (mask, original color)
    for (int c = 1; c <= k; ++c) {
        uint32_t mask = 0;
        st.color_class(c).for_each([&](std::size_t v) { mask |= 1u << v; });
        if (mask) classes.emplace_back(mask, c);
    }
    std::sort(classes.begin(), classes.end());
    std::vector<int> relabel(std::size_t(k) + 1, 0);
    for (std::size_t i = 0; i < classes.size(); ++i)
        relabel[std::size_t(classes[i].second)] = int(i) + 1;
    uint64_t key = st.to_move() == Player::Maker ? 0 : 1;
    for (int v = 0; v < n; ++v) {
        int c = st.color_of(v);
        key = (key << 4) | uint64_t(c == 0 ? 0 : relabel[std::size_t(c)]);
    }
    return key;
}

std::vector<int> ordered_moves(const GameState& st) {
    std::vector<int> verts;
    st.uncolored().for_each([&](std::size_t v) { verts.push_back(int(v)); });
    std::stable_sort(verts.begin(), verts.end(), [&](int a, int b) {
        return st.available_colors(a).count() < st.available_colors(b).count();
    });
    return verts;
}

struct Solver {
    const SolveLimits& limits;
    std::unordered_map<uint64_t, uint8_t> table;
    uint64_t nodes = 0;

    Player solve(const GameState& st) {
        ++nodes;
        auto t = st.terminal_status();
        if (t.status == GameState::Status::MakerWin) return Player::Maker;
        if (t.status == GameState::Status::BreakerWin) return Player::Breaker;
        uint64_t key = canonical_key(st);
        if (auto it = table.find(key); it != table.end())
            return Player(it->second);
        Player mover = st.to_move();
        Player result = opponent(mover);
        for (int v : ordered_moves(st)) {
            const Bitset& avail = st.available_colors(v);
            bool won = false;
            avail.for_each([&](std::size_t c) {
                if (won) return;
                GameState child = st;
                child.try_apply({v, int(c) + 1});
                if (solve(child) == mover) won = true;
            });
            if (won) {
                result = mover;
                break;
            }
        }
        // on table overflow we keep solving without memoizing new positions
        if (table.size() < limits.table_limit)
            table.emplace(key, uint8_t(result));
        return result;
    }
};

}  // namespace

Player solve_position(const GameState& st, const SolveLimits& limits,
                      SolveStats* stats) {
    if (st.graph().n() > limits.max_n)
        throw CapacityError("solver limited to n <= " + std::to_string(limits.max_n));
    if (st.k() > limits.max_k)
        throw CapacityError("solver limited to k <= " + std::to_string(limits.max_k));
    Solver s{limits, {}, 0};
    Player w = s.solve(st);
    if (stats) {
        stats->nodes = s.nodes;
        stats->table_size = s.table.size();
    }
    return w;
}

Player solve_position_naive(const GameState& st, uint64_t* nodes) {
    if (nodes) ++*nodes;
    auto t = st.terminal_status();
    if (t.status == GameState::Status::MakerWin) return Player::Maker;
    if (t.status == GameState::Status::BreakerWin) return Player::Breaker;
    Player mover = st.to_move();
    bool mover_wins = false;
    st.uncolored().for_each([&](std::size_t v) {
        if (mover_wins) return;
        st.available_colors(int(v)).for_each([&](std::size_t c) {
            if (mover_wins) return;
            GameState child = st;
            child.try_apply({int(v), int(c) + 1});
            if (solve_position_naive(child, nodes) == mover) mover_wins = true;
        });
    });
    return mover_wins ? mover : opponent(mover);
}

SolveReport game_chromatic_exact(const Graph& g, int kmax, const SolveLimits& limits,
                                 Player first) {
    if (kmax < 1) throw ParameterError("kmax must be >= 1");
    SolveReport report;
    report.n = g.n();
    report.kmax = kmax;
    for (int k = 1; k <= kmax; ++k) {
        GameState st(g, k, first);
        SolveStats stats;
        Player w = solve_position(st, limits, &stats);
        report.winner_per_k.push_back(w);
        report.nodes += stats.nodes;
        report.table_size = std::max(report.table_size, stats.table_size);
        if (w == Player::Maker && !report.least_winning_k)
            report.least_winning_k = k;
    }
    return report;
}

namespace {

struct ChiSolver {
    const Graph* g;
    std::vector<int> order;       // vertices by descending degree
    std::vector<int> assigned;    // color per order position, 0 = none
    int best;

    bool extend(std::size_t pos, int used) {
        if (used >= best) return false;
        if (pos == order.size()) {
            best = used;
            return true;
        }
        int v = order[pos];
        bool improved = false;
        for (int c = 1; c <= std::min(used + 1, best - 1); ++c) {
            bool ok = true;
            for (std::size_t i = 0; i < pos && ok; ++i)
                if (assigned[i] == c && g->has_edge(v, order[i])) ok = false;
            if (!ok) continue;
            assigned[pos] = c;
            improved |= extend(pos + 1, std::max(used, c));
            assigned[pos] = 0;
        }
        return improved;
    }
};

}  // namespace

int chromatic_number_exact(const Graph& g, int max_n) {
    if (g.n() > max_n)
        throw CapacityError("chromatic number limited to n <= " + std::to_string(max_n));
    if (g.edge_count() == 0) return 1;
    ChiSolver s;
    s.g = &g;
    s.order.resize(std::size_t(g.n()));
    for (int v = 0; v < g.n(); ++v) s.order[std::size_t(v)] = v;
    std::stable_sort(s.order.begin(), s.order.end(),
                     [&](int a, int b) { return g.degree(a) > g.degree(b); });
    // greedy upper bound
    {
        std::vector<int> color(std::size_t(g.n()), 0);
        int used = 0;
        for (int v : s.order) {
            int c = 1;
            for (; ; ++c) {
                bool ok = true;
                g.adj(v).for_each([&](std::size_t u) {
                    if (color[u] == c) ok = false;
                });
                if (ok) break;
            }
            color[std::size_t(v)] = c;
            used = std::max(used, c);
        }
        s.best = used;
    }
    s.assigned.assign(s.order.size(), 0);
    s.extend(0, 0);
    return s.best;
}

std::string solve_report_to_json(const SolveReport& r) {
    nlohmann::json j;
    j["n"] = r.n;
    j["kmax"] = r.kmax;
    nlohmann::json winners = nlohmann::json::array();
    for (Player w : r.winner_per_k) winners.push_back(player_name(w));
    j["winner_per_k"] = winners;
    if (r.least_winning_k)
        j["least_winning_k"] = *r.least_winning_k;
    else
        j["least_winning_k"] = nullptr;
    j["nodes"] = r.nodes;
    j["table_size"] = r.table_size;
    return j.dump(2);
}

}  // namespace vcg
