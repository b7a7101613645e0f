#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "vcg/bounds.hpp"
#include "vcg/game.hpp"
#include "vcg/graph.hpp"
#include "vcg/rng.hpp"

namespace vcg {

// A move-selection policy bound to one role and one game. Deterministic given
// its seed and the observed state sequence; must return a legal move whenever
// one exists (nullopt only when the mover has no legal move at all).
class Strategy {
public:
    virtual ~Strategy() = default;
    virtual std::optional<Move> next_move(const GameState& st) = 0;
    virtual std::string name() const = 0;
    const std::map<std::string, std::string>& diagnostics() const { return diag_; }

protected:
    std::map<std::string, std::string> diag_;
    void bump(const std::string& key);
    void set_diag(const std::string& key, const std::string& val) { diag_[key] = val; }
};

// Maker's greedy rule: color a vertex of minimum availability a(v,C).
class MakerGreedy : public Strategy {
public:
    explicit MakerGreedy(uint64_t seed, bool random_vertex_ties = false,
                         bool random_color = false);
    std::optional<Move> next_move(const GameState& st) override;
    std::string name() const override { return "greedy"; }

private:
    Rng rng_;
    bool random_vertex_ties_;
    bool random_color_;
};

// Uniform over legal (vertex, color) pairs.
class RandomStrategy : public Strategy {
public:
    explicit RandomStrategy(uint64_t seed) : rng_(seed) {}
    std::optional<Move> next_move(const GameState& st) override;
    std::string name() const override { return "random"; }

private:
    Rng rng_;
};

// Breaker on K_{n,n} minus a perfect matching: answer each Maker move by
// giving the matched partner the same color.
class BreakerMirror : public Strategy {
public:
    BreakerMirror(const Graph& g, uint64_t seed);
    std::optional<Move> next_move(const GameState& st) override;
    std::string name() const override { return "mirror"; }
    int partner(int v) const { return v < half_ ? v + half_ : v - half_; }

private:
    int half_;
    Rng rng_;
};

struct EliminationConfig {
    long long l1 = 1;
    long long l2 = 1;
    long long l3 = 1;
    IndependentSetMode mis_mode = IndependentSetMode::Greedy;
    int exact_limit = kDefaultExactMisLimit;
    int iteration_cap = 10000;

    static EliminationConfig from_parameters(const ParameterSet& ps);
};

// Breaker's elimination strategy: answer Maker's color in kind; once a color
// class reaches l1, repeatedly destroy independent sets inside the uncolored
// non-neighborhood of the class until none of size l2 remains.
class BreakerElimination : public Strategy {
public:
    enum class Phase { Arbitrary, Eliminating, Exhausted };
    struct ColorState {
        Phase phase = Phase::Arbitrary;
        Bitset target;       // T, frozen when |C_i| reached l1
        Bitset indep;        // I_j
        int iteration = 0;   // j
    };

    BreakerElimination(const Graph& g, uint64_t seed, EliminationConfig cfg);
    std::optional<Move> next_move(const GameState& st) override;
    std::string name() const override { return "elimination"; }

    const EliminationConfig& config() const { return cfg_; }
    const ColorState& color_state(int color) const {
        return states_[std::size_t(color - 1)];
    }

private:
    const Graph* g_;
    Rng rng_;
    EliminationConfig cfg_;
    std::vector<ColorState> states_;

    void ensure_states(int k);
    std::optional<Move> play_color(const GameState& st, int color);
    std::optional<int> random_legal_vertex(const GameState& st, int color);
};

struct BipartiteConfig {
    double dead_threshold = 1.0;
    double p = 0.5;  // edge probability, used for the escape mass
    Side breaker_side = Side::BreakerSide;
};

// Breaker on labeled bipartite graphs: color only on Breaker's side, never
// with a dead color, answering Maker's side moves in kind when possible.
class BreakerBipartite : public Strategy {
public:
    BreakerBipartite(const Graph& g, uint64_t seed, BipartiteConfig cfg);
    std::optional<Move> next_move(const GameState& st) override;
    std::string name() const override { return "bipartite"; }

    const BipartiteConfig& config() const { return cfg_; }
    bool is_escaped(int color) const;
    // count of Maker-side uncolored vertices where color is available
    int maker_side_availability(const GameState& st, int color) const;
    bool is_dead(const GameState& st, int color) const {
        return maker_side_availability(st, color) < cfg_.dead_threshold;
    }
    double escape_mass() const;

private:
    const Graph* g_;
    Rng rng_;
    BipartiteConfig cfg_;
    Bitset maker_side_;
    Bitset breaker_side_;
    std::vector<char> escaped_;
    std::vector<long long> m_at_escape_;
    bool stopped_ = false;
    bool conceded_ = false;

    void ensure_states(int k);
    void snapshot_stop(const GameState& st);
    std::optional<Move> random_pair_on(const GameState& st, const Bitset& side,
                                       const std::vector<char>* excluded_colors);
};

// Builds a strategy by name: greedy | random | mirror | elimination |
// bipartite. Options inject thresholds and knobs (l1, l2, l3, mode,
// iteration-cap, dead-threshold, p, eps, alpha, random-ties, random-color).
std::unique_ptr<Strategy> make_strategy(const std::string& name, Player role,
                                        const Graph& g, int k, uint64_t seed,
                                        const std::map<std::string, std::string>& opts = {});

}  // namespace vcg
