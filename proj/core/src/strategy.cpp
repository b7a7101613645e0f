#include "vcg/strategy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "vcg/errors.hpp"

namespace vcg {

void Strategy::bump(const std::string& key) {
    auto it = diag_.find(key);
    long long v = it == diag_.end() ? 0 : std::stoll(it->second);
    diag_[key] = std::to_string(v + 1);
}

namespace {

// legal vertices for one color, restricted to `within` when given
Bitset legal_vertices(const GameState& st, int color, const Bitset* within = nullptr) {
    Bitset r(std::size_t(st.graph().n()));
    st.uncolored().for_each([&](std::size_t v) {
        if (within && !within->test(v)) return;
        if (st.available_colors(int(v)).test(std::size_t(color - 1))) r.set(v);
    });
    return r;
}

bool color_playable(const GameState& st, int color) {
    bool found = false;
    st.uncolored().for_each([&](std::size_t v) {
        if (!found && st.available_colors(int(v)).test(std::size_t(color - 1)))
            found = true;
    });
    return found;
}

std::optional<Move> random_legal_move(const GameState& st, Rng& rng,
                                      const Bitset* vertices = nullptr) {
    uint64_t total = 0;
    st.uncolored().for_each([&](std::size_t v) {
        if (vertices && !vertices->test(v)) return;
        total += st.available_colors(int(v)).count();
    });
    if (total == 0) return std::nullopt;
    uint64_t pick = rng.below(total);
    std::optional<Move> result;
    st.uncolored().for_each([&](std::size_t v) {
        if (result) return;
        if (vertices && !vertices->test(v)) return;
        uint64_t c = st.available_colors(int(v)).count();
        if (pick < c) {
            int color = -1;
            const Bitset& a = st.available_colors(int(v));
            for (int b = a.find_first(); b >= 0; b = a.find_next(std::size_t(b)))
                if (pick-- == 0) {
                    color = b + 1;
                    break;
                }
            result = Move{int(v), color};
        } else {
            pick -= c;
        }
    });
    return result;
}

int random_member(const Bitset& s, Rng& rng) {
    uint64_t pick = rng.below(s.count());
    int chosen = -1;
    s.for_each([&](std::size_t v) {
        if (pick-- == 0 && chosen < 0) chosen = int(v);
    });
    return chosen;
}

}  // namespace

// ---------------------------------------------------------------- MakerGreedy

MakerGreedy::MakerGreedy(uint64_t seed, bool random_vertex_ties, bool random_color)
    : rng_(seed),
      random_vertex_ties_(random_vertex_ties),
      random_color_(random_color) {}

std::optional<Move> MakerGreedy::next_move(const GameState& st) {
    int best = -1;
    std::size_t best_avail = 0;
    std::vector<int> ties;
    st.uncolored().for_each([&](std::size_t v) {
        std::size_t a = st.available_colors(int(v)).count();
        if (a == 0) return;  // dead vertex, nothing to do there
        if (best < 0 || a < best_avail) {
            best = int(v);
            best_avail = a;
            ties.assign(1, int(v));
        } else if (a == best_avail) {
            ties.push_back(int(v));
        }
    });
    if (best < 0) return std::nullopt;
    int vertex = best;
    if (random_vertex_ties_ && ties.size() > 1)
        vertex = ties[std::size_t(rng_.below(ties.size()))];
    const Bitset& avail = st.available_colors(vertex);
    int color;
    if (random_color_) {
        uint64_t pick = rng_.below(avail.count());
        int chosen = -1;
        avail.for_each([&](std::size_t b) {
            if (pick-- == 0 && chosen < 0) chosen = int(b);
        });
        color = chosen + 1;
    } else {
        color = avail.find_first() + 1;
    }
    return Move{vertex, color};
}

// ------------------------------------------------------------- RandomStrategy

std::optional<Move> RandomStrategy::next_move(const GameState& st) {
    return random_legal_move(st, rng_);
}

// -------------------------------------------------------------- BreakerMirror

BreakerMirror::BreakerMirror(const Graph& g, uint64_t seed)
    : half_(g.n() / 2), rng_(seed) {
    if (!g.is_bipartite_labeled() || g.n() % 2 != 0)
        throw ParameterError("mirror strategy requires a labeled K_{n,n}-M instance");
    for (int v = 0; v < half_; ++v)
        if (g.has_edge(v, partner(v)))
            throw ParameterError("mirror strategy requires the matching to be removed");
}

std::optional<Move> BreakerMirror::next_move(const GameState& st) {
    if (!st.history().empty()) {
        const auto& last = st.history().back();
        if (last.mover == Player::Maker) {
            Move m{partner(last.vertex), last.color};
            if (st.is_legal(m)) return m;
        }
    }
    // only reachable when k >= n or when Breaker moves first
    bump("mirror_fallbacks");
    return random_legal_move(st, rng_);
}

// --------------------------------------------------------- BreakerElimination

EliminationConfig EliminationConfig::from_parameters(const ParameterSet& ps) {
    ClampedThresholds ct = clamped_thresholds(ps);
    EliminationConfig cfg;
    cfg.l1 = ct.l1;
    cfg.l2 = ct.l2;
    cfg.l3 = ct.l3;
    return cfg;
}

BreakerElimination::BreakerElimination(const Graph& g, uint64_t seed,
                                       EliminationConfig cfg)
    : g_(&g), rng_(seed), cfg_(cfg) {
    if (cfg.l1 < 1 || cfg.l2 < 1 || cfg.l3 < 0)
        throw ParameterError("elimination thresholds out of range");
}

void BreakerElimination::ensure_states(int k) {
    if (int(states_.size()) < k) states_.resize(std::size_t(k));
}

std::optional<int> BreakerElimination::random_legal_vertex(const GameState& st,
                                                           int color) {
    Bitset legal = legal_vertices(st, color);
    if (legal.none()) return std::nullopt;
    return random_member(legal, rng_);
}

std::optional<Move> BreakerElimination::play_color(const GameState& st, int color) {
    ColorState& cs = states_[std::size_t(color - 1)];
    const long long class_size = (long long)st.color_class(color).count();

    if (cs.phase == Phase::Arbitrary && class_size >= cfg_.l1) {
        // freeze T and open the first elimination iteration
        cs.target = non_neighbors_of_set(*g_, st.color_class(color));
        cs.target &= st.uncolored();
        IndependentSetMode mode = cfg_.mis_mode;
        if (mode == IndependentSetMode::Exact &&
            int(cs.target.count()) > cfg_.exact_limit)
            mode = IndependentSetMode::Greedy;
        cs.indep = independent_set(*g_, cs.target, mode, cfg_.exact_limit);
        cs.iteration = 1;
        cs.phase = Phase::Eliminating;
    }

    if (cs.phase == Phase::Eliminating) {
        // moves by either player may have shrunk the usable part of I_j
        cs.indep &= st.uncolored();
        cs.indep -= neighbors_of_set(*g_, st.color_class(color));
        while (cs.phase == Phase::Eliminating &&
               (long long)cs.indep.count() <= cfg_.l3) {
            // iteration complete; look for a fresh independent set of size l2
            if (cs.iteration >= cfg_.iteration_cap) {
                cs.phase = Phase::Exhausted;
                break;
            }
            Bitset pool = non_neighbors_of_set(*g_, st.color_class(color));
            pool &= st.uncolored();
            IndependentSetMode mode = cfg_.mis_mode;
            if (mode == IndependentSetMode::Exact &&
                int(pool.count()) > cfg_.exact_limit)
                mode = IndependentSetMode::Greedy;
            Bitset fresh = independent_set(*g_, pool, mode, cfg_.exact_limit);
            if ((long long)fresh.count() >= cfg_.l2) {
                cs.indep = fresh;
                ++cs.iteration;
            } else {
                cs.phase = Phase::Exhausted;
                bump("colors_exhausted");
            }
        }
    }

    if (cs.phase == Phase::Eliminating) {
        Bitset candidates = legal_vertices(st, color, &cs.target);
        if (candidates.any()) {
            int best = -1;
            std::size_t best_hits = 0;
            candidates.for_each([&](std::size_t v) {
                std::size_t hits = g_->adj(int(v)).intersection_count(cs.indep);
                if (best < 0 || hits > best_hits) {
                    best = int(v);
                    best_hits = hits;
                }
            });
            cs.indep -= g_->adj(best);
            return Move{best, color};
        }
        // frozen target has no playable vertex left; use the color elsewhere
        bump("target_dry_fallbacks");
    }

    auto v = random_legal_vertex(st, color);
    if (!v) return std::nullopt;
    return Move{*v, color};
}

std::optional<Move> BreakerElimination::next_move(const GameState& st) {
    ensure_states(st.k());
    int response = 0;
    if (!st.history().empty()) {
        const auto& last = st.history().back();
        if (last.mover == Player::Maker && color_playable(st, last.color))
            response = last.color;
    }
    if (response != 0) return play_color(st, response);

    // no serviceable response color: play the least-used non-exhausted color
    bump("response_fallbacks");
    int fallback = 0;
    long long fallback_size = 0;
    for (int c = 1; c <= st.k(); ++c) {
        if (states_[std::size_t(c - 1)].phase == Phase::Exhausted) continue;
        if (!color_playable(st, c)) continue;
        long long size = (long long)st.color_class(c).count();
        if (fallback == 0 || size < fallback_size) {
            fallback = c;
            fallback_size = size;
        }
    }
    if (fallback != 0) return play_color(st, fallback);
    // everything exhausted: any legal move
    return random_legal_move(st, rng_);
}

// ----------------------------------------------------------- BreakerBipartite

BreakerBipartite::BreakerBipartite(const Graph& g, uint64_t seed, BipartiteConfig cfg)
    : g_(&g), rng_(seed), cfg_(cfg) {
    if (!g.is_bipartite_labeled())
        throw ParameterError("bipartite strategy requires bipartition labels");
    Side maker = cfg.breaker_side == Side::BreakerSide ? Side::MakerSide
                                                       : Side::BreakerSide;
    maker_side_ = g.side_set(maker);
    breaker_side_ = g.side_set(cfg.breaker_side);
    set_diag("conceded", "0");
}

void BreakerBipartite::ensure_states(int k) {
    if (int(escaped_.size()) < k) {
        escaped_.resize(std::size_t(k), 0);
        m_at_escape_.resize(std::size_t(k), 0);
    }
}

bool BreakerBipartite::is_escaped(int color) const {
    return std::size_t(color - 1) < escaped_.size() && escaped_[std::size_t(color - 1)];
}

int BreakerBipartite::maker_side_availability(const GameState& st, int color) const {
    int count = 0;
    Bitset pool = st.uncolored() & maker_side_;
    pool.for_each([&](std::size_t v) {
        if (st.available_colors(int(v)).test(std::size_t(color - 1))) ++count;
    });
    return count;
}

double BreakerBipartite::escape_mass() const {
    double mass = 0;
    for (std::size_t c = 0; c < escaped_.size(); ++c)
        if (escaped_[c]) mass += std::pow(1.0 - cfg_.p, double(m_at_escape_[c]));
    return mass;
}

void BreakerBipartite::snapshot_stop(const GameState& st) {
    if (stopped_) return;
    stopped_ = true;
    long long nu_m = 0, nu_b = 0;
    for (int v = 0; v < g_->n(); ++v) {
        if (!st.is_colored(v)) continue;
        if (maker_side_.test(std::size_t(v)))
            ++nu_m;
        else
            ++nu_b;
    }
    set_diag("nu_M", std::to_string(nu_m));
    set_diag("nu_B", std::to_string(nu_b));
    int escaped_count = 0;
    for (char e : escaped_) escaped_count += e;
    int dead_count = 0;
    for (int c = 1; c <= st.k(); ++c) dead_count += is_dead(st, c) ? 1 : 0;
    set_diag("escaped_colors", std::to_string(escaped_count));
    set_diag("dead_colors", std::to_string(dead_count));
    std::ostringstream mass;
    mass << escape_mass();
    set_diag("escape_mass", mass.str());
}

std::optional<Move> BreakerBipartite::random_pair_on(
    const GameState& st, const Bitset& side, const std::vector<char>* excluded) {
    uint64_t total = 0;
    Bitset pool = st.uncolored() & side;
    pool.for_each([&](std::size_t v) {
        const Bitset& a = st.available_colors(int(v));
        if (!excluded) {
            total += a.count();
        } else {
            a.for_each([&](std::size_t c) {
                if (!(*excluded)[c]) ++total;
            });
        }
    });
    if (total == 0) return std::nullopt;
    uint64_t pick = rng_.below(total);
    std::optional<Move> result;
    pool.for_each([&](std::size_t v) {
        if (result) return;
        const Bitset& a = st.available_colors(int(v));
        a.for_each([&](std::size_t c) {
            if (result) return;
            if (excluded && (*excluded)[c]) return;
            if (pick-- == 0) result = Move{int(v), int(c) + 1};
        });
    });
    return result;
}

std::optional<Move> BreakerBipartite::next_move(const GameState& st) {
    ensure_states(st.k());

    // rule 3: respond in kind to a Maker-side move with a live color
    if (!st.history().empty()) {
        const auto& last = st.history().back();
        if (last.mover == Player::Maker && maker_side_.test(std::size_t(last.vertex))) {
            int c = last.color;
            if (!is_escaped(c) && !is_dead(st, c)) {
                Bitset legal = legal_vertices(st, c, &breaker_side_);
                if (legal.any()) return Move{random_member(legal, rng_), c};
                // live but unplayable on Breaker's side: the color escapes
                escaped_[std::size_t(c - 1)] = 1;
                m_at_escape_[std::size_t(c - 1)] =
                    (long long)st.color_class(c).intersection_count(maker_side_);
            }
        }
    }

    // arbitrary round: any non-dead, non-escaped color on Breaker's side
    std::vector<char> excluded(std::size_t(st.k()), 0);
    bool all_excluded = true;
    for (int c = 1; c <= st.k(); ++c) {
        bool out = is_escaped(c) || is_dead(st, c);
        excluded[std::size_t(c - 1)] = out ? 1 : 0;
        all_excluded = all_excluded && out;
    }
    if (!all_excluded)
        if (auto m = random_pair_on(st, breaker_side_, &excluded)) return m;

    // every color is dead or escaped (or unplayable): rules are over
    snapshot_stop(st);
    if (auto m = random_pair_on(st, breaker_side_, nullptr)) return m;

    // no Breaker-side move at all: flagged concession on Maker's side
    if (auto m = random_pair_on(st, maker_side_, nullptr)) {
        conceded_ = true;
        set_diag("conceded", "1");
        bump("concession_moves");
        return m;
    }
    return std::nullopt;
}

// --------------------------------------------------------------------factory

namespace {

double opt_double(const std::map<std::string, std::string>& opts,
                  const std::string& key, double fallback) {
    auto it = opts.find(key);
    return it == opts.end() ? fallback : std::stod(it->second);
}

long long opt_int(const std::map<std::string, std::string>& opts,
                  const std::string& key, long long fallback) {
    auto it = opts.find(key);
    return it == opts.end() ? fallback : std::stoll(it->second);
}

bool opt_flag(const std::map<std::string, std::string>& opts, const std::string& key) {
    auto it = opts.find(key);
    return it != opts.end() && it->second != "0" && it->second != "false";
}

double density_estimate(const Graph& g) {
    if (g.n() < 2) return 0.5;
    double pairs = double(g.n()) * double(g.n() - 1) / 2.0;
    double d = double(g.edge_count()) / pairs;
    return std::clamp(d, 1e-6, 0.99);
}

}  // namespace

std::unique_ptr<Strategy> make_strategy(const std::string& name, Player role,
                                        const Graph& g, int k, uint64_t seed,
                                        const std::map<std::string, std::string>& opts) {
    (void)k;
    if (name == "greedy") {
        if (role != Player::Maker)
            throw ParameterError("greedy is Maker's strategy");
        return std::make_unique<MakerGreedy>(seed, opt_flag(opts, "random-ties"),
                                             opt_flag(opts, "random-color"));
    }
    if (name == "random") return std::make_unique<RandomStrategy>(seed);
    if (name == "mirror") {
        if (role != Player::Breaker)
            throw ParameterError("mirror is Breaker's strategy");
        return std::make_unique<BreakerMirror>(g, seed);
    }
    if (name == "elimination") {
        if (role != Player::Breaker)
            throw ParameterError("elimination is Breaker's strategy");
        EliminationConfig cfg;
        if (opts.count("l1") || opts.count("l2") || opts.count("l3")) {
            cfg.l1 = opt_int(opts, "l1", 1);
            cfg.l2 = opt_int(opts, "l2", 1);
            cfg.l3 = opt_int(opts, "l3", 0);
        } else {
            double p = opt_double(opts, "p", density_estimate(g));
            double eps = opt_double(opts, "eps", 0.1);
            double alpha = opt_double(opts, "alpha", 3.0);
            try {
                cfg = EliminationConfig::from_parameters(
                    derive_parameters(double(g.n()), p, eps, alpha));
            } catch (const ParameterError&) {
                // tiny or degenerate instances: every threshold clamps to 1
                cfg = EliminationConfig{};
            }
        }
        if (opts.count("mode"))
            cfg.mis_mode = opts.at("mode") == "exact" ? IndependentSetMode::Exact
                                                      : IndependentSetMode::Greedy;
        cfg.exact_limit = int(opt_int(opts, "exact-limit", cfg.exact_limit));
        cfg.iteration_cap = int(opt_int(opts, "iteration-cap", cfg.iteration_cap));
        return std::make_unique<BreakerElimination>(g, seed, cfg);
    }
    if (name == "bipartite") {
        if (role != Player::Breaker)
            throw ParameterError("bipartite is Breaker's strategy");
        if (!g.is_bipartite_labeled())
            throw ParameterError("bipartite strategy requires a labeled bipartite graph");
        BipartiteConfig cfg;
        int n_maker = int(g.side_set(Side::MakerSide).count());
        int n_breaker = g.n() - n_maker;
        double default_p = 0.5;
        if (n_maker > 0 && n_breaker > 0)
            default_p = std::clamp(double(g.edge_count()) /
                                       (double(n_maker) * double(n_breaker)),
                                   1e-6, 0.99);
        cfg.p = opt_double(opts, "p", default_p);
        double n_side = double(std::max(n_maker, 2));
        double derived = 1.0;
        if (n_side * cfg.p > 1.0 && cfg.p < 1.0)
            derived = 6.0 * std::log(n_side) * log_base_b(n_side * cfg.p, cfg.p);
        cfg.dead_threshold = opt_double(opts, "dead-threshold", std::max(1.0, derived));
        return std::make_unique<BreakerBipartite>(g, seed, cfg);
    }
    throw ParameterError("unknown strategy: " + name);
}

}  // namespace vcg
