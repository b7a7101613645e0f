#include "vcg/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

#include "vcg/errors.hpp"
#include "vcg/rng.hpp"
#include "vcg/strategy.hpp"

#include <nlohmann/json.hpp>

namespace vcg {

bool ExperimentRecord::operator==(const ExperimentRecord& o) const {
    return schema_version == o.schema_version && family == o.family && n == o.n &&
           p == o.p && k == o.k && trial == o.trial && seed == o.seed &&
           maker == o.maker && breaker == o.breaker && maker_opts == o.maker_opts &&
           breaker_opts == o.breaker_opts && first == o.first && winner == o.winner &&
           moves == o.moves && witness == o.witness && max_class == o.max_class &&
           colors_used == o.colors_used && diagnostics == o.diagnostics;
}

uint64_t trial_seed(uint64_t master_seed, std::size_t cell, int trial) {
    return derive_seed(master_seed, uint64_t(cell) + 1, uint64_t(trial) + 1);
}

namespace {

std::string opts_to_json(const std::map<std::string, std::string>& opts) {
    nlohmann::json j(opts);
    return j.dump();
}

std::map<std::string, std::string> opts_from_json(const std::string& text) {
    std::map<std::string, std::string> opts;
    if (text.empty()) return opts;
    auto j = nlohmann::json::parse(text);
    for (auto& [key, val] : j.items()) opts[key] = val.get<std::string>();
    return opts;
}

bool family_uses_seed(Family f) {
    return f == Family::gnp || f == Family::bipartite_gnp ||
           f == Family::tree_from_pruefer;
}

ExperimentRecord play_one(const InstanceSpec& base, int k, int trial, uint64_t tseed,
                          const std::string& maker, const std::string& breaker,
                          const std::map<std::string, std::string>& maker_opts,
                          const std::map<std::string, std::string>& breaker_opts,
                          Player first) {
    auto t0 = std::chrono::steady_clock::now();
    InstanceSpec spec = base;
    if (family_uses_seed(spec.family)) spec.seed = derive_seed(tseed, 1);
    Graph g = make_named(spec);
    auto maker_s = make_strategy(maker, Player::Maker, g, k, derive_seed(tseed, 2),
                                 maker_opts);
    auto breaker_s = make_strategy(breaker, Player::Breaker, g, k,
                                   derive_seed(tseed, 3), breaker_opts);
    GameOutcome out = play_game(g, k, *maker_s, *breaker_s, first);

    ExperimentRecord rec;
    rec.family = family_to_string(spec.family);
    rec.n = spec.n;
    rec.p = spec.p;
    rec.k = k;
    rec.trial = trial;
    rec.seed = tseed;
    rec.maker = maker;
    rec.breaker = breaker;
    rec.maker_opts = opts_to_json(maker_opts);
    rec.breaker_opts = opts_to_json(breaker_opts);
    rec.first = player_name(first);
    rec.winner = player_name(out.winner);
    rec.moves = out.moves_played;
    rec.witness = out.witness;
    for (int c : out.class_sizes) {
        rec.max_class = std::max(rec.max_class, c);
        if (c > 0) ++rec.colors_used;
    }
    rec.diagnostics = nlohmann::json(out.diagnostics).dump();
    rec.duration_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
    return rec;
}

}  // namespace

std::vector<ExperimentRecord> run_matches(const ExperimentConfig& cfg) {
    if (cfg.trials < 1) throw ParameterError("trials must be >= 1");
    if (cfg.k_values.empty()) throw ParameterError("k scan range is empty");
    const std::size_t tasks = cfg.k_values.size() * std::size_t(cfg.trials);
    std::vector<ExperimentRecord> records(tasks);

    auto work = [&](std::size_t task) {
        std::size_t cell = task / std::size_t(cfg.trials);
        int trial = int(task % std::size_t(cfg.trials));
        uint64_t tseed = trial_seed(cfg.master_seed, cell, trial);
        records[task] = play_one(cfg.instance, cfg.k_values[cell], trial, tseed,
                                 cfg.maker, cfg.breaker, cfg.maker_opts,
                                 cfg.breaker_opts, cfg.first);
    };

    int width = std::max(1, cfg.threads);
    if (width == 1) {
        for (std::size_t t = 0; t < tasks; ++t) work(t);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (int w = 0; w < width; ++w)
            pool.emplace_back([&] {
                for (std::size_t t = next.fetch_add(1); t < tasks;
                     t = next.fetch_add(1))
                    work(t);
            });
        for (auto& th : pool) th.join();
    }
    return records;
}

ExperimentRecord replay(const ExperimentRecord& rec) {
    InstanceSpec spec;
    spec.family = family_from_string(rec.family);
    spec.n = rec.n;
    spec.p = rec.p;
    Player first = rec.first == "maker" ? Player::Maker : Player::Breaker;
    return play_one(spec, rec.k, rec.trial, rec.seed, rec.maker, rec.breaker,
                    opts_from_json(rec.maker_opts), opts_from_json(rec.breaker_opts),
                    first);
}

KStarReport estimate_k_star(const ExperimentConfig& cfg, double win_threshold) {
    std::vector<int> ks = cfg.k_values;
    if (!std::is_sorted(ks.begin(), ks.end()))
        throw ParameterError("k scan range must be ascending");
    auto records = run_matches(cfg);
    KStarReport report;
    report.k_values = ks;
    report.trials = cfg.trials;
    report.win_threshold = win_threshold;
    report.wins.assign(ks.size(), 0);
    for (std::size_t cell = 0; cell < ks.size(); ++cell)
        for (int t = 0; t < cfg.trials; ++t)
            if (records[cell * std::size_t(cfg.trials) + std::size_t(t)].winner ==
                "maker")
                ++report.wins[cell];
    for (std::size_t cell = 0; cell < ks.size(); ++cell) {
        double rate = double(report.wins[cell]) / double(cfg.trials);
        report.maker_win_rate.push_back(rate);
        if (report.k_star < 0 && rate >= win_threshold) report.k_star = ks[cell];
    }
    return report;
}

LandmarkReport measure_landmarks(const Graph& g, int k, const std::string& maker,
                                 const std::string& breaker, uint64_t seed,
                                 const std::vector<double>& d_sequence,
                                 const std::map<std::string, std::string>& maker_opts,
                                 const std::map<std::string, std::string>& breaker_opts) {
    for (std::size_t i = 0; i + 1 < d_sequence.size(); ++i)
        if (!(d_sequence[i] > d_sequence[i + 1]))
            throw ParameterError("d sequence must be strictly decreasing");
    for (double d : d_sequence)
        if (!(d > 0)) throw ParameterError("d thresholds must be positive");

    auto maker_s = make_strategy(maker, Player::Maker, g, k, derive_seed(seed, 2),
                                 maker_opts);
    auto breaker_s = make_strategy(breaker, Player::Breaker, g, k,
                                   derive_seed(seed, 3), breaker_opts);

    GameState st(g, k, Player::Maker);
    LandmarkReport report;
    report.d_sequence = d_sequence;

    // (u, min availability) per observed state, including the initial one;
    // a completed game contributes u = 0 with vacuous min availability
    std::vector<std::pair<int, double>> curve;
    auto observe = [&] {
        double min_avail = std::numeric_limits<double>::infinity();
        st.uncolored().for_each([&](std::size_t v) {
            min_avail = std::min(min_avail, double(st.available_colors(int(v)).count()));
        });
        curve.emplace_back(st.uncolored_count(), min_avail);
    };
    observe();
    auto t = st.terminal_status();
    while (t.status == GameState::Status::Ongoing) {
        Strategy& mover = st.to_move() == Player::Maker ? *maker_s : *breaker_s;
        auto m = mover.next_move(st);
        if (!m || st.try_apply(*m)) break;
        observe();
        report.min_avail_by_step.push_back(
            int(std::min(curve.back().second, double(k))));
        t = st.terminal_status();
    }
    report.winner = player_name(t.status == GameState::Status::MakerWin
                                    ? Player::Maker
                                    : Player::Breaker);
    report.moves = int(st.history().size());

    for (double d : d_sequence) {
        int u_i = std::numeric_limits<int>::max();
        for (auto [u, min_avail] : curve)
            if (min_avail >= d) u_i = std::min(u_i, u);
        report.u.push_back(u_i == std::numeric_limits<int>::max() ? -1 : u_i);
    }
    return report;
}

namespace {

// uniform random s-subset of pool (partial Fisher-Yates)
Bitset sample_subset(const std::vector<int>& pool, int s, std::size_t nbits, Rng& rng) {
    std::vector<int> idx = pool;
    Bitset out(nbits);
    for (int i = 0; i < s; ++i) {
        std::size_t j = std::size_t(i) + std::size_t(rng.below(idx.size() - std::size_t(i)));
        std::swap(idx[std::size_t(i)], idx[j]);
        out.set(std::size_t(idx[std::size_t(i)]));
    }
    return out;
}

void finalize_quantiles(ProbeReport& r) {
    if (r.stats.empty()) return;
    std::vector<double> sorted = r.stats;
    std::sort(sorted.begin(), sorted.end());
    auto q = [&](double f) {
        return sorted[std::size_t(f * double(sorted.size() - 1))];
    };
    r.q_min = sorted.front();
    r.q25 = q(0.25);
    r.q50 = q(0.5);
    r.q75 = q(0.75);
    r.q_max = sorted.back();
}

}  // namespace

ProbeReport run_probe(const std::string& probe_id, const InstanceSpec& spec,
                      const ProbeParams& params, int samples, uint64_t seed) {
    if (samples < 1) throw ParameterError("samples must be >= 1");
    ProbeReport report;
    report.probe_id = probe_id;
    report.samples = samples;
    Rng rng(derive_seed(seed, 17));

    if (probe_id == "lemma2" || probe_id == "lemma6") {
        Graph g = make_named(spec);
        std::vector<int> all(std::size_t(g.n()));
        for (int v = 0; v < g.n(); ++v) all[std::size_t(v)] = v;
        if (probe_id == "lemma2") {
            int s = params.set_size;
            if (s < 1 || s > g.n()) throw ParameterError("set_size out of range");
            double mean = double(g.n()) * std::pow(1.0 - spec.p, double(s));
            double band = std::log(double(std::max(g.n(), 3)));
            report.extras["mean"] = mean;
            report.extras["set_size"] = s;
            for (int i = 0; i < samples; ++i) {
                Bitset sub = sample_subset(all, s, std::size_t(g.n()), rng);
                double stat = double(non_neighbors_of_set(g, sub).count());
                report.stats.push_back(stat);
                // sampled analogue of the lemma's log-factor window around the mean
                if (mean > 0 && (stat < mean / band || stat > mean * band))
                    ++report.violations;
            }
        } else {
            for (int i = 0; i < samples; ++i) {
                int s = 2 + int(rng.below(uint64_t(std::max(1, g.n() - 1))));
                s = std::min(s, g.n());
                Bitset sub = sample_subset(all, s, std::size_t(g.n()), rng);
                double stat = double(induced_edge_count(g, sub));
                report.stats.push_back(stat);
                if (stat > phi(double(s), double(g.n()), spec.p)) ++report.violations;
            }
        }
        finalize_quantiles(report);
        return report;
    }

    if (probe_id == "lemma9") {
        if (spec.family != Family::bipartite_gnp && spec.family != Family::knn_minus_matching)
            throw ParameterError("lemma9 probe requires a bipartite family");
        Graph g = make_named(spec);
        Bitset breaker_side = g.side_set(Side::BreakerSide);
        std::vector<int> pool = breaker_side.to_vector();
        int n_side = int(g.side_set(Side::MakerSide).count());
        int max_ell = std::min(params.max_ell, int(pool.size()));
        if (max_ell < 1) throw ParameterError("max_ell must be >= 1");
        for (int i = 0; i < samples; ++i) {
            int ell = 1 + int(rng.below(uint64_t(max_ell)));
            Bitset sub = sample_subset(pool, ell, std::size_t(g.n()), rng);
            double stat =
                double(non_neighbors_of_set(g, sub, Side::MakerSide).count());
            report.stats.push_back(stat);
            if (stat > 2.0 * double(n_side) * std::pow(1.0 - spec.p, double(ell)))
                ++report.violations;
        }
        finalize_quantiles(report);
        return report;
    }

    if (probe_id == "escape_mass") {
        if (spec.family != Family::bipartite_gnp)
            throw ParameterError("escape_mass probe requires bipartite-gnp");
        int case1 = 0, case2 = 0;
        double sum_t = 0;
        for (int i = 0; i < samples; ++i) {
            InstanceSpec s = spec;
            s.seed = derive_seed(seed, 100 + uint64_t(i));
            Graph g = make_named(s);
            auto maker_s = make_strategy(params.maker, Player::Maker, g, params.k,
                                         derive_seed(s.seed, 2));
            std::map<std::string, std::string> bopts{{"p", std::to_string(spec.p)}};
            auto breaker_s = make_strategy("bipartite", Player::Breaker, g, params.k,
                                           derive_seed(s.seed, 3), bopts);
            auto* bb = static_cast<BreakerBipartite*>(breaker_s.get());
            play_game(g, params.k, *maker_s, *breaker_s);
            double mass = bb->escape_mass();
            report.stats.push_back(mass);
            int t = 0;
            for (int c = 1; c <= params.k; ++c) t += bb->is_escaped(c) ? 1 : 0;
            sum_t += t;
            (mass < 1.0 / 6.0 ? case1 : case2)++;
        }
        report.extras["case1"] = case1;
        report.extras["case2"] = case2;
        report.extras["mean_escaped_colors"] = sum_t / double(samples);
        finalize_quantiles(report);
        return report;
    }

    throw ParameterError("unknown probe: " + probe_id);
}

// ------------------------------------------------------------------ persist

namespace {

constexpr const char* kCsvHeader =
    "schema_version,family,n,p,k,trial,seed,maker,breaker,maker_opts,"
    "breaker_opts,first,winner,moves,witness,max_class,colors_used,diagnostics";

std::string csv_quote(const std::string& s) {
    bool needs = s.find_first_of(",\"\n\r") != std::string::npos;
    if (!needs) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

std::vector<std::string> split_csv_line(const std::string& line, int line_no) {
    std::vector<std::string> fields;
    std::string cur;
    bool in_quotes = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            in_quotes = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (in_quotes) throw ParseError("unterminated quote", line_no);
    fields.push_back(cur);
    return fields;
}

nlohmann::json record_json(const ExperimentRecord& r) {
    nlohmann::json j;
    j["schema_version"] = r.schema_version;
    j["family"] = r.family;
    j["n"] = r.n;
    j["p"] = r.p;
    j["k"] = r.k;
    j["trial"] = r.trial;
    j["seed"] = r.seed;
    j["maker"] = r.maker;
    j["breaker"] = r.breaker;
    j["maker_opts"] = r.maker_opts;
    j["breaker_opts"] = r.breaker_opts;
    j["first"] = r.first;
    j["winner"] = r.winner;
    j["moves"] = r.moves;
    j["witness"] = r.witness;
    j["max_class"] = r.max_class;
    j["colors_used"] = r.colors_used;
    j["diagnostics"] = r.diagnostics;
    return j;
}

ExperimentRecord record_from_json(const nlohmann::json& j) {
    ExperimentRecord r;
    r.schema_version = j.at("schema_version").get<int>();
    r.family = j.at("family").get<std::string>();
    r.n = j.at("n").get<int>();
    r.p = j.at("p").get<double>();
    r.k = j.at("k").get<int>();
    r.trial = j.at("trial").get<int>();
    r.seed = j.at("seed").get<uint64_t>();
    r.maker = j.at("maker").get<std::string>();
    r.breaker = j.at("breaker").get<std::string>();
    r.maker_opts = j.at("maker_opts").get<std::string>();
    r.breaker_opts = j.at("breaker_opts").get<std::string>();
    r.first = j.at("first").get<std::string>();
    r.winner = j.at("winner").get<std::string>();
    r.moves = j.at("moves").get<int>();
    r.witness = j.at("witness").get<int>();
    r.max_class = j.at("max_class").get<int>();
    r.colors_used = j.at("colors_used").get<int>();
    r.diagnostics = j.at("diagnostics").get<std::string>();
    return r;
}

}  // namespace

void write_csv(const std::vector<ExperimentRecord>& records, std::ostream& out) {
    out << kCsvHeader << "\n";
    for (const auto& r : records) {
        out << r.schema_version << ',' << csv_quote(r.family) << ',' << r.n << ','
            << format_double(r.p) << ',' << r.k << ',' << r.trial << ',' << r.seed
            << ',' << csv_quote(r.maker) << ',' << csv_quote(r.breaker) << ','
            << csv_quote(r.maker_opts) << ',' << csv_quote(r.breaker_opts) << ','
            << r.first << ',' << r.winner << ',' << r.moves << ',' << r.witness
            << ',' << r.max_class << ',' << r.colors_used << ','
            << csv_quote(r.diagnostics) << "\n";
    }
}

std::vector<ExperimentRecord> read_csv(std::istream& in) {
    std::string line;
    int line_no = 0;
    if (!std::getline(in, line)) throw ParseError("empty CSV", 1);
    ++line_no;
    if (line != kCsvHeader) throw ParseError("unexpected CSV header", line_no);
    std::vector<ExperimentRecord> records;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto f = split_csv_line(line, line_no);
        if (f.size() != 18) throw ParseError("wrong field count", line_no);
        ExperimentRecord r;
        std::size_t i = 0;
        r.schema_version = std::stoi(f[i++]);
        r.family = f[i++];
        r.n = std::stoi(f[i++]);
        r.p = std::stod(f[i++]);
        r.k = std::stoi(f[i++]);
        r.trial = std::stoi(f[i++]);
        r.seed = std::stoull(f[i++]);
        r.maker = f[i++];
        r.breaker = f[i++];
        r.maker_opts = f[i++];
        r.breaker_opts = f[i++];
        r.first = f[i++];
        r.winner = f[i++];
        r.moves = std::stoi(f[i++]);
        r.witness = std::stoi(f[i++]);
        r.max_class = std::stoi(f[i++]);
        r.colors_used = std::stoi(f[i++]);
        r.diagnostics = f[i++];
        records.push_back(std::move(r));
    }
    return records;
}

void write_jsonl(const std::vector<ExperimentRecord>& records, std::ostream& out) {
    for (const auto& r : records) out << record_json(r).dump() << "\n";
}

std::vector<ExperimentRecord> read_jsonl(std::istream& in) {
    std::vector<ExperimentRecord> records;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        records.push_back(record_from_json(nlohmann::json::parse(line)));
    }
    return records;
}

std::string kstar_report_to_json(const KStarReport& r) {
    nlohmann::json j;
    j["k_values"] = r.k_values;
    j["maker_win_rate"] = r.maker_win_rate;
    j["wins"] = r.wins;
    j["trials"] = r.trials;
    j["win_threshold"] = r.win_threshold;
    if (r.k_star >= 0)
        j["k_star"] = r.k_star;
    else
        j["k_star"] = nullptr;
    return j.dump(2);
}

std::string landmark_report_to_json(const LandmarkReport& r) {
    nlohmann::json j;
    j["d_sequence"] = r.d_sequence;
    j["u"] = r.u;
    j["min_avail_by_step"] = r.min_avail_by_step;
    j["winner"] = r.winner;
    j["moves"] = r.moves;
    return j.dump(2);
}

std::string probe_report_to_json(const ProbeReport& r) {
    nlohmann::json j;
    j["probe_id"] = r.probe_id;
    j["samples"] = r.samples;
    j["sampled"] = r.sampled;
    j["violations"] = r.violations;
    j["quantiles"] = {{"min", r.q_min}, {"q25", r.q25}, {"q50", r.q50},
                      {"q75", r.q75}, {"max", r.q_max}};
    j["extras"] = r.extras;
    return j.dump(2);
}

}  // namespace vcg
