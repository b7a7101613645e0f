// Command-line front end: graph generation, single games, exact solving,
// bound tables, Monte Carlo campaigns, landmark measurement, and probes.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "vcg/bounds.hpp"
#include "vcg/errors.hpp"
#include "vcg/experiments.hpp"
#include "vcg/game.hpp"
#include "vcg/graph.hpp"
#include "vcg/solver.hpp"
#include "vcg/strategy.hpp"

namespace {

using namespace vcg;

struct GlobalFlags {
    uint64_t seed = 0;
    std::string output;
    std::string format = "table";
    int threads = 1;
};

struct InstanceFlags {
    std::string family = "gnp";
    int n = 10;
    double p = 0.5;
    std::string pruefer;  // comma-separated
    std::string input;    // graph file (from-file)
};

void add_instance_flags(CLI::App* cmd, InstanceFlags& f) {
    cmd->add_option("--family", f.family,
                    "gnp | bipartite-gnp | complete | empty | path | tree | "
                    "knn-minus-matching | from-file");
    cmd->add_option("--n", f.n, "vertex count (per side for bipartite families)");
    cmd->add_option("--p", f.p, "edge probability");
    cmd->add_option("--pruefer", f.pruefer, "comma-separated Pruefer sequence");
    cmd->add_option("--input", f.input, "graph file for --family from-file");
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stoi(item));
    }
    return out;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(std::stod(item));
    return out;
}

std::map<std::string, std::string> parse_opts(const std::vector<std::string>& kvs) {
    std::map<std::string, std::string> opts;
    for (const auto& kv : kvs) {
        auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw ParameterError("option must be key=value: " + kv);
        opts[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    return opts;
}

InstanceSpec make_spec(const InstanceFlags& f, uint64_t seed) {
    InstanceSpec spec;
    spec.family = family_from_string(f.family);
    spec.n = f.n;
    spec.p = f.p;
    spec.seed = seed;
    if (!f.pruefer.empty()) spec.pruefer = parse_int_list(f.pruefer);
    spec.path = f.input;
    return spec;
}

Graph load_graph(const InstanceSpec& spec) {
    if (spec.family == Family::from_file) {
        std::ifstream in(spec.path);
        if (!in) throw std::runtime_error("cannot open graph file: " + spec.path);
        std::stringstream buf;
        buf << in.rdbuf();
        return decode_graph(buf.str());
    }
    return make_named(spec);
}

void emit(const GlobalFlags& g, const std::string& text) {
    if (g.output.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
    } else {
        std::ofstream out(g.output);
        if (!out) throw std::runtime_error("cannot open output file: " + g.output);
        out << text;
    }
}

Player parse_player(const std::string& name) {
    if (name == "maker") return Player::Maker;
    if (name == "breaker") return Player::Breaker;
    throw ParameterError("player must be maker or breaker");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"vcg: vertex coloring games on random and structured graphs"};
    app.require_subcommand(1);

    GlobalFlags g;
    app.add_option("--seed", g.seed, "master seed")->capture_default_str();
    app.add_option("--output", g.output, "output path (default stdout)");
    app.add_option("--format", g.format, "json | csv | table");
    app.add_option("--threads", g.threads, "parallel worker count");
    app.fallthrough();

    // gen
    auto* gen = app.add_subcommand("gen", "generate a graph and print its edge list");
    InstanceFlags gen_f;
    add_instance_flags(gen, gen_f);

    // play
    auto* play = app.add_subcommand("play", "play one game and print the transcript");
    InstanceFlags play_f;
    add_instance_flags(play, play_f);
    int play_k = 2;
    std::string play_maker = "greedy", play_breaker = "random", play_first = "maker";
    std::vector<std::string> play_mopts, play_bopts;
    play->add_option("--k", play_k, "number of colors")->required();
    play->add_option("--maker", play_maker, "maker strategy");
    play->add_option("--breaker", play_breaker, "breaker strategy");
    play->add_option("--first", play_first, "first player: maker | breaker");
    play->add_option("--maker-opt", play_mopts, "maker option key=value (repeatable)");
    play->add_option("--breaker-opt", play_bopts, "breaker option key=value (repeatable)");

    // solve
    auto* solve = app.add_subcommand("solve", "exact winner of the fresh position");
    InstanceFlags solve_f;
    add_instance_flags(solve, solve_f);
    int solve_k = 2;
    std::string solve_first = "maker";
    solve->add_option("--k", solve_k, "number of colors")->required();
    solve->add_option("--first", solve_first, "first player");

    // chi-game
    auto* chig = app.add_subcommand("chi-game", "exact game chromatic number scan");
    InstanceFlags chig_f;
    add_instance_flags(chig, chig_f);
    int chig_kmax = 0;
    chig->add_option("--kmax", chig_kmax, "scan k = 1..kmax (default min(n, 8))");

    // bounds
    auto* bounds = app.add_subcommand("bounds", "parameter set and theorem bounds");
    double b_n = 1000, b_p = 0.5, b_eps = 0.1, b_alpha = 3.0, b_eta = 0.01;
    bounds->add_option("--n", b_n)->required();
    bounds->add_option("--p", b_p)->required();
    bounds->add_option("--eps", b_eps, "epsilon for the lower bound");
    bounds->add_option("--alpha", b_alpha, "alpha > 2 for the upper bound");
    bounds->add_option("--eta", b_eta, "global ceiling p <= 1 - eta");

    // mc
    auto* mc = app.add_subcommand("mc", "Monte Carlo campaign, records to file");
    InstanceFlags mc_f;
    add_instance_flags(mc, mc_f);
    std::string mc_k = "2";
    int mc_trials = 10;
    std::string mc_maker = "greedy", mc_breaker = "random", mc_first = "maker";
    std::string mc_campaign = "mc";
    std::vector<std::string> mc_mopts, mc_bopts;
    mc->add_option("--k", mc_k, "comma-separated k values");
    mc->add_option("--trials", mc_trials, "trials per cell");
    mc->add_option("--maker", mc_maker);
    mc->add_option("--breaker", mc_breaker);
    mc->add_option("--first", mc_first);
    mc->add_option("--campaign", mc_campaign, "campaign name for the default file name");
    mc->add_option("--maker-opt", mc_mopts, "key=value (repeatable)");
    mc->add_option("--breaker-opt", mc_bopts, "key=value (repeatable)");

    // kstar
    auto* kstar = app.add_subcommand("kstar", "empirical least-k search");
    InstanceFlags ks_f;
    add_instance_flags(kstar, ks_f);
    int ks_kmin = 1, ks_kmax = 8, ks_trials = 10;
    double ks_threshold = 0.9;
    std::string ks_maker = "greedy", ks_breaker = "random";
    std::vector<std::string> ks_mopts, ks_bopts;
    kstar->add_option("--k-min", ks_kmin);
    kstar->add_option("--k-max", ks_kmax);
    kstar->add_option("--trials", ks_trials);
    kstar->add_option("--win-threshold", ks_threshold);
    kstar->add_option("--maker", ks_maker);
    kstar->add_option("--breaker", ks_breaker);
    kstar->add_option("--maker-opt", ks_mopts, "key=value (repeatable)");
    kstar->add_option("--breaker-opt", ks_bopts, "key=value (repeatable)");

    // landmarks
    auto* lm = app.add_subcommand("landmarks", "measure availability landmarks");
    InstanceFlags lm_f;
    add_instance_flags(lm, lm_f);
    int lm_k = 2;
    std::string lm_d = "2,1";
    std::string lm_maker = "greedy", lm_breaker = "random";
    lm->add_option("--k", lm_k)->required();
    lm->add_option("--d", lm_d, "comma-separated strictly decreasing thresholds");
    lm->add_option("--maker", lm_maker);
    lm->add_option("--breaker", lm_breaker);

    // probe
    auto* probe = app.add_subcommand("probe", "sampled statistical probes");
    InstanceFlags pr_f;
    add_instance_flags(probe, pr_f);
    std::string pr_id = "lemma6";
    int pr_samples = 1000, pr_set_size = 1, pr_max_ell = 10, pr_k = 2;
    probe->add_option("--id", pr_id, "lemma2 | lemma6 | lemma9 | escape_mass");
    probe->add_option("--samples", pr_samples);
    probe->add_option("--set-size", pr_set_size, "lemma2 set size");
    probe->add_option("--max-ell", pr_max_ell, "lemma9 maximum set size");
    probe->add_option("--k", pr_k, "escape_mass color count");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp") {
            app.exit(e);
            return 0;
        }
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*gen) {
            Graph graph = load_graph(make_spec(gen_f, g.seed));
            emit(g, encode_graph(graph));
        } else if (*play) {
            Graph graph = load_graph(make_spec(play_f, derive_seed(g.seed, 1)));
            auto maker = make_strategy(play_maker, Player::Maker, graph, play_k,
                                       derive_seed(g.seed, 2), parse_opts(play_mopts));
            auto breaker = make_strategy(play_breaker, Player::Breaker, graph, play_k,
                                         derive_seed(g.seed, 3), parse_opts(play_bopts));
            GameOutcome out =
                play_game(graph, play_k, *maker, *breaker, parse_player(play_first));
            emit(g, outcome_to_json(out));
        } else if (*solve) {
            Graph graph = load_graph(make_spec(solve_f, derive_seed(g.seed, 1)));
            GameState st(graph, solve_k, parse_player(solve_first));
            SolveStats stats;
            Player w = solve_position(st, SolveLimits{}, &stats);
            nlohmann::json j;
            j["winner"] = player_name(w);
            j["k"] = solve_k;
            j["nodes"] = stats.nodes;
            emit(g, j.dump(2));
        } else if (*chig) {
            Graph graph = load_graph(make_spec(chig_f, derive_seed(g.seed, 1)));
            int kmax = chig_kmax > 0 ? chig_kmax : std::min(graph.n(), 8);
            SolveReport report = game_chromatic_exact(graph, kmax);
            emit(g, solve_report_to_json(report));
        } else if (*bounds) {
            ParameterSet ps = derive_parameters(b_n, b_p, b_eps, b_alpha, b_eta);
            BoundsReport br = theorem_bounds(b_n, b_p, b_eps, b_alpha, b_eta);
            if (g.format == "json") {
                nlohmann::json j;
                j["parameters"] = nlohmann::json::parse(parameter_set_to_json(ps));
                j["bounds"] = nlohmann::json::parse(bounds_report_to_json(br));
                emit(g, j.dump(2));
            } else {
                emit(g, bounds_table(ps, br));
            }
        } else if (*mc || *kstar) {
            ExperimentConfig cfg;
            const InstanceFlags& f = *mc ? mc_f : ks_f;
            cfg.instance = make_spec(f, 0);
            cfg.master_seed = g.seed;
            cfg.threads = g.threads;
            if (*mc) {
                cfg.k_values = parse_int_list(mc_k);
                cfg.trials = mc_trials;
                cfg.maker = mc_maker;
                cfg.breaker = mc_breaker;
                cfg.first = parse_player(mc_first);
                cfg.maker_opts = parse_opts(mc_mopts);
                cfg.breaker_opts = parse_opts(mc_bopts);
                auto records = run_matches(cfg);
                std::string fmt = g.format == "table" ? "csv" : g.format;
                std::ostringstream buf;
                if (fmt == "jsonl")
                    write_jsonl(records, buf);
                else
                    write_csv(records, buf);
                std::string path = g.output;
                if (path.empty())
                    path = mc_campaign + "-" + std::to_string(g.seed) + "." +
                           (fmt == "jsonl" ? "jsonl" : "csv");
                std::ofstream out(path);
                if (!out) throw std::runtime_error("cannot open output file: " + path);
                out << buf.str();
                std::cerr << "wrote " << records.size() << " records to " << path << "\n";
            } else {
                if (ks_kmin < 1 || ks_kmax < ks_kmin)
                    throw ParameterError("invalid k scan range");
                for (int k = ks_kmin; k <= ks_kmax; ++k) cfg.k_values.push_back(k);
                cfg.trials = ks_trials;
                cfg.maker = ks_maker;
                cfg.breaker = ks_breaker;
                cfg.maker_opts = parse_opts(ks_mopts);
                cfg.breaker_opts = parse_opts(ks_bopts);
                KStarReport report = estimate_k_star(cfg, ks_threshold);
                emit(g, kstar_report_to_json(report));
            }
        } else if (*lm) {
            Graph graph = load_graph(make_spec(lm_f, derive_seed(g.seed, 1)));
            auto d = parse_double_list(lm_d);
            LandmarkReport report =
                measure_landmarks(graph, lm_k, lm_maker, lm_breaker, g.seed, d);
            emit(g, landmark_report_to_json(report));
        } else if (*probe) {
            ProbeParams params;
            params.set_size = pr_set_size;
            params.max_ell = pr_max_ell;
            params.k = pr_k;
            ProbeReport report = run_probe(pr_id, make_spec(pr_f, derive_seed(g.seed, 1)),
                                           params, pr_samples, g.seed);
            emit(g, probe_report_to_json(report));
        }
    } catch (const ParameterError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
