#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "vcg/game.hpp"
#include "vcg/graph.hpp"

namespace vcg {

struct ExperimentConfig {
    InstanceSpec instance;
    std::vector<int> k_values;
    std::string maker = "greedy";
    std::string breaker = "random";
    std::map<std::string, std::string> maker_opts;
    std::map<std::string, std::string> breaker_opts;
    int trials = 1;
    uint64_t master_seed = 0;
    int threads = 1;
    Player first = Player::Maker;
};

// One game's outcome row. Self-contained: the instance spec, strategy names
// and options, and the derived trial seed reproduce the game exactly.
// duration_ms is in-memory telemetry and is not persisted (files must be
// byte-identical across reruns and thread counts).
struct ExperimentRecord {
    int schema_version = 1;
    std::string family;
    int n = 0;
    double p = 0;
    int k = 0;
    int trial = 0;
    uint64_t seed = 0;  // derived per-trial seed
    std::string maker, breaker;
    std::string maker_opts, breaker_opts;  // JSON objects
    std::string first;
    std::string winner;
    int moves = 0;
    int witness = -1;
    int max_class = 0;
    int colors_used = 0;
    std::string diagnostics;  // JSON object
    double duration_ms = 0;

    bool operator==(const ExperimentRecord&) const;
};

// Derived per-trial seed: hash of (master, cell index, trial index).
uint64_t trial_seed(uint64_t master_seed, std::size_t cell, int trial);

// Plays trials x k_values games with independent derived seeds. Output order
// is (cell, trial) regardless of thread count.
std::vector<ExperimentRecord> run_matches(const ExperimentConfig& cfg);

// Replays one record from its own fields; the outcome must match.
ExperimentRecord replay(const ExperimentRecord& rec);

struct KStarReport {
    std::vector<int> k_values;
    std::vector<double> maker_win_rate;  // aligned with k_values
    std::vector<int> wins;
    int trials = 0;
    double win_threshold = 0.9;
    int k_star = -1;  // least k with rate >= threshold, -1 if none
};

KStarReport estimate_k_star(const ExperimentConfig& cfg, double win_threshold = 0.9);

struct LandmarkReport {
    std::vector<double> d_sequence;
    std::vector<int> u;                  // u_i per d_i
    std::vector<int> min_avail_by_step;  // min availability after each move
    std::string winner;
    int moves = 0;
};

// Plays one game and records, per threshold d_i, the minimum uncolored count
// u at which every uncolored vertex still had >= d_i available colors.
LandmarkReport measure_landmarks(const Graph& g, int k, const std::string& maker,
                                 const std::string& breaker, uint64_t seed,
                                 const std::vector<double>& d_sequence,
                                 const std::map<std::string, std::string>& maker_opts = {},
                                 const std::map<std::string, std::string>& breaker_opts = {});

struct ProbeReport {
    std::string probe_id;
    int samples = 0;
    bool sampled = true;  // always: the quantified-over-all-sets claim is not checked
    std::vector<double> stats;
    long long violations = 0;
    double q_min = 0, q25 = 0, q50 = 0, q75 = 0, q_max = 0;
    std::map<std::string, double> extras;
};

struct ProbeParams {
    int set_size = 1;   // lemma2
    int max_ell = 10;   // lemma9
    int k = 1;          // escape_mass
    std::string maker = "greedy";
};

// Sampled statistical probes of the subset statistics; violations are
// investigation triggers, not theorem checks.
ProbeReport run_probe(const std::string& probe_id, const InstanceSpec& spec,
                      const ProbeParams& params, int samples, uint64_t seed);

void write_csv(const std::vector<ExperimentRecord>& records, std::ostream& out);
std::vector<ExperimentRecord> read_csv(std::istream& in);
void write_jsonl(const std::vector<ExperimentRecord>& records, std::ostream& out);
std::vector<ExperimentRecord> read_jsonl(std::istream& in);

std::string kstar_report_to_json(const KStarReport& r);
std::string landmark_report_to_json(const LandmarkReport& r);
std::string probe_report_to_json(const ProbeReport& r);

}  // namespace vcg
