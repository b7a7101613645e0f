#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace vcg {

double log_base_b(double x, double p);

// phi(s) = (5ps + log n) * s, the subset edge-count envelope
double phi(double s, double n, double p);

enum class ChernoffKind { Lower, UpperSmall, UpperLarge };

// Binomial tail envelopes: e^{-eps^2 np/2} (lower), e^{-eps^2 np/3} (upper,
// eps <= 1), (e/mu)^{mu np} (large deviations, mu > 1).
double chernoff_tail(ChernoffKind kind, double np_bar, double eps_or_mu);

// Every derived constant of the threshold machinery, as reals, with honest
// per-quantity validity flags. Nothing is clamped here; strategy consumers
// use clamped_thresholds below and see exactly what was clamped.
struct ParameterSet {
    // inputs
    double n = 0, p = 0, eps = 0, alpha = 0;

    // shared
    double b = 0;         // 1/(1-p)
    double log_b_np = 0;  // log(np)/log(b)

    // lower-bound machinery
    double l1 = 0;   // log_b n - log_b log_b np - 10 log_b log n
    double l2 = 0;   // eps*l1/20
    double l2p = 0;  // eps*l1/21
    double l3 = 0;   // eps^3*l1/(2e6)
    double l0 = 0;   // l1 + (12*l1/(l3*p))*a1
    double a1 = 0;   // 2000/eps^2
    double b1 = 0;   // 100*l1*(log n)^2/eps
    double b2 = 0;   // n/(l1*(log n)^7)

    // upper-bound machinery
    double k = 0;      // alpha*n/log_b np
    double beta = 0;   // k*(np)^{-1/alpha}
    double gamma = 0;  // 10 n log n / beta
    double d0 = 0;     // beta/2
    int r = 0;         // landmark cap, r+1 <= log n
    std::vector<double> x;  // x_0..x_r, x_i = 5p*gamma/10^{i-1} + 10 log n
    double sum_x = 0;

    // bipartite machinery
    double lambda0 = 0;         // log_b n - log_b log n - log_b log_b np - log_b 3
    double dead_threshold = 0;  // 6 (log n)(log_b np)
    double k_bip = 0;           // n/(10 (log n)(log_b np))

    struct Flags {
        bool l1_valid = false;       // l1 >= 1
        bool l2_valid = false;
        bool l3_valid = false;
        bool lambda0_valid = false;  // lambda0 >= 1
        bool dead_threshold_valid = false;
        bool cond_satisfied = false;  // 600np log n/beta + 10 log^2 n <= beta/4
        bool sum_x_ok = false;        // sum x_i <= d0/2
    } flags;
};

ParameterSet derive_parameters(double n, double p, double eps, double alpha,
                               double eta = 0.01);

// Integer thresholds for the elimination strategy, with the documented
// rounding: l1 -> max(1, round), l2/l3 -> max(1, floor).
struct ClampedThresholds {
    long long l1 = 1, l2 = 1, l3 = 1;
    bool l1_clamped = false, l2_clamped = false, l3_clamped = false;
};
ClampedThresholds clamped_thresholds(const ParameterSet& ps);

struct BoundsReport {
    double lower = 0;               // (1-eps) n / log_b np
    double upper = 0;               // alpha n / log_b np
    double bipartite_lower = 0;     // n / (10 (log n)(log_b np))
    double chromatic_estimate = 0;  // n / (2 log_b np)
    double ratio_lower_over_estimate = 0;  // = 2(1-eps) exactly
    double ratio_upper_over_lower = 0;     // = alpha/(1-eps)
};

BoundsReport theorem_bounds(double n, double p, double eps, double alpha,
                            double eta = 0.01);

std::string parameter_set_to_json(const ParameterSet& ps);
std::string bounds_report_to_json(const BoundsReport& br);
std::string bounds_table(const ParameterSet& ps, const BoundsReport& br);

}  // namespace vcg
