#include "vcg/bounds.hpp"

#include <cmath>
#include <sstream>

#include "vcg/errors.hpp"

#include <nlohmann/json.hpp>

namespace vcg {

double log_base_b(double x, double p) {
    if (!(p > 0.0 && p < 1.0)) throw ParameterError("p must be in (0,1)");
    if (!(x >= 1.0)) throw ParameterError("x must be >= 1");
    return std::log(x) / std::log(1.0 / (1.0 - p));
}

double phi(double s, double n, double p) {
    return (5.0 * p * s + std::log(n)) * s;
}

double chernoff_tail(ChernoffKind kind, double np_bar, double eps_or_mu) {
    if (!(np_bar > 0)) throw ParameterError("np must be positive");
    switch (kind) {
        case ChernoffKind::Lower:
            if (!(eps_or_mu > 0 && eps_or_mu <= 1))
                throw ParameterError("eps must be in (0,1]");
            return std::exp(-eps_or_mu * eps_or_mu * np_bar / 2.0);
        case ChernoffKind::UpperSmall:
            if (!(eps_or_mu > 0 && eps_or_mu <= 1))
                throw ParameterError("eps must be in (0,1]");
            return std::exp(-eps_or_mu * eps_or_mu * np_bar / 3.0);
        case ChernoffKind::UpperLarge:
            if (!(eps_or_mu > 1)) throw ParameterError("mu must be > 1");
            return std::pow(std::exp(1.0) / eps_or_mu, eps_or_mu * np_bar);
    }
    throw ParameterError("unknown Chernoff kind");
}

ParameterSet derive_parameters(double n, double p, double eps, double alpha,
                               double eta) {
    if (!(n >= 2)) throw ParameterError("n must be >= 2");
    if (!(eta > 0)) throw ParameterError("eta must be positive");
    if (!(p > 0 && p <= 1.0 - eta))
        throw ParameterError("p must satisfy 0 < p <= 1 - eta");
    if (!(eps > 0 && eps < 1)) throw ParameterError("eps must be in (0,1)");
    if (!(alpha > 2)) throw ParameterError("alpha must be > 2");
    if (!(n * p > 1)) throw ParameterError("np must exceed 1");

    ParameterSet ps;
    ps.n = n;
    ps.p = p;
    ps.eps = eps;
    ps.alpha = alpha;

    const double ln_n = std::log(n);
    ps.b = 1.0 / (1.0 - p);
    const double ln_b = std::log(ps.b);
    ps.log_b_np = std::log(n * p) / ln_b;

    // lower-bound cut-offs
    ps.l1 = (ln_n - std::log(ps.log_b_np) - 10.0 * std::log(ln_n)) / ln_b;
    ps.l2 = eps * ps.l1 / 20.0;
    ps.l2p = eps * ps.l1 / 21.0;
    ps.l3 = eps * eps * eps * ps.l1 / 2e6;
    ps.a1 = 2000.0 / (eps * eps);
    ps.l0 = ps.l1 + (12.0 * ps.l1 / (ps.l3 * p)) * ps.a1;
    ps.b1 = 100.0 * ps.l1 * ln_n * ln_n / eps;
    ps.b2 = n / (ps.l1 * std::pow(ln_n, 7.0));

    // upper-bound quantities
    ps.k = alpha * n / ps.log_b_np;
    ps.beta = ps.k * std::pow(n * p, -1.0 / alpha);
    ps.gamma = 10.0 * n * ln_n / ps.beta;
    ps.d0 = ps.beta / 2.0;

    // landmark increments; r chosen so r+1 <= log n, which keeps the
    // 10(r+1)log n term under 10 log^2 n
    ps.r = std::max(0, int(std::floor(ln_n)) - 1);
    ps.x.resize(std::size_t(ps.r) + 1);
    ps.sum_x = 0;
    for (int i = 0; i <= ps.r; ++i) {
        ps.x[std::size_t(i)] =
            5.0 * p * ps.gamma / std::pow(10.0, i - 1) + 10.0 * ln_n;
        ps.sum_x += ps.x[std::size_t(i)];
    }

    // bipartite quantities
    ps.lambda0 = (ln_n - std::log(ln_n) - std::log(ps.log_b_np) - std::log(3.0)) / ln_b;
    ps.dead_threshold = 6.0 * ln_n * ps.log_b_np;
    ps.k_bip = n / (10.0 * ln_n * ps.log_b_np);

    auto& f = ps.flags;
    f.l1_valid = ps.l1 >= 1.0;
    f.l2_valid = ps.l2 >= 1.0;
    f.l3_valid = ps.l3 >= 1.0;
    f.lambda0_valid = ps.lambda0 >= 1.0;
    f.dead_threshold_valid = ps.dead_threshold >= 1.0;
    f.cond_satisfied =
        600.0 * n * p * ln_n / ps.beta + 10.0 * ln_n * ln_n <= ps.beta / 4.0;
    f.sum_x_ok = ps.sum_x <= ps.d0 / 2.0;
    return ps;
}

ClampedThresholds clamped_thresholds(const ParameterSet& ps) {
    ClampedThresholds c;
    long long r1 = (long long)std::llround(ps.l1);
    long long r2 = (long long)std::floor(ps.l2);
    long long r3 = (long long)std::floor(ps.l3);
    c.l1 = std::max(1LL, r1);
    c.l2 = std::max(1LL, r2);
    c.l3 = std::max(1LL, r3);
    c.l1_clamped = c.l1 != r1;
    c.l2_clamped = c.l2 != r2;
    c.l3_clamped = c.l3 != r3;
    return c;
}

BoundsReport theorem_bounds(double n, double p, double eps, double alpha, double eta) {
    ParameterSet ps = derive_parameters(n, p, eps, alpha, eta);
    BoundsReport br;
    br.lower = (1.0 - eps) * n / ps.log_b_np;
    br.upper = alpha * n / ps.log_b_np;
    br.bipartite_lower = ps.k_bip;
    br.chromatic_estimate = n / (2.0 * ps.log_b_np);
    br.ratio_lower_over_estimate = br.lower / br.chromatic_estimate;
    br.ratio_upper_over_lower = br.upper / br.lower;
    return br;
}

static nlohmann::json parameter_set_json(const ParameterSet& ps) {
    nlohmann::json j;
    j["inputs"] = {{"n", ps.n}, {"p", ps.p}, {"eps", ps.eps}, {"alpha", ps.alpha}};
    j["b"] = ps.b;
    j["log_b_np"] = ps.log_b_np;
    j["l1"] = ps.l1;
    j["l2"] = ps.l2;
    j["l2_prime"] = ps.l2p;
    j["l3"] = ps.l3;
    j["l0"] = ps.l0;
    j["a1"] = ps.a1;
    j["b1"] = ps.b1;
    j["b2"] = ps.b2;
    j["k"] = ps.k;
    j["beta"] = ps.beta;
    j["gamma"] = ps.gamma;
    j["d0"] = ps.d0;
    j["r"] = ps.r;
    j["x"] = ps.x;
    j["sum_x"] = ps.sum_x;
    j["lambda0"] = ps.lambda0;
    j["dead_threshold"] = ps.dead_threshold;
    j["k_bip"] = ps.k_bip;
    j["flags"] = {{"l1_valid", ps.flags.l1_valid},
                  {"l2_valid", ps.flags.l2_valid},
                  {"l3_valid", ps.flags.l3_valid},
                  {"lambda0_valid", ps.flags.lambda0_valid},
                  {"dead_threshold_valid", ps.flags.dead_threshold_valid},
                  {"cond_satisfied", ps.flags.cond_satisfied},
                  {"sum_x_ok", ps.flags.sum_x_ok}};
    return j;
}

std::string parameter_set_to_json(const ParameterSet& ps) {
    return parameter_set_json(ps).dump(2);
}

static nlohmann::json bounds_report_json(const BoundsReport& br) {
    nlohmann::json j;
    j["lower"] = br.lower;
    j["upper"] = br.upper;
    j["bipartite_lower"] = br.bipartite_lower;
    j["chromatic_estimate"] = br.chromatic_estimate;
    j["ratio_lower_over_estimate"] = br.ratio_lower_over_estimate;
    j["ratio_upper_over_lower"] = br.ratio_upper_over_lower;
    return j;
}

std::string bounds_report_to_json(const BoundsReport& br) {
    return bounds_report_json(br).dump(2);
}

std::string bounds_table(const ParameterSet& ps, const BoundsReport& br) {
    std::ostringstream out;
    auto row = [&](const std::string& name, double v, const std::string& note = "") {
        out << "  " << name;
        for (std::size_t i = name.size(); i < 18; ++i) out << ' ';
        out << v;
        if (!note.empty()) out << "   [" << note << "]";
        out << "\n";
    };
    out << "inputs: n=" << ps.n << " p=" << ps.p << " eps=" << ps.eps
        << " alpha=" << ps.alpha << "\n";
    out << "parameters:\n";
    row("b", ps.b);
    row("log_b(np)", ps.log_b_np);
    row("l1", ps.l1, ps.flags.l1_valid ? "valid" : "invalid at this scale");
    row("l2", ps.l2, ps.flags.l2_valid ? "valid" : "invalid at this scale");
    row("l2'", ps.l2p);
    row("l3", ps.l3, ps.flags.l3_valid ? "valid" : "invalid at this scale");
    row("l0", ps.l0);
    row("a1", ps.a1);
    row("b1", ps.b1);
    row("b2", ps.b2);
    row("k", ps.k);
    row("beta", ps.beta);
    row("gamma", ps.gamma);
    row("d0", ps.d0);
    row("r", ps.r);
    row("sum_x", ps.sum_x, ps.flags.sum_x_ok ? "<= d0/2" : "exceeds d0/2");
    row("lambda0", ps.lambda0, ps.flags.lambda0_valid ? "valid" : "invalid at this scale");
    row("dead_threshold", ps.dead_threshold);
    row("k_bip", ps.k_bip);
    out << "condition (600np log n/beta + 10 log^2 n <= beta/4): "
        << (ps.flags.cond_satisfied ? "satisfied" : "NOT satisfied") << "\n";
    out << "bounds:\n";
    row("lower", br.lower);
    row("upper", br.upper);
    row("bipartite_lower", br.bipartite_lower);
    row("chromatic_est", br.chromatic_estimate);
    row("lower/chrom_est", br.ratio_lower_over_estimate);
    row("upper/lower", br.ratio_upper_over_lower);
    return out.str();
}

}  // namespace vcg
