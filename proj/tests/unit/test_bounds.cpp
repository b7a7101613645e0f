#include <doctest.h>

#include <cmath>
#include <nlohmann/json.hpp>

#include "vcg/bounds.hpp"
#include "vcg/errors.hpp"

using namespace vcg;

TEST_CASE("log_base_b inverts exponentiation in base 1/(1-p)") {
    for (double p : {0.1, 0.3, 0.5, 0.9}) {
        double b = 1.0 / (1.0 - p);
        for (double x : {1.0, 2.0, 10.0, 12345.0, 1e8}) {
            double l = log_base_b(x, p);
            CHECK(std::pow(b, l) == doctest::Approx(x).epsilon(1e-12));
        }
    }
    // p = 1/2 gives base 2
    CHECK(log_base_b(8.0, 0.5) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(log_base_b(1.0, 0.5) == doctest::Approx(0.0));
    CHECK_THROWS_AS(log_base_b(10.0, 0.0), ParameterError);
    CHECK_THROWS_AS(log_base_b(10.0, 1.0), ParameterError);
    CHECK_THROWS_AS(log_base_b(0.5, 0.5), ParameterError);
}

TEST_CASE("phi matches its defining formula") {
    for (double n : {10.0, 1000.0}) {
        for (double p : {0.1, 0.5}) {
            for (double s : {1.0, 2.0, 17.0, 500.0}) {
                CHECK(phi(s, n, p) ==
                      doctest::Approx((5.0 * p * s + std::log(n)) * s).epsilon(1e-14));
            }
        }
    }
    // phi is increasing in s for s >= 0
    CHECK(phi(3.0, 100.0, 0.2) < phi(4.0, 100.0, 0.2));
}

TEST_CASE("chernoff tails match their closed forms and reject bad arguments") {
    double np_bar = 50.0;
    CHECK(chernoff_tail(ChernoffKind::Lower, np_bar, 0.2) ==
          doctest::Approx(std::exp(-0.04 * np_bar / 2.0)).epsilon(1e-14));
    CHECK(chernoff_tail(ChernoffKind::UpperSmall, np_bar, 0.2) ==
          doctest::Approx(std::exp(-0.04 * np_bar / 3.0)).epsilon(1e-14));
    CHECK(chernoff_tail(ChernoffKind::UpperLarge, np_bar, 4.0) ==
          doctest::Approx(std::pow(std::exp(1.0) / 4.0, 4.0 * np_bar)).epsilon(1e-12));
    // tails shrink as the deviation grows
    CHECK(chernoff_tail(ChernoffKind::Lower, np_bar, 0.5) <
          chernoff_tail(ChernoffKind::Lower, np_bar, 0.1));
    CHECK(chernoff_tail(ChernoffKind::UpperLarge, np_bar, 10.0) <
          chernoff_tail(ChernoffKind::UpperLarge, np_bar, 3.0));
    CHECK_THROWS_AS(chernoff_tail(ChernoffKind::Lower, np_bar, 1.5), ParameterError);
    CHECK_THROWS_AS(chernoff_tail(ChernoffKind::UpperSmall, np_bar, 0.0), ParameterError);
    CHECK_THROWS_AS(chernoff_tail(ChernoffKind::UpperLarge, np_bar, 0.9), ParameterError);
    CHECK_THROWS_AS(chernoff_tail(ChernoffKind::Lower, -1.0, 0.5), ParameterError);
}

TEST_CASE("derive_parameters rejects out-of-range inputs") {
    CHECK_THROWS_AS(derive_parameters(1, 0.5, 0.1, 3), ParameterError);
    CHECK_THROWS_AS(derive_parameters(1000, 0.0, 0.1, 3), ParameterError);
    CHECK_THROWS_AS(derive_parameters(1000, 0.995, 0.1, 3), ParameterError);
    CHECK_THROWS_AS(derive_parameters(1000, 0.5, 0.0, 3), ParameterError);
    CHECK_THROWS_AS(derive_parameters(1000, 0.5, 1.0, 3), ParameterError);
    CHECK_THROWS_AS(derive_parameters(1000, 0.5, 0.1, 2.0), ParameterError);
    CHECK_THROWS_AS(derive_parameters(100, 0.005, 0.1, 3), ParameterError);  // np <= 1
    // eta relaxation admits denser p
    CHECK_NOTHROW(derive_parameters(1000, 0.995, 0.1, 3, 0.001));
}

// The cut-off l1 is defined by n(1-p)^{l1} = log_b(np) (log n)^{10}, and
// lambda0 by n(1-p)^{lambda0} = 3 (log n)(log_b np). Both identities must
// hold to high relative accuracy for every admissible input.
TEST_CASE("l1 and lambda0 satisfy their defining identities") {
    for (double n : {100.0, 1000.0, 1e5, 1e8}) {
        for (double p : {0.05, 0.25, 0.5, 0.8}) {
            for (double eps : {0.05, 0.3}) {
                ParameterSet ps = derive_parameters(n, p, eps, 3.0);
                double ln_n = std::log(n);
                double lhs1 = n * std::pow(1.0 - p, ps.l1);
                double rhs1 = ps.log_b_np * std::pow(ln_n, 10.0);
                CHECK(lhs1 == doctest::Approx(rhs1).epsilon(1e-9));
                double lhs0 = n * std::pow(1.0 - p, ps.lambda0);
                double rhs0 = 3.0 * ln_n * ps.log_b_np;
                CHECK(lhs0 == doctest::Approx(rhs0).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("derived quantities match their closed forms") {
    for (double n : {500.0, 1e4, 1e7}) {
        for (double p : {0.1, 0.5}) {
            double eps = 0.1, alpha = 3.0;
            ParameterSet ps = derive_parameters(n, p, eps, alpha);
            double ln_n = std::log(n);
            CHECK(ps.b == doctest::Approx(1.0 / (1.0 - p)).epsilon(1e-14));
            CHECK(ps.log_b_np ==
                  doctest::Approx(std::log(n * p) / std::log(ps.b)).epsilon(1e-13));
            CHECK(ps.l2 == doctest::Approx(eps * ps.l1 / 20.0).epsilon(1e-13));
            CHECK(ps.l2p == doctest::Approx(eps * ps.l1 / 21.0).epsilon(1e-13));
            CHECK(ps.l3 == doctest::Approx(eps * eps * eps * ps.l1 / 2e6).epsilon(1e-13));
            CHECK(ps.a1 == doctest::Approx(2000.0 / (eps * eps)).epsilon(1e-13));
            CHECK(ps.l0 ==
                  doctest::Approx(ps.l1 + (12.0 * ps.l1 / (ps.l3 * p)) * ps.a1)
                      .epsilon(1e-13));
            CHECK(ps.b1 == doctest::Approx(100.0 * ps.l1 * ln_n * ln_n / eps).epsilon(1e-13));
            CHECK(ps.b2 == doctest::Approx(n / (ps.l1 * std::pow(ln_n, 7.0))).epsilon(1e-13));
            CHECK(ps.k == doctest::Approx(alpha * n / ps.log_b_np).epsilon(1e-13));
            CHECK(ps.beta ==
                  doctest::Approx(ps.k * std::pow(n * p, -1.0 / alpha)).epsilon(1e-13));
            CHECK(ps.gamma == doctest::Approx(10.0 * n * ln_n / ps.beta).epsilon(1e-13));
            CHECK(ps.d0 == doctest::Approx(ps.beta / 2.0).epsilon(1e-14));
            CHECK(ps.dead_threshold ==
                  doctest::Approx(6.0 * ln_n * ps.log_b_np).epsilon(1e-13));
            CHECK(ps.k_bip ==
                  doctest::Approx(n / (10.0 * ln_n * ps.log_b_np)).epsilon(1e-13));
        }
    }
}

TEST_CASE("landmark increments: formula, cap, and closed-form envelope") {
    for (double n : {100.0, 1e4, 1e8}) {
        for (double p : {0.1, 0.5}) {
            ParameterSet ps = derive_parameters(n, p, 0.1, 3.0);
            double ln_n = std::log(n);
            REQUIRE(int(ps.x.size()) == ps.r + 1);
            CHECK(ps.r + 1 <= ln_n);
            double sum = 0;
            for (int i = 0; i <= ps.r; ++i) {
                double want = 5.0 * p * ps.gamma / std::pow(10.0, i - 1) + 10.0 * ln_n;
                CHECK(ps.x[std::size_t(i)] == doctest::Approx(want).epsilon(1e-12));
                if (i > 0) CHECK(ps.x[std::size_t(i)] < ps.x[std::size_t(i - 1)]);
                sum += ps.x[std::size_t(i)];
            }
            CHECK(ps.sum_x == doctest::Approx(sum).epsilon(1e-12));
            // geometric series bound: sum x_i <= 60 p gamma + 10 log^2 n
            CHECK(ps.sum_x <= 60.0 * p * ps.gamma + 10.0 * ln_n * ln_n + 1e-9);
        }
    }
}

TEST_CASE("validity flags agree with an independent recomputation") {
    for (double n : {50.0, 1000.0, 1e6, 1e9}) {
        for (double p : {0.05, 0.5, 0.9}) {
            if (n * p <= 1) continue;
            ParameterSet ps = derive_parameters(n, p, 0.1, 3.0);
            double ln_n = std::log(n);
            CHECK(ps.flags.l1_valid == (ps.l1 >= 1.0));
            CHECK(ps.flags.l2_valid == (ps.l2 >= 1.0));
            CHECK(ps.flags.l3_valid == (ps.l3 >= 1.0));
            CHECK(ps.flags.lambda0_valid == (ps.lambda0 >= 1.0));
            CHECK(ps.flags.dead_threshold_valid == (ps.dead_threshold >= 1.0));
            bool cond = 600.0 * n * p * ln_n / ps.beta + 10.0 * ln_n * ln_n <=
                        ps.beta / 4.0;
            CHECK(ps.flags.cond_satisfied == cond);
            CHECK(ps.flags.sum_x_ok == (ps.sum_x <= ps.d0 / 2.0));
        }
    }
}

TEST_CASE("worked example at n=1000, p=1/2, eps=0.1, alpha=3") {
    ParameterSet ps = derive_parameters(1000, 0.5, 0.1, 3.0);
    CHECK(ps.b == doctest::Approx(2.0));
    CHECK(ps.log_b_np == doctest::Approx(std::log2(500.0)).epsilon(1e-12));
    CHECK(ps.k == doctest::Approx(334.6).epsilon(0.01));
    CHECK(ps.beta == doctest::Approx(42.16).epsilon(0.01));
    CHECK(ps.gamma == doctest::Approx(1638.5).epsilon(0.01));
    CHECK_FALSE(ps.flags.cond_satisfied);  // asymptotic regime, not this scale
    BoundsReport br = theorem_bounds(1000, 0.5, 0.1, 3.0);
    CHECK(br.lower == doctest::Approx(100.38).epsilon(0.01));
    CHECK(br.upper == doctest::Approx(ps.k).epsilon(1e-13));
}

TEST_CASE("bound ratios are exact algebraic identities") {
    for (double n : {100.0, 1e4, 1e7}) {
        for (double p : {0.1, 0.5, 0.8}) {
            for (double eps : {0.05, 0.1, 0.5}) {
                for (double alpha : {2.5, 3.0, 10.0}) {
                    BoundsReport br = theorem_bounds(n, p, eps, alpha);
                    CHECK(br.ratio_lower_over_estimate ==
                          doctest::Approx(2.0 * (1.0 - eps)).epsilon(1e-12));
                    CHECK(br.ratio_upper_over_lower ==
                          doctest::Approx(alpha / (1.0 - eps)).epsilon(1e-12));
                    CHECK(br.lower < br.upper);
                    CHECK(br.bipartite_lower > 0);
                }
            }
        }
    }
}

TEST_CASE("threshold clamping reports exactly what was clamped") {
    ParameterSet ps;
    ps.l1 = 5.4;
    ps.l2 = 3.9;
    ps.l3 = 0.2;
    ClampedThresholds c = clamped_thresholds(ps);
    CHECK(c.l1 == 5);
    CHECK_FALSE(c.l1_clamped);
    CHECK(c.l2 == 3);
    CHECK_FALSE(c.l2_clamped);
    CHECK(c.l3 == 1);
    CHECK(c.l3_clamped);

    ps.l1 = 0.3;  // rounds to 0, clamps to 1
    ps.l2 = 1.0;
    ps.l3 = 7.99;
    c = clamped_thresholds(ps);
    CHECK(c.l1 == 1);
    CHECK(c.l1_clamped);
    CHECK(c.l2 == 1);
    CHECK_FALSE(c.l2_clamped);
    CHECK(c.l3 == 7);
    CHECK_FALSE(c.l3_clamped);

    // realistic small instance: l2 and l3 are far below 1
    ParameterSet real = derive_parameters(1000, 0.5, 0.1, 3.0);
    ClampedThresholds rc = clamped_thresholds(real);
    CHECK(rc.l1 >= 1);
    CHECK(rc.l2 == 1);
    CHECK(rc.l2_clamped);
    CHECK(rc.l3 == 1);
    CHECK(rc.l3_clamped);
}

TEST_CASE("json and table renderings are well formed") {
    ParameterSet ps = derive_parameters(1000, 0.5, 0.1, 3.0);
    BoundsReport br = theorem_bounds(1000, 0.5, 0.1, 3.0);

    auto jp = nlohmann::json::parse(parameter_set_to_json(ps));
    CHECK(jp["inputs"]["n"] == 1000.0);
    CHECK(jp["k"].get<double>() == doctest::Approx(ps.k));
    CHECK(jp["x"].size() == ps.x.size());
    CHECK(jp["flags"]["cond_satisfied"] == false);

    auto jb = nlohmann::json::parse(bounds_report_to_json(br));
    CHECK(jb["lower"].get<double>() == doctest::Approx(br.lower));
    CHECK(jb["ratio_lower_over_estimate"].get<double>() == doctest::Approx(1.8));

    std::string table = bounds_table(ps, br);
    CHECK(table.find("beta") != std::string::npos);
    CHECK(table.find("NOT satisfied") != std::string::npos);
}
