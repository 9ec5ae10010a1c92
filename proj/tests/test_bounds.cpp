#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "bounds.hpp"
#include "json.hpp"
#include "oracle.hpp"

using namespace collatz;

TEST_CASE("binary_entropy basics") {
    CHECK(binary_entropy(0.5) == doctest::Approx(1.0).epsilon(1e-15));
    // frozen from a 50-digit evaluation: H2(0.39552) = 0.96826956...
    CHECK(binary_entropy(0.39552) == doctest::Approx(0.9682695625).epsilon(1e-9));
    CHECK_THROWS_AS(binary_entropy(0.0), std::invalid_argument);
    CHECK_THROWS_AS(binary_entropy(1.0), std::invalid_argument);
    CHECK_THROWS_AS(binary_entropy(-0.2), std::invalid_argument);
    CHECK_THROWS_AS(binary_entropy(1.2), std::invalid_argument);
}

TEST_CASE("binary_entropy symmetry and concavity") {
    for (double p : {0.01, 0.13, 0.25, 0.39, 0.47}) {
        CHECK(binary_entropy(p) == doctest::Approx(binary_entropy(1 - p)).epsilon(1e-12));
        CHECK(binary_entropy(p) < 1.0);
        // midpoint concavity against 0.5
        double mid = (p + 0.5) / 2;
        CHECK(binary_entropy(mid) >
              (binary_entropy(p) + binary_entropy(0.5)) / 2 - 1e-12);
    }
}

TEST_CASE("log2_binomial basics") {
    CHECK(log2_binomial(17, 0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(log2_binomial(4, 2) == doctest::Approx(std::log2(6.0)).epsilon(1e-12));
    CHECK(log2_binomial(10, 10) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_THROWS_AS(log2_binomial(4, 5), std::invalid_argument);
    CHECK_THROWS_AS(log2_binomial(0, 0), std::invalid_argument);
}

TEST_CASE("log2_binomial matches exact binomials") {
    for (std::uint64_t n : {5ull, 30ull, 64ull, 200ull}) {
        for (std::uint64_t l = 0; l <= n; l += 7) {
            double expected =
                std::log2(oracle::naive_binomial(n, l).get_d());
            CHECK(log2_binomial(n, l) == doctest::Approx(expected).epsilon(1e-9));
        }
    }
    CHECK(binomial(5, 2) == oracle::naive_binomial(5, 2));
    CHECK(binomial(64, 31) == oracle::naive_binomial(64, 31));
}

TEST_CASE("entropy estimate error stays within 0.5 log2 n + 3 (small scan)") {
    double worst = 0;
    for (std::uint64_t n = 2; n <= 2000; n += 13) {
        double nh_budget = 0.5 * std::log2(double(n)) + 3.0;
        for (std::uint64_t l = (n + 9) / 10; 2 * l <= n; ++l) {
            double err = std::fabs(log2_binomial(n, l) -
                                   n * binary_entropy(double(l) / double(n)));
            worst = std::max(worst, err);
            CHECK(err <= nh_budget);
        }
    }
    MESSAGE("worst entropy-estimate error in scan: " << worst);
}

TEST_CASE("omega examples") {
    CHECK(omega(3, 2) == 0);
    CHECK(omega(5, 2) == 3);  // (2,2),(2,3),(3,2)
    CHECK(omega(4, 1) == 3);  // u in {2,3,4}
    CHECK(omega(5.9, 2) == 3);
    CHECK(omega(-7.0, 1) == 0);
    CHECK_THROWS_AS(omega(5, 0), std::invalid_argument);
}

TEST_CASE("omega closed form equals brute-force enumeration") {
    for (std::int64_t y = 2; y <= 40; ++y)
        for (std::uint32_t l = 1; l <= 8; ++l)
            CHECK(omega(double(y), l) == oracle::naive_omega(y, l));
}

TEST_CASE("omega is nondecreasing in y") {
    for (std::uint32_t l = 1; l <= 5; ++l) {
        BigInt prev = 0;
        for (double y = 2; y <= 60; y += 0.5) {
            BigInt cur = omega(y, l);
            CHECK(cur >= prev);
            prev = cur;
        }
    }
}

TEST_CASE("budget rules") {
    // T_paper(4^6, 1) = 2 + 1 + (1/3) log4 3
    double t = BudgetRule::paper().evaluate_for(4096, 1);
    CHECK(t == doctest::Approx(3.2641604168).epsilon(1e-9));
    CHECK(partition_bound(4096, 1, BudgetRule::paper()) == 2);

    for (std::uint64_t x : {100ull, 10000ull, 1000000ull})
        for (std::uint32_t l = 1; l <= 6; ++l) {
            CHECK(BudgetRule::safe().evaluate_for(x, l) <
                  BudgetRule::paper().evaluate_for(x, l));
            CHECK(partition_bound(x, l, BudgetRule::safe()) <=
                  partition_bound(x, l, BudgetRule::paper()));
        }

    CHECK(BudgetRule::parse("paper").kind == BudgetKind::paper);
    CHECK(BudgetRule::parse("safe").kind == BudgetKind::safe);
    CHECK_THROWS_AS(BudgetRule::parse("bogus"), std::invalid_argument);
    CHECK(BudgetRule::explicit_value_of(7.5).evaluate_for(10, 3) == 7.5);
    CHECK_THROWS_AS(partition_bound(1, 1, BudgetRule::safe()), std::invalid_argument);
}

TEST_CASE("partition bound frozen desk-scale values") {
    CHECK(partition_bound(10000, 1, BudgetRule::safe()) == 1);
    CHECK(partition_bound(100000, 1, BudgetRule::safe()) == 2);
    CHECK(partition_bound(1000000, 1, BudgetRule::safe()) == 2);
    CHECK(partition_bound(1000000, 2, BudgetRule::safe()) == 1);
    CHECK(partition_bound(1000000, 3, BudgetRule::safe()) == 0);
    CHECK(partition_bound(1000000, 2, BudgetRule::paper()) == 3);
}

TEST_CASE("main exponent") {
    double theta = main_exponent();
    CHECK(theta >= 0.3227);
    CHECK(theta <= 0.3229);
    CHECK(theta == doctest::Approx(0.3227564034).epsilon(1e-7));
    CHECK(theta < 0.43);  // weaker than the 1989 record, as stated
    CHECK(std::floor(theta * 10000) == 3227);
}

TEST_CASE("theorem parameters") {
    TheoremParameters p = theorem_parameters_log4(38);  // x = 4^38
    CHECK(p.l == 10);
    CHECK(p.n == 25);
    CHECK(theorem_parameters(1000000).l == 2);
    CHECK(theorem_parameters(1000000).n == 5);
    CHECK(theorem_parameters(10000).l == 1);
    CHECK(theorem_parameters(10000).n == 3);
    CHECK(theorem_parameters(100000000).l == 3);
    CHECK(theorem_parameters(100000000).n == 8);
    CHECK_THROWS_AS(theorem_parameters(2), std::invalid_argument);
    CHECK_THROWS_AS(theorem_parameters(1), std::invalid_argument);
    // the literal "3+1" denominator reading is available for sensitivity runs
    CHECK(theorem_parameters(1000000, DenominatorReading::literal_four).l == 2);
}

TEST_CASE("l/n approaches 1/(2 + (2/3) log4 3)") {
    TheoremParameters p = theorem_parameters_log4(1000);
    double target = 1.0 / (2.0 + (2.0 / 3.0) * (std::log2(3.0) / 2.0));
    CHECK(double(p.l) / double(p.n) == doctest::Approx(target).epsilon(1e-3));
}

TEST_CASE("n >= 2l for x up to 10^9, so the omega closed form is active") {
    for (std::uint64_t x = 1000; x <= 1000000000; x = x * 10 + 13) {
        TheoremParameters p = theorem_parameters(x);
        CHECK(p.n >= 2 * p.l);
    }
}

TEST_CASE("bound report at x = 10^4") {
    CensusTable c = census(10000, kDefaultCap, 4);
    BoundReport r = bound_report(c);
    CHECK(r.x == 10000);
    CHECK(r.l == 1);
    CHECK(r.n == 3);
    CHECK(r.pi_x == 5000);
    CHECK(r.pi_x_l == 6);  // 5, 21, 85, 341, 1365, 5461
    CHECK(r.omega_safe == 1);
    CHECK(r.omega_paper == 2);
    CHECK(r.binom == 3);
    CHECK(r.safe_ok());

    auto find = [&](const std::string& name) -> const ChainLink& {
        for (const auto& link : r.links)
            if (link.name == name) return link;
        throw std::runtime_error("missing link " + name);
    };
    CHECK(find("pi_ge_pi_l").holds);
    CHECK(find("pi_ge_pi_l").exact);
    CHECK(find("pi_l_ge_omega_safe").holds);
    CHECK(find("pi_l_ge_omega_safe").gating);
    CHECK(find("pi_l_ge_omega_paper").holds);
    CHECK_FALSE(find("pi_l_ge_omega_paper").gating);
    // the paper's omega >= C(n,l) step fails at desk scale: 2 < 3
    CHECK_FALSE(find("omega_paper_ge_binom").holds);
    CHECK_FALSE(find("binom_ge_x_pow_theta").holds);
    CHECK(find("pi_ge_x_pow_theta").holds);
    CHECK(find("pi_ge_x_pow_0.84").holds);
}

TEST_CASE("bound report serializations are deterministic and well-formed") {
    CensusTable c = census(10000, kDefaultCap, 2);
    BoundReport r = bound_report(c);
    CHECK(r.to_json() == bound_report(c).to_json());
    CHECK(r.to_csv() ==
          "x,l,pi_x,pi_x_l,omega_paper,omega_safe,binom,x_pow_theta\n"
          "10000,1,5000,6,2,1,3,19.5445472\n");

    auto j = nlohmann::json::parse(r.to_json());
    CHECK(j["x"] == 10000);
    CHECK(j["l"] == 1);
    CHECK(j["pi_x"] == "5000");
    CHECK(j["omega_safe"] == "1");
    CHECK(j["safe_ok"] == true);
    CHECK(j["links"].is_array());
    CHECK(j["links"].size() == 11);

    std::string text = r.to_text();
    CHECK(text.find("safe-rule links: all hold") != std::string::npos);
    CHECK(text.find("[FAIL] omega_paper_ge_binom") != std::string::npos);
}

TEST_CASE("bound report rejects x below the first proof level") {
    CensusTable c = census(100);
    CHECK_THROWS_AS(bound_report(c), std::invalid_argument);
}

TEST_CASE("omega with min_entry 1, the alternate reading of (N+1)") {
    CHECK(omega(5, 2, 1) == 10);  // all pairs with entries >= 1, sum <= 5
    CHECK(omega(5, 2, 2) == 3);
    CHECK(omega(1, 2, 1) == 0);
    CHECK_THROWS_AS(omega(5, 2, 0), std::invalid_argument);
    for (std::int64_t y = 1; y <= 25; ++y)
        for (std::uint32_t l = 1; l <= 5; ++l)
            CHECK(omega(double(y), l, 1) == oracle::naive_omega_min(y, l, 1));
}

TEST_CASE("safe partition bound never exceeds sieve-exact pi(x,l)") {
    for (std::uint64_t x : {1000ull, 10000ull, 100000ull}) {
        CensusTable t = census(x, kDefaultCap, 4);
        std::uint64_t positive = 0;
        for (std::uint32_t l = 1; l <= 32; ++l) {
            BigInt pb = partition_bound(x, l, BudgetRule::safe());
            if (pb == 0) continue;
            ++positive;
            CHECK(BigInt(t.count_at(l)) >= pb);
        }
        CHECK(positive >= 1);
    }
}
