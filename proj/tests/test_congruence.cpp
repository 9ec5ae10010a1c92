#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "congruence.hpp"
#include "oracle.hpp"

using namespace collatz;

TEST_CASE("VTuple parsing") {
    CHECK(VTuple::parse("4,3").entries() == std::vector<std::uint64_t>{4, 3});
    CHECK(VTuple::parse("7").level() == 1);
    CHECK(VTuple::parse("4,3").to_string() == "4,3");
    CHECK_THROWS_AS(VTuple::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(VTuple::parse("4,,3"), std::invalid_argument);
    CHECK_THROWS_AS(VTuple::parse("4,x"), std::invalid_argument);
    CHECK_THROWS_AS(VTuple::parse("-4"), std::invalid_argument);
    CHECK_THROWS_AS(VTuple::parse("0,3"), std::invalid_argument);  // entries >= 1
    CHECK_THROWS_AS(VTuple::parse("99999999999999999999999"), std::invalid_argument);
}

TEST_CASE("is_primary_solution examples") {
    CHECK(is_primary_solution(VTuple({4})));
    CHECK_FALSE(is_primary_solution(VTuple({6})));  // 2^6 = 1 mod 9
    CHECK(is_primary_solution(VTuple({4, 3})));
    CHECK(is_primary_solution(VTuple({2})));        // builds n = 1
    CHECK_FALSE(is_primary_solution(VTuple({4, 1})));
    CHECK_FALSE(is_primary_solution(VTuple({1})));
}

TEST_CASE("modular and exact evaluation agree on all small tuples") {
    // every tuple with l <= 3 and entries summing to <= 18
    std::vector<std::uint64_t> v;
    auto sweep = [&](auto&& self, std::uint64_t remaining) -> void {
        if (!v.empty()) {
            bool modular = is_primary_solution(VTuple(v));
            CHECK(modular == is_primary_solution_exact(VTuple(v)));
            CHECK(modular == oracle::naive_is_primary(v));
        }
        if (v.size() == 3) return;
        for (std::uint64_t e = 1; e <= remaining; ++e) {
            v.push_back(e);
            self(self, remaining - e);
            v.pop_back();
        }
    };
    sweep(sweep, 18);
}

TEST_CASE("build_number examples") {
    BuildResult r = build_number(VTuple({4}));
    CHECK(r.n == 5);
    CHECK(r.exact_power == 16);
    CHECK(r.rhs_sum == 1);  // the j = l-1 summand alone: 3^0 * 2^0

    BuildResult r2 = build_number(VTuple({4, 3}));
    CHECK(r2.n == 13);
    CHECK(r2.exact_power == 128);
    CHECK(r2.rhs_sum == 11);  // 2^3 + 3

    BuildResult r3 = build_number(VTuple({8, 6}));
    CHECK(r3.n == 1813);
    CHECK(level(OddInt(r3.n)).level == 2);
}

TEST_CASE("build_number result identity 3^l n = power - rhs") {
    for (auto v : {VTuple({4}), VTuple({4, 3}), VTuple({8, 6}), VTuple({4, 3, 2, 1, 1})}) {
        BuildResult r = build_number(v);
        CHECK(pow3(v.level()) * r.n == r.exact_power - r.rhs_sum);
        CHECK(is_odd(r.n));
        CHECK(r.n % 3 != 0);
    }
}

TEST_CASE("build_number rejects non-solutions") {
    CHECK_THROWS_AS(build_number(VTuple({6})), std::invalid_argument);
    CHECK_THROWS_AS(build_number(VTuple({4, 1})), std::invalid_argument);
}

TEST_CASE("decompose examples") {
    CHECK(decompose(OddInt(5)) == VTuple({4}));
    CHECK(decompose(OddInt(13)) == VTuple({4, 3}));
    CHECK(decompose(OddInt(7)) == VTuple({4, 3, 2, 1, 1}));
}

TEST_CASE("decompose preconditions") {
    CHECK_THROWS_AS(decompose(OddInt(21)), std::invalid_argument);  // 3 | 21
    CHECK_THROWS_AS(decompose(OddInt(1)), std::invalid_argument);
    CHECK_THROWS_AS(decompose(OddInt(97), 3), unresolved_error);
}

TEST_CASE("round trip A: build(decompose(n)) = n for odd n prime to 3") {
    for (std::uint64_t n = 5; n <= 4001; n += 2) {
        if (n % 3 == 0) continue;
        VTuple v = decompose(OddInt(n));
        CHECK(is_primary_solution(v));
        CHECK(v.entries().front() > 2);
        CHECK(v.entries().front() % 2 == 0);
        CHECK(build_number(v).n == n);
    }
}

TEST_CASE("round trip B: decompose(build(v)) = v on decomposition tuples") {
    for (std::uint64_t n = 5; n <= 1501; n += 2) {
        if (n % 3 == 0) continue;
        VTuple v = decompose(OddInt(n));
        CHECK(decompose(OddInt(build_number(v).n)) == v);
    }
}

TEST_CASE("verify_inverse accepts genuine solutions") {
    CHECK(verify_inverse(VTuple({4})));
    CHECK(verify_inverse(VTuple({4, 3})));
    CHECK(verify_inverse(VTuple({8, 6})));  // 1813 -> 85 -> 1
}

TEST_CASE("verify_inverse preconditions and failure modes") {
    // (2,4) solves the level-2 equation but builds 5, a level-1 number;
    // the lemma's v_1 > 2 hypothesis is what rules it out.
    CHECK(is_primary_solution(VTuple({2, 4})));
    CHECK(build_number(VTuple({2, 4})).n == 5);
    CHECK_THROWS_AS(verify_inverse(VTuple({2, 4})), std::invalid_argument);
    CHECK_THROWS_AS(verify_inverse(VTuple({6})), std::invalid_argument);  // not a solution
}

TEST_CASE("verify_inverse unresolved is reported distinctly") {
    VTuple v = decompose(OddInt(97));  // level(97) = 29
    CHECK_THROWS_AS(verify_inverse(v, 3), unresolved_error);
    CHECK(verify_inverse(v, 100000));
}

TEST_CASE("injectivity over all solution tuples with l <= 3, sum <= 30") {
    std::set<BigInt> built;
    std::uint64_t solutions = 0;
    std::vector<std::uint64_t> v;
    auto sweep = [&](auto&& self, std::uint64_t remaining) -> void {
        if (!v.empty() && v.front() > 2 && oracle::naive_is_primary(v)) {
            ++solutions;
            BigInt n = build_number(VTuple(v)).n;
            CHECK(built.insert(n).second);  // no collision
        }
        if (v.size() == 3) return;
        for (std::uint64_t e = 1; e <= remaining; ++e) {
            v.push_back(e);
            self(self, remaining - e);
            v.pop_back();
        }
    };
    sweep(sweep, 30);
    CHECK(solutions == built.size());
    CHECK(solutions > 100);  // the sweep is not vacuous
}

TEST_CASE("size bound: 3^l B(v) <= 2^(v_1+...+v_l)") {
    for (std::uint64_t n = 5; n <= 2001; n += 2) {
        if (n % 3 == 0) continue;
        VTuple v = decompose(OddInt(n));
        BuildResult r = build_number(v);
        CHECK(pow3(v.level()) * r.n <= pow2(v.sum()));
    }
}

TEST_CASE("exact evaluation refuses absurd exponent sums") {
    CHECK_THROWS_AS(is_primary_solution_exact(VTuple({std::uint64_t{1} << 40})),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_number(VTuple({std::uint64_t{1} << 40})),
                    std::invalid_argument);
}
