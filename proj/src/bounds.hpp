#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "syracuse.hpp"

namespace collatz {

// H_2(p) = -p log2 p - (1-p) log2(1-p); rejects p outside (0,1).
double binary_entropy(double p);

// log2 C(n,l), computed from log-gamma, not the entropy approximation.
double log2_binomial(std::uint64_t n, std::uint64_t l);

// Exact binomial coefficient.
BigInt binomial(std::uint64_t n, std::uint64_t l);

// omega(y,l) = #{(u_1,...,u_l) : integer u_j >= min_entry, sum u_j <= y}
//            = C(floor(y) - (min_entry-1) l, l) when floor(y) >= min_entry*l,
//            else 0. min_entry defaults to 2, the reading of (N+1) used by
//            the partition bound; 1 is available for sensitivity runs.
BigInt omega(double y, std::uint32_t l, std::uint32_t min_entry = 2);

enum class BudgetKind { paper, safe, explicit_value };

// Entry-sum budget T(x,l) for the partition bound.
//   paper: (1/3) log4 x + l (1 + (1/3) log4 3)   [the lemma's budget]
//   safe:  (1/3) log4 x + (l/3)(1 + log4 3)      [what v_j <= 6u_j - 2 supports]
struct BudgetRule {
    BudgetKind kind = BudgetKind::safe;
    double value = 0;  // for explicit_value

    static BudgetRule paper() { return {BudgetKind::paper}; }
    static BudgetRule safe() { return {BudgetKind::safe}; }
    static BudgetRule explicit_value_of(double v) {
        return {BudgetKind::explicit_value, v};
    }
    static BudgetRule parse(const std::string& name);

    double evaluate(double log4_x, std::uint32_t l) const;
    double evaluate_for(std::uint64_t x, std::uint32_t l) const;
};

// omega(T(x,l), l): the claimed lower bound for pi(x,l) under the rule.
BigInt partition_bound(std::uint64_t x, std::uint32_t l, const BudgetRule& rule);

// (1/3) H_2(1/(2 + (2/3) log4 3)), the lower-bound exponent.
double main_exponent();

enum class DenominatorReading {
    log_term,      // l = floor(log4 x / (3 + log4 3))
    literal_four,  // l = floor(log4 x / 4), the other reading of the text
};

struct TheoremParameters {
    std::uint64_t l;
    std::uint64_t n;
};

// The proof's parameter choices; rejects x too small for l >= 1.
TheoremParameters theorem_parameters(
    std::uint64_t x, DenominatorReading reading = DenominatorReading::log_term);
TheoremParameters theorem_parameters_log4(
    double log4_x, DenominatorReading reading = DenominatorReading::log_term);

struct ChainLink {
    std::string name;
    std::string lhs;
    std::string rhs;
    std::string relation;  // ">=" for every link
    bool exact;            // both sides exact integers
    bool holds;
    bool gating;           // participates in the safe-rule verdict
};

// Every link of the bound chain evaluated against one census, plus the
// comparisons of pi(x) with the computed and historical exponents.
struct BoundReport {
    std::uint64_t x = 0;
    std::uint64_t l = 0;  // proof parameter
    std::uint64_t n = 0;  // proof parameter
    std::uint64_t l_literal_four = 0;  // alternate denominator reading
    BigInt pi_x;
    BigInt pi_x_l;
    BigInt omega_paper;
    BigInt omega_safe;
    BigInt binom;  // C(n,l)
    double theta = 0;
    double x_pow_theta = 0;
    std::vector<ChainLink> links;

    bool safe_ok() const;

    std::string to_json() const;
    std::string to_text() const;
    std::string to_csv() const;
};

BoundReport bound_report(const CensusTable& census);

}  // namespace collatz
