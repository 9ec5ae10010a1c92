#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "congruence.hpp"

namespace collatz {

// Free tuple (u_1,...,u_l) of integers >= 2 indexing one residue window
// per coordinate; no congruence condition constrains it.
class UTuple {
public:
    explicit UTuple(std::vector<std::uint64_t> entries);
    static UTuple parse(const std::string& csv);

    const std::vector<std::uint64_t>& entries() const { return entries_; }
    std::size_t level() const { return entries_.size(); }
    std::uint64_t sum() const;
    std::string to_string() const;

    bool operator==(const UTuple&) const = default;
    auto operator<=>(const UTuple&) const = default;

private:
    std::vector<std::uint64_t> entries_;
};

// The six consecutive exponents v with floor((v+1)/6) = u-1.
struct Window {
    std::uint64_t u;
    std::uint64_t lo;  // 6u-7
    std::uint64_t hi;  // 6u-2
    bool contains(std::uint64_t v) const { return lo <= v && v <= hi; }
};

Window window_of(std::uint64_t u);

// All v in window_of(u_next), increasing, whose appending to prefix solves
// the next-level equation; prefix must be empty or solve the level-(length)
// equation. The six window members are tested against the prefix residue.
std::vector<std::uint64_t> extend_candidates(
    const std::vector<std::uint64_t>& prefix, std::uint64_t u_next);

enum class LiftSelector {
    // Smallest valid candidate in each window; the canonical rule.
    smallest_candidate,
    // v = 6u - 2w - r with r the binary digit matching the residue mod 3
    // and w the largest ternary digit keeping the tuple a solution mod 9.
    digit_rule,
};

// Per-step bookkeeping accumulated across lift calls.
struct LiftStats {
    std::map<std::size_t, std::uint64_t> multiplicity;  // candidate count -> steps
    std::uint64_t digit_rule_agreements = 0;  // steps where both rules pick the same v
    std::uint64_t steps = 0;
};

// Builds the window-constrained solution above u one coordinate at a time,
// carrying the inductive residue modulo 3^(l+1) so cost is polynomial in l.
// Fails loudly if any extension step yields no candidate. strict rejects
// entries divisible by 3 (the classical hypothesis on free tuples, kept
// available for fidelity experiments; the construction never needs it).
VTuple lift(const UTuple& u,
            LiftSelector selector = LiftSelector::smallest_candidate,
            LiftStats* stats = nullptr, bool strict = false);

struct BatchRecord {
    UTuple u;
    VTuple v;
    BigInt n;
    bool admitted;  // n <= x
};

// Explicitly constructed, individually verified Collatz numbers of one
// level; admitted is a certified lower bound on pi(x, l) regardless of any
// budget constant.
struct CertifiedBatch {
    BigInt x;
    std::uint32_t level = 0;
    std::vector<BatchRecord> records;  // lexicographic in u
    std::uint64_t admitted = 0;
    std::uint64_t oversize = 0;
    LiftStats stats;

    std::string to_csv() const;
};

// Enumerates all UTuples of the given level with entry sum <= budget_sum
// (lexicographic), lifts each, builds the number, verifies its level by
// direct iteration, and partitions by the bound x. Any lift failure or
// level mismatch aborts with diagnostics.
CertifiedBatch certified_generate(const BigInt& x, std::uint32_t level,
                                  double budget_sum,
                                  std::uint64_t cap = kDefaultCap);

}  // namespace collatz
