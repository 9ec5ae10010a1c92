#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "syracuse.hpp"

namespace collatz {

// Candidate solution (v_1,...,v_l) of the level-l congruence equation
//   2^(v_1+...+v_l)  =  sum_{j=0}^{l-1} 3^j 2^(v_{j+2}+...+v_l)   (mod 3^l)
//                    !=                                            (mod 3^(l+1))
// where the exponent sum for j = l-1 is empty (that summand is 3^(l-1)).
class VTuple {
public:
    explicit VTuple(std::vector<std::uint64_t> entries);
    static VTuple parse(const std::string& csv);

    const std::vector<std::uint64_t>& entries() const { return entries_; }
    std::size_t level() const { return entries_.size(); }
    std::uint64_t sum() const;  // v_1 + ... + v_l, overflow-checked
    std::string to_string() const;

    bool operator==(const VTuple&) const = default;

private:
    std::vector<std::uint64_t> entries_;
};

// True iff v solves the level-l equation. Evaluated with modular
// exponentiation mod 3^(l+1); is_primary_solution_exact evaluates the same
// conditions over exact integers and is kept as a cross-check route.
bool is_primary_solution(const VTuple& v);
bool is_primary_solution_exact(const VTuple& v);

struct BuildResult {
    BigInt n;            // 3^-l (exact_power - rhs_sum)
    BigInt exact_power;  // 2^(v_1+...+v_l)
    BigInt rhs_sum;      // sum_j 3^j 2^(v_{j+2}+...+v_l)
};

// The number-building map. Rejects tuples failing is_primary_solution
// (the quotient would not be an exact integer coprime to 3).
BuildResult build_number(const VTuple& v);

// Trajectory valuations of n read in reverse: v_m = ord2(3 S^(l-m)(n) + 1).
// Requires n > 1, n not divisible by 3, and level resolved within cap.
VTuple decompose(const OddInt& n, std::uint64_t cap = kDefaultCap);

// True iff build_number(v) is a Collatz number of level exactly l whose
// trajectory valuations equal v in reverse order, checked by direct
// iteration. Requires v_1 > 2. Throws unresolved_error if the trajectory
// does not settle within cap.
bool verify_inverse(const VTuple& v, std::uint64_t cap = kDefaultCap);

}  // namespace collatz
