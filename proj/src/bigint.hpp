#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace collatz {

using BigInt = mpz_class;

// Thrown when a trajectory fails to reach 1 within the iteration cap.
struct unresolved_error : std::runtime_error {
    explicit unresolved_error(std::uint64_t steps)
        : std::runtime_error("trajectory unresolved after " +
                             std::to_string(steps) + " steps"),
          steps_tried(steps) {}
    std::uint64_t steps_tried;
};

inline BigInt parse_bigint(const std::string& dec) {
    if (dec.empty())
        throw std::invalid_argument("empty integer literal");
    BigInt r;
    if (r.set_str(dec, 10) != 0)
        throw std::invalid_argument("not a decimal integer: '" + dec + "'");
    return r;
}

inline std::string to_string(const BigInt& v) { return v.get_str(); }

inline std::uint64_t ord2_big(const BigInt& m) {
    if (sgn(m) <= 0)
        throw std::invalid_argument("ord2 requires a positive integer");
    return mpz_scan1(m.get_mpz_t(), 0);
}

inline bool is_odd(const BigInt& v) { return mpz_odd_p(v.get_mpz_t()) != 0; }

inline BigInt pow2(std::uint64_t e) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
    return r;
}

inline BigInt pow3(std::uint64_t e) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), 3, e);
    return r;
}

// 2^e mod m
inline BigInt pow2_mod(std::uint64_t e, const BigInt& m) {
    BigInt base = 2, r;
    mpz_powm_ui(r.get_mpz_t(), base.get_mpz_t(), e, m.get_mpz_t());
    return r;
}

}  // namespace collatz
