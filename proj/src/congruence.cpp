#include "congruence.hpp"

#include <cassert>
#include <sstream>

namespace collatz {

namespace {

// Exact powers of 2 with this many bits or more are refused; beyond it the
// modular route is the only practical one anyway.
constexpr std::uint64_t kMaxExactExponent = std::uint64_t{1} << 24;

std::vector<std::uint64_t> parse_tuple_entries(const std::string& csv,
                                               const char* what) {
    std::vector<std::uint64_t> out;
    std::string item;
    std::istringstream in(csv);
    while (std::getline(in, item, ',')) {
        if (item.empty() ||
            item.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument(std::string(what) +
                                        ": bad entry '" + item + "'");
        try {
            out.push_back(std::stoull(item));
        } catch (const std::exception&) {
            throw std::invalid_argument(std::string(what) +
                                        ": entry out of range '" + item + "'");
        }
    }
    if (out.empty())
        throw std::invalid_argument(std::string(what) + ": empty tuple");
    return out;
}

std::string render_tuple(const std::vector<std::uint64_t>& entries) {
    std::ostringstream out;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (i) out << ',';
        out << entries[i];
    }
    return out.str();
}

}  // namespace

VTuple::VTuple(std::vector<std::uint64_t> entries)
    : entries_(std::move(entries)) {
    if (entries_.empty())
        throw std::invalid_argument("VTuple: level must be >= 1");
    for (auto v : entries_)
        if (v < 1)
            throw std::invalid_argument("VTuple: entries must be >= 1");
}

VTuple VTuple::parse(const std::string& csv) {
    return VTuple(parse_tuple_entries(csv, "VTuple"));
}

std::uint64_t VTuple::sum() const {
    std::uint64_t s = 0;
    for (auto v : entries_) {
        if (s + v < s) throw std::invalid_argument("VTuple: exponent sum overflows");
        s += v;
    }
    return s;
}

std::string VTuple::to_string() const { return render_tuple(entries_); }

namespace {

// lhs - rhs of the level-l equation reduced mod `modulus`, where modulus is
// a power of 3 at least 3^(l+1).
BigInt equation_delta_mod(const VTuple& v, const BigInt& modulus) {
    const auto& e = v.entries();
    const std::size_t l = e.size();
    BigInt lhs = pow2_mod(v.sum(), modulus);

    // Walk j = l-1 down to 0, extending the suffix exponent one entry at a
    // time: e_j = v_{j+2} + ... + v_l (empty for j = l-1).
    BigInt rhs = 0;
    BigInt suffix_pow = 1;       // 2^(e_j) mod modulus
    BigInt three_pow = pow3(l - 1);  // 3^j, exact (below modulus)
    for (std::size_t j = l; j-- > 0;) {
        rhs += three_pow * suffix_pow;
        rhs %= modulus;
        if (j > 0) {
            suffix_pow = suffix_pow * pow2_mod(e[j], modulus) % modulus;
            mpz_divexact_ui(three_pow.get_mpz_t(), three_pow.get_mpz_t(), 3);
        }
    }
    BigInt d = (lhs - rhs) % modulus;
    if (sgn(d) < 0) d += modulus;
    return d;
}

}  // namespace

bool is_primary_solution(const VTuple& v) {
    const std::size_t l = v.level();
    BigInt m_next = pow3(l + 1);
    BigInt d = equation_delta_mod(v, m_next);
    if (d == 0) return false;  // congruent even mod 3^(l+1)
    BigInt m = m_next / 3;
    return mpz_divisible_p(d.get_mpz_t(), m.get_mpz_t()) != 0;
}

namespace {

BigInt exact_rhs_sum(const VTuple& v) {
    const auto& e = v.entries();
    const std::size_t l = e.size();
    BigInt rhs = 0;
    BigInt suffix_pow = 1;
    BigInt three_pow = pow3(l - 1);
    for (std::size_t j = l; j-- > 0;) {
        rhs += three_pow * suffix_pow;
        if (j > 0) {
            suffix_pow <<= e[j];
            mpz_divexact_ui(three_pow.get_mpz_t(), three_pow.get_mpz_t(), 3);
        }
    }
    return rhs;
}

}  // namespace

bool is_primary_solution_exact(const VTuple& v) {
    std::uint64_t s = v.sum();
    if (s > kMaxExactExponent)
        throw std::invalid_argument("exponent sum too large for exact arithmetic");
    BigInt d = pow2(s) - exact_rhs_sum(v);
    BigInt m = pow3(v.level());
    if (mpz_divisible_p(d.get_mpz_t(), m.get_mpz_t()) == 0) return false;
    m *= 3;
    return mpz_divisible_p(d.get_mpz_t(), m.get_mpz_t()) == 0;
}

BuildResult build_number(const VTuple& v) {
    if (!is_primary_solution(v))
        throw std::invalid_argument(
            "build_number: tuple does not solve the level-" +
            std::to_string(v.level()) + " congruence equation");
    std::uint64_t s = v.sum();
    if (s > kMaxExactExponent)
        throw std::invalid_argument("exponent sum too large for exact arithmetic");

    BuildResult out;
    out.exact_power = pow2(s);
    out.rhs_sum = exact_rhs_sum(v);
    BigInt d = out.exact_power - out.rhs_sum;
    BigInt m = pow3(v.level());
    assert(mpz_divisible_p(d.get_mpz_t(), m.get_mpz_t()));
    mpz_divexact(out.n.get_mpz_t(), d.get_mpz_t(), m.get_mpz_t());
    if (sgn(out.n) <= 0 || !is_odd(out.n) || out.n % 3 == 0)
        throw std::invalid_argument(
            "build_number: tuple does not build a positive odd number prime to 3");
    return out;
}

VTuple decompose(const OddInt& n, std::uint64_t cap) {
    if (n.value() == 1)
        throw std::invalid_argument("decompose requires n > 1");
    if (n.value() % 3 == 0)
        throw std::invalid_argument("decompose requires n prime to 3");
    Trajectory traj = trajectory(n, cap);
    if (!traj.terminated) throw unresolved_error(cap);

    std::vector<std::uint64_t> v(traj.steps.size());
    for (std::size_t i = 0; i < traj.steps.size(); ++i)
        v[v.size() - 1 - i] = traj.steps[i].valuation;
    VTuple out(std::move(v));
    assert(is_primary_solution(out));
    return out;
}

bool verify_inverse(const VTuple& v, std::uint64_t cap) {
    if (v.entries().front() <= 2)
        throw std::invalid_argument("verify_inverse requires v_1 > 2");
    BuildResult built = build_number(v);
    Trajectory traj = trajectory(OddInt(built.n), cap);
    if (!traj.terminated) throw unresolved_error(cap);
    if (traj.steps.size() != v.level()) return false;
    // v_{l-m} = ord2(3 S^m(n) + 1): step m records exactly that valuation.
    const std::size_t l = v.level();
    for (std::size_t m = 0; m < l; ++m)
        if (traj.steps[m].valuation != v.entries()[l - 1 - m]) return false;
    return true;
}

}  // namespace collatz
