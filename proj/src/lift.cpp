#include "lift.hpp"

#include <cassert>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>

namespace collatz {

UTuple::UTuple(std::vector<std::uint64_t> entries)
    : entries_(std::move(entries)) {
    if (entries_.empty())
        throw std::invalid_argument("UTuple: level must be >= 1");
    for (auto u : entries_)
        if (u < 2)
            throw std::invalid_argument("UTuple: entries must be >= 2");
}

UTuple UTuple::parse(const std::string& csv) {
    std::vector<std::uint64_t> entries;
    std::string item;
    std::istringstream in(csv);
    while (std::getline(in, item, ',')) {
        if (item.empty() ||
            item.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("UTuple: bad entry '" + item + "'");
        try {
            entries.push_back(std::stoull(item));
        } catch (const std::exception&) {
            throw std::invalid_argument("UTuple: entry out of range '" + item + "'");
        }
    }
    return UTuple(std::move(entries));
}

std::uint64_t UTuple::sum() const {
    std::uint64_t s = 0;
    for (auto u : entries_) {
        if (s + u < s) throw std::invalid_argument("UTuple: sum overflows");
        s += u;
    }
    return s;
}

std::string UTuple::to_string() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (i) out << ',';
        out << entries_[i];
    }
    return out.str();
}

Window window_of(std::uint64_t u) {
    if (u < 2) throw std::invalid_argument("window_of requires u >= 2");
    return {u, 6 * u - 7, 6 * u - 2};
}

namespace {

// 2^v mod 9 has period 6.
constexpr unsigned kPow2Mod9[6] = {1, 2, 4, 8, 7, 5};

inline unsigned pow2_mod9(std::uint64_t v) { return kPow2Mod9[v % 6]; }

// Appending v to a prefix with residue a keeps the tuple a solution iff
// 2^v a == 1 (mod 3) and 2^v a != 1 (mod 9); only a mod 9 matters.
inline bool valid_extension(unsigned a_mod9, std::uint64_t v) {
    unsigned t = pow2_mod9(v) * a_mod9 % 9;
    return t % 3 == 1 && t != 1;
}

std::vector<std::uint64_t> candidates_in_window(unsigned a_mod9,
                                                std::uint64_t u) {
    Window w = window_of(u);
    std::vector<std::uint64_t> out;
    for (std::uint64_t v = w.lo; v <= w.hi; ++v)
        if (valid_extension(a_mod9, v)) out.push_back(v);
    return out;
}

// Inductive residue a = 3^(1-k) (lhs - rhs) of a level-(k-1) prefix,
// carried modulo a shrinking power of 3.
struct LiftState {
    BigInt a;        // residue of a
    BigInt modulus;  // 3^(l+1-k) after k accepted entries

    explicit LiftState(std::size_t l) : a(1), modulus(pow3(l + 1)) {}

    unsigned a_mod9() const {
        assert(modulus >= 9);
        return static_cast<unsigned>(mpz_fdiv_ui(a.get_mpz_t(), 9));
    }

    void accept(std::uint64_t v) {
        // a' = (2^v a - 1) / 3, exactly divisible for a valid v.
        BigInt t = pow2_mod(v, modulus) * a % modulus;
        t = (t + modulus - 1) % modulus;
        assert(mpz_divisible_ui_p(t.get_mpz_t(), 3));
        mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), 3);
        mpz_divexact_ui(modulus.get_mpz_t(), modulus.get_mpz_t(), 3);
        a = t % modulus;
    }
};

std::uint64_t select_digit_rule(unsigned a_mod9, std::uint64_t u) {
    unsigned r = (a_mod9 % 3 == 1) ? 0 : 1;
    for (unsigned w = 2; w > 0; --w) {
        std::uint64_t v = 6 * u - 2 * w - r;
        if (valid_extension(a_mod9, v)) return v;
    }
    // w = 0 would leave the window; at most one of w = 1, 2 can be invalid.
    throw std::logic_error("digit rule found no ternary digit");
}

}  // namespace

std::vector<std::uint64_t> extend_candidates(
    const std::vector<std::uint64_t>& prefix, std::uint64_t u_next) {
    if (prefix.empty()) return candidates_in_window(1, u_next);

    VTuple p(prefix);
    if (!is_primary_solution(p))
        throw std::invalid_argument(
            "extend_candidates: prefix does not solve the level-" +
            std::to_string(p.level()) + " equation");
    // a mod 9 from the equation delta mod 3^(k+2).
    const std::size_t k = p.level();
    BigInt modulus = pow3(k + 2);
    BigInt lhs = pow2_mod(p.sum(), modulus);
    BigInt rhs = 0, suffix_pow = 1, three_pow = pow3(k - 1);
    const auto& e = p.entries();
    for (std::size_t j = k; j-- > 0;) {
        rhs += three_pow * suffix_pow;
        rhs %= modulus;
        if (j > 0) {
            suffix_pow = suffix_pow * pow2_mod(e[j], modulus) % modulus;
            mpz_divexact_ui(three_pow.get_mpz_t(), three_pow.get_mpz_t(), 3);
        }
    }
    BigInt d = (lhs - rhs) % modulus;
    if (sgn(d) < 0) d += modulus;
    BigInt m = pow3(k);
    assert(mpz_divisible_p(d.get_mpz_t(), m.get_mpz_t()));
    mpz_divexact(d.get_mpz_t(), d.get_mpz_t(), m.get_mpz_t());
    return candidates_in_window(
        static_cast<unsigned>(mpz_fdiv_ui(d.get_mpz_t(), 9)), u_next);
}

VTuple lift(const UTuple& u, LiftSelector selector, LiftStats* stats,
            bool strict) {
    if (strict)
        for (auto e : u.entries())
            if (e % 3 == 0)
                throw std::invalid_argument(
                    "lift (strict): entry " + std::to_string(e) +
                    " is divisible by 3");
    const std::size_t l = u.level();
    LiftState state(l);
    std::vector<std::uint64_t> v;
    v.reserve(l);
    for (std::size_t j = 0; j < l; ++j) {
        const unsigned a9 = state.a_mod9();
        auto cands = candidates_in_window(a9, u.entries()[j]);
        if (cands.empty())
            throw std::logic_error(
                "lift: no candidate in the window of u_" +
                std::to_string(j + 1) + " = " +
                std::to_string(u.entries()[j]) +
                " (falsifies the window construction)");
        std::uint64_t chosen = selector == LiftSelector::smallest_candidate
                                   ? cands.front()
                                   : select_digit_rule(a9, u.entries()[j]);
        if (stats) {
            ++stats->steps;
            ++stats->multiplicity[cands.size()];
            if (select_digit_rule(a9, u.entries()[j]) == cands.front())
                ++stats->digit_rule_agreements;
        }
        v.push_back(chosen);
        state.accept(chosen);
    }
    return VTuple(std::move(v));
}

namespace {

void enumerate_utuples(std::uint64_t budget, std::uint32_t level,
                       std::vector<std::uint64_t>& prefix,
                       const std::function<void(const std::vector<std::uint64_t>&)>& emit) {
    if (prefix.size() == level) {
        emit(prefix);
        return;
    }
    const std::uint64_t remaining = level - prefix.size();
    // Entry u plus the minimal tail 2*(remaining-1) must fit the budget.
    for (std::uint64_t u = 2; u + 2 * (remaining - 1) <= budget; ++u) {
        prefix.push_back(u);
        enumerate_utuples(budget - u, level, prefix, emit);
        prefix.pop_back();
    }
}

}  // namespace

CertifiedBatch certified_generate(const BigInt& x, std::uint32_t level,
                                  double budget_sum, std::uint64_t cap) {
    if (level < 1) throw std::invalid_argument("certified_generate: level must be >= 1");
    if (!(budget_sum > 0) || !std::isfinite(budget_sum))
        throw std::invalid_argument("certified_generate: budget must be a positive number");

    CertifiedBatch batch;
    batch.x = x;
    batch.level = level;

    const double fl = std::floor(budget_sum);
    if (fl > 9.0e18)
        throw std::invalid_argument("certified_generate: budget too large to enumerate");
    const std::uint64_t budget =
        fl < 0 ? 0 : static_cast<std::uint64_t>(fl);

    std::vector<std::uint64_t> prefix;
    enumerate_utuples(budget, level, prefix, [&](const std::vector<std::uint64_t>& ue) {
        UTuple u(ue);
        VTuple v = lift(u, LiftSelector::smallest_candidate, &batch.stats);
        for (std::size_t j = 0; j < v.level(); ++j)
            if (!window_of(ue[j]).contains(v.entries()[j]))
                throw std::logic_error("certified_generate: lifted entry left its window at u=" +
                                       u.to_string());
        BigInt n = build_number(v).n;
        LevelResult lr = collatz::level(OddInt(n), cap);
        if (!lr.resolved())
            throw unresolved_error(cap);
        if (*lr.level != level)
            throw std::logic_error(
                "certified_generate: level mismatch for u=" + u.to_string() +
                " v=" + v.to_string() + " n=" + to_string(n) + ": got level " +
                std::to_string(*lr.level) + ", expected " + std::to_string(level));
        bool admitted = n <= x;
        if (admitted)
            ++batch.admitted;
        else
            ++batch.oversize;
        batch.records.push_back({std::move(u), std::move(v), std::move(n), admitted});
    });

    // Lexicographic enumeration plus window-disjoint lifting makes the
    // admitted values distinct; fail loudly rather than certify a lie.
    std::set<BigInt> seen;
    for (const auto& rec : batch.records)
        if (rec.admitted && !seen.insert(rec.n).second)
            throw std::logic_error("certified_generate: duplicate admitted value " +
                                   to_string(rec.n));
    return batch;
}

std::string CertifiedBatch::to_csv() const {
    std::ostringstream out;
    out << "u_tuple,v_tuple,n,admitted\n";
    for (const auto& rec : records)
        out << '"' << rec.u.to_string() << "\",\"" << rec.v.to_string()
            << "\"," << to_string(rec.n) << ',' << (rec.admitted ? 1 : 0)
            << '\n';
    return out.str();
}

}  // namespace collatz
