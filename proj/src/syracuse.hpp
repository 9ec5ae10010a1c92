#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bigint.hpp"

namespace collatz {

inline constexpr std::uint64_t kDefaultCap = 100000;

// Positive odd arbitrary-precision integer, the domain of the Syracuse map.
class OddInt {
public:
    explicit OddInt(BigInt v) : value_(std::move(v)) {
        if (sgn(value_) <= 0)
            throw std::invalid_argument("OddInt requires a positive value");
        if (!is_odd(value_))
            throw std::invalid_argument("OddInt requires an odd value");
    }
    explicit OddInt(std::uint64_t v) : OddInt(BigInt(static_cast<unsigned long>(v))) {}
    static OddInt from_decimal(const std::string& dec) {
        return OddInt(parse_bigint(dec));
    }
    const BigInt& value() const { return value_; }

private:
    BigInt value_;
};

// 2-adic valuation: the exponent of the largest power of 2 dividing m.
std::uint64_t ord2(const BigInt& m);

// S(n) = (3n+1) / 2^ord2(3n+1); the result is odd.
OddInt syracuse_step(const OddInt& n);

struct TrajectoryStep {
    BigInt value;  // the odd iterate, S^k(origin)
    std::uint64_t valuation;  // ord2(3 * S^(k-1)(origin) + 1)
};

struct Trajectory {
    BigInt origin;
    std::vector<TrajectoryStep> steps;
    bool terminated = false;  // reached 1 within the cap
};

// Iterates syracuse_step from n until 1 appears or cap steps elapse.
// Hitting the cap is reported via terminated = false, not as an error.
Trajectory trajectory(const OddInt& n, std::uint64_t cap);

struct LevelResult {
    std::optional<std::uint64_t> level;  // least l with S^l(n) = 1
    std::uint64_t steps_tried = 0;
    bool resolved() const { return level.has_value(); }
};

// Shared table of known levels for small odd values. Entries are written
// at most once per slot with the value's true level, so concurrent relaxed
// reads and writes cannot disagree; counts never depend on hit patterns.
class LevelCache {
public:
    // Caches levels for odd n <= max_value. max_value = 0 disables caching.
    explicit LevelCache(std::uint64_t max_value);

    std::uint64_t max_value() const { return max_value_; }
    std::optional<std::uint64_t> get(std::uint64_t n) const;
    void put(std::uint64_t n, std::uint64_t level);

private:
    static constexpr std::uint16_t kUnknown = 0xFFFF;
    std::uint64_t max_value_;
    std::vector<std::atomic<std::uint16_t>> slots_;
};

// Least number of Syracuse iterations taking n to 1; level(1) = 0.
// A trajectory reaching a cached odd value short-circuits; the result is
// reported as resolved only when the full level fits within cap, so cached
// and uncached runs agree exactly.
LevelResult level(const OddInt& n, std::uint64_t cap = kDefaultCap,
                  LevelCache* cache = nullptr);

// Exact counts of Collatz numbers by level among odd n <= x.
struct CensusTable {
    std::uint64_t x = 0;
    std::map<std::uint64_t, std::uint64_t> per_level;
    std::uint64_t total = 0;
    std::uint64_t unresolved = 0;

    std::uint64_t max_level() const;
    std::uint64_t count_at(std::uint64_t level) const;

    std::string to_csv() const;
    std::string to_json() const;
    static CensusTable from_json(const std::string& text);

    bool operator==(const CensusTable&) const = default;
};

inline constexpr std::uint64_t kDefaultCacheLimit = std::uint64_t{1} << 26;

// Levels of every odd n <= x, sharded into contiguous ranges evaluated
// concurrently. Counts are identical for any shard count and any cache
// limit (cache_limit = 0 disables memoization).
CensusTable census(std::uint64_t x, std::uint64_t cap = kDefaultCap,
                   std::uint32_t shards = 1,
                   std::uint64_t cache_limit = kDefaultCacheLimit);

}  // namespace collatz
