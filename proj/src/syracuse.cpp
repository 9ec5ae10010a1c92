#include "syracuse.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace collatz {

std::uint64_t ord2(const BigInt& m) { return ord2_big(m); }

OddInt syracuse_step(const OddInt& n) {
    BigInt t = 3 * n.value() + 1;
    std::uint64_t v = ord2_big(t);
    return OddInt(t >> v);
}

Trajectory trajectory(const OddInt& n, std::uint64_t cap) {
    if (cap < 1) throw std::invalid_argument("cap must be >= 1");
    Trajectory out;
    out.origin = n.value();
    BigInt cur = n.value();
    for (std::uint64_t i = 0; i < cap && cur != 1; ++i) {
        BigInt t = 3 * cur + 1;
        std::uint64_t v = ord2_big(t);
        cur = t >> v;
        out.steps.push_back({cur, v});
        if (cur == 1) {
            out.terminated = true;
            return out;
        }
    }
    out.terminated = (cur == 1);  // covers n = 1 with zero steps
    return out;
}

LevelCache::LevelCache(std::uint64_t max_value) : max_value_(max_value) {
    if (max_value_ > 0) {
        slots_ = std::vector<std::atomic<std::uint16_t>>((max_value_ + 1) / 2);
        for (auto& s : slots_) s.store(kUnknown, std::memory_order_relaxed);
    }
}

std::optional<std::uint64_t> LevelCache::get(std::uint64_t n) const {
    if (n == 0 || n % 2 == 0 || n > max_value_) return std::nullopt;
    std::uint16_t v = slots_[n >> 1].load(std::memory_order_relaxed);
    if (v == kUnknown) return std::nullopt;
    return v;
}

void LevelCache::put(std::uint64_t n, std::uint64_t level) {
    if (n == 0 || n % 2 == 0 || n > max_value_) return;
    if (level >= kUnknown) return;  // too deep for a slot; skip, never lie
    slots_[n >> 1].store(static_cast<std::uint16_t>(level),
                         std::memory_order_relaxed);
}

namespace {

// Largest n for which 3n+1 cannot overflow a u64.
constexpr std::uint64_t kFastMax = (UINT64_MAX - 1) / 3;

struct WordStep {
    std::uint64_t value;
    std::uint64_t valuation;
};

inline WordStep syr_word(std::uint64_t n) {
    std::uint64_t t = 3 * n + 1;
    unsigned v = std::countr_zero(t);
    return {t >> v, v};
}

// Level of odd n with memoization; nullopt when the level exceeds cap.
// Values escaping the machine-word range continue in big integers.
std::optional<std::uint64_t> resolve_level(std::uint64_t n, std::uint64_t cap,
                                           LevelCache* cache,
                                           std::vector<WordStep>& scratch) {
    scratch.clear();
    std::uint64_t cur = n;
    std::uint64_t steps = 0;
    std::optional<std::uint64_t> total;

    while (true) {
        if (cache) {
            if (auto hit = cache->get(cur)) {
                total = steps + *hit;
                break;
            }
        }
        if (cur == 1) {
            total = steps;
            break;
        }
        if (steps >= cap) return std::nullopt;
        if (cache && cur <= cache->max_value())
            scratch.push_back({cur, steps});
        if (cur > kFastMax) {
            // Rare spill: finish this trajectory in big integers.
            BigInt big = static_cast<unsigned long>(cur);
            while (big != 1) {
                if (steps >= cap) return std::nullopt;
                BigInt t = 3 * big + 1;
                big = t >> ord2_big(t);
                ++steps;
                if (big <= kFastMax) break;
            }
            if (big == 1) {
                total = steps;
                break;
            }
            cur = big.get_ui();
            continue;
        }
        auto s = syr_word(cur);
        cur = s.value;
        ++steps;
    }

    if (*total > cap) return std::nullopt;  // same verdict as an uncached run
    if (cache)
        for (const auto& [value, at] : scratch) cache->put(value, *total - at);
    return total;
}

}  // namespace

LevelResult level(const OddInt& n, std::uint64_t cap, LevelCache* cache) {
    if (cap < 1) throw std::invalid_argument("cap must be >= 1");
    if (mpz_fits_ulong_p(n.value().get_mpz_t())) {
        std::vector<WordStep> scratch;
        auto l = resolve_level(n.value().get_ui(), cap, cache, scratch);
        if (l) return {*l, *l};
        return {std::nullopt, cap};
    }
    // Input beyond the word range: iterate in big integers until the value
    // drops into it, then reuse the word resolver.
    BigInt cur = n.value();
    std::uint64_t steps = 0;
    while (cur > kFastMax) {
        if (steps >= cap) return {std::nullopt, cap};
        BigInt t = 3 * cur + 1;
        cur = t >> ord2_big(t);
        ++steps;
    }
    std::vector<WordStep> scratch;
    auto rest = resolve_level(cur.get_ui(), cap - steps, cache, scratch);
    if (rest && steps + *rest <= cap) return {steps + *rest, steps + *rest};
    return {std::nullopt, cap};
}

namespace {

struct ShardCounts {
    std::vector<std::uint64_t> per_level;  // indexed by level
    std::uint64_t unresolved = 0;

    void record(std::uint64_t l) {
        if (l >= per_level.size()) per_level.resize(l + 1, 0);
        ++per_level[l];
    }
};

}  // namespace

CensusTable census(std::uint64_t x, std::uint64_t cap, std::uint32_t shards,
                   std::uint64_t cache_limit) {
    if (x < 1) throw std::invalid_argument("census requires x >= 1");
    if (cap < 1) throw std::invalid_argument("cap must be >= 1");
    if (shards < 1) throw std::invalid_argument("shards must be >= 1");

    LevelCache cache(std::min(x, cache_limit));
    LevelCache* cache_ptr = cache.max_value() > 0 ? &cache : nullptr;
    if (cache_ptr) cache.put(1, 0);

    const std::uint64_t n_odds = (x + 1) / 2;  // odd n = 2i+1, i in [0, n_odds)
    const std::uint64_t n_shards = std::min<std::uint64_t>(shards, n_odds);
    std::vector<ShardCounts> results(n_shards);

    auto run_shard = [&](std::uint64_t k) {
        const std::uint64_t lo = k * n_odds / n_shards;
        const std::uint64_t hi = (k + 1) * n_odds / n_shards;
        ShardCounts& out = results[k];
        std::vector<WordStep> scratch;
        scratch.reserve(64);
        for (std::uint64_t i = lo; i < hi; ++i) {
            auto l = resolve_level(2 * i + 1, cap, cache_ptr, scratch);
            if (l)
                out.record(*l);
            else
                ++out.unresolved;
        }
    };

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const std::uint64_t n_workers = std::min<std::uint64_t>(hw, n_shards);
    if (n_workers <= 1) {
        for (std::uint64_t k = 0; k < n_shards; ++k) run_shard(k);
    } else {
        std::atomic<std::uint64_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (std::uint64_t w = 0; w < n_workers; ++w)
            pool.emplace_back([&] {
                for (std::uint64_t k = next.fetch_add(1); k < n_shards;
                     k = next.fetch_add(1))
                    run_shard(k);
            });
        for (auto& t : pool) t.join();
    }

    CensusTable table;
    table.x = x;
    for (const auto& shard : results) {
        for (std::uint64_t l = 0; l < shard.per_level.size(); ++l)
            if (shard.per_level[l]) {
                table.per_level[l] += shard.per_level[l];
                table.total += shard.per_level[l];
            }
        table.unresolved += shard.unresolved;
    }
    return table;
}

std::uint64_t CensusTable::max_level() const {
    return per_level.empty() ? 0 : per_level.rbegin()->first;
}

std::uint64_t CensusTable::count_at(std::uint64_t level) const {
    auto it = per_level.find(level);
    return it == per_level.end() ? 0 : it->second;
}

std::string CensusTable::to_csv() const {
    std::ostringstream out;
    out << "level,count\n";
    for (const auto& [l, c] : per_level) out << l << ',' << c << '\n';
    out << "total," << total << '\n';
    out << "unresolved," << unresolved << '\n';
    return out.str();
}

std::string CensusTable::to_json() const {
    nlohmann::json per = nlohmann::json::object();
    for (const auto& [l, c] : per_level) per[std::to_string(l)] = c;
    nlohmann::json j{{"x", x},
                     {"per_level", per},
                     {"total", total},
                     {"unresolved", unresolved}};
    return j.dump();
}

namespace {

CensusTable from_json_object(const nlohmann::json& j) {
    CensusTable t;
    t.x = j.at("x").get<std::uint64_t>();
    t.total = j.at("total").get<std::uint64_t>();
    t.unresolved = j.at("unresolved").get<std::uint64_t>();
    std::uint64_t sum = 0;
    for (const auto& [key, value] : j.at("per_level").items()) {
        std::uint64_t l = std::stoull(key);
        std::uint64_t c = value.get<std::uint64_t>();
        t.per_level[l] = c;
        sum += c;
    }
    if (sum != t.total)
        throw std::invalid_argument("census json: total does not match per_level sum");
    if (t.total + t.unresolved != (t.x + 1) / 2)
        throw std::invalid_argument("census json: total + unresolved does not cover odd n <= x");
    return t;
}

}  // namespace

CensusTable CensusTable::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("census json: ") + e.what());
    }
    try {
        return from_json_object(j);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("census json: ") + e.what());
    }
}

}  // namespace collatz
