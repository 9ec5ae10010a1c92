#include "collatz/collatz.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "bounds.hpp"
#include "congruence.hpp"
#include "lift.hpp"
#include "syracuse.hpp"

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

collatz_status set_error(collatz_status code, const char* what) {
    g_last_error = what ? what : "unknown error";
    return code;
}

// Runs a callable, translating exceptions into status codes.
template <typename F>
collatz_status guarded(F&& f) {
    try {
        return f();
    } catch (const collatz::unresolved_error& e) {
        return set_error(COLLATZ_ERR_UNRESOLVED, e.what());
    } catch (const std::invalid_argument& e) {
        return set_error(COLLATZ_ERR_INVALID, e.what());
    } catch (const std::exception& e) {
        return set_error(COLLATZ_ERR_INTERNAL, e.what());
    } catch (...) {
        return set_error(COLLATZ_ERR_INTERNAL, "unknown exception");
    }
}

collatz_status require(bool ok, const char* msg) {
    return ok ? COLLATZ_OK : set_error(COLLATZ_ERR_INVALID, msg);
}

}  // namespace

struct collatz_trajectory {
    collatz::Trajectory t;
};

struct collatz_census {
    collatz::CensusTable table;
};

struct collatz_batch {
    collatz::CertifiedBatch batch;
};

struct collatz_report {
    collatz::BoundReport report;
};

extern "C" {

const char* collatz_last_error(void) { return g_last_error.c_str(); }

void collatz_free_string(char* s) { std::free(s); }

const char* collatz_version(void) { return "1.0.0"; }

/* ---- Syracuse dynamics ------------------------------------------------ */

collatz_status collatz_ord2(const char* m_dec, uint64_t* out) {
    if (auto s = require(m_dec && out, "null argument")) return s;
    return guarded([&] {
        *out = collatz::ord2(collatz::parse_bigint(m_dec));
        return COLLATZ_OK;
    });
}

collatz_status collatz_syracuse_step(const char* n_dec, char** out_dec) {
    if (auto s = require(n_dec && out_dec, "null argument")) return s;
    return guarded([&] {
        auto next = collatz::syracuse_step(collatz::OddInt::from_decimal(n_dec));
        *out_dec = dup_string(collatz::to_string(next.value()));
        return COLLATZ_OK;
    });
}

collatz_status collatz_trajectory_new(const char* n_dec, uint64_t cap,
                                      collatz_trajectory** out) {
    if (auto s = require(n_dec && out, "null argument")) return s;
    return guarded([&] {
        auto handle = std::make_unique<collatz_trajectory>();
        handle->t = collatz::trajectory(collatz::OddInt::from_decimal(n_dec), cap);
        *out = handle.release();
        return COLLATZ_OK;
    });
}

size_t collatz_trajectory_len(const collatz_trajectory* t) {
    return t->t.steps.size();
}

int collatz_trajectory_terminated(const collatz_trajectory* t) {
    return t->t.terminated ? 1 : 0;
}

collatz_status collatz_trajectory_value(const collatz_trajectory* t, size_t i,
                                        char** out_dec) {
    if (auto s = require(t && out_dec, "null argument")) return s;
    if (auto s = require(i < t->t.steps.size(), "step index out of range"))
        return s;
    return guarded([&] {
        *out_dec = dup_string(collatz::to_string(t->t.steps[i].value));
        return COLLATZ_OK;
    });
}

collatz_status collatz_trajectory_valuation(const collatz_trajectory* t,
                                            size_t i, uint64_t* out) {
    if (auto s = require(t && out, "null argument")) return s;
    if (auto s = require(i < t->t.steps.size(), "step index out of range"))
        return s;
    *out = t->t.steps[i].valuation;
    return COLLATZ_OK;
}

void collatz_trajectory_free(collatz_trajectory* t) { delete t; }

collatz_status collatz_level(const char* n_dec, uint64_t cap,
                             uint64_t* out_level, uint64_t* out_steps_tried) {
    if (auto s = require(n_dec && out_level, "null argument")) return s;
    return guarded([&]() -> collatz_status {
        auto r = collatz::level(collatz::OddInt::from_decimal(n_dec), cap);
        if (out_steps_tried) *out_steps_tried = r.steps_tried;
        if (!r.resolved())
            return set_error(COLLATZ_ERR_UNRESOLVED,
                             "level not resolved within cap");
        *out_level = *r.level;
        return COLLATZ_OK;
    });
}

/* ---- Census sieve ------------------------------------------------------ */

collatz_status collatz_census_run(uint64_t x, uint64_t cap, uint32_t shards,
                                  collatz_census** out) {
    if (auto s = require(out != nullptr, "null argument")) return s;
    return guarded([&] {
        auto handle = std::make_unique<collatz_census>();
        handle->table = collatz::census(x, cap, shards);
        *out = handle.release();
        return COLLATZ_OK;
    });
}

uint64_t collatz_census_x(const collatz_census* c) { return c->table.x; }

uint64_t collatz_census_total(const collatz_census* c) {
    return c->table.total;
}

uint64_t collatz_census_unresolved(const collatz_census* c) {
    return c->table.unresolved;
}

uint64_t collatz_census_max_level(const collatz_census* c) {
    return c->table.max_level();
}

uint64_t collatz_census_level_count(const collatz_census* c, uint64_t level) {
    return c->table.count_at(level);
}

collatz_status collatz_census_to_csv(const collatz_census* c, char** out) {
    if (auto s = require(c && out, "null argument")) return s;
    return guarded([&] {
        *out = dup_string(c->table.to_csv());
        return COLLATZ_OK;
    });
}

collatz_status collatz_census_to_json(const collatz_census* c, char** out) {
    if (auto s = require(c && out, "null argument")) return s;
    return guarded([&] {
        *out = dup_string(c->table.to_json());
        return COLLATZ_OK;
    });
}

collatz_status collatz_census_from_json(const char* json,
                                        collatz_census** out) {
    if (auto s = require(json && out, "null argument")) return s;
    return guarded([&] {
        auto handle = std::make_unique<collatz_census>();
        handle->table = collatz::CensusTable::from_json(json);
        *out = handle.release();
        return COLLATZ_OK;
    });
}

void collatz_census_free(collatz_census* c) { delete c; }

/* ---- Congruence equation ----------------------------------------------- */

collatz_status collatz_is_primary_solution(const char* v_csv, int* out) {
    if (auto s = require(v_csv && out, "null argument")) return s;
    return guarded([&] {
        *out = collatz::is_primary_solution(collatz::VTuple::parse(v_csv)) ? 1 : 0;
        return COLLATZ_OK;
    });
}

collatz_status collatz_build_number(const char* v_csv, char** out_n_dec) {
    if (auto s = require(v_csv && out_n_dec, "null argument")) return s;
    return guarded([&] {
        auto built = collatz::build_number(collatz::VTuple::parse(v_csv));
        *out_n_dec = dup_string(collatz::to_string(built.n));
        return COLLATZ_OK;
    });
}

collatz_status collatz_decompose(const char* n_dec, uint64_t cap,
                                 char** out_v_csv) {
    if (auto s = require(n_dec && out_v_csv, "null argument")) return s;
    return guarded([&] {
        auto v = collatz::decompose(collatz::OddInt::from_decimal(n_dec), cap);
        *out_v_csv = dup_string(v.to_string());
        return COLLATZ_OK;
    });
}

collatz_status collatz_verify_inverse(const char* v_csv, uint64_t cap,
                                      int* out) {
    if (auto s = require(v_csv && out, "null argument")) return s;
    return guarded([&] {
        *out = collatz::verify_inverse(collatz::VTuple::parse(v_csv), cap) ? 1 : 0;
        return COLLATZ_OK;
    });
}

/* ---- Window lifting ----------------------------------------------------- */

collatz_status collatz_window(uint64_t u, uint64_t* out_lo, uint64_t* out_hi) {
    if (auto s = require(out_lo && out_hi, "null argument")) return s;
    return guarded([&] {
        auto w = collatz::window_of(u);
        *out_lo = w.lo;
        *out_hi = w.hi;
        return COLLATZ_OK;
    });
}

collatz_status collatz_extend_candidates(const char* prefix_csv,
                                         uint64_t u_next, char** out_csv) {
    if (auto s = require(out_csv != nullptr, "null argument")) return s;
    return guarded([&] {
        std::vector<std::uint64_t> prefix;
        if (prefix_csv && *prefix_csv)
            prefix = collatz::VTuple::parse(prefix_csv).entries();
        auto cands = collatz::extend_candidates(prefix, u_next);
        std::string joined;
        for (std::size_t i = 0; i < cands.size(); ++i) {
            if (i) joined += ',';
            joined += std::to_string(cands[i]);
        }
        *out_csv = dup_string(joined);
        return COLLATZ_OK;
    });
}

collatz_status collatz_lift(const char* u_csv, int use_digit_rule, int strict,
                            char** out_v_csv) {
    if (auto s = require(u_csv && out_v_csv, "null argument")) return s;
    return guarded([&] {
        auto v = collatz::lift(collatz::UTuple::parse(u_csv),
                               use_digit_rule
                                   ? collatz::LiftSelector::digit_rule
                                   : collatz::LiftSelector::smallest_candidate,
                               nullptr, strict != 0);
        *out_v_csv = dup_string(v.to_string());
        return COLLATZ_OK;
    });
}

collatz_status collatz_generate(const char* x_dec, uint32_t level,
                                double budget_sum, collatz_batch** out) {
    if (auto s = require(x_dec && out, "null argument")) return s;
    return guarded([&] {
        auto handle = std::make_unique<collatz_batch>();
        handle->batch = collatz::certified_generate(
            collatz::parse_bigint(x_dec), level, budget_sum);
        *out = handle.release();
        return COLLATZ_OK;
    });
}

uint64_t collatz_batch_admitted(const collatz_batch* b) {
    return b->batch.admitted;
}

uint64_t collatz_batch_oversize(const collatz_batch* b) {
    return b->batch.oversize;
}

size_t collatz_batch_len(const collatz_batch* b) {
    return b->batch.records.size();
}

collatz_status collatz_batch_to_csv(const collatz_batch* b, char** out) {
    if (auto s = require(b && out, "null argument")) return s;
    return guarded([&] {
        *out = dup_string(b->batch.to_csv());
        return COLLATZ_OK;
    });
}

void collatz_batch_free(collatz_batch* b) { delete b; }

collatz_status collatz_budget_eval(const char* x_dec, uint32_t level,
                                   const char* rule, double* out) {
    if (auto s = require(x_dec && rule && out, "null argument")) return s;
    return guarded([&] {
        collatz::BigInt x = collatz::parse_bigint(x_dec);
        if (x < 2)
            throw std::invalid_argument("budget requires x >= 2");
        // log4 of an arbitrary-precision x.
        signed long exp2 = 0;
        double mant = mpz_get_d_2exp(&exp2, x.get_mpz_t());
        double log4_x = (std::log2(mant) + static_cast<double>(exp2)) / 2.0;
        *out = collatz::BudgetRule::parse(rule).evaluate(log4_x, level);
        return COLLATZ_OK;
    });
}

/* ---- Bound calculus ----------------------------------------------------- */

collatz_status collatz_binary_entropy(double p, double* out) {
    if (auto s = require(out != nullptr, "null argument")) return s;
    return guarded([&] {
        *out = collatz::binary_entropy(p);
        return COLLATZ_OK;
    });
}

collatz_status collatz_log2_binomial(uint64_t n, uint64_t l, double* out) {
    if (auto s = require(out != nullptr, "null argument")) return s;
    return guarded([&] {
        *out = collatz::log2_binomial(n, l);
        return COLLATZ_OK;
    });
}

collatz_status collatz_omega(double y, uint32_t l, char** out_dec) {
    if (auto s = require(out_dec != nullptr, "null argument")) return s;
    return guarded([&] {
        *out_dec = dup_string(collatz::to_string(collatz::omega(y, l)));
        return COLLATZ_OK;
    });
}

collatz_status collatz_partition_bound(uint64_t x, uint32_t l,
                                       const char* rule, char** out_dec) {
    if (auto s = require(rule && out_dec, "null argument")) return s;
    return guarded([&] {
        auto b = collatz::partition_bound(x, l, collatz::BudgetRule::parse(rule));
        *out_dec = dup_string(collatz::to_string(b));
        return COLLATZ_OK;
    });
}

double collatz_main_exponent(void) { return collatz::main_exponent(); }

collatz_status collatz_theorem_parameters(uint64_t x, uint64_t* out_l,
                                          uint64_t* out_n) {
    if (auto s = require(out_l && out_n, "null argument")) return s;
    return guarded([&] {
        auto p = collatz::theorem_parameters(x);
        *out_l = p.l;
        *out_n = p.n;
        return COLLATZ_OK;
    });
}

collatz_status collatz_report_run(const collatz_census* c,
                                  collatz_report** out) {
    if (auto s = require(c && out, "null argument")) return s;
    return guarded([&] {
        auto handle = std::make_unique<collatz_report>();
        handle->report = collatz::bound_report(c->table);
        *out = handle.release();
        return COLLATZ_OK;
    });
}

int collatz_report_safe_ok(const collatz_report* r) {
    return r->report.safe_ok() ? 1 : 0;
}

collatz_status collatz_report_to_json(const collatz_report* r, char** out) {
    if (auto s = require(r && out, "null argument")) return s;
    return guarded([&] {
        *out = dup_string(r->report.to_json());
        return COLLATZ_OK;
    });
}

collatz_status collatz_report_to_text(const collatz_report* r, char** out) {
    if (auto s = require(r && out, "null argument")) return s;
    return guarded([&] {
        *out = dup_string(r->report.to_text());
        return COLLATZ_OK;
    });
}

collatz_status collatz_report_to_csv(const collatz_report* r, char** out) {
    if (auto s = require(r && out, "null argument")) return s;
    return guarded([&] {
        *out = dup_string(r->report.to_csv());
        return COLLATZ_OK;
    });
}

void collatz_report_free(collatz_report* r) { delete r; }

}  // extern "C"
