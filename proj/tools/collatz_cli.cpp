// Command-line front end for libcollatz; talks to the library exclusively
// through the C interface in collatz/collatz.h.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "collatz/collatz.h"

namespace {

// Exit codes: 0 success, 1 usage/precondition, 2 unresolved trajectory,
// 3 bound-link failure.
int exit_code(collatz_status s) {
    switch (s) {
        case COLLATZ_OK: return 0;
        case COLLATZ_ERR_UNRESOLVED: return 2;
        case COLLATZ_ERR_BOUND: return 3;
        default: return 1;
    }
}

int fail(collatz_status s) {
    std::cerr << "error: " << collatz_last_error() << '\n';
    return exit_code(s);
}

struct FreeString {
    void operator()(char* p) const { collatz_free_string(p); }
};
using OwnedString = std::unique_ptr<char, FreeString>;

struct Options {
    std::uint64_t cap = 100000;
    std::uint32_t shards = std::max(1u, std::thread::hardware_concurrency());
    std::string format = "csv";
    std::string out;
};

int emit(const std::string& content, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << content;
        return 0;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot open output file '" << out_path << "'\n";
        return 1;
    }
    f << content;
    return f.good() ? 0 : 1;
}

std::size_t tuple_length(const std::string& csv) {
    return static_cast<std::size_t>(std::count(csv.begin(), csv.end(), ',')) + 1;
}

int cmd_level(const Options& opt, const std::string& n) {
    collatz_trajectory* traj = nullptr;
    if (auto s = collatz_trajectory_new(n.c_str(), opt.cap, &traj)) return fail(s);
    std::unique_ptr<collatz_trajectory, decltype(&collatz_trajectory_free)> guard(
        traj, collatz_trajectory_free);

    const std::size_t len = collatz_trajectory_len(traj);
    const bool terminated = collatz_trajectory_terminated(traj) != 0;
    std::ostringstream body;
    if (opt.format == "json") {
        body << "{\"n\":\"" << n << "\",\"steps\":[";
        for (std::size_t i = 0; i < len; ++i) {
            char* value = nullptr;
            std::uint64_t valuation = 0;
            collatz_trajectory_value(traj, i, &value);
            collatz_trajectory_valuation(traj, i, &valuation);
            OwnedString v(value);
            body << (i ? "," : "") << "{\"value\":\"" << v.get()
                 << "\",\"valuation\":" << valuation << '}';
        }
        body << "],\"terminated\":" << (terminated ? "true" : "false")
             << ",\"level\":";
        if (terminated)
            body << len;
        else
            body << "null";
        body << "}\n";
    } else {
        body << "step,value,valuation\n";
        for (std::size_t i = 0; i < len; ++i) {
            char* value = nullptr;
            std::uint64_t valuation = 0;
            collatz_trajectory_value(traj, i, &value);
            collatz_trajectory_valuation(traj, i, &valuation);
            OwnedString v(value);
            body << (i + 1) << ',' << v.get() << ',' << valuation << '\n';
        }
        if (terminated)
            body << "level," << len << '\n';
        else
            body << "unresolved," << opt.cap << '\n';
    }
    if (int rc = emit(body.str(), opt.out)) return rc;
    return terminated ? 0 : 2;
}

int cmd_census(const Options& opt, std::uint64_t x) {
    collatz_census* census = nullptr;
    if (auto s = collatz_census_run(x, opt.cap, opt.shards, &census))
        return fail(s);
    std::unique_ptr<collatz_census, decltype(&collatz_census_free)> guard(
        census, collatz_census_free);

    char* rendered = nullptr;
    auto s = opt.format == "json" ? collatz_census_to_json(census, &rendered)
                                  : collatz_census_to_csv(census, &rendered);
    if (s) return fail(s);
    OwnedString table(rendered);

    std::ostringstream summary;
    summary << "total=" << collatz_census_total(census)
            << " max_level=" << collatz_census_max_level(census)
            << " unresolved=" << collatz_census_unresolved(census) << '\n';
    if (opt.out.empty()) {
        std::cout << table.get();
        std::cerr << summary.str();
    } else {
        if (int rc = emit(table.get(), opt.out)) return rc;
        std::cout << summary.str();
    }
    return collatz_census_unresolved(census) > 0 ? 2 : 0;
}

int cmd_decompose(const Options& opt, const std::string& n) {
    char* v_csv = nullptr;
    if (auto s = collatz_decompose(n.c_str(), opt.cap, &v_csv)) return fail(s);
    OwnedString v(v_csv);
    std::cout << v.get() << '\n';

    int primary = 0;
    collatz_is_primary_solution(v.get(), &primary);
    char* rebuilt = nullptr;
    if (auto s = collatz_build_number(v.get(), &rebuilt)) return fail(s);
    OwnedString nn(rebuilt);
    std::cout << "primary_solution=" << (primary ? "true" : "false")
              << " round_trip=" << (n == nn.get() ? "ok" : "MISMATCH") << '\n';
    return (primary && n == nn.get()) ? 0 : 1;
}

int cmd_build(const Options& opt, const std::string& v_csv) {
    char* n_dec = nullptr;
    if (auto s = collatz_build_number(v_csv.c_str(), &n_dec)) return fail(s);
    OwnedString n(n_dec);

    std::uint64_t built_level = 0;
    if (auto s = collatz_level(n.get(), opt.cap, &built_level, nullptr))
        return fail(s);
    const std::size_t l = tuple_length(v_csv);

    std::uint64_t v1 = std::strtoull(v_csv.c_str(), nullptr, 10);
    if (v1 > 2) {
        int ok = 0;
        if (auto s = collatz_verify_inverse(v_csv.c_str(), opt.cap, &ok))
            return fail(s);
        std::cout << n.get() << " (level " << built_level
                  << (ok ? " verified)" : " NOT verified)") << '\n';
        return ok ? 0 : 1;
    }
    std::cout << n.get() << " (level " << built_level << ", expected " << l
              << "; inverse lemma needs v_1 > 2)\n";
    return 0;
}

int cmd_lift(const Options& opt, const std::string& u_csv, bool digit_rule,
             bool strict) {
    char* v_csv = nullptr;
    if (auto s = collatz_lift(u_csv.c_str(), digit_rule ? 1 : 0, strict ? 1 : 0,
                              &v_csv))
        return fail(s);
    OwnedString v(v_csv);
    char* n_dec = nullptr;
    if (auto s = collatz_build_number(v.get(), &n_dec)) return fail(s);
    OwnedString n(n_dec);

    int ok = 0;
    if (auto s = collatz_verify_inverse(v.get(), opt.cap, &ok)) return fail(s);
    std::cout << v.get() << " -> " << n.get() << " (level "
              << tuple_length(v.get()) << (ok ? " verified)" : " NOT verified)")
              << '\n';
    return ok ? 0 : 1;
}

int cmd_generate(const Options& opt, const std::string& x, std::uint32_t level,
                 const std::string& budget) {
    double budget_value = 0;
    if (budget == "paper" || budget == "safe") {
        if (auto s = collatz_budget_eval(x.c_str(), level, budget.c_str(),
                                         &budget_value))
            return fail(s);
    } else {
        try {
            std::size_t pos = 0;
            budget_value = std::stod(budget, &pos);
            if (pos != budget.size()) throw std::invalid_argument(budget);
        } catch (const std::exception&) {
            std::cerr << "error: budget must be a number, 'paper' or 'safe'\n";
            return 1;
        }
    }

    collatz_batch* batch = nullptr;
    if (auto s = collatz_generate(x.c_str(), level, budget_value, &batch))
        return fail(s);
    std::unique_ptr<collatz_batch, decltype(&collatz_batch_free)> guard(
        batch, collatz_batch_free);

    char* csv = nullptr;
    if (auto s = collatz_batch_to_csv(batch, &csv)) return fail(s);
    OwnedString table(csv);

    std::ostringstream summary;
    summary << "budget=" << budget_value
            << " tuples=" << collatz_batch_len(batch)
            << " admitted=" << collatz_batch_admitted(batch)
            << " oversize=" << collatz_batch_oversize(batch) << '\n';
    if (opt.out.empty()) {
        std::cout << table.get();
        std::cerr << summary.str();
    } else {
        if (int rc = emit(table.get(), opt.out)) return rc;
        std::cout << summary.str();
    }
    return 0;
}

int cmd_omega(double y, std::uint32_t l) {
    char* count = nullptr;
    if (auto s = collatz_omega(y, l, &count)) return fail(s);
    OwnedString c(count);
    std::cout << c.get() << '\n';
    return 0;
}

int cmd_bound(const Options& opt, std::uint64_t x, const std::string& rule,
              const std::string& census_path) {
    // The rule choice is advisory for reading the report: both rules are
    // always evaluated and the exit status reflects the safe links only.
    if (rule != "safe" && rule != "paper") {
        std::cerr << "error: --rule must be safe or paper\n";
        return 1;
    }

    collatz_census* census = nullptr;
    if (census_path.empty()) {
        if (auto s = collatz_census_run(x, opt.cap, opt.shards, &census))
            return fail(s);
    } else {
        std::ifstream f(census_path, std::ios::binary);
        if (!f) {
            std::cerr << "error: cannot read census file '" << census_path << "'\n";
            return 1;
        }
        std::stringstream buf;
        buf << f.rdbuf();
        if (auto s = collatz_census_from_json(buf.str().c_str(), &census))
            return fail(s);
        if (collatz_census_x(census) != x) {
            std::cerr << "error: census file is for x = "
                      << collatz_census_x(census) << ", not " << x << '\n';
            collatz_census_free(census);
            return 1;
        }
    }
    std::unique_ptr<collatz_census, decltype(&collatz_census_free)> cguard(
        census, collatz_census_free);

    collatz_report* report = nullptr;
    if (auto s = collatz_report_run(census, &report)) return fail(s);
    std::unique_ptr<collatz_report, decltype(&collatz_report_free)> rguard(
        report, collatz_report_free);

    char* rendered = nullptr;
    collatz_status s;
    if (opt.format == "json")
        s = collatz_report_to_json(report, &rendered);
    else if (opt.format == "text")
        s = collatz_report_to_text(report, &rendered);
    else
        s = collatz_report_to_csv(report, &rendered);
    if (s) return fail(s);
    OwnedString body(rendered);
    if (int rc = emit(body.get(), opt.out)) return rc;

    const bool ok = collatz_report_safe_ok(report) != 0;
    std::cerr << "safe-rule links: " << (ok ? "all hold" : "FAILED") << '\n';
    return ok ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Collatz census, congruence correspondence and bound audit"};
    app.require_subcommand(1);
    app.fallthrough();

    Options opt;
    app.add_option("--cap", opt.cap, "Syracuse iteration cap per number")
        ->capture_default_str();
    app.add_option("--shards", opt.shards, "census shard count")
        ->capture_default_str();
    app.add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"csv", "json", "text"}))
        ->capture_default_str();
    app.add_option("--out", opt.out, "write the table/report to this file");

    std::string n_arg, v_arg, u_arg, x_big, budget = "safe", rule = "safe";
    std::string census_path;
    std::uint64_t x = 0;
    std::uint32_t level_arg = 1;
    double y_arg = 0;
    bool digit_rule = false;
    bool strict = false;

    auto* sc_level = app.add_subcommand("level", "trajectory and level of an odd n");
    sc_level->add_option("n", n_arg, "odd positive integer (decimal)")->required();

    auto* sc_census = app.add_subcommand("census", "exact per-level counts for odd n <= x");
    sc_census->add_option("x", x, "upper bound")->required();

    auto* sc_dec = app.add_subcommand("decompose", "trajectory valuations of n as a solution tuple");
    sc_dec->add_option("n", n_arg, "odd n > 1, prime to 3 (decimal)")->required();

    auto* sc_build = app.add_subcommand("build", "number built from a solution tuple");
    sc_build->add_option("v", v_arg, "solution tuple, e.g. 4,3")->required();

    auto* sc_lift = app.add_subcommand("lift", "window-constrained solution above a free tuple");
    sc_lift->add_option("u", u_arg, "free tuple with entries >= 2, e.g. 2,2")->required();
    sc_lift->add_flag("--digit-rule", digit_rule, "select by the digit formula instead of the smallest candidate");
    sc_lift->add_flag("--strict", strict, "reject entries divisible by 3");

    auto* sc_gen = app.add_subcommand("generate", "certified Collatz numbers of one level");
    sc_gen->add_option("x", x_big, "bound (decimal)")->required();
    sc_gen->add_option("-l,--level", level_arg, "level")->required();
    sc_gen->add_option("--budget", budget, "entry-sum budget: number, 'paper' or 'safe'")
        ->capture_default_str();

    auto* sc_omega = app.add_subcommand("omega", "ordered partition count");
    sc_omega->add_option("y", y_arg, "budget")->required();
    sc_omega->add_option("l", level_arg, "tuple length")->required();

    auto* sc_bound = app.add_subcommand("bound", "inequality-chain audit at x");
    sc_bound->add_option("x", x, "upper bound")->required();
    sc_bound->add_option("--rule", rule, "featured budget rule: safe or paper")
        ->capture_default_str();
    sc_bound->add_option("--census", census_path, "reuse a census JSON file (its x must match)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;  // help/version are success; usage errors are 1
    }

    if (sc_level->parsed()) return cmd_level(opt, n_arg);
    if (sc_census->parsed()) return cmd_census(opt, x);
    if (sc_dec->parsed()) return cmd_decompose(opt, n_arg);
    if (sc_build->parsed()) return cmd_build(opt, v_arg);
    if (sc_lift->parsed()) return cmd_lift(opt, u_arg, digit_rule, strict);
    if (sc_gen->parsed()) return cmd_generate(opt, x_big, level_arg, budget);
    if (sc_omega->parsed()) return cmd_omega(y_arg, level_arg);
    if (sc_bound->parsed()) return cmd_bound(opt, x, rule, census_path);
    return 1;
}
