#include "bounds.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace collatz {

namespace {

const double kLog4Of3 = std::log2(3.0) / 2.0;

// Stated slack for comparisons whose right side is a double.
constexpr double kRealSlack = 1e-9;

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

}  // namespace

double binary_entropy(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("binary_entropy requires 0 < p < 1");
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double log2_binomial(std::uint64_t n, std::uint64_t l) {
    if (n < 1) throw std::invalid_argument("log2_binomial requires n >= 1");
    if (l > n) throw std::invalid_argument("log2_binomial requires l <= n");
    constexpr double kLn2 = 0.6931471805599453;
    return (std::lgamma(static_cast<double>(n) + 1.0) -
            std::lgamma(static_cast<double>(l) + 1.0) -
            std::lgamma(static_cast<double>(n - l) + 1.0)) /
           kLn2;
}

BigInt binomial(std::uint64_t n, std::uint64_t l) {
    if (l > n) return 0;
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, l);
    return r;
}

BigInt omega(double y, std::uint32_t l, std::uint32_t min_entry) {
    if (l < 1) throw std::invalid_argument("omega requires l >= 1");
    if (min_entry < 1) throw std::invalid_argument("omega requires min_entry >= 1");
    if (std::isnan(y)) throw std::invalid_argument("omega: y is NaN");
    double fy = std::floor(y);
    if (fy < double(min_entry) * l) return 0;
    if (fy > 1.8e19) throw std::invalid_argument("omega: budget too large");
    std::uint64_t m = static_cast<std::uint64_t>(fy);
    return binomial(m - std::uint64_t{min_entry - 1} * l, l);
}

BudgetRule BudgetRule::parse(const std::string& name) {
    if (name == "paper") return paper();
    if (name == "safe") return safe();
    throw std::invalid_argument("unknown budget rule '" + name +
                                "' (expected paper or safe)");
}

double BudgetRule::evaluate(double log4_x, std::uint32_t l) const {
    switch (kind) {
        case BudgetKind::paper:
            return log4_x / 3.0 + l * (1.0 + kLog4Of3 / 3.0);
        case BudgetKind::safe:
            return log4_x / 3.0 + l * (1.0 + kLog4Of3) / 3.0;
        case BudgetKind::explicit_value:
            return value;
    }
    throw std::logic_error("bad budget kind");
}

double BudgetRule::evaluate_for(std::uint64_t x, std::uint32_t l) const {
    if (x < 2) throw std::invalid_argument("budget requires x >= 2");
    return evaluate(std::log2(static_cast<double>(x)) / 2.0, l);
}

BigInt partition_bound(std::uint64_t x, std::uint32_t l,
                       const BudgetRule& rule) {
    if (x < 2) throw std::invalid_argument("partition_bound requires x >= 2");
    if (l < 1) throw std::invalid_argument("partition_bound requires l >= 1");
    return omega(rule.evaluate_for(x, l), l);
}

double main_exponent() {
    double p = 1.0 / (2.0 + (2.0 / 3.0) * kLog4Of3);
    return binary_entropy(p) / 3.0;
}

TheoremParameters theorem_parameters_log4(double log4_x,
                                          DenominatorReading reading) {
    double denom =
        reading == DenominatorReading::log_term ? 3.0 + kLog4Of3 : 4.0;
    double lf = std::floor(log4_x / denom);
    if (!(lf >= 1.0))
        throw std::invalid_argument(
            "theorem_parameters: x too small (proof parameter l would be 0)");
    std::uint64_t l = static_cast<std::uint64_t>(lf);
    double nf = std::floor(log4_x / 3.0 + lf * (1.0 + kLog4Of3 / 3.0));
    return {l, static_cast<std::uint64_t>(nf)};
}

TheoremParameters theorem_parameters(std::uint64_t x,
                                     DenominatorReading reading) {
    if (x < 2) throw std::invalid_argument("theorem_parameters requires x >= 2");
    return theorem_parameters_log4(std::log2(static_cast<double>(x)) / 2.0,
                                   reading);
}

namespace {

ChainLink int_link(std::string name, const BigInt& lhs, const BigInt& rhs,
                   bool gating) {
    return {std::move(name), to_string(lhs), to_string(rhs), ">=", true,
            lhs >= rhs, gating};
}

ChainLink real_link(std::string name, const BigInt& lhs, double rhs,
                    bool gating) {
    bool holds =
        mpz_cmp_d(lhs.get_mpz_t(), rhs * (1.0 - kRealSlack)) >= 0;
    return {std::move(name), to_string(lhs), format_real(rhs), ">=", false,
            holds, gating};
}

}  // namespace

BoundReport bound_report(const CensusTable& census) {
    BoundReport r;
    r.x = census.x;
    TheoremParameters params = theorem_parameters(census.x);
    r.l = params.l;
    r.n = params.n;
    try {
        r.l_literal_four =
            theorem_parameters(census.x, DenominatorReading::literal_four).l;
    } catch (const std::invalid_argument&) {
        r.l_literal_four = 0;  // alternate reading gives l = 0 here
    }
    r.pi_x = census.total;
    r.pi_x_l = census.count_at(r.l);
    std::uint32_t l32 = static_cast<std::uint32_t>(r.l);
    r.omega_paper = partition_bound(census.x, l32, BudgetRule::paper());
    r.omega_safe = partition_bound(census.x, l32, BudgetRule::safe());
    r.binom = binomial(r.n, r.l);
    r.theta = main_exponent();
    r.x_pow_theta = std::pow(static_cast<double>(census.x), r.theta);

    r.links.push_back(int_link("pi_ge_pi_l", r.pi_x, r.pi_x_l, true));
    r.links.push_back(int_link("pi_l_ge_omega_safe", r.pi_x_l, r.omega_safe, true));
    r.links.push_back(int_link("pi_l_ge_omega_paper", r.pi_x_l, r.omega_paper, false));
    r.links.push_back(int_link("omega_paper_ge_binom", r.omega_paper, r.binom, false));
    r.links.push_back(real_link("binom_ge_x_pow_theta", r.binom, r.x_pow_theta, false));
    r.links.push_back(real_link("pi_ge_x_pow_theta", r.pi_x, r.x_pow_theta, true));
    const double x = static_cast<double>(census.x);
    for (double expo : {0.3227, 0.43, 0.48, 0.81, 0.84}) {
        std::ostringstream name;
        name << "pi_ge_x_pow_" << expo;
        r.links.push_back(
            real_link(name.str(), r.pi_x, std::pow(x, expo), false));
    }
    return r;
}

bool BoundReport::safe_ok() const {
    for (const auto& link : links)
        if (link.gating && !link.holds) return false;
    return true;
}

std::string BoundReport::to_json() const {
    nlohmann::json jlinks = nlohmann::json::array();
    for (const auto& link : links)
        jlinks.push_back({{"name", link.name},
                          {"lhs", link.lhs},
                          {"rhs", link.rhs},
                          {"relation", link.relation},
                          {"exact", link.exact},
                          {"holds", link.holds},
                          {"gating", link.gating}});
    nlohmann::json j{{"x", x},
                     {"l", l},
                     {"n", n},
                     {"l_literal_four_reading", l_literal_four},
                     {"pi_x", to_string(pi_x)},
                     {"pi_x_l", to_string(pi_x_l)},
                     {"omega_paper", to_string(omega_paper)},
                     {"omega_safe", to_string(omega_safe)},
                     {"binom", to_string(binom)},
                     {"theta", theta},
                     {"x_pow_theta", x_pow_theta},
                     {"safe_ok", safe_ok()},
                     {"links", jlinks}};
    return j.dump();
}

std::string BoundReport::to_text() const {
    std::ostringstream out;
    out << "bound report for x = " << x << '\n';
    out << "  proof parameters: l = " << l << ", n = " << n
        << "  (l = " << l_literal_four << " under the literal 3+1 reading)\n";
    out << "  theta = " << format_real(theta)
        << ", x^theta = " << format_real(x_pow_theta) << '\n';
    out << "  pi(x) = " << to_string(pi_x) << ", pi(x," << l
        << ") = " << to_string(pi_x_l) << '\n';
    out << "  omega_safe = " << to_string(omega_safe)
        << ", omega_paper = " << to_string(omega_paper) << ", C(n,l) = "
        << to_string(binom) << '\n';
    for (const auto& link : links) {
        out << "  [" << (link.holds ? "ok" : "FAIL") << "] " << link.name
            << ": " << link.lhs << ' ' << link.relation << ' ' << link.rhs
            << (link.exact ? "  (exact" : "  (real") << (link.gating ? ", gating)" : ")")
            << '\n';
    }
    out << "safe-rule links: " << (safe_ok() ? "all hold" : "FAILED") << '\n';
    return out.str();
}

std::string BoundReport::to_csv() const {
    std::ostringstream out;
    out << "x,l,pi_x,pi_x_l,omega_paper,omega_safe,binom,x_pow_theta\n";
    out << x << ',' << l << ',' << to_string(pi_x) << ',' << to_string(pi_x_l)
        << ',' << to_string(omega_paper) << ',' << to_string(omega_safe)
        << ',' << to_string(binom) << ',' << format_real(x_pow_theta) << '\n';
    return out.str();
}

}  // namespace collatz
