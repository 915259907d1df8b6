#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cohn/arith.hpp"
#include "cohn/lemmas.hpp"

namespace cohn {

/// Ordered base pair (a, b) defining the family (a^k - 1)(b^k - 1) = x^n.
struct EquationFamily {
    std::uint64_t base_a;
    std::uint64_t base_b;

    EquationFamily(std::uint64_t a, std::uint64_t b) : base_a(a), base_b(b) {
        if (a < 2 || b <= a) throw std::invalid_argument("family requires 2 <= a < b");
    }

    friend bool operator==(const EquationFamily&, const EquationFamily&) = default;
};

/// Exact nu_r(base^k - 1) via multiplicative order plus lifting-the-exponent.
/// Zero when r | base or ord_r(base) does not divide k.
unsigned long family_term_valuation(std::uint64_t base, std::uint64_t k, const Prime& r);

struct ConstraintReject {
    std::uint64_t prime;
    unsigned long required;
    unsigned long actual;

    friend bool operator==(const ConstraintReject&, const ConstraintReject&) = default;
};

/// Rejects k unless it meets every exponent requirement of k_lower_bound(q),
/// checked per prime; never expands the bound. nullopt = pass.
std::optional<ConstraintReject> constraint_filter(std::uint64_t k, const Prime& q);
std::optional<ConstraintReject> constraint_filter(std::uint64_t k, const FactoredBound& bound);

struct ValuationReject {
    std::uint64_t prime;
    unsigned long valuation;

    friend bool operator==(const ValuationReject&, const ValuationReject&) = default;
};

/// Sound necessary condition for (a^k-1)(b^k-1) = x^q: every prime valuation
/// of the product must be divisible by q. Checks r in {2, 3}, plus {5, 7}
/// when extended. Pass is not a claim that the product is a q-th power.
std::optional<ValuationReject> valuation_filter(const EquationFamily& family, std::uint64_t k,
                                                const Prime& q, bool extended = false);

/// The (2,3) specialization: nu_2(N) = nu_2(3^k - 1), and nu_3(N) =
/// nu_3(2^k - 1) when k is even; both via lte_valuation.
std::optional<ValuationReject> qth_power_filter(std::uint64_t k, const Prime& q,
                                                bool extended = false);

enum class SearchMode { brute, pruned };

enum class OutcomeStatus { solution, pruned, exhausted, unresolved };

enum class QRecordKind {
    constraint_reject,
    valuation_reject,
    exact_reject,
    solution_found,
    budget_exceeded,
};

/// Per-(k, q) verdict inside a pruned search record.
struct QRecord {
    std::uint64_t q = 0;
    QRecordKind kind = QRecordKind::exact_reject;
    std::uint64_t prime = 0;      // rejecting prime (filters)
    unsigned long required = 0;   // constraint filter only
    unsigned long actual = 0;     // valuation found
    std::optional<Natural> x;     // solution root

    friend bool operator==(const QRecord&, const QRecord&) = default;
};

struct Solution {
    std::uint64_t k = 0;
    Natural x;
    std::uint64_t n = 0;

    friend bool operator==(const Solution&, const Solution&) = default;
};

struct SearchOutcome {
    std::uint64_t k = 0;
    OutcomeStatus status = OutcomeStatus::exhausted;
    std::vector<QRecord> records;    // pruned mode: one per q, ascending
    std::optional<Solution> sol;

    friend bool operator==(const SearchOutcome&, const SearchOutcome&) = default;
};

struct SearchReport {
    EquationFamily family;
    SearchMode mode = SearchMode::brute;
    std::uint64_t k_max = 0;
    std::uint64_t n_min = 0;  // brute mode
    std::uint64_t n_max = 0;
    std::vector<std::uint64_t> q_set;  // pruned mode, ascending
    unsigned long budget_bits = 0;     // pruned mode
    bool extended = false;
    std::vector<SearchOutcome> outcomes;  // every k in [1, k_max], ascending
    std::vector<Solution> solutions;

    friend bool operator==(const SearchReport&, const SearchReport&) = default;
};

struct SearchOptions {
    unsigned workers = 1;
    unsigned long budget_bits = 1UL << 20;  // exact-fallback working-space cap
    bool extended_filters = false;
};

/// The oracle: computes N = (a^k - 1)(b^k - 1) exactly for every k and tests
/// every exponent in [n_min, n_max]. No pruning shortcuts. A solution is
/// recorded at its largest in-range exponent (minimal root).
SearchReport brute_force_search(const EquationFamily& family, std::uint64_t k_max,
                                std::uint64_t n_min, std::uint64_t n_max,
                                const SearchOptions& options = {});

/// Filter pipeline over odd prime exponents. For family (2,3) applies
/// constraint_filter then qth_power_filter; other families get only the
/// generic valuation filter. Survivors fall back to the exact root test
/// (or are reported unresolved when N would exceed the bit budget — never
/// silently skipped).
SearchReport pruned_search(const EquationFamily& family, std::uint64_t k_max,
                           const std::vector<Prime>& q_set, const SearchOptions& options = {});

}  // namespace cohn
