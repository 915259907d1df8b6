#include "cohn/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <thread>

#include "cohn/lte.hpp"

namespace cohn {

unsigned long family_term_valuation(std::uint64_t base, std::uint64_t k, const Prime& r) {
    const std::uint64_t rv = r.value();
    if (base % rv == 0) return 0;
    std::uint64_t d = 1;
    std::uint64_t cur = base % rv;
    while (cur != 1) {
        cur = mulmod_u64(cur, base % rv, rv);
        ++d;
    }
    if (k % d != 0) return 0;
    // base^k - 1 = (base^d)^(k/d) - 1 with r | base^d - 1: LTE applies.
    return lte_valuation(LteInput(pow_u64(base, d), 1, k / d, r), 0).valuation;
}

std::optional<ConstraintReject> constraint_filter(std::uint64_t k, const FactoredBound& bound) {
    for (const auto& [p, required] : bound) {
        unsigned long actual = nu(p, Natural(static_cast<unsigned long>(k))).valuation;
        if (actual < required) return ConstraintReject{p.value(), required, actual};
    }
    return std::nullopt;
}

std::optional<ConstraintReject> constraint_filter(std::uint64_t k, const Prime& q) {
    return constraint_filter(k, k_lower_bound(q));
}

std::optional<ValuationReject> valuation_filter(const EquationFamily& family, std::uint64_t k,
                                                const Prime& q, bool extended) {
    if (q.value() == 2) throw std::invalid_argument("use brute force for squares");
    static constexpr std::uint64_t filter_primes[] = {2, 3, 5, 7};
    const std::size_t count = extended ? 4 : 2;
    for (std::size_t i = 0; i < count; ++i) {
        const std::uint64_t rv = filter_primes[i];
        const Prime r(rv);
        unsigned long v = family_term_valuation(family.base_a, k, r) +
                          family_term_valuation(family.base_b, k, r);
        if (v % q.value() != 0) return ValuationReject{rv, v};
    }
    return std::nullopt;
}

std::optional<ValuationReject> qth_power_filter(std::uint64_t k, const Prime& q, bool extended) {
    return valuation_filter(EquationFamily(2, 3), k, q, extended);
}

namespace {

Natural family_value(const EquationFamily& family, std::uint64_t k) {
    return (pow_u64(family.base_a, k) - 1) * (pow_u64(family.base_b, k) - 1);
}

// Upper estimate of bit_length(N) without materializing N.
unsigned long family_value_bits(const EquationFamily& family, std::uint64_t k) {
    double bits = static_cast<double>(k) *
                  (std::log2(static_cast<double>(family.base_a)) +
                   std::log2(static_cast<double>(family.base_b)));
    return static_cast<unsigned long>(bits) + 2;
}

// Contiguous chunks over k in [1, k_max]; each k is evaluated purely, so any
// worker count yields the same report.
template <typename Eval>
std::vector<SearchOutcome> run_chunked(std::uint64_t k_max, unsigned workers, Eval eval) {
    std::vector<SearchOutcome> outcomes(k_max);
    unsigned n = std::max(1u, workers);
    n = static_cast<unsigned>(std::min<std::uint64_t>(n, k_max));
    if (n == 1) {
        for (std::uint64_t k = 1; k <= k_max; ++k) outcomes[k - 1] = eval(k);
        return outcomes;
    }
    std::vector<std::thread> pool;
    pool.reserve(n);
    const std::uint64_t chunk = (k_max + n - 1) / n;
    for (unsigned w = 0; w < n; ++w) {
        const std::uint64_t lo = 1 + w * chunk;
        const std::uint64_t hi = std::min<std::uint64_t>(k_max, lo + chunk - 1);
        if (lo > hi) break;
        pool.emplace_back([&outcomes, &eval, lo, hi] {
            for (std::uint64_t k = lo; k <= hi; ++k) outcomes[k - 1] = eval(k);
        });
    }
    for (auto& t : pool) t.join();
    return outcomes;
}

void collect_solutions(SearchReport& report) {
    for (const SearchOutcome& o : report.outcomes)
        if (o.sol) report.solutions.push_back(*o.sol);
}

}  // namespace

SearchReport brute_force_search(const EquationFamily& family, std::uint64_t k_max,
                                std::uint64_t n_min, std::uint64_t n_max,
                                const SearchOptions& options) {
    if (k_max < 1) throw std::invalid_argument("k_max must be at least 1");
    if (n_min < 2) throw std::invalid_argument("n_min must be at least 2");
    if (n_min > n_max) throw std::invalid_argument("n_min exceeds n_max");

    SearchReport report{family, SearchMode::brute, k_max, n_min, n_max, {}, 0, false, {}, {}};
    report.outcomes = run_chunked(k_max, options.workers, [&](std::uint64_t k) {
        SearchOutcome out;
        out.k = k;
        const Natural value = family_value(family, k);
        const unsigned long bits = bit_length(value);
        if (n_max >= bits) {
            // One decomposition answers every exponent at once: value = x^e
            // is solvable exactly for the divisors of the maximal exponent.
            const auto form = perfect_power(value);
            const std::uint64_t full = form ? form->exponent : 1;
            for (std::uint64_t n = std::min<std::uint64_t>(n_max, full); n >= n_min; --n) {
                if (full % n != 0) continue;
                out.status = OutcomeStatus::solution;
                out.sol = Solution{k, pow_nat(form->base, full / n), n};
                break;
            }
        } else {
            for (std::uint64_t n = n_max; n >= n_min; --n) {
                RootResult r = iroot(value, n);
                if (r.exact && r.root >= 2) {
                    out.status = OutcomeStatus::solution;
                    out.sol = Solution{k, r.root, n};
                    break;
                }
            }
        }
        if (!out.sol) out.status = OutcomeStatus::exhausted;
        return out;
    });
    collect_solutions(report);
    return report;
}

SearchReport pruned_search(const EquationFamily& family, std::uint64_t k_max,
                           const std::vector<Prime>& q_set, const SearchOptions& options) {
    if (k_max < 1) throw std::invalid_argument("k_max must be at least 1");
    if (q_set.empty()) throw std::invalid_argument("q_set must not be empty");
    std::vector<Prime> qs = q_set;
    std::sort(qs.begin(), qs.end());
    qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
    for (const Prime& q : qs)
        if (q.value() == 2) throw std::invalid_argument("q_set must contain only odd primes");

    const bool lemma_family = family.base_a == 2 && family.base_b == 3;
    std::map<std::uint64_t, FactoredBound> bounds;
    if (lemma_family)
        for (const Prime& q : qs) bounds.emplace(q.value(), k_lower_bound(q));

    SearchReport report{family, SearchMode::pruned, k_max, 0, 0, {}, options.budget_bits,
                        options.extended_filters, {}, {}};
    for (const Prime& q : qs) report.q_set.push_back(q.value());

    report.outcomes = run_chunked(k_max, options.workers, [&](std::uint64_t k) {
        SearchOutcome out;
        out.k = k;
        std::optional<Natural> value;  // computed once, only if some q survives the filters
        for (const Prime& q : qs) {
            QRecord rec;
            rec.q = q.value();
            if (lemma_family) {
                if (auto rej = constraint_filter(k, bounds.at(q.value()))) {
                    rec.kind = QRecordKind::constraint_reject;
                    rec.prime = rej->prime;
                    rec.required = rej->required;
                    rec.actual = rej->actual;
                    out.records.push_back(std::move(rec));
                    continue;
                }
            }
            if (auto rej = valuation_filter(family, k, q, options.extended_filters)) {
                rec.kind = QRecordKind::valuation_reject;
                rec.prime = rej->prime;
                rec.actual = rej->valuation;
                out.records.push_back(std::move(rec));
                continue;
            }
            if (family_value_bits(family, k) > options.budget_bits) {
                rec.kind = QRecordKind::budget_exceeded;
                out.records.push_back(std::move(rec));
                continue;
            }
            if (!value) value = family_value(family, k);
            RootResult r = iroot(*value, q.value());
            if (r.exact && r.root >= 2) {
                rec.kind = QRecordKind::solution_found;
                rec.x = r.root;
                if (!out.sol) out.sol = Solution{k, r.root, q.value()};
            } else {
                rec.kind = QRecordKind::exact_reject;
            }
            out.records.push_back(std::move(rec));
        }

        bool any_budget = false, any_exact = false;
        for (const QRecord& rec : out.records) {
            any_budget |= rec.kind == QRecordKind::budget_exceeded;
            any_exact |= rec.kind == QRecordKind::exact_reject;
        }
        if (out.sol)
            out.status = OutcomeStatus::solution;
        else if (any_budget)
            out.status = OutcomeStatus::unresolved;
        else if (any_exact)
            out.status = OutcomeStatus::exhausted;
        else
            out.status = OutcomeStatus::pruned;
        return out;
    });
    collect_solutions(report);
    return report;
}

}  // namespace cohn
