#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cohn/sieve.hpp"

using namespace cohn;

namespace {

std::vector<Prime> prime_set(std::initializer_list<std::uint64_t> qs) {
    std::vector<Prime> out;
    for (std::uint64_t q : qs) out.emplace_back(q);
    return out;
}

// Per-(k, q) solutions from a pruned report; report.solutions keeps only the
// first q per k, the records keep them all.
std::vector<Solution> record_solutions(const SearchReport& report) {
    std::vector<Solution> out;
    for (const SearchOutcome& o : report.outcomes)
        for (const QRecord& rec : o.records)
            if (rec.kind == QRecordKind::solution_found)
                out.push_back(Solution{o.k, *rec.x, rec.q});
    return out;
}

}  // namespace

TEST_CASE("EquationFamily validation") {
    CHECK_THROWS_AS(EquationFamily(1, 3), std::invalid_argument);
    CHECK_THROWS_AS(EquationFamily(3, 3), std::invalid_argument);
    CHECK_THROWS_AS(EquationFamily(5, 2), std::invalid_argument);
    CHECK(EquationFamily(2, 3).base_b == 3);
}

TEST_CASE("family_term_valuation is exact nu_r(base^k - 1)") {
    for (std::uint64_t base : {2, 3, 5, 6, 10}) {
        for (std::uint64_t rv : {2, 3, 5, 7}) {
            const Prime r(rv);
            for (std::uint64_t k = 1; k <= 40; ++k) {
                Natural subject = pow_u64(base, k) - 1;
                REQUIRE(family_term_valuation(base, k, r) == nu(r, subject).valuation);
            }
        }
    }
}

TEST_CASE("qth_power_filter named rejections") {
    auto rej = qth_power_filter(1, Prime(3));
    REQUIRE(rej.has_value());
    CHECK(rej->prime == 2);
    CHECK(rej->valuation == 1);

    rej = qth_power_filter(4, Prime(3));
    REQUIRE(rej.has_value());
    CHECK(rej->prime == 2);
    CHECK(rej->valuation == 4);

    rej = qth_power_filter(16, Prime(3));  // nu_2 = 6 passes, nu_3 = 1 rejects
    REQUIRE(rej.has_value());
    CHECK(rej->prime == 3);
    CHECK(rej->valuation == 1);

    CHECK_FALSE(qth_power_filter(18, Prime(3)).has_value());
    CHECK_THROWS_WITH_AS(qth_power_filter(4, Prime(2)), "use brute force for squares",
                         std::invalid_argument);
}

TEST_CASE("constraint_filter named verdicts") {
    auto rej = constraint_filter(6, Prime(3));
    REQUIRE(rej.has_value());
    CHECK(rej->prime == 3);
    CHECK(rej->required == 2);
    CHECK(rej->actual == 1);

    CHECK_FALSE(constraint_filter(18, Prime(3)).has_value());

    rej = constraint_filter(18, Prime(5));
    REQUIRE(rej.has_value());
    CHECK(rej->prime == 2);
    CHECK(rej->required == 3);
    CHECK(rej->actual == 1);

    rej = constraint_filter(1, Prime(3));
    REQUIRE(rej.has_value());
    CHECK(rej->prime == 2);
    CHECK(rej->required == 1);
    CHECK(rej->actual == 0);
}

TEST_CASE("brute force oracle on the named families") {
    SearchReport r = brute_force_search(EquationFamily(2, 3), 20, 2, 10);
    CHECK(r.solutions.empty());
    CHECK(r.outcomes.size() == 20);
    for (std::size_t i = 0; i < r.outcomes.size(); ++i) CHECK(r.outcomes[i].k == i + 1);

    r = brute_force_search(EquationFamily(2, 5), 20, 2, 2);
    REQUIRE(r.solutions.size() == 1);
    CHECK(r.solutions[0].k == 1);
    CHECK(r.solutions[0].x == 2);
    CHECK(r.solutions[0].n == 2);

    r = brute_force_search(EquationFamily(3, 5), 20, 2, 10);
    REQUIRE(r.solutions.size() == 1);
    CHECK(r.solutions[0].k == 1);
    CHECK(r.solutions[0].x == 2);
    CHECK(r.solutions[0].n == 3);
}

TEST_CASE("brute force argument validation") {
    CHECK_THROWS_AS(brute_force_search(EquationFamily(2, 3), 0, 2, 5), std::invalid_argument);
    CHECK_THROWS_AS(brute_force_search(EquationFamily(2, 3), 5, 1, 5), std::invalid_argument);
    CHECK_THROWS_AS(brute_force_search(EquationFamily(2, 3), 5, 6, 5), std::invalid_argument);
}

TEST_CASE("brute force reports the maximal in-range exponent") {
    // (2^1-1)(17^1-1) = 16 = 2^4 = 4^2; with n in [2,10] the report carries (2,4).
    SearchReport r = brute_force_search(EquationFamily(2, 17), 1, 2, 10);
    REQUIRE(r.solutions.size() == 1);
    CHECK(r.solutions[0].x == 2);
    CHECK(r.solutions[0].n == 4);
}

TEST_CASE("pruned search on the (2,3) pipeline") {
    SearchReport r = pruned_search(EquationFamily(2, 3), 50, prime_set({3, 5, 7}));
    CHECK(r.solutions.empty());
    CHECK(r.outcomes.size() == 50);
    for (const SearchOutcome& o : r.outcomes) {
        CHECK(o.records.size() == 3);  // one record per q, ascending
        CHECK((o.status == OutcomeStatus::pruned || o.status == OutcomeStatus::exhausted));
    }

    // k=1 with q_set {3}: rejected by the constraint filter, nu_2(1) = 0 < 1.
    r = pruned_search(EquationFamily(2, 3), 1, prime_set({3}));
    REQUIRE(r.outcomes.size() == 1);
    CHECK(r.outcomes[0].status == OutcomeStatus::pruned);
    REQUIRE(r.outcomes[0].records.size() == 1);
    const QRecord& rec = r.outcomes[0].records[0];
    CHECK(rec.kind == QRecordKind::constraint_reject);
    CHECK(rec.prime == 2);
    CHECK(rec.required == 1);
    CHECK(rec.actual == 0);
}

TEST_CASE("k=18 survives the filters for q=3 and dies in the exact test") {
    SearchReport r = pruned_search(EquationFamily(2, 3), 18, prime_set({3}));
    const SearchOutcome& last = r.outcomes.back();
    CHECK(last.k == 18);
    CHECK(last.status == OutcomeStatus::exhausted);
    REQUIRE(last.records.size() == 1);
    CHECK(last.records[0].kind == QRecordKind::exact_reject);
}

TEST_CASE("pruned search argument validation") {
    CHECK_THROWS_WITH_AS(pruned_search(EquationFamily(2, 3), 10, {}),
                         "q_set must not be empty", std::invalid_argument);
    CHECK_THROWS_WITH_AS(pruned_search(EquationFamily(2, 3), 10, prime_set({2, 3})),
                         "q_set must contain only odd primes", std::invalid_argument);
}

TEST_CASE("bit budget is honored and reported, never silently skipped") {
    SearchOptions tight;
    tight.budget_bits = 32;
    SearchReport r = pruned_search(EquationFamily(2, 3), 50, prime_set({3}), tight);
    const SearchOutcome& o = r.outcomes[17];  // k = 18
    CHECK(o.k == 18);
    CHECK(o.status == OutcomeStatus::unresolved);
    REQUIRE(o.records.size() == 1);
    CHECK(o.records[0].kind == QRecordKind::budget_exceeded);

    SearchReport relaxed = pruned_search(EquationFamily(2, 3), 50, prime_set({3}));
    CHECK(relaxed.outcomes[17].status == OutcomeStatus::exhausted);
}

TEST_CASE("soundness: pruning never loses an oracle solution") {
    struct Case {
        EquationFamily family;
        std::uint64_t k_max;
    };
    const Case cases[] = {{EquationFamily(2, 3), 200},
                          {EquationFamily(2, 5), 40},
                          {EquationFamily(3, 5), 40},
                          {EquationFamily(2, 6), 40}};
    const auto qs = prime_set({3, 5, 7});
    for (const Case& c : cases) {
        SearchReport pruned = pruned_search(c.family, c.k_max, qs);
        std::vector<Solution> via_filters = record_solutions(pruned);
        std::vector<Solution> via_oracle;
        for (const Prime& q : qs) {
            SearchReport brute =
                brute_force_search(c.family, c.k_max, q.value(), q.value());
            for (const Solution& s : brute.solutions) via_oracle.push_back(s);
        }
        auto key = [](const Solution& s) { return std::pair(s.k, s.n); };
        auto by_key = [&](const Solution& a, const Solution& b) { return key(a) < key(b); };
        std::sort(via_filters.begin(), via_filters.end(), by_key);
        std::sort(via_oracle.begin(), via_oracle.end(), by_key);
        REQUIRE(via_filters == via_oracle);
    }
}

TEST_CASE("soundness with extended filters enabled") {
    SearchOptions extended;
    extended.extended_filters = true;
    SearchReport pruned = pruned_search(EquationFamily(3, 5), 40, prime_set({3, 5, 7}), extended);
    std::vector<Solution> sols = record_solutions(pruned);
    REQUIRE(sols.size() == 1);
    CHECK(sols[0].k == 1);
    CHECK(sols[0].x == 2);
    CHECK(sols[0].n == 3);
}

TEST_CASE("filter effectiveness at k_max = 10^4") {
    SearchOptions opt;
    opt.workers = 2;
    SearchReport r = pruned_search(EquationFamily(2, 3), 10000, prime_set({3, 5, 7, 11}), opt);
    std::uint64_t fallbacks = 0, pairs = 0;
    for (const SearchOutcome& o : r.outcomes)
        for (const QRecord& rec : o.records) {
            ++pairs;
            if (rec.kind == QRecordKind::exact_reject ||
                rec.kind == QRecordKind::solution_found ||
                rec.kind == QRecordKind::budget_exceeded)
                ++fallbacks;
        }
    CHECK(pairs == 40000);
    CHECK(fallbacks == 220);  // frozen from an independent recount
    CHECK(fallbacks * 100 < pairs);  // below 1%
    CHECK(r.solutions.empty());
}

TEST_CASE("reports are identical for any worker count") {
    SearchOptions one, four;
    one.workers = 1;
    four.workers = 4;
    CHECK(pruned_search(EquationFamily(2, 3), 300, prime_set({3, 5}), one) ==
          pruned_search(EquationFamily(2, 3), 300, prime_set({3, 5}), four));
    CHECK(brute_force_search(EquationFamily(2, 3), 60, 2, 12, one) ==
          brute_force_search(EquationFamily(2, 3), 60, 2, 12, four));
}
