#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "cohn/arith.hpp"

namespace cohn {

/// Minimum exponents forced on k by the small-prime arguments, for a
/// hypothetical q-th power solution of (2^k - 1)(3^k - 1) = y^q:
/// nu_2(k) >= q - 2, and nu_p(k) >= q - 1 for p in {3, 5, 7} with p <= q.
struct ConstraintSet {
    Prime q;
    std::map<Prime, unsigned long> bounds;

    friend bool operator==(const ConstraintSet& lhs, const ConstraintSet& rhs) {
        return lhs.q == rhs.q && lhs.bounds == rhs.bounds;
    }
};

ConstraintSet small_prime_constraints(const Prime& q);

/// Least v >= 0 with v > (q - (p-1) log6/log p) / 2, for p >= 11. Decided
/// exactly: v qualifies iff q - 2v <= 0 or p^(q-2v) < 6^(p-1). No floating
/// point in the decision path.
unsigned long min_large_exponent(const Prime& p, const Prime& q);

/// A divisor of k, in factored form (prime -> minimum exponent), that any
/// q-th power solution must respect. Never expanded: for q >= 11 the product
/// is astronomically large; callers compare per-prime valuations instead.
using FactoredBound = std::map<Prime, unsigned long>;

FactoredBound k_lower_bound(const Prime& q);

Natural expand_factored_bound(const FactoredBound& bound);  // small q only

enum class AuditClaim { pm1_divides_k, p_exponent_bound };

struct AuditComparison {
    Prime r;
    unsigned long lhs_valuation;  // nu_r(p - 1)
    unsigned long bound;          // exponent already guaranteed for r
    bool holds;

    friend bool operator==(const AuditComparison&, const AuditComparison&) = default;
};

struct AuditStep {
    Prime p;
    AuditClaim claim;
    unsigned long guaranteed;  // exponent of p in k established by this step
    std::vector<AuditComparison> checks;

    friend bool operator==(const AuditStep&, const AuditStep&) = default;
};

/// Replay of the induction that promotes (p-1) | k prime by prime up to q.
/// Steps cover primes_up_to(q) exactly once, ascending; every comparison is
/// an exact integer fact re-derivable from its operands.
struct AuditTrail {
    Prime q;
    std::vector<AuditStep> steps;

    friend bool operator==(const AuditTrail&, const AuditTrail&) = default;
};

/// Verifies, prime by prime, that nu_r(p - 1) never exceeds the exponent of
/// r already guaranteed in k. Throws std::logic_error on any failed
/// comparison (which would mean the lemma transcription is wrong, not the
/// mathematics).
AuditTrail induction_audit(const Prime& q);

/// The quantities of the final contradiction at (k, q) with q | k:
/// a = 2^k - 1 = X^q - 1, b = 3^k - 1 = Y^q - 1. Z (the hypothetical root)
/// is never materialized; t is represented by its lower bound 1, the
/// hardest case of the inequality.
struct EndgameWitness {
    std::uint64_t k;
    Prime q;
    Natural a;
    Natural b;
    Natural x_base;  // 2^(k/q)
    Natural y_base;  // 3^(k/q)
    std::uint64_t t_min = 1;
};

EndgameWitness endgame_witness(std::uint64_t k, const Prime& q);

/// True iff b < a^2 and q^q (ab)^(q-1) > (a+b+1)^q, i.e. the expansion
/// identity that a q-th power solution would force cannot hold at (k, q).
bool endgame_contradiction(std::uint64_t k, const Prime& q);

}  // namespace cohn
