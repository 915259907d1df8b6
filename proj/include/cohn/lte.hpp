#pragma once

#include <cstdint>

#include "cohn/arith.hpp"

namespace cohn {

// Past this many bits the subject |a^k - b^k| is not materialized; the
// valuation is still exact (formula-derived).
inline constexpr unsigned long kDefaultSubjectBitBudget = 1UL << 20;

/// Validated input for the lifting-the-exponent rule: p | (a - b), p divides
/// neither a nor b, a != b, k >= 1. Construction throws naming the violated
/// clause. Negative a, b are accepted; the a^k + b^k variant is b -> -b.
struct LteInput {
    Integer a;
    Integer b;
    std::uint64_t k;
    Prime p;

    LteInput(Integer a, Integer b, std::uint64_t k, Prime p);
};

/// nu_p(a^k - b^k) in closed form:
///
///   p odd        : nu_p(a - b) + nu_p(k)
///   p = 2, k odd : nu_2(a - b)
///   p = 2, k even: nu_2(a^2 - b^2) + nu_2(k / 2)
///
/// The subject |a^k - b^k| is attached when it fits the bit budget.
ValuationFact lte_valuation(const LteInput& in,
                            unsigned long subject_bit_budget = kDefaultSubjectBitBudget);

}  // namespace cohn
