#include "cohn/lemmas.hpp"

#include <sstream>

namespace cohn {

static void require_odd(const Prime& q) {
    if (q.value() == 2) throw std::invalid_argument("q must be odd");
}

ConstraintSet small_prime_constraints(const Prime& q) {
    require_odd(q);
    const std::uint64_t qv = q.value();
    ConstraintSet cs{q, {}};
    cs.bounds.emplace(Prime(2), qv - 2);
    cs.bounds.emplace(Prime(3), qv - 1);
    if (qv >= 5) cs.bounds.emplace(Prime(5), qv - 1);
    if (qv >= 7) cs.bounds.emplace(Prime(7), qv - 1);
    return cs;
}

unsigned long min_large_exponent(const Prime& p, const Prime& q) {
    if (p.value() < 11) throw std::invalid_argument("lemma applies to p >= 11 only");
    require_odd(q);
    const std::uint64_t qv = q.value();
    const Natural six_pow = pow_u64(6, p.value() - 1);
    for (unsigned long v = 0;; ++v) {
        if (2 * static_cast<std::uint64_t>(v) >= qv) return v;  // q - 2v <= 0
        if (pow_u64(p.value(), qv - 2 * v) < six_pow) return v;
    }
}

FactoredBound k_lower_bound(const Prime& q) {
    require_odd(q);
    FactoredBound out;
    for (const auto& [p, e] : small_prime_constraints(q).bounds) out[p] = e;

    const std::vector<Prime> ps = primes_up_to(q.value());
    for (const Prime& p : ps) {
        if (p.value() < 11) continue;
        unsigned long e = std::max<unsigned long>(1, min_large_exponent(p, q));
        auto [it, inserted] = out.emplace(p, e);
        if (!inserted && it->second < e) it->second = e;
    }

    // The induction establishes (p - 1) | k at every step, so lcm{p - 1}
    // contributes its factored exponents as well.
    for (const Prime& p : ps) {
        std::uint64_t m = p.value() - 1;
        for (std::uint64_t d = 2; d * d <= m; ++d) {
            if (m % d != 0) continue;
            unsigned long e = 0;
            while (m % d == 0) {
                m /= d;
                ++e;
            }
            auto [it, inserted] = out.emplace(Prime(d), e);
            if (!inserted && it->second < e) it->second = e;
        }
        if (m > 1) out.emplace(Prime(m), 1UL);  // max with existing: 1 never exceeds
    }
    return out;
}

Natural expand_factored_bound(const FactoredBound& bound) {
    Natural m = 1;
    for (const auto& [p, e] : bound) m *= pow_u64(p.value(), e);
    return m;
}

AuditTrail induction_audit(const Prime& q) {
    require_odd(q);
    AuditTrail trail{q, {}};
    FactoredBound guaranteed;
    for (const auto& [p, e] : small_prime_constraints(q).bounds) guaranteed[p] = e;

    for (const Prime& p : primes_up_to(q.value())) {
        if (p.value() < 11) {
            trail.steps.push_back(
                AuditStep{p, AuditClaim::p_exponent_bound, guaranteed.at(p), {}});
            continue;
        }
        AuditStep step{p, AuditClaim::pm1_divides_k, 0, {}};
        const Natural pm1 = p.natural() - 1;
        for (const auto& [r, bound] : guaranteed) {
            unsigned long v = nu(r, pm1).valuation;
            bool holds = v <= bound;
            step.checks.push_back(AuditComparison{r, v, bound, holds});
            if (!holds) {
                std::ostringstream msg;
                msg << "induction audit failed at p=" << p.value() << ": nu_" << r.value()
                    << "(" << pm1 << ") = " << v << " exceeds guaranteed " << bound;
                throw std::logic_error(msg.str());
            }
        }
        step.guaranteed = std::max<unsigned long>(1, min_large_exponent(p, q));
        guaranteed[p] = step.guaranteed;
        trail.steps.push_back(std::move(step));
    }
    return trail;
}

EndgameWitness endgame_witness(std::uint64_t k, const Prime& q) {
    require_odd(q);
    if (k == 0 || k % q.value() != 0)
        throw std::invalid_argument("endgame requires q | k");
    if (k < q.value()) throw std::invalid_argument("endgame requires k >= q");
    EndgameWitness w{k, q, pow_u64(2, k) - 1, pow_u64(3, k) - 1,
                     pow_u64(2, k / q.value()), pow_u64(3, k / q.value()), 1};
    return w;
}

bool endgame_contradiction(std::uint64_t k, const Prime& q) {
    const EndgameWitness w = endgame_witness(k, q);
    if (!(w.b < w.a * w.a)) return false;
    // Root-free form of q (ab)^((q-1)/q) t > a + b + 1 at t = 1.
    const Natural ab = w.a * w.b;
    const Natural lhs = pow_u64(q.value(), q.value()) * pow_nat(ab, q.value() - 1);
    const Natural rhs = pow_nat(w.a + w.b + 1, q.value());
    return lhs > rhs;
}

}  // namespace cohn
