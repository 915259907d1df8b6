#include "cohn/lte.hpp"

#include <algorithm>
#include <utility>

namespace cohn {

static bool divides(const Prime& p, const Integer& n) {
    Natural base = p.natural();
    return mpz_divisible_p(n.get_mpz_t(), base.get_mpz_t()) != 0;
}

LteInput::LteInput(Integer a_in, Integer b_in, std::uint64_t k_in, Prime p_in)
    : a(std::move(a_in)), b(std::move(b_in)), k(k_in), p(p_in) {
    if (k == 0) throw std::invalid_argument("k must be positive");
    if (a == b) throw std::invalid_argument("a equals b");
    if (!divides(p, a - b)) throw std::invalid_argument("p does not divide a-b");
    if (divides(p, a)) throw std::invalid_argument("p divides a");
    if (divides(p, b)) throw std::invalid_argument("p divides b");
}

ValuationFact lte_valuation(const LteInput& in, unsigned long subject_bit_budget) {
    unsigned long v;
    Derivation tag;
    if (in.p.value() != 2) {
        v = nu(in.p, abs(in.a - in.b)).valuation + nu(in.p, Natural(in.k)).valuation;
        tag = Derivation::lte_odd;
    } else if (in.k % 2 == 1) {
        v = nu(in.p, abs(in.a - in.b)).valuation;
        tag = Derivation::lte_2_odd_k;
    } else {
        if (in.a == -in.b) throw std::invalid_argument("a^k equals b^k");
        v = nu(in.p, abs(in.a * in.a - in.b * in.b)).valuation +
            nu(in.p, Natural(in.k / 2)).valuation;
        tag = Derivation::lte_2_even_k;
    }

    std::optional<Natural> subject;
    unsigned long operand_bits = std::max(bit_length(in.a), bit_length(in.b));
    unsigned __int128 estimate =
        static_cast<unsigned __int128>(in.k) * operand_bits + 1;
    if (estimate <= subject_bit_budget) {
        Integer d = pow_nat(in.a, in.k) - pow_nat(in.b, in.k);
        subject = abs(d);
    }
    return ValuationFact{in.p, v, subject, tag};
}

}  // namespace cohn
