#include "cohn/arith.hpp"

#include <array>

namespace cohn {

unsigned long bit_length(const Natural& n) {
    return mpz_sizeinbase(n.get_mpz_t(), 2);
}

Natural pow_u64(std::uint64_t base, std::uint64_t exp) {
    Natural r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(exp));
    return r;
}

Natural pow_nat(const Natural& base, std::uint64_t exp) {
    Natural r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(exp));
    return r;
}

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mulmod_u64(result, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return result;
}

// Witness set proven deterministic for all n < 3.3 * 10^24, hence for uint64.
static constexpr std::array<std::uint64_t, 12> kWitnesses = {2,  3,  5,  7,  11, 13,
                                                             17, 19, 23, 29, 31, 37};

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : kWitnesses)
        if (n % p == 0) return n == p;

    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (std::uint64_t a : kWitnesses) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < r; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

Prime::Prime(std::uint64_t value) : value_(value) {
    if (!is_prime_u64(value)) throw std::invalid_argument("not a certified prime");
}

Prime::Prime(const Natural& value) : value_(0) {
    if (sgn(value) < 0 || bit_length(value) > 64)
        throw std::invalid_argument("prime exceeds 64-bit construction limit");
    value_ = mpz_get_ui(value.get_mpz_t());
    if (!is_prime_u64(value_)) throw std::invalid_argument("not a certified prime");
}

ValuationFact nu(const Prime& p, const Natural& n) {
    if (sgn(n) == 0) throw std::invalid_argument("valuation undefined for zero");
    if (sgn(n) < 0) throw std::invalid_argument("valuation subject must be positive");

    Natural cur = n;
    unsigned long v = 0;
    Natural base = p.natural();
    if (mpz_divisible_p(cur.get_mpz_t(), base.get_mpz_t())) {
        // ladder[i] = p^(2^i), capped at the subject itself
        std::vector<Natural> ladder{base};
        while (true) {
            Natural sq = ladder.back() * ladder.back();
            if (sq > cur) break;
            ladder.push_back(sq);
        }
        for (std::size_t i = ladder.size(); i-- > 0;) {
            while (mpz_divisible_p(cur.get_mpz_t(), ladder[i].get_mpz_t())) {
                mpz_divexact(cur.get_mpz_t(), cur.get_mpz_t(), ladder[i].get_mpz_t());
                v += 1UL << i;
            }
        }
    }
    return ValuationFact{p, v, n, Derivation::direct};
}

RootResult iroot(const Natural& n, unsigned long e) {
    if (e < 2) throw std::invalid_argument("exponent too small");
    if (sgn(n) < 0) throw std::invalid_argument("root subject must be nonnegative");
    Natural root, rem;
    mpz_rootrem(root.get_mpz_t(), rem.get_mpz_t(), n.get_mpz_t(), e);
    return RootResult{root, sgn(rem) == 0};
}

std::optional<PowerForm> perfect_power(const Natural& n) {
    if (n <= 1) throw std::invalid_argument("degenerate input");
    // Composite exponents are implied by their prime divisors, so prime
    // exponents up to bit_length(n) suffice; compose to maximize e.
    for (const Prime& e : primes_up_to(bit_length(n))) {
        RootResult r = iroot(n, e.value());
        if (r.root < 2) break;  // roots only shrink as e grows
        if (r.exact) {
            if (auto inner = perfect_power(r.root))
                return PowerForm{inner->base, inner->exponent * e.value()};
            return PowerForm{r.root, e.value()};
        }
    }
    return std::nullopt;
}

std::vector<Prime> primes_up_to(std::uint64_t limit) {
    std::vector<Prime> out;
    if (limit < 2) return out;
    std::vector<bool> composite(limit + 1, false);
    for (std::uint64_t i = 2; i * i <= limit; ++i) {
        if (composite[i]) continue;
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    for (std::uint64_t i = 2; i <= limit; ++i)
        if (!composite[i]) out.push_back(Prime(i, Prime::certified_tag{}));
    return out;
}

}  // namespace cohn
