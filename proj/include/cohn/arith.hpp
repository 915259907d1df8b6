#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

namespace cohn {

// All equation values (k, x, n, y, a, b, N) live in arbitrary precision;
// arithmetic is exact, never saturating, never floating point.
using Natural = mpz_class;
using Integer = mpz_class;

unsigned long bit_length(const Natural& n);

/// base^exp as an exact Natural.
Natural pow_u64(std::uint64_t base, std::uint64_t exp);
Natural pow_nat(const Natural& base, std::uint64_t exp);

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Deterministic Miller-Rabin over the witness set valid for all 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

/// A certified prime. Construction runs the deterministic primality check;
/// values above 64 bits are rejected (every prime this toolkit names is tiny).
class Prime {
  public:
    explicit Prime(std::uint64_t value);
    explicit Prime(const Natural& value);

    std::uint64_t value() const { return value_; }
    Natural natural() const { return Natural(static_cast<unsigned long>(value_)); }

    friend bool operator==(const Prime& lhs, const Prime& rhs) { return lhs.value_ == rhs.value_; }
    friend bool operator!=(const Prime& lhs, const Prime& rhs) { return lhs.value_ != rhs.value_; }
    friend bool operator<(const Prime& lhs, const Prime& rhs) { return lhs.value_ < rhs.value_; }

    friend std::vector<Prime> primes_up_to(std::uint64_t limit);

  private:
    struct certified_tag {};
    Prime(std::uint64_t value, certified_tag) : value_(value) {}

    std::uint64_t value_;
};

enum class Derivation { direct, lte_odd, lte_2_odd_k, lte_2_even_k };

/// A checked statement "nu_p(subject) = valuation": p^valuation divides the
/// subject and p^(valuation+1) does not. The subject is omitted when the
/// producing operation declined to materialize it (size budget); the
/// valuation is exact either way.
struct ValuationFact {
    Prime prime;
    unsigned long valuation = 0;
    std::optional<Natural> subject;
    Derivation derivation = Derivation::direct;
};

/// nu_p(n): the exponent of p in the prime factorization of n. Exact for
/// subjects of any size; division runs on a p^(2^i) ladder so huge n
/// (thousands of bits) costs O(log v) big divisions.
ValuationFact nu(const Prime& p, const Natural& n);

struct RootResult {
    Natural root;  // floor(n^(1/e))
    bool exact;    // root^e == n
};

/// Integer e-th root with floor semantics, e >= 2. Never floating point.
RootResult iroot(const Natural& n, unsigned long e);

struct PowerForm {
    Natural base;            // minimal base, >= 2
    unsigned long exponent;  // maximal exponent, >= 2
};

/// Full perfect-power decomposition of n >= 2: the (x, e) with x^e = n,
/// x minimal and e maximal, or nullopt when n is not a perfect power.
/// Scans prime exponents up to bit_length(n), then composes.
std::optional<PowerForm> perfect_power(const Natural& n);

/// Exactly the primes <= limit, ascending.
std::vector<Prime> primes_up_to(std::uint64_t limit);

}  // namespace cohn
