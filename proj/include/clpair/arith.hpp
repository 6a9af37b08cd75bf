#ifndef CLPAIR_ARITH_HPP
#define CLPAIR_ARITH_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace clpair::arith {

// ---------------------------------------------------------------------------
// Overflow-checked 64-bit helpers.  Everything downstream works in int64_t;
// quantities that would leave that range raise capacity_error instead of
// silently wrapping.
// ---------------------------------------------------------------------------

int64_t checked_add(int64_t a, int64_t b);
int64_t checked_mul(int64_t a, int64_t b);
int64_t checked_pow(int64_t base, int64_t exponent);

// Floor of sqrt(n), exact (no floating-point edge cases).  n >= 0.
int64_t isqrt(int64_t n);

int64_t mod_pow(int64_t base, int64_t exponent, int64_t modulus);
// Inverse of a modulo n (gcd(a, n) must be 1).
int64_t mod_inverse(int64_t a, int64_t n);

// ---------------------------------------------------------------------------
// Prime tables
// ---------------------------------------------------------------------------

struct SieveConfig {
    int64_t segment_size = int64_t{1} << 20;
    int64_t max_limit = 100'000'000; // refuse larger requests (capacity_error)
};

// Immutable table of all primes <= limit.  When built with a classification
// modulus m > 0 the primes not dividing m are additionally partitioned by
// residue class mod m.
class PrimeTable {
public:
    PrimeTable() = default;
    PrimeTable(int64_t limit, int64_t modulus, std::vector<int64_t> primes);

    int64_t limit() const { return limit_; }
    int64_t modulus() const { return modulus_; }
    const std::vector<int64_t>& primes() const { return primes_; }

    // Membership via binary search; n may be anything <= limit.
    bool contains(int64_t n) const;

    // Primes p == r (mod modulus), p not dividing modulus.  Empty vector for
    // residues that hold no primes.  Requires a classification modulus.
    const std::vector<int64_t>& residue_class(int64_t r) const;

private:
    int64_t limit_ = 0;
    int64_t modulus_ = 0;
    std::vector<int64_t> primes_;
    std::map<int64_t, std::vector<int64_t>> by_residue_;
    static const std::vector<int64_t> empty_class_;
};

// Segmented sieve of Eratosthenes.  limit >= 2.
PrimeTable sieve_primes(int64_t limit, int64_t modulus = 0,
                        const SieveConfig& config = {});

// Deliberately naive second implementation (odd-only bitmap, no segmentation)
// used as an independent cross-check of sieve_primes.
int64_t simple_prime_count(int64_t limit);

// ---------------------------------------------------------------------------
// Primality / factorization
// ---------------------------------------------------------------------------

// Deterministic Miller-Rabin, valid for all n < 2^64.
bool is_prime(uint64_t n);

// Prime factorization of n >= 1 as (prime, exponent) pairs, primes ascending.
// Trial division over a small prime wheel, then Brent's cycle-finding rho
// with fixed polynomial increments, so the result is deterministic.
std::vector<std::pair<int64_t, int>> factorize(int64_t n);

int64_t phi(int64_t n);          // Euler totient, n >= 1
int mobius(int64_t n);           // Moebius function, n >= 1
int64_t tau(int64_t n);          // number of divisors, n >= 1
int omega_distinct(int64_t n);   // number of distinct prime factors, n >= 1

// Kronecker symbol (a|n), defined for all a and all n != 0.
int kronecker(int64_t a, int64_t n);

// ---------------------------------------------------------------------------
// Residue-pair setup shared by the analytic and search layers: a modulus m
// and two selected residue classes s1, s2 (each coprime to m).
// ---------------------------------------------------------------------------

struct Modulus {
    int64_t m;
    int64_t s1;
    int64_t s2;

    Modulus(int64_t m, int64_t s1, int64_t s2); // validates coprimality
};

// ---------------------------------------------------------------------------
// Self-check sweeps (used by tests and by the `verify` CLI command)
// ---------------------------------------------------------------------------

struct SweepReport {
    int64_t checked = 0;
    std::vector<std::string> mismatches;
    bool ok() const { return mismatches.empty(); }
};

// Quadratic reciprocity (via kronecker) over all pairs of distinct odd primes
// p, q <= prime_bound, plus the two supplementary laws at -1 and 2.
SweepReport reciprocity_sweep(int64_t prime_bound);

// sieve_primes vs is_prime on every integer in [2, limit].
SweepReport sieve_primality_agreement(int64_t limit);

} // namespace clpair::arith

#endif
