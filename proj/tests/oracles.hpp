// Brute-force reference implementations, independent of the library under
// test: trial division, raw reduced-form scans, unit-count totients.  Slow on
// purpose; used only at small parameters to freeze expected values.
#ifndef CLPAIR_TESTS_ORACLES_HPP
#define CLPAIR_TESTS_ORACLES_HPP

#include <cstdint>
#include <numeric>
#include <vector>

namespace oracle {

inline bool is_prime(int64_t n) {
    if (n < 2) return false;
    for (int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline int64_t phi(int64_t n) {
    int64_t count = 0;
    for (int64_t k = 1; k <= n; ++k)
        if (std::gcd(k, n) == 1) ++count;
    return count;
}

inline int64_t tau(int64_t n) {
    int64_t count = 0;
    for (int64_t d = 1; d * d <= n; ++d)
        if (n % d == 0) count += (d * d == n) ? 1 : 2;
    return count;
}

inline int64_t mobius(int64_t n) {
    int64_t mu = 1;
    for (int64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        mu = -mu;
    }
    if (n > 1) mu = -mu;
    return mu;
}

// Legendre symbol by scanning for square roots mod an odd prime.
inline int legendre(int64_t a, int64_t p) {
    a %= p;
    if (a < 0) a += p;
    if (a == 0) return 0;
    for (int64_t x = 1; x < p; ++x)
        if (x * x % p == a) return 1;
    return -1;
}

// Number of canonically reduced primitive forms of discriminant disc < 0:
// gcd(a, b, c) = 1, -a < b <= a <= c, with b >= 0 when a == c.
inline int64_t reduced_count(int64_t disc) {
    int64_t count = 0;
    for (int64_t a = 1; 3 * a * a <= -disc; ++a)
        for (int64_t b = -a + 1; b <= a; ++b) {
            int64_t num = b * b - disc;
            if (num % (4 * a) != 0) continue;
            int64_t c = num / (4 * a);
            if (c < a) continue;
            if (a == c && b < 0) continue;
            if (std::gcd(std::gcd(a, b < 0 ? -b : b), c) != 1) continue;
            ++count;
        }
    return count;
}

// All primes in [2, limit] congruent to r mod m, by trial division.
inline std::vector<int64_t> primes_in_class(int64_t limit, int64_t m, int64_t r) {
    std::vector<int64_t> out;
    for (int64_t n = 2; n <= limit; ++n)
        if (n % m == r && is_prime(n)) out.push_back(n);
    return out;
}

} // namespace oracle

#endif
