#include "clpair/arith.hpp"
#include "clpair/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace clpair::arith {

using u128 = unsigned __int128;

// ===========================================================================
// Checked 64-bit arithmetic
// ===========================================================================

int64_t checked_add(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw capacity_error("integer addition exceeds 64-bit range");
    return r;
}

int64_t checked_mul(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw capacity_error("integer multiplication exceeds 64-bit range");
    return r;
}

int64_t checked_pow(int64_t base, int64_t exponent) {
    if (exponent < 0) throw std::invalid_argument("checked_pow requires a nonnegative exponent");
    int64_t result = 1;
    int64_t acc = base;
    int64_t e = exponent;
    while (e > 0) {
        if (e & 1) result = checked_mul(result, acc);
        e >>= 1;
        if (e > 0) acc = checked_mul(acc, acc);
    }
    return result;
}

int64_t isqrt(int64_t n) {
    if (n < 0) throw std::invalid_argument("isqrt requires a nonnegative argument");
    if (n == 0) return 0;
    auto r = static_cast<int64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r > n / r) --r;
    while ((r + 1) <= n / (r + 1)) ++r;
    return r;
}

static uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>(static_cast<u128>(a) * b % m);
}

static uint64_t powmod_u64(uint64_t base, uint64_t exponent, uint64_t m) {
    uint64_t result = 1 % m;
    base %= m;
    while (exponent > 0) {
        if (exponent & 1) result = mulmod_u64(result, base, m);
        base = mulmod_u64(base, base, m);
        exponent >>= 1;
    }
    return result;
}

int64_t mod_pow(int64_t base, int64_t exponent, int64_t modulus) {
    if (modulus <= 0) throw std::invalid_argument("mod_pow requires a positive modulus");
    if (exponent < 0) throw std::invalid_argument("mod_pow requires a nonnegative exponent");
    int64_t b = base % modulus;
    if (b < 0) b += modulus;
    return static_cast<int64_t>(powmod_u64(static_cast<uint64_t>(b),
                                           static_cast<uint64_t>(exponent),
                                           static_cast<uint64_t>(modulus)));
}

// Extended Euclid: returns g = gcd(a, b) and x, y with a*x + b*y = g.
static int64_t xgcd(int64_t a, int64_t b, int64_t& x, int64_t& y) {
    int64_t old_r = a, r = b;
    int64_t old_x = 1, cx = 0;
    int64_t old_y = 0, cy = 1;
    while (r != 0) {
        int64_t q = old_r / r;
        int64_t t;
        t = old_r - q * r; old_r = r; r = t;
        t = old_x - q * cx; old_x = cx; cx = t;
        t = old_y - q * cy; old_y = cy; cy = t;
    }
    x = old_x;
    y = old_y;
    return old_r;
}

int64_t mod_inverse(int64_t a, int64_t n) {
    if (n <= 0) throw std::invalid_argument("mod_inverse requires a positive modulus");
    int64_t x, y;
    int64_t g = xgcd(((a % n) + n) % n, n, x, y);
    if (g != 1 && g != -1)
        throw std::invalid_argument("mod_inverse: argument not invertible");
    int64_t r = x % n;
    if (r < 0) r += n;
    return r;
}

// ===========================================================================
// Prime tables
// ===========================================================================

const std::vector<int64_t> PrimeTable::empty_class_{};

PrimeTable::PrimeTable(int64_t limit, int64_t modulus, std::vector<int64_t> primes)
    : limit_(limit), modulus_(modulus), primes_(std::move(primes)) {
    if (modulus_ > 0) {
        for (int64_t p : primes_) {
            if (modulus_ % p == 0) continue; // primes dividing m stay unclassified
            by_residue_[p % modulus_].push_back(p);
        }
    }
}

bool PrimeTable::contains(int64_t n) const {
    return std::binary_search(primes_.begin(), primes_.end(), n);
}

const std::vector<int64_t>& PrimeTable::residue_class(int64_t r) const {
    if (modulus_ <= 0)
        throw std::invalid_argument("residue_class requires a table built with a classification modulus");
    int64_t rr = ((r % modulus_) + modulus_) % modulus_;
    auto it = by_residue_.find(rr);
    return it == by_residue_.end() ? empty_class_ : it->second;
}

PrimeTable sieve_primes(int64_t limit, int64_t modulus, const SieveConfig& config) {
    if (limit < 2) throw std::invalid_argument("sieve limit must be at least 2");
    if (modulus < 0) throw std::invalid_argument("classification modulus must be nonnegative");
    if (config.segment_size < 64) throw std::invalid_argument("segment size unreasonably small");
    if (limit > config.max_limit)
        throw capacity_error("sieve limit " + std::to_string(limit) +
                             " exceeds configured budget " + std::to_string(config.max_limit));

    int64_t root = isqrt(limit);
    std::vector<char> base(static_cast<size_t>(root) + 1, 1);
    std::vector<int64_t> base_primes;
    for (int64_t i = 2; i <= root; ++i) {
        if (!base[static_cast<size_t>(i)]) continue;
        base_primes.push_back(i);
        for (int64_t j = i * i; j <= root; j += i) base[static_cast<size_t>(j)] = 0;
    }

    std::vector<int64_t> primes;
    primes.reserve(static_cast<size_t>(
        limit > 16 ? static_cast<int64_t>(1.2 * limit / std::log(static_cast<double>(limit))) : 8));

    std::vector<char> seg;
    for (int64_t lo = 2; lo <= limit; lo += config.segment_size) {
        int64_t hi = std::min(limit, lo + config.segment_size - 1);
        seg.assign(static_cast<size_t>(hi - lo + 1), 1);
        for (int64_t p : base_primes) {
            if (p * p > hi) break;
            int64_t start = std::max(p * p, ((lo + p - 1) / p) * p);
            for (int64_t j = start; j <= hi; j += p) seg[static_cast<size_t>(j - lo)] = 0;
        }
        for (int64_t v = lo; v <= hi; ++v)
            if (seg[static_cast<size_t>(v - lo)]) primes.push_back(v);
    }
    return PrimeTable(limit, modulus, std::move(primes));
}

int64_t simple_prime_count(int64_t limit) {
    if (limit < 2) return 0;
    // Odd-only bitmap; independent of the segmented implementation above.
    int64_t n_odd = (limit - 1) / 2; // odd numbers 3, 5, ..., <= limit
    std::vector<char> odd_composite(static_cast<size_t>(n_odd) + 1, 0);
    int64_t count = 1; // the prime 2
    for (int64_t i = 1; i <= n_odd; ++i) {
        if (odd_composite[static_cast<size_t>(i)]) continue;
        int64_t p = 2 * i + 1;
        ++count;
        if (p <= limit / p)
            for (int64_t j = (p * p - 1) / 2; j <= n_odd; j += p)
                odd_composite[static_cast<size_t>(j)] = 1;
    }
    return count;
}

// ===========================================================================
// Primality / factorization
// ===========================================================================

namespace {
constexpr uint64_t mr_bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
}

bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : mr_bases)
        if (n % p == 0) return n == p;
    uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) { d >>= 1; ++r; }
    for (uint64_t a : mr_bases) {
        uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < r; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

// Pollard rho with Floyd cycle detection; n odd composite, no factor < 2^20.
// The polynomial increment walks 1, 2, 3, ... so the outcome is deterministic.
static uint64_t pollard_rho(uint64_t n) {
    for (uint64_t c = 1; c <= 200; ++c) {
        uint64_t x = 2, y = 2, d = 1;
        auto step = [&](uint64_t v) { return (mulmod_u64(v, v, n) + c) % n; };
        while (d == 1) {
            x = step(x);
            y = step(step(y));
            uint64_t diff = x > y ? x - y : y - x;
            if (diff == 0) { d = n; break; } // cycle without factor; next c
            d = std::gcd(diff, n);
        }
        if (d != n) return d;
    }
    throw invariant_error("pollard rho failed to split a composite");
}

static void factor_recursive(uint64_t n, std::vector<int64_t>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(static_cast<int64_t>(n));
        return;
    }
    uint64_t d = pollard_rho(n);
    factor_recursive(d, out);
    factor_recursive(n / d, out);
}

std::vector<std::pair<int64_t, int>> factorize(int64_t n) {
    if (n < 1) throw std::invalid_argument("factorize requires a positive argument");
    std::vector<int64_t> flat;
    uint64_t m = static_cast<uint64_t>(n);
    for (uint64_t p : {uint64_t{2}, uint64_t{3}, uint64_t{5}})
        while (m % p == 0) { flat.push_back(static_cast<int64_t>(p)); m /= p; }
    // 2,3,5-wheel trial division below 2^20; larger factors go to rho.
    static constexpr int wheel[8] = {4, 2, 4, 2, 4, 6, 2, 6};
    uint64_t d = 7;
    int wi = 0;
    while (d < (uint64_t{1} << 20) && d * d <= m) {
        while (m % d == 0) { flat.push_back(static_cast<int64_t>(d)); m /= d; }
        d += static_cast<uint64_t>(wheel[wi]);
        wi = (wi + 1) & 7;
    }
    factor_recursive(m, flat);
    std::sort(flat.begin(), flat.end());
    std::vector<std::pair<int64_t, int>> out;
    for (int64_t p : flat) {
        if (!out.empty() && out.back().first == p) ++out.back().second;
        else out.emplace_back(p, 1);
    }
    return out;
}

int64_t phi(int64_t n) {
    if (n < 1) throw std::invalid_argument("phi requires a positive argument");
    int64_t result = n;
    for (const auto& [p, e] : factorize(n)) result = result / p * (p - 1);
    return result;
}

int mobius(int64_t n) {
    if (n < 1) throw std::invalid_argument("mobius requires a positive argument");
    int sign = 1;
    for (const auto& [p, e] : factorize(n)) {
        if (e > 1) return 0;
        sign = -sign;
    }
    return sign;
}

int64_t tau(int64_t n) {
    if (n < 1) throw std::invalid_argument("tau requires a positive argument");
    int64_t count = 1;
    for (const auto& [p, e] : factorize(n)) count *= (e + 1);
    return count;
}

int omega_distinct(int64_t n) {
    if (n < 1) throw std::invalid_argument("omega_distinct requires a positive argument");
    return static_cast<int>(factorize(n).size());
}

// ===========================================================================
// Kronecker symbol
// ===========================================================================

int kronecker(int64_t a, int64_t n) {
    if (n == 0) throw std::invalid_argument("kronecker symbol is undefined for modulus 0");
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) result = -result; // (a | -1) = sign of a
    }
    if ((n & 1) == 0) {
        if ((a & 1) == 0) return 0;
        int v = 0;
        while ((n & 1) == 0) { n >>= 1; ++v; }
        if (v & 1) {
            // (a | 2) = +1 for a == +-1 (mod 8), -1 for a == +-3 (mod 8)
            int64_t a8 = ((a % 8) + 8) % 8;
            if (a8 == 3 || a8 == 5) result = -result;
        }
    }
    // Now n is odd and positive: standard Jacobi iteration.
    a %= n;
    if (a < 0) a += n;
    while (a != 0) {
        int v = 0;
        while ((a & 1) == 0) { a >>= 1; ++v; }
        if (v & 1) {
            int64_t n8 = n % 8;
            if (n8 == 3 || n8 == 5) result = -result;
        }
        if ((a % 4 == 3) && (n % 4 == 3)) result = -result;
        int64_t t = n % a;
        n = a;
        a = t;
    }
    return n == 1 ? result : 0;
}

// ===========================================================================
// Modulus
// ===========================================================================

Modulus::Modulus(int64_t m_in, int64_t s1_in, int64_t s2_in) : m(m_in), s1(s1_in), s2(s2_in) {
    if (m < 1) throw std::invalid_argument("modulus must be positive");
    s1 = ((s1 % m) + m) % m;
    s2 = ((s2 % m) + m) % m;
    if (std::gcd(s1, m) != 1 || std::gcd(s2, m) != 1)
        throw std::invalid_argument("selected residues must be coprime to the modulus");
}

// ===========================================================================
// Self-check sweeps
// ===========================================================================

SweepReport reciprocity_sweep(int64_t prime_bound) {
    SweepReport report;
    PrimeTable table = sieve_primes(std::max<int64_t>(prime_bound, 3));
    std::vector<int64_t> odd;
    for (int64_t p : table.primes())
        if (p > 2 && p <= prime_bound) odd.push_back(p);
    for (int64_t p : odd) {
        // supplementary laws
        int expected_m1 = (p % 4 == 1) ? 1 : -1;
        if (kronecker(-1, p) != expected_m1)
            report.mismatches.push_back("(-1|" + std::to_string(p) + ")");
        int expected_2 = (p % 8 == 1 || p % 8 == 7) ? 1 : -1;
        if (kronecker(2, p) != expected_2)
            report.mismatches.push_back("(2|" + std::to_string(p) + ")");
        report.checked += 2;
        for (int64_t q : odd) {
            if (q == p) continue;
            int sign = (p % 4 == 3 && q % 4 == 3) ? -1 : 1;
            if (kronecker(p, q) * kronecker(q, p) != sign)
                report.mismatches.push_back("(" + std::to_string(p) + "|" + std::to_string(q) + ")");
            ++report.checked;
        }
    }
    return report;
}

SweepReport sieve_primality_agreement(int64_t limit) {
    SweepReport report;
    PrimeTable table = sieve_primes(limit);
    size_t idx = 0;
    const auto& primes = table.primes();
    for (int64_t n = 2; n <= limit; ++n) {
        bool in_table = idx < primes.size() && primes[idx] == n;
        if (in_table) ++idx;
        if (in_table != is_prime(static_cast<uint64_t>(n)))
            report.mismatches.push_back(std::to_string(n));
        ++report.checked;
    }
    if (idx != primes.size()) report.mismatches.push_back("table holds primes beyond limit");
    return report;
}

} // namespace clpair::arith
