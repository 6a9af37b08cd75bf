#include "clpair/analytic.hpp"
#include "clpair/errors.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace clpair::analytic {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

namespace {

// e(num/den) = exp(2 pi i num / den), with the fraction reduced mod den first
// so large numerators cost no precision.
std::complex<double> unit_phase(int64_t num, int64_t den) {
    int64_t r = ((num % den) + den) % den;
    double angle = 2.0 * std::numbers::pi * (static_cast<double>(r) / static_cast<double>(den));
    return {std::cos(angle), std::sin(angle)};
}

} // namespace

// ===========================================================================
// Exponential sums
// ===========================================================================

int64_t ramanujan_c(int64_t q, int64_t n) {
    if (q < 1) throw std::invalid_argument("ramanujan sum requires q >= 1");
    int64_t nn = ((n % q) + q) % q;
    int64_t g = std::gcd(q, nn); // gcd(q, 0) == q handles n == 0 (mod q)
    int64_t q1 = q / g;
    int mu = arith::mobius(q1);
    if (mu == 0) return 0;
    int64_t value = arith::phi(q) / arith::phi(q1); // phi(q1) | phi(q)
    return mu * value;
}

std::complex<double> ramanujan_c_direct(int64_t q, int64_t n) {
    if (q < 1) throw std::invalid_argument("ramanujan sum requires q >= 1");
    std::complex<double> sum = 0.0;
    for (int64_t r = 1; r <= q; ++r)
        if (std::gcd(r, q) == 1) sum += unit_phase(r * (n % q), q);
    return sum;
}

std::complex<double> mu_s(int64_t q, int64_t a, int64_t s, int64_t m) {
    if (q < 1 || m < 1) throw std::invalid_argument("mu_s requires q >= 1 and m >= 1");
    if (std::gcd(((a % q) + q) % q, q) != 1)
        throw std::invalid_argument("mu_s requires gcd(a, q) = 1");
    if (std::gcd(((s % m) + m) % m, m) != 1)
        throw std::invalid_argument("mu_s requires gcd(s, m) = 1");
    int64_t d = std::gcd(q, m);
    int64_t q0 = q / d;
    if (std::gcd(q0, m) != 1) return 0.0;
    int mu = arith::mobius(q0);
    if (mu == 0) return 0.0;

    // Chinese-remainder the per-prime excluded residues into one shift s'
    // with s' == -s * d^(-1) (mod p) for each prime p | q0.
    int64_t sp = 0, acc = 1;
    for (const auto& [p, e] : arith::factorize(q0)) {
        int64_t target = ((-s) % p + p) % p;
        target = (static_cast<__int128>(target) * arith::mod_inverse(d % p, p)) % p;
        // combine sp (mod acc) with target (mod p)
        int64_t k = ((target - sp) % p + p) % p;
        k = (static_cast<__int128>(k) * arith::mod_inverse(acc % p, p)) % p;
        sp += acc * k;
        acc *= p;
    }
    std::complex<double> phase =
        unit_phase((static_cast<__int128>(a) * s) % q, q) *
        (q0 == 1 ? 1.0 : unit_phase((static_cast<__int128>(a) * sp) % q0, q0));
    return static_cast<double>(mu) * phase;
}

std::complex<double> mu_s_direct(int64_t q, int64_t a, int64_t s, int64_t m) {
    if (q < 1 || m < 1) throw std::invalid_argument("mu_s requires q >= 1 and m >= 1");
    int64_t d = std::gcd(q, m);
    int64_t srem = ((s % d) + d) % d;
    std::complex<double> sum = 0.0;
    for (int64_t r = 0; r < q; ++r) {
        if (std::gcd(r, q) != 1) continue;
        if (r % d != srem) continue;
        sum += unit_phase((static_cast<__int128>(a) * r) % q, q);
    }
    return sum;
}

// ===========================================================================
// Singular series
// ===========================================================================

namespace {

void validate_target(int64_t h) {
    if (h == 0) throw std::invalid_argument("target h must be nonzero");
}

} // namespace

double singular_finite(const SingularSeriesSpec& spec) {
    validate_target(spec.h);
    if (spec.P < 1) throw std::invalid_argument("truncation level P must be >= 1");
    const int64_t m = spec.modulus.m;
    const int64_t s_sum = spec.modulus.s1 + spec.modulus.s2;

    // Group terms by denominator phi(q0 m)^2; numerators are small integers.
    std::map<int64_t, cpp_int> buckets;
    for (int64_t q = 1; q <= spec.P; ++q) {
        int64_t d = std::gcd(q, m);
        int64_t q0 = q / d;
        if (std::gcd(q0, m) != 1) continue;
        if (arith::mobius(q0) == 0) continue; // mu(q0)^2 factor
        int64_t num = arith::checked_mul(ramanujan_c(q0, -spec.h),
                                         ramanujan_c(d, s_sum - spec.h));
        if (num == 0) continue;
        int64_t den = arith::phi(arith::checked_mul(q0, m));
        buckets[den] += num;
    }
    cpp_rational sum = 0;
    for (const auto& [den, num] : buckets)
        sum += cpp_rational(num, cpp_int(den) * den);
    return static_cast<double>(sum);
}

double singular_defsum(const SingularSeriesSpec& spec) {
    validate_target(spec.h);
    if (spec.P < 1) throw std::invalid_argument("truncation level P must be >= 1");
    const int64_t m = spec.modulus.m;
    std::complex<double> total = 0.0;
    for (int64_t q = 1; q <= spec.P; ++q) {
        int64_t q0 = q / std::gcd(q, m);
        double den = static_cast<double>(arith::phi(arith::checked_mul(q0, m)));
        std::complex<double> term = 0.0;
        for (int64_t a = 1; a <= q; ++a) {
            if (std::gcd(a, q) != 1) continue;
            term += mu_s_direct(q, a, spec.modulus.s1, m) *
                    mu_s_direct(q, a, spec.modulus.s2, m) *
                    unit_phase(-((static_cast<__int128>(a) * spec.h) % q), q);
        }
        total += term / (den * den);
    }
    return total.real();
}

SingularProduct singular_product(const arith::Modulus& mod, int64_t h,
                                 const arith::PrimeTable& primes) {
    validate_target(h);
    SingularProduct result;
    result.prime_bound = primes.limit();
    int64_t hh = h < 0 ? -h : h;
    int64_t rem = (((mod.s1 + mod.s2 - h) % mod.m) + mod.m) % mod.m;
    if (rem != 0) {
        result.exact_zero = true;
        return result;
    }
    long double acc = static_cast<long double>(mod.m) /
                      (static_cast<long double>(arith::phi(mod.m)) * arith::phi(mod.m));
    for (int64_t p : primes.primes()) {
        if (mod.m % p == 0) continue;
        long double pm1 = static_cast<long double>(p - 1);
        if (hh % p == 0) {
            acc *= 1.0L + 1.0L / pm1;
        } else {
            if (p == 2) { // factor 1 - 1/(2-1)^2 annihilates the product
                result.exact_zero = true;
                result.value = 0.0;
                return result;
            }
            acc *= 1.0L - 1.0L / (pm1 * pm1);
        }
    }
    result.value = static_cast<double>(acc);
    // Tail of sum 1/(p-1)^2 over p > bound, by the usual prime-density
    // integral; relative product error is of the same size.  Logged only.
    long double b = static_cast<long double>(result.prime_bound);
    result.tail_bound = static_cast<double>(1.0L / ((b - 1.0L) * std::log(b)));
    return result;
}

double singular_S(const arith::Modulus& mod, int64_t h, const arith::PrimeTable& primes) {
    arith::Modulus m11(mod.m, mod.s1, mod.s1);
    arith::Modulus m12(mod.m, mod.s1, mod.s2);
    arith::Modulus m22(mod.m, mod.s2, mod.s2);
    return singular_product(m11, h, primes).value +
           2.0 * singular_product(m12, h, primes).value +
           singular_product(m22, h, primes).value;
}

// ===========================================================================
// Representation counts
// ===========================================================================

RepCount rep_count(int64_t n, const arith::Modulus& mod, const arith::PrimeTable& primes) {
    if (n < 2) throw std::invalid_argument("representation target must be >= 2");
    if (primes.limit() < n)
        throw std::invalid_argument("prime table does not cover the representation target");
    if (primes.modulus() != mod.m)
        throw std::invalid_argument("prime table is not classified by the requested modulus");

    RepCount rc;
    rc.n = n;
    auto scan = [&](int64_t class_first, int64_t class_second, double& weighted, int64_t& count) {
        for (int64_t p : primes.residue_class(class_first)) {
            if (p >= n) break;
            int64_t q = n - p;
            if (q < 2 || q % mod.m != class_second) continue;
            if (!primes.contains(q)) continue;
            weighted += std::log(static_cast<double>(p)) * std::log(static_cast<double>(q));
            ++count;
        }
    };
    scan(mod.s1, mod.s1, rc.weighted_11, rc.count_11);
    scan(mod.s1, mod.s2, rc.weighted_12, rc.count_12);
    scan(mod.s2, mod.s2, rc.weighted_22, rc.count_22);
    rc.weighted = rc.weighted_11 + 2.0 * rc.weighted_12 + rc.weighted_22;
    rc.unweighted = rc.count_11 + 2 * rc.count_12 + rc.count_22;
    return rc;
}

// ===========================================================================
// Major-arc diagnostics
// ===========================================================================

std::complex<double> f_s_eval(double alpha, int64_t s, const arith::Modulus& mod,
                              int64_t limit, const arith::PrimeTable& primes) {
    if (limit < 2) throw std::invalid_argument("summation limit must be >= 2");
    if (primes.limit() < limit)
        throw std::invalid_argument("prime table does not cover the summation limit");
    if (primes.modulus() != mod.m)
        throw std::invalid_argument("prime table is not classified by the requested modulus");
    std::complex<double> sum = 0.0;
    for (int64_t p : primes.residue_class(s)) {
        if (p > limit) break;
        double frac = std::fmod(alpha * static_cast<double>(p), 1.0);
        double angle = 2.0 * std::numbers::pi * frac;
        sum += std::log(static_cast<double>(p)) * std::complex<double>{std::cos(angle), std::sin(angle)};
    }
    return sum;
}

std::vector<MajorArcRow> major_arc_diagnostic(int64_t limit, int64_t q_max, int64_t s,
                                              const arith::Modulus& mod,
                                              const arith::PrimeTable& primes) {
    if (limit < 2) throw std::invalid_argument("summation limit must be >= 2");
    if (q_max < 1) throw std::invalid_argument("q_max must be >= 1");
    if (primes.limit() < limit)
        throw std::invalid_argument("prime table does not cover the summation limit");
    if (primes.modulus() != mod.m)
        throw std::invalid_argument("prime table is not classified by the requested modulus");

    std::vector<MajorArcRow> rows;
    const auto& cls = primes.residue_class(s);
    for (int64_t q = 1; q <= q_max; ++q) {
        // Bucket the weighted class by residue mod q; then every a is a
        // q-term combination instead of a fresh pass over the primes.
        std::vector<double> bucket(static_cast<size_t>(q), 0.0);
        for (int64_t p : cls) {
            if (p > limit) break;
            bucket[static_cast<size_t>(p % q)] += std::log(static_cast<double>(p));
        }
        int64_t q0 = q / std::gcd(q, mod.m);
        double den = static_cast<double>(arith::phi(arith::checked_mul(q0, mod.m)));
        for (int64_t a = 1; a <= q; ++a) {
            if (std::gcd(a, q) != 1) continue;
            std::complex<double> f = 0.0;
            for (int64_t r = 0; r < q; ++r)
                if (bucket[static_cast<size_t>(r)] != 0.0)
                    f += bucket[static_cast<size_t>(r)] * unit_phase(a * r, q);
            std::complex<double> est =
                static_cast<double>(limit) * mu_s(q, a, s, mod.m) / den;
            rows.push_back({q, a, std::abs(f - est) / static_cast<double>(limit)});
        }
    }
    return rows;
}

// ===========================================================================
// Self-check sweeps
// ===========================================================================

arith::SweepReport ramanujan_oracle_sweep(int64_t q_max, int64_t n_max, double tol) {
    arith::SweepReport report;
    for (int64_t q = 1; q <= q_max; ++q) {
        // the direct sum depends on n only through n mod q
        std::vector<std::complex<double>> direct(static_cast<size_t>(q));
        for (int64_t r = 0; r < q; ++r) direct[static_cast<size_t>(r)] = ramanujan_c_direct(q, r);
        for (int64_t n = -n_max; n <= n_max; ++n) {
            std::complex<double> dv = direct[static_cast<size_t>(((n % q) + q) % q)];
            int64_t closed = ramanujan_c(q, n);
            if (std::abs(dv.imag()) > tol ||
                std::abs(dv.real() - static_cast<double>(closed)) > tol ||
                static_cast<int64_t>(std::llround(dv.real())) != closed)
                report.mismatches.push_back("c_" + std::to_string(q) + "(" + std::to_string(n) + ")");
            ++report.checked;
        }
    }
    return report;
}

arith::SweepReport mu_oracle_sweep(int64_t q_max, const arith::Modulus& mod, double tol) {
    arith::SweepReport report;
    for (int64_t q = 1; q <= q_max; ++q) {
        for (int64_t a = 1; a <= q; ++a) {
            if (std::gcd(a, q) != 1) continue;
            for (int64_t s : {mod.s1, mod.s2}) {
                std::complex<double> closed = mu_s(q, a, s, mod.m);
                std::complex<double> direct = mu_s_direct(q, a, s, mod.m);
                if (std::abs(closed - direct) > tol)
                    report.mismatches.push_back("mu_s(" + std::to_string(q) + "," +
                                                std::to_string(a) + ";" + std::to_string(s) + ")");
                ++report.checked;
            }
        }
    }
    return report;
}

} // namespace clpair::analytic
