#ifndef CLPAIR_ANALYTIC_HPP
#define CLPAIR_ANALYTIC_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "clpair/arith.hpp"

namespace clpair::analytic {

// ---------------------------------------------------------------------------
// Exponential sums over residue classes
// ---------------------------------------------------------------------------

// Ramanujan sum c_q(n): sum of e(rn/q) over r coprime to q.  Closed form
// mu(q/g) * phi(q) / phi(q/g) with g = gcd(q, n); always an integer.
int64_t ramanujan_c(int64_t q, int64_t n);

// Same quantity by direct root-of-unity summation (test oracle).
std::complex<double> ramanujan_c_direct(int64_t q, int64_t n);

// The twisted coefficient mu_s(q, a): sum of e(ar/q) over r coprime to q with
// r == s (mod gcd(q, m)).  Computed in closed form: zero unless q/gcd(q,m) is
// squarefree and coprime to m, else a Moebius-signed root of unity.
std::complex<double> mu_s(int64_t q, int64_t a, int64_t s, int64_t m);

// Direct summation oracle for mu_s.
std::complex<double> mu_s_direct(int64_t q, int64_t a, int64_t s, int64_t m);

// ---------------------------------------------------------------------------
// Singular series for prime pairs p1 + p2 = h with p1 in class s1, p2 in s2
// ---------------------------------------------------------------------------

struct SingularSeriesSpec {
    arith::Modulus modulus;
    int64_t h = 0; // nonzero target
    int64_t P = 1; // truncation level for the finite sum
};

// Truncated series: sum over q <= P of
//   mu(q0)^2 c_{q0}(-h) c_d(s1 + s2 - h) / phi(q0 m)^2
// with d = gcd(q, m), q0 = q/d, and the term vanishing unless gcd(q0, m) = 1.
// Accumulated in exact rational arithmetic, returned as double.
double singular_finite(const SingularSeriesSpec& spec);

// Independent O(P^2) oracle: assembles each q-term from mu_s_direct values,
//   sum over a coprime to q of mu_s1(q,a) mu_s2(q,a) e(-ah/q) / phi(q0 m)^2.
double singular_defsum(const SingularSeriesSpec& spec);

struct SingularProduct {
    double value = 0.0;
    int64_t prime_bound = 0; // primes up to this entered the product
    double tail_bound = 0.0; // estimated relative truncation error (logged)
    bool exact_zero = false; // residue bracket failed or a local factor vanished
};

// Convergent product form:
//   [s1 + s2 == h (mod m)] * (m / phi(m)^2)
//     * prod_{p not | h m} (1 - 1/(p-1)^2) * prod_{p | h, p not | m} (1 + 1/(p-1))
// evaluated over all primes in the table.
SingularProduct singular_product(const arith::Modulus& mod, int64_t h,
                                 const arith::PrimeTable& primes);

// Fully assembled series for unordered class patterns:
//   S(h) = S_{s1,s1}(h) + 2 S_{s1,s2}(h) + S_{s2,s2}(h), product form.
double singular_S(const arith::Modulus& mod, int64_t h, const arith::PrimeTable& primes);

// ---------------------------------------------------------------------------
// Actual representation counts
// ---------------------------------------------------------------------------

struct RepCount {
    int64_t n = 0;
    double weighted = 0.0;  // sum of log p log q over ordered admissible pairs
    int64_t unweighted = 0; // number of ordered admissible pairs
    // by class pattern; the cross term counts one orientation only
    double weighted_11 = 0.0, weighted_12 = 0.0, weighted_22 = 0.0;
    int64_t count_11 = 0, count_12 = 0, count_22 = 0;
};

// Ordered representations n = p + q with p, q prime, each lying in class s1
// or s2 mod m.  Requires a table classified by mod.m covering n.
RepCount rep_count(int64_t n, const arith::Modulus& mod, const arith::PrimeTable& primes);

// ---------------------------------------------------------------------------
// Major-arc diagnostics
// ---------------------------------------------------------------------------

// f_s(alpha) = sum over primes p <= limit, p == s (mod m), of log(p) e(alpha p).
std::complex<double> f_s_eval(double alpha, int64_t s, const arith::Modulus& mod,
                              int64_t limit, const arith::PrimeTable& primes);

struct MajorArcRow {
    int64_t q = 0;
    int64_t a = 0;
    double rel_error = 0.0; // |f_s(a/q) - N mu_s(q,a) / phi(q0 m)| / N
};

// Compares f_s at every rational a/q, q <= q_max, gcd(a, q) = 1, against the
// first-order prediction N mu_s(q, a) / phi(q0 m).
std::vector<MajorArcRow> major_arc_diagnostic(int64_t limit, int64_t q_max, int64_t s,
                                              const arith::Modulus& mod,
                                              const arith::PrimeTable& primes);

// ---------------------------------------------------------------------------
// Self-check sweeps
// ---------------------------------------------------------------------------

// ramanujan_c vs direct summation: exact integer agreement after rounding,
// for all q <= q_max, |n| <= n_max.
arith::SweepReport ramanujan_oracle_sweep(int64_t q_max, int64_t n_max, double tol);

// mu_s closed form vs direct summation for q <= q_max, all a coprime to q,
// s in {mod.s1, mod.s2}.
arith::SweepReport mu_oracle_sweep(int64_t q_max, const arith::Modulus& mod, double tol);

} // namespace clpair::analytic

#endif
