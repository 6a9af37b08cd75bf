// End-to-end acceptance checks.  Each prints one [PASS]/[FAIL] line; the
// process exits nonzero if any fail.  Tolerances and expected counts are
// pinned from independent derivations (raw-scan form enumeration, exhaustive
// pair scans, direct summation) done before these were frozen.
#include "clpair/analytic.hpp"
#include "clpair/arith.hpp"
#include "clpair/errors.hpp"
#include "clpair/genus.hpp"
#include "clpair/quadform.hpp"
#include "clpair/search.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <string>
#include <vector>

namespace {

int failures = 0;

void report(int idx, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s\n", ok ? "PASS" : "FAIL", idx, detail.c_str());
    if (!ok) ++failures;
}

template <typename Fn> void criterion(int idx, Fn&& fn) {
    try {
        fn();
    } catch (const std::exception& e) {
        report(idx, false, std::string("exception: ") + e.what());
    }
}

std::string fmt(const char* pattern, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, v);
    return buf;
}

double lemma_bound(int64_t h, int64_t P) {
    return 10.0 * static_cast<double>(h) * static_cast<double>(clpair::arith::tau(h)) /
           (static_cast<double>(P) * static_cast<double>(clpair::arith::phi(h)));
}

} // namespace

int main() {
    using clpair::arith::Modulus;
    using clpair::arith::sieve_primes;
    namespace qf = clpair::qf;
    namespace genus = clpair::genus;
    namespace analytic = clpair::analytic;
    namespace search = clpair::search;

    Modulus mod24(24, 11, 7);

    // 1. smallest instances of both constructions, exact profiles, under a second
    criterion(1, [&] {
        auto start = std::chrono::steady_clock::now();
        auto p308 = qf::class_group_profile(-308);
        auto p84 = qf::class_group_profile(-84);
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool ok = p308.h == 8 && p308.two_sylow_type == std::vector<int64_t>{2, 4} &&
                  p84.h == 4 && p84.two_sylow_type == std::vector<int64_t>{2, 2} && secs < 1.0;
        report(1, ok,
               "disc -308: h = " + std::to_string(p308.h) + ", 2-Sylow (2, 4); disc -84: h = " +
                   std::to_string(p84.h) + ", 2-Sylow (2, 2); " + fmt("%.3f s", secs));
    });

    // 2 + 9 share the full search and census up to 10^7
    search::SearchResult res2, res3;
    search::CensusReport cens2;
    criterion(2, [&] {
        res2 = search::run_search(2, 10000000);
        res3 = search::run_search(3, 10000000);
        // census re-certifies every witness and throws on the first failure
        cens2 = search::census(2, res2.witnesses, {100000, 1000000, 10000000});
        auto cens3 = search::census(3, res3.witnesses, {10000000});
        bool ok = res2.complete && res3.complete && res2.witnesses.size() == 39 &&
                  res3.witnesses.size() == 4 && cens3.records[0].count == 4;
        report(2, ok,
               "every witness with d <= 10^7 certified: " + std::to_string(res2.witnesses.size()) +
                   " fields of type (2, 4), " + std::to_string(res3.witnesses.size()) +
                   " of type (2, 8), zero counterexamples");
    });

    // 3. symbol criterion vs exhaustive squaring image
    criterion(3, [&] {
        auto sweep = genus::hasse_agreement_sweep(20000);
        report(3, sweep.ok() && sweep.checked == 17464,
               "square-class verdicts agree with the squaring image on " +
                   std::to_string(sweep.checked) + " classes, " +
                   std::to_string(sweep.mismatches.size()) + " mismatches");
    });

    // 4. ambiguous-class count 2^(t-1)
    criterion(4, [&] {
        auto sweep = genus::genus_count_sweep(20000);
        report(4, sweep.ok() && sweep.checked == 6079,
               "ambiguous count = 2^(t-1) on " + std::to_string(sweep.checked) +
                   " fundamental discriminants, " + std::to_string(sweep.mismatches.size()) +
                   " mismatches");
    });

    // 5. closed forms vs direct summation, plus every branch of the twisted sum
    criterion(5, [&] {
        auto ram = analytic::ramanujan_oracle_sweep(500, 500, 1e-10);
        auto mu = analytic::mu_oracle_sweep(200, mod24, 1e-10);
        // branch exercise: collapsed modulus (q | m), split CRT phase, and both
        // vanishing reasons
        bool branches =
            std::abs(analytic::mu_s(4, 1, 11, 24) -
                     std::polar(1.0, 2.0 * 3.14159265358979323846 * 3.0 / 4.0)) < 1e-12 &&
            std::abs(analytic::mu_s(5, 1, 11, 24) - analytic::mu_s_direct(5, 1, 11, 24)) < 1e-12 &&
            std::abs(analytic::mu_s(9, 1, 11, 24)) == 0.0 &&
            std::abs(analytic::mu_s(25, 1, 11, 24)) == 0.0;
        report(5, ram.ok() && mu.ok() && branches,
               "ramanujan " + std::to_string(ram.checked) + " and twisted-sum " +
                   std::to_string(mu.checked) +
                   " closed-form values match direct summation; all four branch shapes hit");
    });

    // 6. truncated series converges to the product at the stated rate
    criterion(6, [&] {
        auto table = sieve_primes(100000);
        bool ok = true;
        double worst = 0.0;
        for (int64_t h : {18, 162, 1458}) {
            double prod = analytic::singular_product(mod24, h, table).value;
            for (int64_t P : {100, 1000, 10000}) {
                double finite = analytic::singular_finite({mod24, h, P});
                double slack = std::abs(finite - prod) / lemma_bound(h, P);
                worst = std::max(worst, slack);
                ok = ok && std::abs(finite - prod) <= lemma_bound(h, P);
            }
        }
        report(6, ok,
               "|finite - product| <= 10 h tau(h) / (P phi(h)) on all 9 (h, P) cells; worst "
               "slack " + fmt("%.2e", worst) + " of the bound");
    });

    // 7. exact vanishing on the obstructed residues
    criterion(7, [&] {
        auto table = sieve_primes(100000);
        bool ok = true;
        for (int64_t h = 1; h <= 24; ++h) {
            auto prod = analytic::singular_product(mod24, h, table);
            bool obstructed = (h % 24) != 18;
            ok = ok && prod.exact_zero == obstructed;
            if (obstructed) {
                ok = ok && prod.value == 0.0;
                double finite = analytic::singular_finite({mod24, h, 1000});
                ok = ok && std::abs(finite) <= lemma_bound(h, 1000);
            }
        }
        report(7, ok,
               "product vanishes exactly on the 23 obstructed residues mod 24 and only there; "
               "truncated sums stay within the truncation bound of zero");
    });

    // 8. representation counts vs the predicted density
    criterion(8, [&] {
        auto table24 = sieve_primes(1000000, 24);
        auto table = sieve_primes(100000);
        std::vector<int64_t> targets;
        for (int64_t n = 0;; ++n) {
            int64_t f = search::target_value(2, n);
            if (f > 1000000) break;
            targets.push_back(f);
        }
        bool all_represented = true;
        double mean = 0.0;
        for (int64_t f : targets) {
            auto rc = analytic::rep_count(f, mod24, table24);
            if (rc.count_12 <= 0) all_represented = false;
            double predicted = analytic::singular_S(mod24, f, table) * static_cast<double>(f);
            mean += std::abs(rc.weighted / predicted - 1.0);
        }
        mean /= static_cast<double>(targets.size());
        report(8, all_represented && mean <= 0.15 && targets.size() == 8,
               "all " + std::to_string(targets.size()) +
                   " target sums below 10^6 have cross-class prime pairs (fewer than 20 exist at "
                   "this scale); mean density deviation " + fmt("%.4f", mean) + " <= 0.15");
    });

    // 9. the census ratio stays above the constant frozen at calibration
    criterion(9, [&] {
        // half the ratio measured at X = 10^5 when this suite was first built
        const double floor_constant = 0.29;
        bool ok = cens2.records.size() == 3;
        double lowest = 1e300;
        for (const auto& rec : cens2.records) {
            lowest = std::min(lowest, rec.ratio);
            ok = ok && rec.ratio > floor_constant;
        }
        report(9, ok,
               "count * ln^2(X) / X^(5/8) stays above " + fmt("%.2f", floor_constant) +
                   " at X = 10^5, 10^6, 10^7 (minimum " + fmt("%.4f", lowest) + ")");
    });

    // 10. first-order major-arc prediction at N = 10^6
    criterion(10, [&] {
        auto table24 = sieve_primes(1000000, 24);
        double worst = 0.0;
        int warnings = 0;
        for (int64_t s : {int64_t{11}, int64_t{7}}) {
            for (const auto& row : analytic::major_arc_diagnostic(1000000, 12, s, mod24, table24)) {
                worst = std::max(worst, row.rel_error);
                if (row.rel_error > 0.02 && row.rel_error <= 0.05) {
                    ++warnings;
                    std::printf("  [warn] criterion 10: q=%lld a=%lld s=%lld relative error %.4f\n",
                                static_cast<long long>(row.q), static_cast<long long>(row.a),
                                static_cast<long long>(s), row.rel_error);
                }
            }
        }
        report(10, worst <= 0.05,
               "exponential sums track N mu_s(q,a)/phi(q0 m) for q <= 12: worst relative error " +
                   fmt("%.5f", worst) + (warnings ? " (" + std::to_string(warnings) + " warnings)"
                                                  : " (warn above 0.02, fail above 0.05)"));
    });

    std::printf("%d of 10 criteria passed\n", 10 - failures);
    return failures == 0 ? 0 : 1;
}
