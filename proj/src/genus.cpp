#include "clpair/genus.hpp"
#include "clpair/errors.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

namespace clpair::genus {

// ===========================================================================
// Hilbert symbols
// ===========================================================================

namespace {

// (t - 1) / 2 mod 2 for odd t: 0 when t == 1 (mod 4), 1 when t == 3 (mod 4).
int eps2(int64_t t) {
    return (((t % 4) + 4) % 4 == 3) ? 1 : 0;
}

// (t^2 - 1) / 8 mod 2 for odd t: 0 when t == +-1 (mod 8), 1 when t == +-3.
int omega2(int64_t t) {
    int64_t r = ((t % 8) + 8) % 8;
    return (r == 3 || r == 5) ? 1 : 0;
}

} // namespace

int hilbert_symbol(int64_t a, int64_t b, int64_t place) {
    if (a == 0 || b == 0)
        throw std::invalid_argument("hilbert symbol requires nonzero arguments");
    if (place == infinite_place)
        return (a < 0 && b < 0) ? -1 : 1;
    if (place < 2 || !arith::is_prime(static_cast<uint64_t>(place)))
        throw std::invalid_argument("place must be a prime or the infinite place");

    if (place == 2) {
        int alpha = 0;
        int64_t u = a;
        while (u % 2 == 0) { u /= 2; ++alpha; }
        int beta = 0;
        int64_t v = b;
        while (v % 2 == 0) { v /= 2; ++beta; }
        int e = eps2(u) * eps2(v) + alpha * omega2(v) + beta * omega2(u);
        return (e % 2 == 0) ? 1 : -1;
    }

    int alpha = 0;
    int64_t u = a;
    while (u % place == 0) { u /= place; ++alpha; }
    int beta = 0;
    int64_t v = b;
    while (v % place == 0) { v /= place; ++beta; }
    int result = 1;
    if ((alpha & 1) && (beta & 1) && (place % 4 == 3)) result = -result;
    if (beta & 1) result *= arith::kronecker(u, place);
    if (alpha & 1) result *= arith::kronecker(v, place);
    return result;
}

int hilbert_reciprocity_product(int64_t a, int64_t b) {
    if (a == 0 || b == 0)
        throw std::invalid_argument("hilbert symbol requires nonzero arguments");
    std::set<int64_t> places{2};
    for (const auto& [p, e] : arith::factorize(a < 0 ? -a : a)) places.insert(p);
    for (const auto& [p, e] : arith::factorize(b < 0 ? -b : b)) places.insert(p);
    int product = hilbert_symbol(a, b, infinite_place);
    for (int64_t p : places) product *= hilbert_symbol(a, b, p);
    return product;
}

// ===========================================================================
// Square-class certification
// ===========================================================================

HasseCheck hasse_check(int64_t norm, int64_t disc) {
    if (norm < 1) throw std::invalid_argument("ideal norm must be positive");
    if (!qf::is_discriminant(disc))
        throw std::invalid_argument("not a negative discriminant");
    HasseCheck check;
    check.disc = disc;
    check.norm = norm;
    check.is_square_class = true;
    for (const auto& [p, e] : arith::factorize(-disc)) {
        int s = hilbert_symbol(norm, disc, p);
        check.symbols[p] = s;
        if (s != 1) check.is_square_class = false;
    }
    return check;
}

HasseCheck hasse_is_square_class(int64_t norm, int64_t p1, int64_t p2) {
    if (p1 == p2) throw std::invalid_argument("the two primes must be distinct");
    for (int64_t p : {p1, p2})
        if (p < 3 || p % 2 == 0 || !arith::is_prime(static_cast<uint64_t>(p)))
            throw std::invalid_argument("expected distinct odd primes");
    int64_t disc = arith::checked_mul(-4, arith::checked_mul(p1, p2));
    return hasse_check(norm, disc);
}

std::vector<qf::QuadForm> ambiguous_classes(int64_t disc, const qf::EnumConfig& config) {
    std::vector<qf::QuadForm> out;
    for (const qf::QuadForm& f : qf::enumerate_reduced(disc, config))
        if (f.b == 0 || f.a == f.b || f.a == f.c) out.push_back(f);
    return out;
}

// ===========================================================================
// Proposition certification
// ===========================================================================

PropositionReport verify_proposition_alg(int64_t ell, int64_t w, int64_t p1, int64_t p2,
                                         const qf::ProfileConfig& config) {
    PropositionReport r;
    r.witness.ell = ell;
    r.witness.w = w;
    r.witness.p1 = p1;
    r.witness.p2 = p2;

    bool w_shape = false;
    if (w >= 3 && w % 3 == 0) {
        int64_t m = arith::isqrt(w / 3);
        w_shape = (m % 2 == 1) && (3 * m * m == w);
        if (w_shape) {
            r.witness.m_param = m;
            r.witness.n_index = (m - 1) / 2;
        }
    }

    bool sum_ok = false;
    if (ell >= 2 && ell <= 62 && w >= 3 && p1 >= 1 && p2 >= 1) {
        try {
            int64_t k = arith::checked_pow(2, ell - 1);
            int64_t big_w = arith::checked_pow(w, k);
            sum_ok = arith::checked_add(p1, p2) == arith::checked_mul(2, big_w);
        } catch (const capacity_error&) {
            sum_ok = false; // the target value itself leaves 64-bit range
        }
    }

    bool d_ok = false;
    if (p1 >= 1 && p2 >= 1) {
        try {
            r.witness.d = arith::checked_mul(p1, p2);
            r.witness.h_target = arith::checked_add(p1, p2);
            d_ok = true;
        } catch (const capacity_error&) {
            d_ok = false;
        }
    }

    r.preconditions = {
        {"ell >= 2", ell >= 2},
        {"w = 3 m^2 with m odd", w_shape},
        {"p1 prime", p1 >= 2 && arith::is_prime(static_cast<uint64_t>(p1))},
        {"p1 == 11 (mod 24)", p1 >= 1 && p1 % 24 == 11},
        {"p2 prime", p2 >= 2 && arith::is_prime(static_cast<uint64_t>(p2))},
        {"p2 == 7 (mod 24)", p2 >= 1 && p2 % 24 == 7},
        {"p1 != p2", p1 != p2},
        {"d = p1 p2 within 64-bit range", d_ok},
        {"p1 + p2 == 2 w^(2^(ell-1))", sum_ok},
    };
    r.preconditions_ok =
        std::all_of(r.preconditions.begin(), r.preconditions.end(),
                    [](const PreconditionCheck& c) { return c.ok; });
    if (!r.preconditions_ok) return r;

    int64_t disc = arith::checked_mul(-4, r.witness.d);

    for (int64_t norm : {int64_t{2}, p1, arith::checked_mul(2, p1)})
        r.ambiguous_norms.push_back(hasse_check(norm, disc));
    int64_t pw = arith::checked_mul(p1, w);
    for (int64_t norm : {w, arith::checked_mul(2, w), pw, arith::checked_mul(2, pw)})
        r.order_norms.push_back(hasse_check(norm, disc));

    for (const HasseCheck& c : r.ambiguous_norms)
        if (!c.is_square_class) ++r.ambiguous_nonsquare;
    for (const HasseCheck& c : r.order_norms)
        if (!c.is_square_class) ++r.order_nonsquare;
    r.hasse_ok = r.ambiguous_nonsquare >= 1 && r.order_nonsquare >= 3;

    if (-disc <= config.max_abs_disc) {
        r.profile = qf::class_group_profile(disc, config);
        r.profile_checked = true;
        std::vector<int64_t> expected{2, int64_t{1} << ell};
        r.type_matches = (r.profile.two_sylow_type == expected);
    }

    r.pass = r.preconditions_ok && r.hasse_ok &&
             (r.profile_checked ? r.type_matches : true);
    return r;
}

PropositionReport verify_proposition_alg(const search::PrimePairWitness& witness,
                                         const qf::ProfileConfig& config) {
    PropositionReport r =
        verify_proposition_alg(witness.ell, witness.w, witness.p1, witness.p2, config);
    r.witness = witness;
    return r;
}

// ===========================================================================
// Type (2, 2) construction
// ===========================================================================

Type22Record type_2_2_record(int64_t p1, int64_t p2, const qf::ProfileConfig& config) {
    if (p1 < 2 || !arith::is_prime(static_cast<uint64_t>(p1)))
        throw std::invalid_argument("p1 must be prime");
    if (p1 % 8 != 3)
        throw std::invalid_argument("p1 must be congruent to 3 mod 8");
    if (p2 < 2 || !arith::is_prime(static_cast<uint64_t>(p2)))
        throw std::invalid_argument("p2 must be prime");
    if (((p2 - 7) % (8 * p1)) != 0)
        throw std::invalid_argument("p2 must be congruent to 7 mod 8*p1");
    if (p1 == p2) throw std::invalid_argument("the two primes must be distinct");

    Type22Record rec;
    rec.p1 = p1;
    rec.p2 = p2;
    rec.disc = arith::checked_mul(-4, arith::checked_mul(p1, p2));
    for (int64_t norm : {int64_t{2}, p1, arith::checked_mul(2, p1)})
        rec.checks.push_back(hasse_check(norm, rec.disc));
    rec.hasse_all_nonsquare =
        std::none_of(rec.checks.begin(), rec.checks.end(),
                     [](const HasseCheck& c) { return c.is_square_class; });
    if (-rec.disc <= config.max_abs_disc) {
        rec.profile = qf::class_group_profile(rec.disc, config);
        rec.profile_checked = true;
    }
    std::vector<int64_t> expected{2, 2};
    rec.pass = rec.hasse_all_nonsquare &&
               (rec.profile_checked ? rec.profile.two_sylow_type == expected : true);
    return rec;
}

std::vector<Type22Record> construct_type_2_2(int64_t p1_bound, int64_t p2_bound,
                                             const qf::ProfileConfig& config) {
    if (p1_bound < 3 || p2_bound < 7)
        throw std::invalid_argument("bounds must admit at least p1 = 3, p2 = 7");
    std::vector<Type22Record> records;
    arith::PrimeTable table = arith::sieve_primes(std::max(p1_bound, p2_bound));
    for (int64_t p1 : table.primes()) {
        if (p1 > p1_bound) break;
        if (p1 % 8 != 3) continue;
        for (int64_t p2 = 7; p2 <= p2_bound; p2 += 8 * p1) {
            if (p2 == p1 || !table.contains(p2)) continue;
            records.push_back(type_2_2_record(p1, p2, config));
        }
    }
    return records;
}

// ===========================================================================
// Self-check sweeps
// ===========================================================================

arith::SweepReport reciprocity_sample(int64_t count, uint64_t seed) {
    arith::SweepReport report;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int64_t> dist(-500, 500);
    while (report.checked < count) {
        int64_t a = dist(rng), b = dist(rng);
        if (a == 0 || b == 0) continue;
        if (hilbert_reciprocity_product(a, b) != 1)
            report.mismatches.push_back("(" + std::to_string(a) + ", " + std::to_string(b) + ")");
        ++report.checked;
    }
    return report;
}

arith::SweepReport hasse_agreement_sweep(int64_t max_abs_disc) {
    arith::SweepReport report;
    int64_t prod_bound = max_abs_disc / 4;
    arith::PrimeTable table = arith::sieve_primes(std::max<int64_t>(prod_bound / 3, 11));
    const auto& primes = table.primes();
    for (size_t i = 0; i < primes.size(); ++i) {
        int64_t p1 = primes[i];
        if (p1 * p1 > prod_bound) break;
        if (p1 == 2) continue;
        for (size_t j = i + 1; j < primes.size(); ++j) {
            int64_t p2 = primes[j];
            if (p1 * p2 > prod_bound) break;
            if ((p1 * p2) % 4 != 1) continue; // -4 p1 p2 fundamental iff p1 p2 == 1 mod 4
            int64_t disc = -4 * p1 * p2;
            std::string tag = "disc " + std::to_string(disc);

            std::vector<qf::QuadForm> forms = qf::enumerate_reduced(disc);
            std::set<qf::QuadForm> squares;
            for (const qf::QuadForm& f : forms) squares.insert(qf::compose(f, f));

            for (const qf::QuadForm& f : forms) {
                // smallest represented value coprime to 2 p1 p2
                int64_t best = 0;
                for (int64_t x = -6; x <= 6; ++x)
                    for (int64_t y = -6; y <= 6; ++y) {
                        int64_t v = f.a * x * x + f.b * x * y + f.c * y * y;
                        if (v <= 0) continue;
                        if (v % 2 == 0 || v % p1 == 0 || v % p2 == 0) continue;
                        if (best == 0 || v < best) best = v;
                    }
                if (best == 0) {
                    report.mismatches.push_back(tag + ": no coprime representative found");
                    continue;
                }
                bool via_symbols = hasse_check(best, disc).is_square_class;
                bool via_squares = squares.count(f) > 0;
                if (via_symbols != via_squares)
                    report.mismatches.push_back(tag + ": verdicts disagree for norm " +
                                                std::to_string(best));
                ++report.checked;
            }
        }
    }
    return report;
}

arith::SweepReport genus_count_sweep(int64_t max_abs_disc) {
    arith::SweepReport report;
    for (int64_t disc : qf::fundamental_discriminants(max_abs_disc)) {
        auto ambiguous = static_cast<int64_t>(ambiguous_classes(disc).size());
        int t = arith::omega_distinct(-disc);
        int64_t expected = int64_t{1} << (t - 1);
        if (ambiguous != expected)
            report.mismatches.push_back("disc " + std::to_string(disc) + ": " +
                                        std::to_string(ambiguous) + " ambiguous classes, expected " +
                                        std::to_string(expected));
        ++report.checked;
    }
    return report;
}

} // namespace clpair::genus
