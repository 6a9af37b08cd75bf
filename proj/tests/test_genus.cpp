#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "clpair/errors.hpp"
#include "clpair/genus.hpp"
#include "clpair/quadform.hpp"
#include "clpair/search.hpp"
#include "oracles.hpp"

using namespace clpair::genus;

// Brute Hilbert symbol at an odd prime p: (a, b)_p = +1 iff a x^2 + b y^2 = z^2
// has a primitive solution mod p^3.  With valuations of a, b at most 1 the
// gradient of the form has valuation at most 1 at any primitive zero, so a
// zero mod p^3 lifts p-adically by Hensel; the converse is plain reduction.
// Primitivity: x, y both divisible by p forces z divisible too.
static int brute_hilbert_odd(int64_t a, int64_t b, int64_t p) {
    int64_t mod = p * p * p;
    auto red = [&](int64_t v) { return ((v % mod) + mod) % mod; };
    int64_t ar = red(a), br = red(b);
    std::vector<char> is_square(mod, 0);
    for (int64_t z = 0; z < mod; ++z) is_square[z * z % mod] = 1;
    for (int64_t x = 0; x < mod; ++x) {
        int64_t ax2 = ar * (x * x % mod) % mod;
        for (int64_t y = 0; y < mod; ++y) {
            if (x % p == 0 && y % p == 0) continue;
            if (is_square[(ax2 + br * (y * y % mod)) % mod]) return 1;
        }
    }
    return -1;
}

TEST_CASE("hilbert symbol at odd primes matches p-adic solubility") {
    for (int64_t p : {3, 5, 7}) {
        for (int64_t a : {1, 2, 3, 5, -1, -2, -7, 10})
            for (int64_t b : {1, 2, 3, 5, -1, -3, -11}) {
                CAPTURE(a);
                CAPTURE(b);
                CAPTURE(p);
                CHECK(hilbert_symbol(a, b, p) == brute_hilbert_odd(a, b, p));
            }
    }
}

TEST_CASE("hilbert symbol table values") {
    // at the infinite place: -1 iff both negative
    CHECK(hilbert_symbol(-1, -1, infinite_place) == -1);
    CHECK(hilbert_symbol(-1, 2, infinite_place) == 1);
    CHECK(hilbert_symbol(3, 5, infinite_place) == 1);
    // (-1, -1)_2 = -1: x^2 + y^2 = -z^2 has no 2-adic solution
    CHECK(hilbert_symbol(-1, -1, 2) == -1);
    CHECK(hilbert_symbol(2, 2, 2) == 1);   // 2 x^2 + 2 y^2 = z^2 at (1,1,2)
    CHECK(hilbert_symbol(-1, 7, 2) == -1); // 7 == 3 mod 4 is not a 2-adic sum of two squares
    CHECK(hilbert_symbol(5, 3, 5) == -1);  // 3 is not a square mod 5
    CHECK(hilbert_symbol(5, 11, 5) == 1);  // 11 == 1 mod 5 is a square
    CHECK(hilbert_symbol(3, 3, 3) == -1);  // (p,p)_p = (-1|p), and -1 is not a square mod 3
    // symmetry and bilinearity spot checks
    for (int64_t a : {2, 3, 5, -7})
        for (int64_t b : {2, -3, 11}) {
            CHECK(hilbert_symbol(a, b, 7) == hilbert_symbol(b, a, 7));
            CHECK(hilbert_symbol(a * 49, b, 7) == hilbert_symbol(a, b, 7));
        }
}

TEST_CASE("reciprocity: product over all places is +1") {
    CHECK(hilbert_reciprocity_product(-1, -1) == 1);
    CHECK(hilbert_reciprocity_product(2, 77) == 1);
    CHECK(hilbert_reciprocity_product(-308, 15) == 1);
    auto report = reciprocity_sample(5000, 0x9e3779b97f4a7c15ULL);
    CHECK(report.ok());
    CHECK(report.checked == 5000);
}

TEST_CASE("square classes of discriminant -308 via the symbol criterion") {
    // class group is Z/2 x Z/4: squares are the identity and the norm-9 class
    CHECK(hasse_check(1, -308).is_square_class);
    CHECK(hasse_check(9, -308).is_square_class);
    CHECK(hasse_check(25, -308).is_square_class);
    CHECK_FALSE(hasse_check(3, -308).is_square_class);
    CHECK_FALSE(hasse_check(39, -308).is_square_class);

    auto two = hasse_is_square_class(2, 7, 11);
    CHECK_FALSE(two.is_square_class);
    CHECK(two.symbols.size() == 3);
    CHECK(two.symbols.count(2) == 1);
    CHECK(two.symbols.count(7) == 1);
    CHECK(two.symbols.count(11) == 1);
    CHECK_FALSE(hasse_is_square_class(11, 7, 11).is_square_class);
    // norm 22 ~ norm 14: the one nontrivial square among the ambiguous classes
    CHECK(hasse_is_square_class(22, 7, 11).is_square_class);
    CHECK(hasse_is_square_class(14, 7, 11).is_square_class);

    CHECK_THROWS_AS(hasse_check(0, -308), std::invalid_argument);
    CHECK_THROWS_AS(hasse_check(3, -5), std::invalid_argument); // -5 is not a discriminant
}

TEST_CASE("ambiguous classes of -308 and the genus count") {
    auto amb = ambiguous_classes(-308);
    std::vector<clpair::qf::QuadForm> expected = {
        clpair::qf::make_form(1, 0, 77), clpair::qf::make_form(2, 2, 39),
        clpair::qf::make_form(7, 0, 11), clpair::qf::make_form(9, 4, 9)};
    CHECK(amb == expected); // 2^(t-1) = 4 for t = 3 prime divisors
    CHECK(ambiguous_classes(-84).size() == 4);
    CHECK(ambiguous_classes(-4).size() == 1);
    CHECK(ambiguous_classes(-3).size() == 1);
}

TEST_CASE("symbol criterion agrees with the squaring image on a small sweep") {
    auto hasse = hasse_agreement_sweep(3000);
    CHECK(hasse.ok());
    CHECK(hasse.checked > 500);
    auto counts = genus_count_sweep(3000);
    CHECK(counts.ok());
    CHECK(counts.checked > 500);
}

TEST_CASE("full certification of the smallest witness (11, 7)") {
    auto report = verify_proposition_alg(2, 3, 11, 7);
    CHECK(report.preconditions_ok);
    for (const auto& pre : report.preconditions) {
        CAPTURE(pre.name);
        CHECK(pre.ok);
    }
    CHECK(report.ambiguous_norms.size() == 3); // norms 2, 11, 22
    CHECK(report.order_norms.size() == 4);     // norms 3, 6, 33, 66
    CHECK(report.ambiguous_nonsquare == 2);    // norm 22 is the square
    CHECK(report.order_nonsquare == 4);
    CHECK(report.hasse_ok);
    CHECK(report.profile_checked);
    CHECK(report.profile.h == 8);
    CHECK(report.type_matches);
    CHECK(report.pass);
    CHECK(report.witness.d == 77);
    CHECK(report.witness.h_target == 18);
}

TEST_CASE("certification rejects a wrong tower height") {
    // (11, 7) builds type (2, 4); claiming ell = 3 must fail the profile match
    auto report = verify_proposition_alg(3, 3, 11, 7);
    CHECK_FALSE(report.pass);
    // and the precondition p1 + p2 == 2 w^(2^(ell-1)) = 162 is violated
    CHECK_FALSE(report.preconditions_ok);
}

TEST_CASE("a height-3 witness certifies") {
    // 11 + 151 = 162 = 2 * 3^4, d = 1661, type (2, 8)
    auto report = verify_proposition_alg(3, 3, 11, 151);
    CHECK(report.preconditions_ok);
    CHECK(report.hasse_ok);
    CHECK(report.profile.two_sylow_type == std::vector<int64_t>{2, 8});
    CHECK(report.pass);
}

TEST_CASE("type (2,2) constructor certifies and does not trust the congruence") {
    auto rec = type_2_2_record(3, 7);
    CHECK(rec.disc == -84);
    CHECK(rec.hasse_all_nonsquare);
    CHECK(rec.profile.two_sylow_type == std::vector<int64_t>{2, 2});
    CHECK(rec.pass);

    // 271 == 7 (mod 88) passes the congruence filter, but 7 is a square mod 11,
    // and the 2-class group of -4*11*271 comes out (2, 8): kept with pass = false.
    auto bad = type_2_2_record(11, 271);
    CHECK_FALSE(bad.pass);
    CHECK(bad.profile_checked);
    CHECK(bad.profile.two_sylow_type == std::vector<int64_t>{2, 8});

    CHECK_THROWS_AS(type_2_2_record(5, 7), std::invalid_argument);   // p1 != 3 mod 8
    CHECK_THROWS_AS(type_2_2_record(3, 11), std::invalid_argument);  // p2 != 7 mod 24
    CHECK_THROWS_AS(type_2_2_record(3, 55), std::invalid_argument);  // p2 composite

    auto records = construct_type_2_2(25, 600);
    CHECK(records.size() == 19);
    int64_t passed = 0;
    for (const auto& rec22 : records) {
        if (rec22.pass) ++passed;
        if (rec22.p1 == 3 || rec22.p1 == 19) CHECK(rec22.pass);
        if (rec22.p1 == 11) CHECK_FALSE(rec22.pass);
    }
    CHECK(passed == 16);
}
