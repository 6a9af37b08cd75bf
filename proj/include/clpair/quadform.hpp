#ifndef CLPAIR_QUADFORM_HPP
#define CLPAIR_QUADFORM_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "clpair/arith.hpp"

namespace clpair::qf {

// ---------------------------------------------------------------------------
// Primitive positive-definite integral binary quadratic form a x^2 + b xy + c y^2
// with discriminant b^2 - 4ac < 0.  Reduced forms are the canonical class
// representatives: |b| <= a <= c, with b >= 0 whenever |b| == a or a == c.
// ---------------------------------------------------------------------------

struct QuadForm {
    int64_t a = 0;
    int64_t b = 0;
    int64_t c = 0;

    int64_t disc() const;
    friend auto operator<=>(const QuadForm&, const QuadForm&) = default;
};

// Largest |discriminant| the composition arithmetic accepts (keeps all
// 128-bit intermediates comfortably in range).
constexpr int64_t max_form_disc = int64_t{1} << 55;

// Validating constructor: a >= 1, negative discriminant, primitive.
QuadForm make_form(int64_t a, int64_t b, int64_t c);

bool is_discriminant(int64_t disc);             // disc < 0 and disc == 0,1 (mod 4)
bool is_fundamental_discriminant(int64_t disc); // field discriminants only

// All fundamental discriminants -max_abs <= disc < 0, descending in value
// (ascending in magnitude).
std::vector<int64_t> fundamental_discriminants(int64_t max_abs);

QuadForm principal_form(int64_t disc);
bool is_reduced(const QuadForm& f);

QuadForm reduce(QuadForm f);
QuadForm compose(const QuadForm& f, const QuadForm& g); // Gauss composition, reduced output
QuadForm inverse(const QuadForm& f);
QuadForm pow(const QuadForm& f, int64_t e);              // any integer exponent

// ---------------------------------------------------------------------------
// Class group material
// ---------------------------------------------------------------------------

struct EnumConfig {
    int64_t max_abs_disc = 1'000'000'000; // refuse larger enumerations
};

// All reduced forms of the given discriminant, sorted by (a, b, c).
std::vector<QuadForm> enumerate_reduced(int64_t disc, const EnumConfig& config = {});

int64_t class_number(int64_t disc, const EnumConfig& config = {});

// Order of the class of f; the overload without group_order enumerates the
// class number first.  Computed by divisor refinement against group_order.
int64_t class_order(const QuadForm& f);
int64_t class_order(const QuadForm& f, int64_t group_order);

struct ProfileConfig {
    int64_t max_abs_disc = 1'000'000'000;
    int64_t census_cap = 10'000; // full element-order census only when h <= cap
};

struct ClassGroupProfile {
    int64_t disc = 0;
    int64_t h = 0;
    // order -> number of classes of that order; filled only when census_complete.
    std::map<int64_t, int64_t> order_census;
    bool census_complete = false;
    // Elementary divisors of the 2-Sylow subgroup, ascending (e.g. {2, 8} for
    // a group whose 2-part is Z/2 x Z/8).  Empty when h is odd.
    std::vector<int64_t> two_sylow_type;
    // "order-census" when derived (and cross-checked) from the full census,
    // "odd-power-image" when h is too large to census.
    std::string two_sylow_method;
};

// Enumerates the reduced forms, extracts the exact 2-Sylow subgroup as the
// image of the map f -> f^(odd part of h), and derives its abelian type from
// the element-order counts of that image.
ClassGroupProfile class_group_profile(int64_t disc, const ProfileConfig& config = {});

// The class containing the ideal of norm n whose generator data is encoded by
// b_hint (a square root of disc modulo 4n).  Returned unreduced.
QuadForm form_from_ideal_norm(int64_t disc, int64_t n, int64_t b_hint);

// ---------------------------------------------------------------------------
// Classes of large 2-power order from the identity w^(2m) - x^2 = d:
// the form (w, -2x, w^(2m-1)) of discriminant -4d has order exactly 2m.
// ---------------------------------------------------------------------------

struct OrderCertificate {
    int64_t w = 0;
    int64_t x = 0;
    int64_t m = 0;
    int64_t d = 0;    // w^(2m) - x^2
    int64_t disc = 0; // -4d
    QuadForm seed;    // the reduced class representative of norm w
    int64_t h = 0;
    int64_t order = 0;
    bool order_exact = false; // order == 2m
};

// Preconditions (each reported individually on violation): m > 1, w odd >= 3,
// x even with 0 < x <= w^m - 4, gcd(x, w) = 1.
OrderCertificate verify_ankeny_chowla(int64_t w, int64_t x, int64_t m,
                                      const ProfileConfig& config = {});

// ---------------------------------------------------------------------------
// Self-check sweeps over every fundamental discriminant |disc| <= bound
// ---------------------------------------------------------------------------

// Abelian group laws under composition: identity, inverses, closure,
// commutativity, and associativity (all triples for small h).
arith::SweepReport group_law_sweep(int64_t max_abs_disc);

// f^h is principal for every class, and class_order returns a divisor of h
// that is minimal.
arith::SweepReport lagrange_sweep(int64_t max_abs_disc);

} // namespace clpair::qf

#endif
