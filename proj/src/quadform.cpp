#include "clpair/quadform.hpp"
#include "clpair/errors.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace clpair::qf {

using i128 = __int128;

// ===========================================================================
// 128-bit internals.  Composition is performed entirely in 128-bit arithmetic
// on reduced operands; with |disc| <= 2^55 every intermediate fits.
// ===========================================================================

namespace {

struct F128 {
    i128 a, b, c;
};

i128 floor_div(i128 n, i128 d) {
    i128 q = n / d;
    if (n % d != 0 && ((n < 0) != (d < 0))) --q;
    return q;
}

// Shift b into the window (-a, a], adjusting c to keep the discriminant.
// q is the integer ceiling of (b - a) / (2a), so b - 2aq lands in the
// half-open window with the +a endpoint kept, never -a.
void normalize128(F128& f) {
    i128 q = floor_div(f.b + f.a - 1, 2 * f.a);
    f.c = f.a * q * q - f.b * q + f.c;
    f.b = f.b - 2 * f.a * q;
}

void reduce128(F128& f) {
    normalize128(f);
    while (f.a > f.c) {
        // rho step: swap the outer coefficients, flip the middle one
        std::swap(f.a, f.c);
        f.b = -f.b;
        normalize128(f);
    }
    if (f.a == f.c && f.b < 0) f.b = -f.b;
}

i128 xgcd128(i128 a, i128 b, i128& x, i128& y) {
    i128 old_r = a, r = b;
    i128 old_x = 1, cx = 0;
    i128 old_y = 0, cy = 1;
    while (r != 0) {
        i128 q = old_r / r;
        i128 t;
        t = old_r - q * r; old_r = r; r = t;
        t = old_x - q * cx; old_x = cx; cx = t;
        t = old_y - q * cy; old_y = cy; cy = t;
    }
    if (old_r < 0) { old_r = -old_r; old_x = -old_x; old_y = -old_y; }
    x = old_x;
    y = old_y;
    return old_r;
}

QuadForm narrow(const F128& f) {
    constexpr i128 lo = INT64_MIN, hi = INT64_MAX;
    if (f.a < lo || f.a > hi || f.b < lo || f.b > hi || f.c < lo || f.c > hi)
        throw invariant_error("reduced form does not fit 64-bit coefficients");
    return QuadForm{static_cast<int64_t>(f.a), static_cast<int64_t>(f.b),
                    static_cast<int64_t>(f.c)};
}

i128 disc128(const QuadForm& f) {
    return i128{f.b} * f.b - i128{4} * f.a * f.c;
}

void check_disc_range(i128 d) {
    if (d >= 0) throw std::invalid_argument("form discriminant must be negative");
    if (-d > i128{max_form_disc})
        throw capacity_error("form discriminant exceeds supported magnitude");
}

int64_t gcd3(int64_t a, int64_t b, int64_t c) {
    return std::gcd(a, std::gcd(b, c));
}

} // namespace

// ===========================================================================
// Basic form operations
// ===========================================================================

int64_t QuadForm::disc() const {
    i128 d = disc128(*this);
    check_disc_range(d);
    return static_cast<int64_t>(d);
}

QuadForm make_form(int64_t a, int64_t b, int64_t c) {
    if (a < 1) throw std::invalid_argument("form must have positive leading coefficient");
    QuadForm f{a, b, c};
    check_disc_range(disc128(f)); // also rejects nonnegative discriminants
    if (gcd3(a, b, c) != 1) throw std::invalid_argument("form must be primitive");
    return f;
}

bool is_discriminant(int64_t disc) {
    if (disc >= 0) return false;
    int64_t r = ((disc % 4) + 4) % 4;
    return r == 0 || r == 1;
}

bool is_fundamental_discriminant(int64_t disc) {
    if (!is_discriminant(disc)) return false;
    int64_t r = ((disc % 4) + 4) % 4;
    if (r == 1) {
        // odd case: squarefree
        for (const auto& [p, e] : arith::factorize(-disc))
            if (e > 1) return false;
        return true;
    }
    int64_t n = -disc / 4; // disc = -4n with n squarefree, n == 1 or 2 (mod 4)
    int64_t nr = n % 4;
    if (nr != 1 && nr != 2) return false;
    for (const auto& [p, e] : arith::factorize(n))
        if (e > 1) return false;
    return true;
}

QuadForm principal_form(int64_t disc) {
    if (!is_discriminant(disc)) throw std::invalid_argument("not a negative discriminant");
    check_disc_range(disc);
    int64_t r = ((disc % 4) + 4) % 4;
    if (r == 0) return QuadForm{1, 0, -disc / 4};
    return QuadForm{1, 1, (1 - disc) / 4};
}

bool is_reduced(const QuadForm& f) {
    int64_t ab = f.b < 0 ? -f.b : f.b;
    if (!(ab <= f.a && f.a <= f.c)) return false;
    if ((ab == f.a || f.a == f.c) && f.b < 0) return false;
    return true;
}

QuadForm reduce(QuadForm f) {
    if (f.a < 1) throw std::invalid_argument("form must have positive leading coefficient");
    check_disc_range(disc128(f));
    F128 g{f.a, f.b, f.c};
    reduce128(g);
    return narrow(g);
}

QuadForm compose(const QuadForm& f, const QuadForm& g) {
    i128 d1 = disc128(f), d2 = disc128(g);
    if (d1 != d2) throw std::invalid_argument("cannot compose forms of different discriminants");
    check_disc_range(d1);

    // Work with reduced operands so that all Bezout data stays small.
    F128 f1{f.a, f.b, f.c}, f2{g.a, g.b, g.c};
    reduce128(f1);
    reduce128(f2);

    i128 s = (f1.b + f2.b) / 2; // b1, b2 share the parity of the discriminant
    i128 u0, v0, v1, w;
    i128 gg = xgcd128(f1.a, f2.a, u0, v0); // gg = u0*a1 + v0*a2
    i128 e = xgcd128(gg, s, v1, w);        // e  = v1*gg + w*s
    i128 a2e = f2.a / e;
    i128 A = (f1.a / e) * a2e;
    i128 B = f2.b + 2 * (((s - f2.b) * v0 * v1 - w * f2.c) * a2e);
    // B only matters modulo 2A; fold it down before squaring.
    B -= 2 * A * floor_div(B + A, 2 * A);
    i128 num = B * B - d1;
    if (num % (4 * A) != 0) throw invariant_error("composition produced a non-integral form");
    F128 r{A, B, num / (4 * A)};
    reduce128(r);
    return narrow(r);
}

QuadForm inverse(const QuadForm& f) {
    return reduce(QuadForm{f.a, -f.b, f.c});
}

QuadForm pow(const QuadForm& f, int64_t e) {
    int64_t disc = f.disc();
    if (e < 0) return pow(inverse(f), -e);
    QuadForm acc = reduce(f);
    QuadForm result = reduce(principal_form(disc));
    while (e > 0) {
        if (e & 1) result = compose(result, acc);
        e >>= 1;
        if (e > 0) acc = compose(acc, acc);
    }
    return result;
}

// ===========================================================================
// Enumeration and class-group profiling
// ===========================================================================

std::vector<QuadForm> enumerate_reduced(int64_t disc, const EnumConfig& config) {
    if (!is_discriminant(disc))
        throw std::invalid_argument("not a negative discriminant congruent to 0 or 1 mod 4");
    if (-disc > config.max_abs_disc)
        throw capacity_error("discriminant magnitude exceeds enumeration budget");

    std::vector<QuadForm> forms;
    int64_t a_max = arith::isqrt((-disc) / 3);
    int64_t parity = ((disc % 2) + 2) % 2;
    for (int64_t a = 1; a <= a_max; ++a) {
        for (int64_t babs = parity; babs <= a; babs += 2) {
            i128 num = i128{babs} * babs - disc;
            i128 den = i128{4} * a;
            if (num % den != 0) continue;
            i128 c128 = num / den;
            if (c128 < a) continue;
            auto c = static_cast<int64_t>(c128);
            if (gcd3(a, babs, c) != 1) continue;
            forms.push_back(QuadForm{a, babs, c});
            if (babs != 0 && babs != a && c != a)
                forms.push_back(QuadForm{a, -babs, c});
        }
    }
    std::sort(forms.begin(), forms.end(),
              [](const QuadForm& x, const QuadForm& y) {
                  return std::tie(x.a, x.b, x.c) < std::tie(y.a, y.b, y.c);
              });
    return forms;
}

int64_t class_number(int64_t disc, const EnumConfig& config) {
    return static_cast<int64_t>(enumerate_reduced(disc, config).size());
}

int64_t class_order(const QuadForm& f, int64_t group_order) {
    if (group_order < 1) throw std::invalid_argument("group order must be positive");
    int64_t disc = f.disc();
    QuadForm id = reduce(principal_form(disc));
    QuadForm g = reduce(f);
    if (pow(g, group_order) != id)
        throw invariant_error("form order does not divide the supplied group order");
    int64_t n = group_order;
    for (const auto& [p, e] : arith::factorize(group_order)) {
        for (int i = 0; i < e; ++i) {
            if (n % p != 0) break;
            if (pow(g, n / p) != id) break;
            n /= p;
        }
    }
    return n;
}

int64_t class_order(const QuadForm& f) {
    return class_order(f, class_number(f.disc()));
}

namespace {

// Abelian 2-group type from its order census.  counts[k] = number of elements
// of order exactly 2^k.  The number of cyclic factors of exponent >= k equals
// log2(M_k / M_{k-1}) where M_k counts elements of order dividing 2^k;
// reading those multiplicities off top-down yields the elementary divisors.
std::vector<int64_t> type_from_two_power_census(const std::map<int64_t, int64_t>& counts) {
    std::vector<int64_t> cumulative; // M_0, M_1, ...
    int64_t running = 0;
    int64_t max_k = 0;
    for (const auto& [k, n] : counts) max_k = std::max(max_k, k);
    for (int64_t k = 0; k <= max_k; ++k) {
        auto it = counts.find(k);
        running += (it == counts.end() ? 0 : it->second);
        cumulative.push_back(running);
    }
    std::vector<int64_t> factors_with_exp_ge; // index k >= 1
    for (int64_t k = 1; k <= max_k; ++k) {
        int64_t ratio = cumulative[static_cast<size_t>(k)] / cumulative[static_cast<size_t>(k - 1)];
        if (cumulative[static_cast<size_t>(k)] % cumulative[static_cast<size_t>(k - 1)] != 0)
            throw invariant_error("order census is not consistent with an abelian 2-group");
        int64_t a = 0;
        while ((int64_t{1} << a) < ratio) ++a;
        if ((int64_t{1} << a) != ratio)
            throw invariant_error("order census is not consistent with an abelian 2-group");
        factors_with_exp_ge.push_back(a);
    }
    std::vector<int64_t> type;
    for (int64_t k = max_k; k >= 1; --k) {
        int64_t here = factors_with_exp_ge[static_cast<size_t>(k - 1)];
        int64_t above = (k == max_k) ? 0 : factors_with_exp_ge[static_cast<size_t>(k)];
        if (here < above)
            throw invariant_error("order census is not consistent with an abelian 2-group");
        for (int64_t i = 0; i < here - above; ++i) type.push_back(int64_t{1} << k);
    }
    std::sort(type.begin(), type.end());
    return type;
}

// Exact order of an element of a 2-group of exponent dividing 2^max_e.
int64_t two_power_order(const QuadForm& f, const QuadForm& id, int64_t max_e) {
    QuadForm g = f;
    int64_t order = 1;
    for (int64_t i = 0; i <= max_e; ++i) {
        if (g == id) return order;
        g = compose(g, g);
        order *= 2;
    }
    throw invariant_error("element order exceeds the expected 2-power bound");
}

} // namespace

ClassGroupProfile class_group_profile(int64_t disc, const ProfileConfig& config) {
    if (!is_discriminant(disc))
        throw std::invalid_argument("not a negative discriminant congruent to 0 or 1 mod 4");
    if (-disc > config.max_abs_disc)
        throw capacity_error("discriminant magnitude exceeds profiling budget");

    EnumConfig ecfg{config.max_abs_disc};
    std::vector<QuadForm> forms = enumerate_reduced(disc, ecfg);
    ClassGroupProfile profile;
    profile.disc = disc;
    profile.h = static_cast<int64_t>(forms.size());

    int64_t h_odd = profile.h;
    int64_t e2 = 0;
    while (h_odd % 2 == 0) { h_odd /= 2; ++e2; }

    QuadForm id = reduce(principal_form(disc));

    // The 2-Sylow subgroup is exactly the image of f -> f^h_odd.
    std::map<int64_t, int64_t> sylow_census; // exponent k -> #elements of order 2^k
    if (e2 == 0) {
        profile.two_sylow_type = {};
    } else {
        std::set<QuadForm> sylow;
        for (const QuadForm& f : forms) sylow.insert(pow(f, h_odd));
        if (static_cast<int64_t>(sylow.size()) != (int64_t{1} << e2))
            throw invariant_error("odd-power image has wrong size for the 2-Sylow subgroup");
        for (const QuadForm& s : sylow) {
            int64_t o = two_power_order(s, id, e2);
            int64_t k = 0;
            while ((int64_t{1} << k) < o) ++k;
            ++sylow_census[k];
        }
        profile.two_sylow_type = type_from_two_power_census(sylow_census);
    }
    profile.two_sylow_method = "odd-power-image";

    if (profile.h <= config.census_cap) {
        int64_t h = profile.h;
        // Factor h once; class_order re-factorizes internally, which is cheap
        // relative to composition at these sizes.
        for (const QuadForm& f : forms) ++profile.order_census[class_order(f, h)];
        profile.census_complete = true;
        profile.two_sylow_method = "order-census";

        // Independent re-derivation of the 2-Sylow type from the full census.
        std::map<int64_t, int64_t> census2;
        for (const auto& [o, n] : profile.order_census) {
            if ((o & (o - 1)) != 0) continue; // keep 2-power orders only
            int64_t k = 0;
            while ((int64_t{1} << k) < o) ++k;
            census2[k] += n;
        }
        std::vector<int64_t> type2 = type_from_two_power_census(census2);
        if (type2 != profile.two_sylow_type)
            throw invariant_error("census-derived 2-Sylow type disagrees with odd-power image");
    }
    return profile;
}

QuadForm form_from_ideal_norm(int64_t disc, int64_t n, int64_t b_hint) {
    if (!is_discriminant(disc)) throw std::invalid_argument("not a negative discriminant");
    check_disc_range(disc);
    if (n < 1) throw std::invalid_argument("ideal norm must be positive");
    i128 four_n = i128{4} * n;
    i128 rem = (i128{b_hint} * b_hint - disc) % four_n;
    if (rem != 0)
        throw std::invalid_argument("b_hint is not a square root of the discriminant mod 4n");
    // Fold b into the window (-n, n]; c adjusts along b -> b - 2nq.
    i128 b = b_hint;
    i128 q = floor_div(b + n, 2 * i128{n});
    b -= 2 * i128{n} * q;
    i128 c = (b * b - disc) / four_n;
    F128 f{n, b, c};
    QuadForm out = narrow(f);
    if (gcd3(out.a, out.b, out.c) != 1)
        throw std::invalid_argument("norm and hint describe a non-primitive form");
    return out;
}

// ===========================================================================
// Certified large 2-power orders
// ===========================================================================

OrderCertificate verify_ankeny_chowla(int64_t w, int64_t x, int64_t m,
                                      const ProfileConfig& config) {
    if (m <= 1) throw std::invalid_argument("order parameter m must exceed 1");
    if (w < 3 || w % 2 == 0) throw std::invalid_argument("w must be an odd integer >= 3");
    if (x < 1) throw std::invalid_argument("x must be positive");
    if (x % 2 != 0) throw std::invalid_argument("x must be even");
    if (std::gcd(x, w) != 1) throw std::invalid_argument("x and w must be coprime");
    int64_t wm = arith::checked_pow(w, m);
    if (x > wm - 4) throw std::invalid_argument("x must not exceed w^m - 4");

    OrderCertificate cert;
    cert.w = w;
    cert.x = x;
    cert.m = m;
    int64_t w2m = arith::checked_mul(wm, wm);
    cert.d = w2m - arith::checked_mul(x, x);
    cert.disc = arith::checked_mul(-4, cert.d);
    if (-cert.disc > config.max_abs_disc)
        throw capacity_error("certificate discriminant exceeds profiling budget");

    QuadForm seed = make_form(w, -2 * x, w2m / w);
    cert.seed = reduce(seed);
    cert.h = class_number(cert.disc, EnumConfig{config.max_abs_disc});
    cert.order = class_order(cert.seed, cert.h);
    cert.order_exact = (cert.order == 2 * m);
    return cert;
}

// ===========================================================================
// Self-check sweeps
// ===========================================================================

std::vector<int64_t> fundamental_discriminants(int64_t max_abs) {
    std::vector<int64_t> discs;
    for (int64_t n = 3; n <= max_abs; ++n)
        if (is_fundamental_discriminant(-n)) discs.push_back(-n);
    return discs;
}

arith::SweepReport group_law_sweep(int64_t max_abs_disc) {
    arith::SweepReport report;
    for (int64_t disc : fundamental_discriminants(max_abs_disc)) {
        std::vector<QuadForm> forms = enumerate_reduced(disc);
        std::set<QuadForm> all(forms.begin(), forms.end());
        QuadForm id = reduce(principal_form(disc));
        std::string tag = "disc " + std::to_string(disc);
        if (!all.count(id)) report.mismatches.push_back(tag + ": principal class missing");
        for (const QuadForm& f : forms) {
            if (compose(id, f) != f)
                report.mismatches.push_back(tag + ": identity law");
            if (compose(f, inverse(f)) != id)
                report.mismatches.push_back(tag + ": inverse law");
            report.checked += 2;
        }
        for (const QuadForm& f : forms) {
            for (const QuadForm& g : forms) {
                QuadForm fg = compose(f, g);
                if (!all.count(fg)) report.mismatches.push_back(tag + ": closure");
                if (fg != compose(g, f)) report.mismatches.push_back(tag + ": commutativity");
                report.checked += 2;
            }
        }
        if (forms.size() <= 12) {
            for (const QuadForm& f : forms)
                for (const QuadForm& g : forms)
                    for (const QuadForm& k : forms) {
                        if (compose(compose(f, g), k) != compose(f, compose(g, k)))
                            report.mismatches.push_back(tag + ": associativity");
                        ++report.checked;
                    }
        } else {
            // spot-check associativity on a deterministic sample
            size_t n = forms.size();
            for (size_t i = 0; i < n; i += 3)
                for (size_t j = 1; j < n; j += 5) {
                    size_t k = (i * 7 + j * 11) % n;
                    if (compose(compose(forms[i], forms[j]), forms[k]) !=
                        compose(forms[i], compose(forms[j], forms[k])))
                        report.mismatches.push_back(tag + ": associativity");
                    ++report.checked;
                }
        }
    }
    return report;
}

arith::SweepReport lagrange_sweep(int64_t max_abs_disc) {
    arith::SweepReport report;
    for (int64_t disc : fundamental_discriminants(max_abs_disc)) {
        std::vector<QuadForm> forms = enumerate_reduced(disc);
        auto h = static_cast<int64_t>(forms.size());
        QuadForm id = reduce(principal_form(disc));
        std::string tag = "disc " + std::to_string(disc);
        for (const QuadForm& f : forms) {
            if (pow(f, h) != id) {
                report.mismatches.push_back(tag + ": f^h not principal");
                ++report.checked;
                continue;
            }
            int64_t o = class_order(f, h);
            bool ok = (h % o == 0) && pow(f, o) == id;
            for (const auto& [p, e] : arith::factorize(o))
                if (pow(f, o / p) == id) ok = false;
            if (!ok) report.mismatches.push_back(tag + ": class_order not minimal");
            ++report.checked;
        }
    }
    return report;
}

} // namespace clpair::qf
