#ifndef CLPAIR_GENUS_HPP
#define CLPAIR_GENUS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "clpair/arith.hpp"
#include "clpair/quadform.hpp"
#include "clpair/witness.hpp"

namespace clpair::genus {

// ---------------------------------------------------------------------------
// Hilbert symbols
// ---------------------------------------------------------------------------

// Sentinel for the infinite place.
constexpr int64_t infinite_place = 0;

// Hilbert symbol (a, b)_place for nonzero a, b; place is a prime or
// infinite_place.  Returns +1 or -1.
int hilbert_symbol(int64_t a, int64_t b, int64_t place);

// Product of (a, b)_v over every place v where the symbol can be -1
// (the primes dividing 2ab and the infinite place).  Always +1.
int hilbert_reciprocity_product(int64_t a, int64_t b);

// ---------------------------------------------------------------------------
// Square-class certification.  A class containing an ideal of norm n is a
// square in the class group iff (n, disc)_p = +1 at every prime p dividing
// the discriminant.
// ---------------------------------------------------------------------------

struct HasseCheck {
    int64_t disc = 0;
    int64_t norm = 0;
    std::map<int64_t, int> symbols; // prime p | disc  ->  (norm, disc)_p
    bool is_square_class = false;   // all symbols +1
};

// General criterion over all primes dividing the discriminant.
HasseCheck hasse_check(int64_t norm, int64_t disc);

// Convenience wrapper for disc = -4 p1 p2 (distinct odd primes).
HasseCheck hasse_is_square_class(int64_t norm, int64_t p1, int64_t p2);

// Reduced forms fixed by inversion: b == 0, a == b, or a == c.  There are
// exactly 2^(t-1) of them for a fundamental discriminant with t distinct
// prime divisors.
std::vector<qf::QuadForm> ambiguous_classes(int64_t disc,
                                            const qf::EnumConfig& config = {});

// ---------------------------------------------------------------------------
// Certification of a constructed field: symbol-level evidence that the
// 2-class group of disc = -4 p1 p2 is (2, 2^ell), cross-checked against the
// enumerated class group whenever the discriminant is within budget.
// ---------------------------------------------------------------------------

struct PreconditionCheck {
    std::string name;
    bool ok = false;
};

struct PropositionReport {
    search::PrimePairWitness witness; // echo of the inputs (derived fields best-effort)
    std::vector<PreconditionCheck> preconditions;
    bool preconditions_ok = false;

    // Norms 2, p1, 2*p1: the nontrivial classes fixed by inversion.
    std::vector<HasseCheck> ambiguous_norms;
    // Norms w, 2w, p1*w, 2*p1*w: the coset of the order-2^ell class.
    std::vector<HasseCheck> order_norms;
    int ambiguous_nonsquare = 0;
    int order_nonsquare = 0;
    // The rank/exactness argument needs >= 1 non-square ambiguous class and
    // >= 3 non-square classes in the order coset.
    bool hasse_ok = false;

    bool profile_checked = false; // false when |disc| exceeded the budget
    qf::ClassGroupProfile profile;
    bool type_matches = false; // two_sylow_type == {2, 2^ell}

    bool pass = false;
};

// Raw-argument variant: reports precondition violations instead of throwing,
// so near-miss inputs can be examined.
PropositionReport verify_proposition_alg(int64_t ell, int64_t w, int64_t p1, int64_t p2,
                                         const qf::ProfileConfig& config = {});
PropositionReport verify_proposition_alg(const search::PrimePairWitness& witness,
                                         const qf::ProfileConfig& config = {});

// ---------------------------------------------------------------------------
// Fields with 2-class group exactly (2, 2): p1 == 3 (mod 8) with
// p2 == 7 (mod 8 p1).  Each candidate is certified, never trusted: the
// congruence filter alone is not sufficient for every p1.
// ---------------------------------------------------------------------------

struct Type22Record {
    int64_t p1 = 0;
    int64_t p2 = 0;
    int64_t disc = 0; // -4 p1 p2
    std::vector<HasseCheck> checks; // norms 2, p1, 2*p1
    bool hasse_all_nonsquare = false;
    bool profile_checked = false;
    qf::ClassGroupProfile profile;
    bool pass = false; // hasse_all_nonsquare && two_sylow_type == {2, 2}
};

// Validates the congruence conditions (throws std::invalid_argument naming
// the failed one) and certifies the resulting field.
Type22Record type_2_2_record(int64_t p1, int64_t p2,
                             const qf::ProfileConfig& config = {});

// All congruence-admissible pairs with p1 <= p1_bound, p2 <= p2_bound,
// ordered by (p1, p2), each certified.  Records that fail certification are
// included with pass = false.
std::vector<Type22Record> construct_type_2_2(int64_t p1_bound, int64_t p2_bound,
                                             const qf::ProfileConfig& config = {});

// ---------------------------------------------------------------------------
// Self-check sweeps
// ---------------------------------------------------------------------------

// Hilbert reciprocity on pseudorandom nonzero pairs (deterministic seed).
arith::SweepReport reciprocity_sample(int64_t count, uint64_t seed);

// For every fundamental disc = -4 p1 p2 with |disc| <= max_abs_disc: the
// symbol criterion against brute-force membership in the subgroup of squares,
// using a represented norm coprime to 2*disc for each reduced class.
arith::SweepReport hasse_agreement_sweep(int64_t max_abs_disc);

// #ambiguous classes == 2^(t-1) over all fundamental |disc| <= max_abs_disc.
arith::SweepReport genus_count_sweep(int64_t max_abs_disc);

} // namespace clpair::genus

#endif
