#ifndef CLPAIR_WITNESS_HPP
#define CLPAIR_WITNESS_HPP

#include <cstdint>

namespace clpair::search {

// One constructed field: a pair of primes p1 == 11, p2 == 7 (mod 24) with
// p1 + p2 = 2 w^(2^(ell-1)) and w = 3 m^2 for odd m.  The fundamental
// discriminant -4 p1 p2 then has 2-class group of type (2, 2^ell).
struct PrimePairWitness {
    int64_t ell = 0;
    int64_t n_index = 0; // m_param = 2 n_index + 1
    int64_t m_param = 0;
    int64_t w = 0;       // 3 * m_param^2
    int64_t p1 = 0;
    int64_t p2 = 0;
    int64_t d = 0;        // p1 * p2
    int64_t h_target = 0; // p1 + p2

    // Signed half-difference of the pair; with W = w^(2^(ell-1)) it satisfies
    // d = W^2 - x^2, the identity that forces a class of order 2^ell.
    int64_t x() const { return (p1 - p2) / 2; }
};

// F(n) = 2 * (3 (2n+1)^2)^(2^(ell-1)), the target prime-pair sum for index n.
// Throws capacity_error when the value leaves the 64-bit range.
int64_t target_value(int64_t ell, int64_t n_index);

// Validating factory.  Checks primality, the residue classes, the target-sum
// shape, and the derived half-difference conditions; throws
// std::invalid_argument naming the first violated condition.
PrimePairWitness make_witness(int64_t ell, int64_t n_index, int64_t p1, int64_t p2);

} // namespace clpair::search

#endif
