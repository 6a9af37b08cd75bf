#ifndef CLPAIR_SEARCH_HPP
#define CLPAIR_SEARCH_HPP

#include "clpair/arith.hpp"
#include "clpair/quadform.hpp"
#include "clpair/witness.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace clpair::search {

// Grid indices n with 7 * (F(n) - 7) <= x_max, i.e. those target sums whose
// cheapest admissible pair (p2 = 7) could still yield a product within bound.
std::vector<int64_t> target_indices(int64_t ell, int64_t x_max);

// All witness pairs for the target sum F(n): walks primes p1 == 11 (mod 24)
// in ascending order, requires p2 = F(n) - p1 prime == 7 (mod 24) and
// p1 * p2 <= x_max.  The table must be classified mod 24 and cover F(n).
std::vector<PrimePairWitness> find_pairs(int64_t ell, int64_t n_index, int64_t x_max,
                                         const arith::PrimeTable& table);

// ===========================================================================
// Checkpointed search
// ===========================================================================

// FNV-1a over the decimal digits of each emitted discriminant (newline
// terminated), chained across the whole run; resuming from a checkpoint
// reproduces the chain of an uninterrupted run bit for bit.
inline constexpr uint64_t chain_seed = 14695981039346656037ULL;
uint64_t chain_update(uint64_t chain, int64_t d);

struct Checkpoint {
    int64_t ell = 0;
    int64_t x_max = 0;
    int64_t last_n_completed = -1; // every grid index <= this is fully merged
    int64_t emitted_count = 0;
    uint64_t chain = chain_seed;
};

// Atomic save (write to <path>.tmp, then rename).  load throws
// checkpoint_error on unreadable, malformed, or incomplete files.
void save_checkpoint(const Checkpoint& state, const std::string& path);
Checkpoint load_checkpoint(const std::string& path);

struct SearchOptions {
    std::string checkpoint_path; // empty: keep no checkpoint
    bool resume = false;         // continue from the file at checkpoint_path
    int64_t max_n = -1;          // stop after this grid index (chunked runs); -1: no cap
    int threads = 1;             // worker threads over the grid indices
};

struct SearchResult {
    std::vector<PrimePairWitness> witnesses; // found by this run, grid order then p1 order
    Checkpoint final_state;                  // cumulative across resumed runs
    bool complete = false;                   // the whole grid for x_max is done
};

// Enumerate every witness pair with d = p1 p2 <= x_max for the given tower
// height.  Output order is deterministic and independent of thread count.
// Throws checkpoint_error when resume is requested and the checkpoint does
// not match (ell, x_max); std::invalid_argument for ell < 2 (the (2, 2^1)
// case has its own congruence constructor).
SearchResult run_search(int64_t ell, int64_t x_max, const SearchOptions& options = {});

// ===========================================================================
// Census and exhaustive crosscheck
// ===========================================================================

struct CensusRecord {
    int64_t x = 0;
    int64_t ell = 0;
    int64_t count = 0;  // witnesses with d <= x
    double ratio = 0.0; // count * ln^2(x) / x^(1/2 + 2^-(ell+1))
};

struct CensusReport {
    int64_t ell = 0;
    std::vector<CensusRecord> records;
    int64_t duplicates_dropped = 0;
};

// Re-certify every witness (Hilbert-symbol profile plus, within budget, the
// full 2-class type) and count survivors below each grid point; the ratio
// column tracks the conjectured growth order.  Throws invariant_error when a
// witness fails certification, std::invalid_argument on mixed tower heights.
CensusReport census(int64_t ell, const std::vector<PrimePairWitness>& witnesses,
                    const std::vector<int64_t>& grid, const qf::ProfileConfig& config = {});

struct CrosscheckReport {
    int64_t ell = 0;
    int64_t x_small = 0;
    std::vector<int64_t> expected; // from the exhaustive pair scan, sorted
    std::vector<int64_t> found;    // from run_search, sorted
    bool agree() const { return expected == found; }
};

// Independent completeness check on small ranges: enumerate ALL products of
// primes p1 == 11, p2 == 7 (mod 24) up to x_small, detect which sums have the
// shape 2 (3 m^2)^(2^(ell-1)) with m odd, verify each detected field's 2-class
// type, and compare the detected set against the incremental search.
CrosscheckReport exhaustive_crosscheck(int64_t ell, int64_t x_small,
                                       const qf::ProfileConfig& config = {});

} // namespace clpair::search

#endif
