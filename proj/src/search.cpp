#include "clpair/search.hpp"
#include "clpair/errors.hpp"
#include "clpair/genus.hpp"

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace clpair::search {

// ===========================================================================
// Targets and witnesses
// ===========================================================================

int64_t target_value(int64_t ell, int64_t n_index) {
    if (ell < 2)
        throw std::invalid_argument("tower height ell must be at least 2");
    if (n_index < 0)
        throw std::invalid_argument("grid index must be nonnegative");
    if (ell - 1 >= 62)
        throw capacity_error("exponent 2^(ell-1) exceeds the supported range");
    int64_t m = arith::checked_add(arith::checked_mul(2, n_index), 1);
    int64_t w = arith::checked_mul(3, arith::checked_mul(m, m));
    int64_t big = arith::checked_pow(w, int64_t{1} << (ell - 1));
    int64_t target = arith::checked_mul(2, big);
    // 2 (3 m^2)^(2^(ell-1)) == 18 (mod 24) for every odd m once ell >= 2.
    if (target % 24 != 18)
        throw invariant_error("target sum escapes the residue class 18 mod 24");
    return target;
}

PrimePairWitness make_witness(int64_t ell, int64_t n_index, int64_t p1, int64_t p2) {
    int64_t target = target_value(ell, n_index);
    if (p1 < 2 || !arith::is_prime(static_cast<uint64_t>(p1)))
        throw std::invalid_argument("p1 must be prime");
    if (p1 % 24 != 11)
        throw std::invalid_argument("p1 must be congruent to 11 mod 24");
    if (p2 < 2 || !arith::is_prime(static_cast<uint64_t>(p2)))
        throw std::invalid_argument("p2 must be prime");
    if (p2 % 24 != 7)
        throw std::invalid_argument("p2 must be congruent to 7 mod 24");
    if (arith::checked_add(p1, p2) != target)
        throw std::invalid_argument("p1 + p2 does not equal the target sum 2 w^(2^(ell-1))");

    PrimePairWitness wit;
    wit.ell = ell;
    wit.n_index = n_index;
    wit.m_param = 2 * n_index + 1;
    wit.w = 3 * wit.m_param * wit.m_param;
    wit.p1 = p1;
    wit.p2 = p2;
    wit.d = arith::checked_mul(p1, p2);
    wit.h_target = target;

    // Derived facts, automatic for any pair passing the checks above: the
    // half-difference is even (p1 - p2 == 4 mod 8) and shares no factor with
    // w (a common factor would square into the squarefree product p1 p2).
    int64_t x = wit.x() < 0 ? -wit.x() : wit.x();
    if (x <= 0 || x % 2 != 0 || std::gcd(x, wit.w) != 1)
        throw invariant_error("half-difference fails its derived parity or coprimality");
    return wit;
}

std::vector<int64_t> target_indices(int64_t ell, int64_t x_max) {
    if (x_max < 1) throw std::invalid_argument("search bound must be positive");
    std::vector<int64_t> out;
    for (int64_t n = 0;; ++n) {
        int64_t target;
        try {
            target = target_value(ell, n);
        } catch (const capacity_error&) {
            break; // F(n) is increasing in n, so overflow means past the bound
        }
        if (static_cast<__int128>(7) * (target - 7) > x_max) break;
        out.push_back(n);
    }
    return out;
}

std::vector<PrimePairWitness> find_pairs(int64_t ell, int64_t n_index, int64_t x_max,
                                         const arith::PrimeTable& table) {
    int64_t target = target_value(ell, n_index);
    if (table.modulus() != 24)
        throw std::invalid_argument("prime table must be classified mod 24");
    if (table.limit() < target - 7)
        throw std::invalid_argument("prime table does not cover the target sum");
    std::vector<PrimePairWitness> out;
    for (int64_t p1 : table.residue_class(11)) {
        if (p1 > target - 7) break;
        int64_t p2 = target - p1;
        if (p2 % 24 != 7) continue; // vacuous: target == 18 mod 24
        if (!table.contains(p2)) continue;
        if (static_cast<__int128>(p1) * p2 > x_max) continue;
        out.push_back(make_witness(ell, n_index, p1, p2));
    }
    return out;
}

// ===========================================================================
// Checkpoints
// ===========================================================================

uint64_t chain_update(uint64_t chain, int64_t d) {
    std::string digits = std::to_string(d);
    digits.push_back('\n');
    for (unsigned char c : digits) {
        chain ^= c;
        chain *= 1099511628211ULL;
    }
    return chain;
}

namespace {

std::string chain_hex(uint64_t chain) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(chain));
    return buf;
}

} // namespace

void save_checkpoint(const Checkpoint& state, const std::string& path) {
    nlohmann::json j{{"ell", state.ell},
                     {"x_max", state.x_max},
                     {"last_n_completed", state.last_n_completed},
                     {"emitted_count", state.emitted_count},
                     {"chain", chain_hex(state.chain)}};
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw checkpoint_error("cannot open checkpoint file for writing: " + tmp);
        out << j.dump(2) << '\n';
        out.flush();
        if (!out) throw checkpoint_error("failed writing checkpoint file: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw checkpoint_error("cannot move checkpoint into place: " + path);
}

Checkpoint load_checkpoint(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw checkpoint_error("cannot open checkpoint file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw checkpoint_error(std::string("checkpoint file is not valid JSON: ") + e.what());
    }
    Checkpoint state;
    std::string hex;
    try {
        state.ell = j.at("ell").get<int64_t>();
        state.x_max = j.at("x_max").get<int64_t>();
        state.last_n_completed = j.at("last_n_completed").get<int64_t>();
        state.emitted_count = j.at("emitted_count").get<int64_t>();
        hex = j.at("chain").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw checkpoint_error(std::string("checkpoint file is missing fields: ") + e.what());
    }
    size_t pos = 0;
    try {
        state.chain = std::stoull(hex, &pos, 16);
    } catch (const std::exception&) {
        pos = std::string::npos;
    }
    if (hex.empty() || pos != hex.size())
        throw checkpoint_error("checkpoint chain field is not a hexadecimal word");
    if (state.ell < 2 || state.x_max < 1 || state.last_n_completed < -1 || state.emitted_count < 0)
        throw checkpoint_error("checkpoint fields are out of range");
    return state;
}

// ===========================================================================
// Search driver
// ===========================================================================

SearchResult run_search(int64_t ell, int64_t x_max, const SearchOptions& options) {
    if (ell < 2)
        throw std::invalid_argument(
            "tower height ell must be at least 2; use the congruence constructor for type (2, 2)");
    if (x_max < 1) throw std::invalid_argument("search bound must be positive");

    std::vector<int64_t> grid = target_indices(ell, x_max);

    Checkpoint state;
    state.ell = ell;
    state.x_max = x_max;
    if (options.resume) {
        if (options.checkpoint_path.empty())
            throw std::invalid_argument("resuming requires a checkpoint path");
        state = load_checkpoint(options.checkpoint_path);
        if (state.ell != ell || state.x_max != x_max)
            throw checkpoint_error("checkpoint belongs to a different search configuration");
    }

    int64_t n_cap = grid.empty() ? -1 : grid.back();
    int64_t n_stop = options.max_n >= 0 ? std::min(options.max_n, n_cap) : n_cap;

    std::vector<int64_t> pending;
    for (int64_t n : grid)
        if (n > state.last_n_completed && n <= n_stop) pending.push_back(n);

    SearchResult result;
    if (!pending.empty()) {
        arith::PrimeTable table = arith::sieve_primes(target_value(ell, pending.back()), 24);

        std::vector<std::vector<PrimePairWitness>> per_index(pending.size());
        size_t workers = static_cast<size_t>(std::max(1, options.threads));
        workers = std::min(workers, pending.size());
        if (workers <= 1) {
            for (size_t i = 0; i < pending.size(); ++i)
                per_index[i] = find_pairs(ell, pending[i], x_max, table);
        } else {
            std::atomic<size_t> cursor{0};
            std::exception_ptr failure;
            std::mutex failure_lock;
            auto work = [&]() {
                try {
                    for (size_t i = cursor.fetch_add(1); i < pending.size();
                         i = cursor.fetch_add(1))
                        per_index[i] = find_pairs(ell, pending[i], x_max, table);
                } catch (...) {
                    std::lock_guard<std::mutex> hold(failure_lock);
                    if (!failure) failure = std::current_exception();
                }
            };
            std::vector<std::thread> pool;
            for (size_t t = 0; t < workers; ++t) pool.emplace_back(work);
            for (auto& th : pool) th.join();
            if (failure) std::rethrow_exception(failure);
        }

        // Sequential merge in grid order keeps the output and the hash chain
        // independent of the thread count.
        for (size_t i = 0; i < pending.size(); ++i) {
            for (const PrimePairWitness& wit : per_index[i]) {
                state.chain = chain_update(state.chain, wit.d);
                ++state.emitted_count;
                result.witnesses.push_back(wit);
            }
            state.last_n_completed = pending[i];
            if (!options.checkpoint_path.empty()) save_checkpoint(state, options.checkpoint_path);
        }
    } else if (n_stop > state.last_n_completed) {
        state.last_n_completed = n_stop;
        if (!options.checkpoint_path.empty()) save_checkpoint(state, options.checkpoint_path);
    }

    result.complete = state.last_n_completed >= n_cap;
    result.final_state = state;
    return result;
}

// ===========================================================================
// Census and crosscheck
// ===========================================================================

CensusReport census(int64_t ell, const std::vector<PrimePairWitness>& witnesses,
                    const std::vector<int64_t>& grid, const qf::ProfileConfig& config) {
    CensusReport report;
    report.ell = ell;

    std::set<int64_t> seen;
    std::vector<const PrimePairWitness*> kept;
    for (const PrimePairWitness& wit : witnesses) {
        if (wit.ell != ell)
            throw std::invalid_argument("witness list mixes tower heights");
        if (!seen.insert(wit.d).second) {
            ++report.duplicates_dropped;
            continue;
        }
        kept.push_back(&wit);
    }

    std::vector<int64_t> discs;
    discs.reserve(kept.size());
    for (const PrimePairWitness* wit : kept) {
        genus::PropositionReport cert = genus::verify_proposition_alg(*wit, config);
        if (!cert.pass)
            throw invariant_error("witness fails certification: d = " + std::to_string(wit->d));
        discs.push_back(wit->d);
    }
    std::sort(discs.begin(), discs.end());

    double expo = 0.5 + std::pow(2.0, -static_cast<double>(ell + 1));
    for (int64_t x : grid) {
        if (x < 2) throw std::invalid_argument("census grid points must be at least 2");
        CensusRecord rec;
        rec.x = x;
        rec.ell = ell;
        rec.count = std::upper_bound(discs.begin(), discs.end(), x) - discs.begin();
        double lx = std::log(static_cast<double>(x));
        rec.ratio = static_cast<double>(rec.count) * lx * lx /
                    std::pow(static_cast<double>(x), expo);
        report.records.push_back(rec);
    }
    return report;
}

namespace {

// Exact k-th root of n, or 0 when n is not a perfect k-th power.
int64_t integer_root(int64_t n, int64_t k) {
    if (n < 1 || k < 1) return 0;
    int64_t est = std::llround(std::pow(static_cast<double>(n), 1.0 / static_cast<double>(k)));
    for (int64_t r = std::max<int64_t>(1, est - 2); r <= est + 2; ++r) {
        try {
            if (arith::checked_pow(r, k) == n) return r;
        } catch (const capacity_error&) {
            break;
        }
    }
    return 0;
}

} // namespace

CrosscheckReport exhaustive_crosscheck(int64_t ell, int64_t x_small,
                                       const qf::ProfileConfig& config) {
    if (ell < 2) throw std::invalid_argument("tower height ell must be at least 2");
    if (x_small < 1) throw std::invalid_argument("crosscheck bound must be positive");

    CrosscheckReport report;
    report.ell = ell;
    report.x_small = x_small;

    const int64_t k = int64_t{1} << (ell - 1);
    const std::vector<int64_t> expected_type{2, int64_t{1} << ell};

    arith::PrimeTable table = arith::sieve_primes(std::max<int64_t>(11, x_small / 7), 24);
    for (int64_t p1 : table.residue_class(11)) {
        if (static_cast<__int128>(p1) * 7 > x_small) break;
        for (int64_t p2 : table.residue_class(7)) {
            if (static_cast<__int128>(p1) * p2 > x_small) break;
            int64_t half = (p1 + p2) / 2; // both odd, so the sum is even
            int64_t w = integer_root(half, k);
            if (w == 0 || w % 3 != 0) continue;
            int64_t msq = w / 3;
            int64_t m = arith::isqrt(msq);
            if (m * m != msq || m % 2 == 0) continue;
            int64_t d = p1 * p2;
            // The shape is supposed to force the 2-class type; verify it.
            qf::ClassGroupProfile profile = qf::class_group_profile(-4 * d, config);
            if (profile.two_sylow_type != expected_type)
                throw invariant_error("shape-matching discriminant " + std::to_string(d) +
                                      " does not have the expected 2-class type");
            report.expected.push_back(d);
        }
    }
    std::sort(report.expected.begin(), report.expected.end());

    SearchResult run = run_search(ell, x_small);
    report.found.reserve(run.witnesses.size());
    for (const PrimePairWitness& wit : run.witnesses) report.found.push_back(wit.d);
    std::sort(report.found.begin(), report.found.end());
    return report;
}

} // namespace clpair::search
