#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "clpair/errors.hpp"
#include "clpair/search.hpp"
#include "clpair/serialize.hpp"
#include "oracles.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

using namespace clpair::search;

static std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

TEST_CASE("target sums F(n) = 2 (3 (2n+1)^2)^(2^(ell-1))") {
    CHECK(target_value(2, 0) == 18);
    CHECK(target_value(2, 1) == 1458);
    CHECK(target_value(2, 2) == 11250);
    CHECK(target_value(2, 3) == 43218);
    CHECK(target_value(3, 0) == 162);
    CHECK(target_value(3, 1) == 1062882);
    CHECK(target_value(4, 0) == 13122);
    for (int64_t ell = 2; ell <= 5; ++ell)
        for (int64_t n = 0; n <= 8; ++n) {
            int64_t f = 0;
            try {
                f = target_value(ell, n);
            } catch (const clpair::capacity_error&) {
                continue;
            }
            CHECK(f % 24 == 18);
        }
    CHECK_THROWS_AS(target_value(1, 0), std::invalid_argument);
    CHECK_THROWS_AS(target_value(2, -1), std::invalid_argument);
    CHECK_THROWS_AS(target_value(63, 0), clpair::capacity_error);
    CHECK_THROWS_AS(target_value(2, int64_t{1} << 32), clpair::capacity_error);
}

TEST_CASE("witness factory accepts the genuine pair and names each violation") {
    auto w = make_witness(2, 0, 11, 7);
    CHECK(w.d == 77);
    CHECK(w.w == 3);
    CHECK(w.m_param == 1);
    CHECK(w.h_target == 18);
    CHECK(w.x() == 2);

    auto w3 = make_witness(3, 0, 11, 151);
    CHECK(w3.d == 1661);
    CHECK(w3.h_target == 162);

    // near misses, each tripping exactly one names check
    CHECK_THROWS_WITH_AS(make_witness(2, 1, 35, 1423), "p1 must be prime",
                         std::invalid_argument); // 35 == 11 mod 24 but composite
    CHECK_THROWS_WITH_AS(make_witness(2, 1, 23, 1435), "p1 must be congruent to 11 mod 24",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(make_witness(2, 1, 83, 1375), "p2 must be prime",
                         std::invalid_argument); // 1375 == 7 mod 24 but 5^3 * 11
    CHECK_THROWS_WITH_AS(make_witness(2, 1, 59, 1423),
                         "p1 + p2 does not equal the target sum 2 w^(2^(ell-1))",
                         std::invalid_argument); // off by 24: both classes right
    CHECK_THROWS_WITH_AS(make_witness(2, 1, 11, 1439), "p2 must be congruent to 7 mod 24",
                         std::invalid_argument); // 1439 == 23 mod 24, prime
}

TEST_CASE("pair finder walks one target sum") {
    auto table = clpair::arith::sieve_primes(2000, 24);
    auto all = find_pairs(2, 1, 100000, table); // F(1) = 1458, products capped at 10^5
    CHECK(all.size() == 4);
    CHECK(all[0].p1 == 11);
    CHECK(all[0].d == 15917);
    CHECK(all[1].p1 == 59);
    CHECK(all[1].d == 82541);
    CHECK(all[2].p1 == 1427);
    CHECK(all[2].d == 44237);
    CHECK(all[3].p1 == 1451);
    CHECK(all[3].d == 10157);

    auto capped = find_pairs(2, 1, 20000, table);
    CHECK(capped.size() == 2); // only d = 15917 and 10157 fit
    CHECK(capped[0].d == 15917);
    CHECK(capped[1].d == 10157);

    CHECK_THROWS_AS(find_pairs(2, 1, 100000, clpair::arith::sieve_primes(2000)),
                    std::invalid_argument); // unclassified table
    CHECK_THROWS_AS(find_pairs(2, 1, 100000, clpair::arith::sieve_primes(100, 24)),
                    std::invalid_argument); // table too small
}

TEST_CASE("digit chain is FNV-1a over the decimal discriminants") {
    uint64_t expect = chain_seed;
    for (char ch : std::string("77\n")) {
        expect ^= static_cast<unsigned char>(ch);
        expect *= 1099511628211ULL;
    }
    CHECK(chain_update(chain_seed, 77) == expect);
    CHECK(chain_update(chain_seed, 77) != chain_update(chain_seed, 78));
}

TEST_CASE("checkpoint save/load round trip and corruption detection") {
    auto path = temp_path("clpair_ck_roundtrip.json");
    Checkpoint state;
    state.ell = 2;
    state.x_max = 100000;
    state.last_n_completed = 1;
    state.emitted_count = 5;
    state.chain = 0x9fbe6f9f7f48d426ULL;
    save_checkpoint(state, path);
    auto loaded = load_checkpoint(path);
    CHECK(loaded.ell == state.ell);
    CHECK(loaded.x_max == state.x_max);
    CHECK(loaded.last_n_completed == state.last_n_completed);
    CHECK(loaded.emitted_count == state.emitted_count);
    CHECK(loaded.chain == state.chain);
    std::filesystem::remove(path);

    CHECK_THROWS_AS(load_checkpoint(temp_path("clpair_ck_missing.json")),
                    clpair::checkpoint_error);

    auto bad = temp_path("clpair_ck_bad.json");
    std::ofstream(bad) << "{\"ell\": 2, not json";
    CHECK_THROWS_AS(load_checkpoint(bad), clpair::checkpoint_error);
    std::ofstream(bad) << R"({"ell": 2, "x_max": 100})"; // missing fields
    CHECK_THROWS_AS(load_checkpoint(bad), clpair::checkpoint_error);
    std::ofstream(bad)
        << R"({"ell":2,"x_max":100,"last_n_completed":0,"emitted_count":1,"chain":"zz"})";
    CHECK_THROWS_AS(load_checkpoint(bad), clpair::checkpoint_error);
    std::filesystem::remove(bad);
}

TEST_CASE("the six witnesses below 10^5 and the frozen chain") {
    auto result = run_search(2, 100000);
    CHECK(result.complete);
    REQUIRE(result.witnesses.size() == 6);
    std::vector<int64_t> ds;
    for (const auto& w : result.witnesses) ds.push_back(w.d);
    CHECK(ds == std::vector<int64_t>{77, 15917, 82541, 44237, 10157, 78701});
    CHECK(result.final_state.chain == 0xf725287b1f242c7dULL);
    CHECK(result.final_state.emitted_count == 6);

    // identical output with a different worker count
    SearchOptions threaded;
    threaded.threads = 4;
    auto again = run_search(2, 100000, threaded);
    REQUIRE(again.witnesses.size() == 6);
    for (size_t i = 0; i < 6; ++i) CHECK(again.witnesses[i].d == result.witnesses[i].d);
    CHECK(again.final_state.chain == result.final_state.chain);

    CHECK_THROWS_AS(run_search(1, 1000), std::invalid_argument);
    CHECK_THROWS_AS(run_search(2, 0), std::invalid_argument);
}

TEST_CASE("chunked runs with resume reproduce the uninterrupted run") {
    auto path = temp_path("clpair_ck_chunks.json");
    std::filesystem::remove(path);

    SearchOptions first;
    first.checkpoint_path = path;
    first.max_n = 0;
    auto r1 = run_search(2, 100000, first);
    CHECK_FALSE(r1.complete);
    CHECK(r1.witnesses.size() == 1);
    CHECK(r1.final_state.last_n_completed == 0);

    SearchOptions second;
    second.checkpoint_path = path;
    second.resume = true;
    second.max_n = 1;
    auto r2 = run_search(2, 100000, second);
    CHECK_FALSE(r2.complete);
    CHECK(r2.witnesses.size() == 4);

    SearchOptions third;
    third.checkpoint_path = path;
    third.resume = true;
    auto r3 = run_search(2, 100000, third);
    CHECK(r3.complete);
    CHECK(r3.witnesses.size() == 1);

    std::vector<int64_t> ds;
    for (const auto* part : {&r1, &r2, &r3})
        for (const auto& w : part->witnesses) ds.push_back(w.d);
    CHECK(ds == std::vector<int64_t>{77, 15917, 82541, 44237, 10157, 78701});
    CHECK(r3.final_state.chain == 0xf725287b1f242c7dULL);
    CHECK(r3.final_state.emitted_count == 6);

    // a checkpoint from another configuration is refused
    SearchOptions wrong;
    wrong.checkpoint_path = path;
    wrong.resume = true;
    CHECK_THROWS_AS(run_search(3, 100000, wrong), clpair::checkpoint_error);
    CHECK_THROWS_AS(run_search(2, 200000, wrong), clpair::checkpoint_error);
    // resume without a path is a usage error
    SearchOptions pathless;
    pathless.resume = true;
    CHECK_THROWS_AS(run_search(2, 100000, pathless), std::invalid_argument);
    std::filesystem::remove(path);
}

TEST_CASE("census re-certifies, deduplicates, and counts by bound") {
    auto result = run_search(2, 100000);
    auto report = census(2, result.witnesses, {100, 1000, 10000, 100000});
    CHECK(report.duplicates_dropped == 0);
    REQUIRE(report.records.size() == 4);
    CHECK(report.records[0].count == 1); // d = 77
    CHECK(report.records[1].count == 1);
    CHECK(report.records[2].count == 1);
    CHECK(report.records[3].count == 6);
    CHECK(report.records[3].ratio == doctest::Approx(0.596379).epsilon(1e-4));

    auto doubled = result.witnesses;
    doubled.push_back(result.witnesses.front());
    auto dedup = census(2, doubled, {100000});
    CHECK(dedup.duplicates_dropped == 1);
    CHECK(dedup.records[0].count == 6);

    auto mixed = result.witnesses;
    mixed.push_back(make_witness(3, 0, 11, 151));
    CHECK_THROWS_AS(census(2, mixed, {100000}), std::invalid_argument);
    CHECK_THROWS_AS(census(2, result.witnesses, {1}), std::invalid_argument);

    // a hand-built record that was never validated must fail certification
    PrimePairWitness fake;
    fake.ell = 2;
    fake.n_index = 0;
    fake.m_param = 1;
    fake.w = 3;
    fake.p1 = 23;
    fake.p2 = 7;
    fake.d = 161;
    fake.h_target = 30;
    CHECK_THROWS_AS(census(2, {fake}, {1000}), clpair::invariant_error);
}

TEST_CASE("exhaustive small-range scan agrees with the incremental search") {
    auto r2 = exhaustive_crosscheck(2, 2000);
    CHECK(r2.agree());
    CHECK(r2.expected == std::vector<int64_t>{77});

    auto r3 = exhaustive_crosscheck(3, 7000);
    CHECK(r3.agree());
    CHECK(r3.expected == std::vector<int64_t>{1661, 4061, 6077, 6557});
}

TEST_CASE("witness records survive the JSON round trip") {
    auto w = make_witness(2, 1, 59, 1399);
    auto j = clpair::io::encode(w);
    auto back = clpair::io::decode_witness(j);
    CHECK(back.d == w.d);
    CHECK(back.ell == w.ell);
    CHECK(back.n_index == w.n_index);
    CHECK(back.p1 == w.p1);
    CHECK(back.p2 == w.p2);

    CHECK_THROWS_AS(clpair::io::decode_witness(clpair::io::json::parse(R"({"ell": 2})")),
                    std::invalid_argument);
    // a tampered record fails re-validation on decode
    auto tampered = j;
    tampered["p1"] = 35;
    CHECK_THROWS_AS(clpair::io::decode_witness(tampered), std::invalid_argument);
}
