// Command-line front end: reproducible experiments over the clpair library,
// with config echoed into every artifact and stable exit codes
// (0 ok, 2 usage/domain, 3 capacity, 4 invariant violation).
#include "clpair/analytic.hpp"
#include "clpair/arith.hpp"
#include "clpair/errors.hpp"
#include "clpair/genus.hpp"
#include "clpair/quadform.hpp"
#include "clpair/search.hpp"
#include "clpair/serialize.hpp"

#include "CLI11.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace {

using clpair::io::json;

constexpr const char* kVersion = "0.1.0";

json artifact_header(const std::string& command, const json& config) {
    return json{{"version", kVersion}, {"command", command}, {"config", config}};
}

std::string timestamp_utc() {
    std::time_t now = std::time(nullptr);
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::invalid_argument("cannot open output file: " + path);
    return out;
}

// Wrap a result for stdout: header fields plus the payload, no timestamp so
// identical configs print byte-identical JSON.
void print_result(const std::string& command, const json& config, const json& result) {
    json j = artifact_header(command, config);
    j["result"] = result;
    std::cout << j.dump(2) << '\n';
}

double lemma_tail_bound(int64_t h, int64_t P) {
    int64_t ha = h < 0 ? -h : h;
    return 10.0 * static_cast<double>(ha) * static_cast<double>(clpair::arith::tau(ha)) /
           (static_cast<double>(P) * static_cast<double>(clpair::arith::phi(ha)));
}

// ---------------------------------------------------------------------------
// classgroup
// ---------------------------------------------------------------------------

int cmd_classgroup(int64_t disc, int64_t census_cap) {
    clpair::qf::ProfileConfig config;
    if (census_cap > 0) config.census_cap = census_cap;
    auto profile = clpair::qf::class_group_profile(disc, config);
    auto forms = clpair::qf::enumerate_reduced(disc);
    auto ambiguous = clpair::genus::ambiguous_classes(disc);

    json classes = json::array();
    for (const auto& f : forms) {
        json row{{"form", clpair::io::encode(f)},
                 {"order", clpair::qf::class_order(f, profile.h)}};
        // Smallest represented value coprime to 2*disc indexes the Hasse check.
        int64_t norm = 0;
        for (int64_t x = -12; x <= 12; ++x)
            for (int64_t y = -12; y <= 12; ++y) {
                int64_t v = f.a * x * x + f.b * x * y + f.c * y * y;
                if (v <= 0 || std::gcd(v, 2 * (-disc)) != 1) continue;
                if (norm == 0 || v < norm) norm = v;
            }
        if (norm != 0) {
            auto check = clpair::genus::hasse_check(norm, disc);
            row["norm"] = clpair::io::encode_int(norm);
            row["is_square_class"] = check.is_square_class;
        }
        classes.push_back(row);
    }
    json amb = json::array();
    for (const auto& f : ambiguous) amb.push_back(clpair::io::encode(f));

    json config_echo{{"disc", disc}, {"census_cap", config.census_cap}};
    print_result("classgroup", config_echo,
                 json{{"profile", clpair::io::encode(profile)},
                      {"ambiguous", amb},
                      {"classes", classes}});
    return 0;
}

// ---------------------------------------------------------------------------
// search
// ---------------------------------------------------------------------------

std::vector<int64_t> decade_grid(int64_t x_max) {
    std::vector<int64_t> grid;
    for (int64_t x = 100; x <= x_max && x <= 1000000000000000000LL / 10; x *= 10)
        grid.push_back(x);
    if (grid.empty() || grid.back() != x_max) grid.push_back(x_max);
    return grid;
}

std::vector<clpair::search::PrimePairWitness> read_witness_file(const std::string& path) {
    std::vector<clpair::search::PrimePairWitness> witnesses;
    std::ifstream in(path);
    if (!in) return witnesses;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception&) {
            throw std::invalid_argument("witness file has a non-JSON line: " + path);
        }
        if (j.contains("version") || j.contains("_timestamp")) continue;
        witnesses.push_back(clpair::io::decode_witness(j));
    }
    return witnesses;
}

void write_census_csv(std::ostream& out, const std::string& command, const json& config,
                      const clpair::search::CensusReport& report) {
    out << "# version=" << kVersion << " command=" << command << " config=" << config.dump()
        << '\n';
    out << "# timestamp=" << timestamp_utc() << '\n';
    out << "# duplicates_dropped=" << report.duplicates_dropped << '\n';
    out << "x,ell,count,ratio\n";
    char buf[64];
    for (const auto& rec : report.records) {
        std::snprintf(buf, sizeof buf, "%" PRId64 ",%" PRId64 ",%" PRId64 ",%.6f", rec.x, rec.ell,
                      rec.count, rec.ratio);
        out << buf << '\n';
    }
}

int cmd_search(int64_t ell, int64_t x_max, const std::string& out_prefix,
               const std::string& checkpoint, bool resume, bool restart, int threads,
               int64_t max_n) {
    if (ell == 1)
        throw std::invalid_argument(
            "ell = 1 is the type (2, 2) regime driven by congruences on p2 mod 8 p1; "
            "use the construct22 subcommand");
    if (resume && restart)
        throw std::invalid_argument("--resume and --restart are mutually exclusive");
    if ((resume || restart) && checkpoint.empty())
        throw std::invalid_argument("--resume/--restart require --checkpoint");
    if (restart) std::remove(checkpoint.c_str());

    clpair::search::SearchOptions options;
    options.checkpoint_path = checkpoint;
    options.resume = resume;
    options.max_n = max_n;
    options.threads = threads;
    auto result = clpair::search::run_search(ell, x_max, options);

    json config{{"ell", ell}, {"xmax", x_max}, {"max_n", max_n}};
    std::string wit_path = out_prefix + ".witnesses.jsonl";
    std::string census_path = out_prefix + ".census.csv";

    std::vector<clpair::search::PrimePairWitness> all;
    if (resume) all = read_witness_file(wit_path);
    std::ifstream probe(wit_path);
    bool append = resume && probe.good();
    probe.close();

    {
        std::ofstream out;
        if (append) {
            out.open(wit_path, std::ios::app);
            if (!out) throw std::invalid_argument("cannot open output file: " + wit_path);
        } else {
            out = open_output(wit_path);
            out << artifact_header("search", config).dump() << '\n';
            out << json{{"_timestamp", timestamp_utc()}}.dump() << '\n';
        }
        for (const auto& wit : result.witnesses)
            out << clpair::io::encode(wit).dump() << '\n';
    }
    all.insert(all.end(), result.witnesses.begin(), result.witnesses.end());

    auto census_report = clpair::search::census(ell, all, decade_grid(x_max));
    {
        auto out = open_output(census_path);
        write_census_csv(out, "search", config, census_report);
    }

    std::fprintf(stderr,
                 "search ell=%" PRId64 " xmax=%" PRId64 ": %zu new witnesses, %zu total, "
                 "complete=%d, chain=%016" PRIx64 "\n",
                 ell, x_max, result.witnesses.size(), all.size(), result.complete ? 1 : 0,
                 result.final_state.chain);
    return 0;
}

// ---------------------------------------------------------------------------
// construct22
// ---------------------------------------------------------------------------

int cmd_construct22(int64_t p1_max, int64_t p2_max, const std::string& out_path) {
    auto records = clpair::genus::construct_type_2_2(p1_max, p2_max);
    json config{{"p1_max", p1_max}, {"p2_max", p2_max}};

    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file = open_output(out_path);
        out = &file;
    }
    *out << artifact_header("construct22", config).dump() << '\n';
    if (!out_path.empty()) *out << json{{"_timestamp", timestamp_utc()}}.dump() << '\n';
    int64_t passed = 0;
    for (const auto& rec : records) {
        *out << clpair::io::encode(rec).dump() << '\n';
        if (rec.pass) ++passed;
    }
    std::fprintf(stderr, "construct22: %zu admissible pairs, %" PRId64 " certified type (2, 2)\n",
                 records.size(), passed);
    return 0;
}

// ---------------------------------------------------------------------------
// singular
// ---------------------------------------------------------------------------

int cmd_singular(int64_t m, int64_t s1, int64_t s2, int64_t h, int64_t P, int64_t prime_bound,
                 bool combined) {
    if (combined && m % 2 != 0)
        throw std::invalid_argument("m must be even for the combined series over both classes");
    clpair::arith::Modulus mod(m, s1, s2);
    clpair::analytic::SingularSeriesSpec spec{mod, h, P};
    double finite = clpair::analytic::singular_finite(spec);
    auto table = clpair::arith::sieve_primes(prime_bound);
    auto product = clpair::analytic::singular_product(mod, h, table);
    double bound = lemma_tail_bound(h, P);

    json result{{"finite", finite},
                {"product", clpair::io::encode(product)},
                {"truncation_bound", bound},
                {"within_bound", std::abs(finite - product.value) <= bound}};
    if (combined) result["combined"] = clpair::analytic::singular_S(mod, h, table);

    json config{{"m", m},   {"s1", s1}, {"s2", s2},
                {"h", h},   {"P", P},   {"prime_bound", prime_bound},
                {"combined", combined}};
    print_result("singular", config, result);
    return 0;
}

// ---------------------------------------------------------------------------
// repcount
// ---------------------------------------------------------------------------

int cmd_repcount(int64_t n, int64_t m, int64_t s1, int64_t s2, int64_t limit) {
    clpair::arith::Modulus mod(m, s1, s2);
    int64_t table_limit = std::max(n, limit);
    auto table = clpair::arith::sieve_primes(table_limit, m);
    auto count = clpair::analytic::rep_count(n, mod, table);
    json config{{"n", n}, {"m", m}, {"s1", s1}, {"s2", s2}, {"limit", table_limit}};
    print_result("repcount", config, clpair::io::encode(count));
    return 0;
}

// ---------------------------------------------------------------------------
// census (over an existing witness file)
// ---------------------------------------------------------------------------

int cmd_census(const std::string& in_path, int64_t ell, std::vector<int64_t> grid,
               const std::string& out_path) {
    std::ifstream probe(in_path);
    if (!probe.good()) throw std::invalid_argument("cannot open witness file: " + in_path);
    probe.close();
    auto witnesses = read_witness_file(in_path);
    std::sort(grid.begin(), grid.end());
    auto report = clpair::search::census(ell, witnesses, grid);

    json config{{"in", in_path}, {"ell", ell}, {"grid", grid}};
    if (out_path.empty()) {
        write_census_csv(std::cout, "census", config, report);
    } else {
        auto out = open_output(out_path);
        write_census_csv(out, "census", config, report);
    }
    return 0;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

int report_sweep(const std::string& name, const clpair::arith::SweepReport& report) {
    std::printf("%-28s checked=%-10" PRId64 " mismatches=%zu\n", name.c_str(), report.checked,
                report.mismatches.size());
    for (size_t i = 0; i < report.mismatches.size() && i < 10; ++i)
        std::printf("  mismatch: %s\n", report.mismatches[i].c_str());
    return report.ok() ? 0 : 1;
}

int cmd_verify(const std::string& suite) {
    int failures = 0;
    if (suite == "oracles") {
        failures += report_sweep("ramanujan closed vs direct",
                                 clpair::analytic::ramanujan_oracle_sweep(500, 500, 1e-10));
        clpair::arith::Modulus mod24(24, 11, 7);
        failures += report_sweep("mu_s closed vs direct",
                                 clpair::analytic::mu_oracle_sweep(200, mod24, 1e-10));
        failures += report_sweep("hilbert reciprocity",
                                 clpair::genus::reciprocity_sample(20000, 0x9e3779b97f4a7c15ULL));
        failures += report_sweep("sieve vs deterministic MR",
                                 clpair::arith::sieve_primality_agreement(200000));
        failures += report_sweep("composition group laws", clpair::qf::group_law_sweep(2000));
        failures += report_sweep("lagrange / element orders", clpair::qf::lagrange_sweep(2000));
    } else if (suite == "hasse") {
        failures += report_sweep("hasse vs squaring image", clpair::genus::hasse_agreement_sweep(20000));
        failures += report_sweep("ambiguous class count", clpair::genus::genus_count_sweep(20000));
    } else if (suite == "census-crosscheck") {
        for (int64_t ell : {2, 3}) {
            auto report = clpair::search::exhaustive_crosscheck(ell, 20000);
            std::printf("crosscheck ell=%" PRId64 ": expected=%zu found=%zu agree=%d\n", ell,
                        report.expected.size(), report.found.size(), report.agree() ? 1 : 0);
            if (!report.agree()) ++failures;
        }
    } else if (suite == "major-arc") {
        auto table = clpair::arith::sieve_primes(1000000, 24);
        clpair::arith::Modulus mod24(24, 11, 7);
        int warnings = 0;
        std::printf("q,a,s,relative_error\n");
        for (int64_t s : {int64_t{11}, int64_t{7}}) {
            auto rows = clpair::analytic::major_arc_diagnostic(1000000, 12, s, mod24, table);
            for (const auto& row : rows) {
                std::printf("%" PRId64 ",%" PRId64 ",%" PRId64 ",%.6f\n", row.q, row.a, s,
                            row.rel_error);
                if (row.rel_error > 0.05) ++failures;
                else if (row.rel_error > 0.02) ++warnings;
            }
        }
        if (warnings > 0)
            std::printf("warning: %d rows between 0.02 and 0.05 relative error\n", warnings);
    } else {
        throw std::invalid_argument(
            "unknown suite (expected oracles | hasse | census-crosscheck | major-arc)");
    }
    if (failures > 0) throw clpair::invariant_error("verification found mismatches");
    std::printf("suite %s: all checks passed\n", suite.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"search and certification of imaginary quadratic fields whose 2-class group "
                 "is (2, 2^ell), with singular-series diagnostics"};
    app.require_subcommand(1);

    // classgroup
    auto* sub_classgroup = app.add_subcommand("classgroup", "class group profile of one discriminant");
    int64_t cg_disc = 0;
    int64_t cg_census_cap = 0;
    sub_classgroup->add_option("--disc", cg_disc, "negative discriminant")->required();
    sub_classgroup->add_option("--census-cap", cg_census_cap,
                               "full order census only when h is at most this");

    // search
    auto* sub_search = app.add_subcommand("search", "enumerate witness pairs up to a bound");
    int64_t se_ell = 0, se_xmax = 0, se_max_n = -1;
    std::string se_out, se_checkpoint;
    bool se_resume = false, se_restart = false;
    int se_threads = static_cast<int>(std::thread::hardware_concurrency());
    sub_search->add_option("--ell", se_ell, "tower height (>= 2)")->required();
    sub_search->add_option("--xmax", se_xmax, "upper bound on d = p1 p2")->required();
    sub_search->add_option("--out", se_out, "output prefix (<prefix>.witnesses.jsonl, <prefix>.census.csv)")
        ->required();
    sub_search->add_option("--checkpoint", se_checkpoint, "checkpoint file path");
    sub_search->add_flag("--resume", se_resume, "continue from the checkpoint");
    sub_search->add_flag("--restart", se_restart, "discard the checkpoint and start over");
    sub_search->add_option("--threads", se_threads, "worker threads");
    sub_search->add_option("--max-n", se_max_n, "stop after this grid index (chunked runs)");

    // construct22
    auto* sub_c22 = app.add_subcommand("construct22", "certified fields with 2-class group (2, 2)");
    int64_t c22_p1 = 0, c22_p2 = 0;
    std::string c22_out;
    sub_c22->add_option("--p1-max", c22_p1, "bound on p1 (p1 == 3 mod 8)")->required();
    sub_c22->add_option("--p2-max", c22_p2, "bound on p2 (p2 == 7 mod 8 p1)")->required();
    sub_c22->add_option("--out", c22_out, "output JSONL file (default stdout)");

    // singular
    auto* sub_singular = app.add_subcommand("singular", "singular series: finite sum vs product");
    sub_singular->set_help_flag("--help", "print help"); // frees -h for the target option
    int64_t si_m = 24, si_s1 = 11, si_s2 = 7, si_h = 0, si_P = 1000, si_pb = 100000;
    bool si_combined = false;
    sub_singular->add_option("--m", si_m, "congruence modulus");
    sub_singular->add_option("--s1", si_s1, "first residue class");
    sub_singular->add_option("--s2", si_s2, "second residue class");
    sub_singular->add_option("-h,--h", si_h, "target integer (nonzero)")->required();
    sub_singular->add_option("--P", si_P, "truncation level of the finite sum");
    sub_singular->add_option("--prime-bound", si_pb, "prime bound of the Euler product");
    sub_singular->add_flag("--combined", si_combined, "also evaluate the class-combined series");

    // repcount
    auto* sub_repcount = app.add_subcommand("repcount", "weighted prime-pair representation count");
    int64_t rc_n = 0, rc_m = 24, rc_s1 = 11, rc_s2 = 7, rc_limit = 0;
    sub_repcount->add_option("--n", rc_n, "representation target")->required();
    sub_repcount->add_option("--m", rc_m, "congruence modulus");
    sub_repcount->add_option("--s1", rc_s1, "first residue class");
    sub_repcount->add_option("--s2", rc_s2, "second residue class");
    sub_repcount->add_option("--limit", rc_limit, "prime table limit (default n)");

    // census
    auto* sub_census = app.add_subcommand("census", "re-certify a witness file and count by bound");
    std::string ce_in, ce_out;
    int64_t ce_ell = 0;
    std::vector<int64_t> ce_grid;
    sub_census->add_option("--in", ce_in, "witness JSONL file")->required();
    sub_census->add_option("--ell", ce_ell, "tower height of the file")->required();
    sub_census->add_option("--grid", ce_grid, "census bounds (comma separated)")
        ->required()
        ->delimiter(',');
    sub_census->add_option("--out", ce_out, "output CSV file (default stdout)");

    // verify
    auto* sub_verify = app.add_subcommand("verify", "run a self-check suite");
    std::string ve_suite;
    sub_verify->add_option("--suite", ve_suite, "oracles | hasse | census-crosscheck | major-arc")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sub_classgroup->parsed()) return cmd_classgroup(cg_disc, cg_census_cap);
        if (sub_search->parsed())
            return cmd_search(se_ell, se_xmax, se_out, se_checkpoint, se_resume, se_restart,
                              se_threads, se_max_n);
        if (sub_c22->parsed()) return cmd_construct22(c22_p1, c22_p2, c22_out);
        if (sub_singular->parsed())
            return cmd_singular(si_m, si_s1, si_s2, si_h, si_P, si_pb, si_combined);
        if (sub_repcount->parsed()) return cmd_repcount(rc_n, rc_m, rc_s1, rc_s2, rc_limit);
        if (sub_census->parsed()) return cmd_census(ce_in, ce_ell, ce_grid, ce_out);
        if (sub_verify->parsed()) return cmd_verify(ve_suite);
    } catch (const clpair::checkpoint_error& e) {
        std::cerr << "error: " << e.what()
                  << " (use --restart to discard the existing checkpoint)\n";
        return 2;
    } catch (const clpair::capacity_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const clpair::invariant_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    }
    return 0;
}
