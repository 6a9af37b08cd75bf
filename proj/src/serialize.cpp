#include "clpair/serialize.hpp"

#include <cstdlib>
#include <string>

namespace clpair::io {

namespace {

constexpr int64_t exact_double_bound = int64_t{1} << 53;

int64_t decode_int(const json& j) {
    if (j.is_string()) {
        const std::string& s = j.get_ref<const std::string&>();
        size_t pos = 0;
        int64_t v = std::stoll(s, &pos, 10);
        if (pos != s.size() || s.empty())
            throw std::invalid_argument("malformed integer string: " + s);
        return v;
    }
    return j.get<int64_t>();
}

} // namespace

json encode_int(int64_t v) {
    if (v > exact_double_bound || v < -exact_double_bound) return std::to_string(v);
    return v;
}

json encode(const qf::QuadForm& f) {
    return json{{"a", encode_int(f.a)}, {"b", encode_int(f.b)}, {"c", encode_int(f.c)}};
}

json encode(const qf::ClassGroupProfile& profile) {
    json j{{"disc", encode_int(profile.disc)},
           {"h", profile.h},
           {"census_complete", profile.census_complete},
           {"two_sylow_type", profile.two_sylow_type},
           {"two_sylow_method", profile.two_sylow_method}};
    if (profile.census_complete) {
        json census = json::object();
        for (const auto& [order, count] : profile.order_census)
            census[std::to_string(order)] = count;
        j["order_census"] = census;
    }
    return j;
}

json encode(const qf::OrderCertificate& cert) {
    return json{{"w", cert.w},
                {"x", cert.x},
                {"m", cert.m},
                {"d", encode_int(cert.d)},
                {"disc", encode_int(cert.disc)},
                {"seed", encode(cert.seed)},
                {"h", cert.h},
                {"order", cert.order},
                {"order_exact", cert.order_exact}};
}

json encode(const genus::HasseCheck& check) {
    json symbols = json::object();
    for (const auto& [p, s] : check.symbols) symbols[std::to_string(p)] = s;
    return json{{"disc", encode_int(check.disc)},
                {"norm", encode_int(check.norm)},
                {"symbols", symbols},
                {"is_square_class", check.is_square_class}};
}

json encode(const genus::PropositionReport& report) {
    json preconditions = json::array();
    for (const auto& pc : report.preconditions)
        preconditions.push_back(json{{"name", pc.name}, {"ok", pc.ok}});
    json ambiguous = json::array();
    for (const auto& hc : report.ambiguous_norms) ambiguous.push_back(encode(hc));
    json order = json::array();
    for (const auto& hc : report.order_norms) order.push_back(encode(hc));
    json j{{"witness", encode(report.witness)},
           {"preconditions", preconditions},
           {"preconditions_ok", report.preconditions_ok},
           {"ambiguous_norms", ambiguous},
           {"order_norms", order},
           {"ambiguous_nonsquare", report.ambiguous_nonsquare},
           {"order_nonsquare", report.order_nonsquare},
           {"hasse_ok", report.hasse_ok},
           {"profile_checked", report.profile_checked},
           {"type_matches", report.type_matches},
           {"pass", report.pass}};
    if (report.profile_checked) j["profile"] = encode(report.profile);
    return j;
}

json encode(const genus::Type22Record& record) {
    json checks = json::array();
    for (const auto& hc : record.checks) checks.push_back(encode(hc));
    json j{{"p1", record.p1},
           {"p2", record.p2},
           {"disc", encode_int(record.disc)},
           {"checks", checks},
           {"hasse_all_nonsquare", record.hasse_all_nonsquare},
           {"profile_checked", record.profile_checked},
           {"pass", record.pass}};
    if (record.profile_checked) j["profile"] = encode(record.profile);
    return j;
}

json encode(const search::PrimePairWitness& witness) {
    return json{{"ell", witness.ell},
                {"n_index", witness.n_index},
                {"m_param", witness.m_param},
                {"w", witness.w},
                {"p1", encode_int(witness.p1)},
                {"p2", encode_int(witness.p2)},
                {"d", encode_int(witness.d)},
                {"h_target", encode_int(witness.h_target)},
                {"x", encode_int(witness.x())}};
}

json encode(const search::CensusRecord& record) {
    return json{{"x", encode_int(record.x)},
                {"ell", record.ell},
                {"count", record.count},
                {"ratio", record.ratio}};
}

json encode(const search::CrosscheckReport& report) {
    return json{{"ell", report.ell},
                {"x_small", encode_int(report.x_small)},
                {"expected", report.expected},
                {"found", report.found},
                {"agree", report.agree()}};
}

json encode(const analytic::RepCount& count) {
    return json{{"n", encode_int(count.n)},
                {"weighted", count.weighted},
                {"unweighted", count.unweighted},
                {"weighted_11", count.weighted_11},
                {"weighted_12", count.weighted_12},
                {"weighted_22", count.weighted_22},
                {"count_11", count.count_11},
                {"count_12", count.count_12},
                {"count_22", count.count_22}};
}

json encode(const analytic::SingularProduct& product) {
    return json{{"value", product.value},
                {"prime_bound", product.prime_bound},
                {"tail_bound", product.tail_bound},
                {"exact_zero", product.exact_zero}};
}

search::PrimePairWitness decode_witness(const json& j) {
    try {
        return search::make_witness(decode_int(j.at("ell")), decode_int(j.at("n_index")),
                                    decode_int(j.at("p1")), decode_int(j.at("p2")));
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed witness record: ") + e.what());
    }
}

} // namespace clpair::io
