#ifndef CLPAIR_SERIALIZE_HPP
#define CLPAIR_SERIALIZE_HPP

#include "clpair/analytic.hpp"
#include "clpair/genus.hpp"
#include "clpair/quadform.hpp"
#include "clpair/search.hpp"
#include "clpair/witness.hpp"

#include "json.hpp"

namespace clpair::io {

using nlohmann::json;

// Integers beyond 2^53 lose digits in consumers that read JSON numbers as
// doubles; encode those as decimal strings instead.
json encode_int(int64_t v);

json encode(const qf::QuadForm& f);
json encode(const qf::ClassGroupProfile& profile);
json encode(const qf::OrderCertificate& cert);
json encode(const genus::HasseCheck& check);
json encode(const genus::PropositionReport& report);
json encode(const genus::Type22Record& record);
json encode(const search::PrimePairWitness& witness);
json encode(const search::CensusRecord& record);
json encode(const search::CrosscheckReport& report);
json encode(const analytic::RepCount& count);
json encode(const analytic::SingularProduct& product);

// Inverse of encode(PrimePairWitness); revalidates through the witness
// factory, so malformed or tampered records throw std::invalid_argument.
search::PrimePairWitness decode_witness(const json& j);

} // namespace clpair::io

#endif
